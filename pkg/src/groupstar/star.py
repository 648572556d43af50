"""Quantizer/dequantizer pairs, symbols, and star-product kernels.

An operator A acting on the representation space is mapped to a function
on the group by ``f_A(g_k) = Tr(A U(g_k))`` and recovered by
``A = sum_k f_A(g_k) D(g_k)``.  The product of operators then induces an
associative product on functions whose structure constants form the rank-3
kernel ``K[x][y][z] = Tr(D(g_y) D(g_z) U(g_x))`` with x the output point.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .groups import GroupTable, group_from_doc, group_to_doc
from .representations import Irrep

__all__ = [
    "OrthogonalityViolation",
    "QuantizerPair",
    "StarKernel",
    "algebra_structure_constants",
    "associativity_residual",
    "custom_pair",
    "function_from_doc",
    "function_to_doc",
    "jordan_kernel",
    "k_deformed_kernel",
    "kernel_from_doc",
    "kernel_to_doc",
    "lie_kernel",
    "pair_overlap_matrix",
    "quantizer_pair",
    "reconstruct",
    "reconstruction_residual",
    "reference_kernels",
    "star_apply",
    "star_kernel",
    "symbol",
]


class OrthogonalityViolation(ValueError):
    """A custom operator family fails trace orthogonality."""

    def __init__(self, i: int, j: int, residual: float):
        super().__init__(
            f"Tr(U[{i}] D[{j}]) deviates from the Kronecker delta by {residual:.3e}"
        )
        self.i = i
        self.j = j
        self.residual = residual


@dataclass(frozen=True, eq=False)
class QuantizerPair:
    """Dequantizer family U and quantizer family D over a group.

    For the primary scheme ``U(g) = u(g)`` and ``D(g) = (dim/N) u(g)^{-1}``;
    the dual scheme exchanges the two roles.  Custom pairs must satisfy
    strict trace orthogonality ``Tr(U_i D_j) = delta_ij``.
    """

    group: GroupTable | None
    dim: int
    U: np.ndarray          # (N, dim, dim)
    D: np.ndarray          # (N, dim, dim)
    scheme: str

    @property
    def size(self) -> int:
        return self.U.shape[0]


@dataclass(frozen=True, eq=False)
class StarKernel:
    """Rank-3 structure-constant tensor, indexed [output][left][right]."""

    group: GroupTable | None
    dim: int
    tensor: np.ndarray       # (N, N, N) complex
    scheme: str
    kind: str = "star"       # star | lie | jordan
    normalization: float = 1.0
    deformed: bool = False

    @property
    def size(self) -> int:
        return self.tensor.shape[0]


def quantizer_pair(r: Irrep, scheme: str = "primary") -> QuantizerPair:
    """Quantizer/dequantizer families of an irrep for one scheme.

    Matrix inverses are taken as conjugate transposes, which is exact for
    a unitary family.
    """
    u = np.asarray(r.matrices, dtype=complex)
    u_inv = np.swapaxes(u, 1, 2).conj()
    c = r.dim / r.group.order
    if scheme == "primary":
        big_u, big_d = u, c * u_inv
    elif scheme == "dual":
        big_u, big_d = c * u_inv, u
    else:
        raise ValueError(f"scheme must be 'primary' or 'dual', got {scheme!r}")
    big_u.setflags(write=False)
    big_d.setflags(write=False)
    return QuantizerPair(group=r.group, dim=r.dim, U=big_u, D=big_d, scheme=scheme)


def custom_pair(U, D, group: GroupTable | None = None, tol: float = 1e-12) -> QuantizerPair:
    """Accept an arbitrary operator family satisfying Tr(U_i D_j) = delta_ij.

    The family need not come from a group representation; if ``group`` is
    given its order must match the family length.
    """
    big_u = np.asarray(U, dtype=complex)
    big_d = np.asarray(D, dtype=complex)
    if big_u.shape != big_d.shape or big_u.ndim != 3 or big_u.shape[1] != big_u.shape[2]:
        raise ValueError(
            f"U and D must be equal-shape stacks of square matrices, "
            f"got {big_u.shape} and {big_d.shape}"
        )
    if group is not None and group.order != big_u.shape[0]:
        raise ValueError(
            f"family of length {big_u.shape[0]} does not match group order {group.order}"
        )
    gram = np.einsum("iab,jba->ij", big_u, big_d)
    dev = np.abs(gram - np.eye(big_u.shape[0]))
    if dev.max() > tol:
        i, j = np.unravel_index(int(dev.argmax()), dev.shape)
        raise OrthogonalityViolation(int(i), int(j), float(dev[i, j]))
    big_u.setflags(write=False)
    big_d.setflags(write=False)
    return QuantizerPair(group=group, dim=big_u.shape[1], U=big_u, D=big_d, scheme="custom")


def pair_overlap_matrix(p: QuantizerPair) -> np.ndarray:
    """Gram matrix Tr(U_i D_j) of a pair."""
    return np.einsum("iab,jba->ij", p.U, p.D)


def symbol(p: QuantizerPair, a) -> np.ndarray:
    """Function values f_A(g_k) = Tr(A U(g_k))."""
    a = np.asarray(a, dtype=complex)
    if a.shape != (p.dim, p.dim):
        raise ValueError(f"operator must be {p.dim}x{p.dim}, got shape {a.shape}")
    return np.einsum("ab,kba->k", a, p.U)


def reconstruct(p: QuantizerPair, f) -> np.ndarray:
    """Operator A = sum_k f(g_k) D(g_k) recovered from a function."""
    f = np.asarray(f, dtype=complex)
    if f.shape != (p.size,):
        raise ValueError(f"function must have length {p.size}, got shape {f.shape}")
    return np.einsum("k,kab->ab", f, p.D)


def reconstruction_residual(p: QuantizerPair) -> float:
    """Worst error of reconstruct(symbol(A)) = A over the matrix-unit basis."""
    basis = np.eye(p.dim * p.dim, dtype=complex).reshape(-1, p.dim, p.dim)
    symbols = np.einsum("nab,kba->nk", basis, p.U)
    back = np.einsum("nk,kab->nab", symbols, p.D)
    return float(np.abs(back - basis).max())


def _normalization(p: QuantizerPair) -> float:
    if p.scheme == "primary":
        return (p.dim / p.size) ** 2
    if p.scheme == "dual":
        return p.dim / p.size
    return 1.0


def star_kernel(p: QuantizerPair) -> StarKernel:
    """Kernel K[x][y][z] = Tr(D(g_y) D(g_z) U(g_x)) of the induced product."""
    tensor = np.einsum("yab,zbc,xca->xyz", p.D, p.D, p.U)
    tensor.setflags(write=False)
    return StarKernel(
        group=p.group,
        dim=p.dim,
        tensor=tensor,
        scheme=p.scheme,
        normalization=_normalization(p),
    )


def k_deformed_kernel(p: QuantizerPair, k) -> StarKernel:
    """Kernel of the deformed product A k B for a fixed matrix k.

    ``K_k[x][y][z] = Tr(D(g_y) k D(g_z) U(g_x))``; with k the identity the
    kernel reduces to :func:`star_kernel`.
    """
    k = np.asarray(k, dtype=complex)
    if k.shape != (p.dim, p.dim):
        raise ValueError(f"deformation matrix must be {p.dim}x{p.dim}, got shape {k.shape}")
    tensor = np.einsum("yab,bc,zcd,xda->xyz", p.D, k, p.D, p.U)
    tensor.setflags(write=False)
    return StarKernel(
        group=p.group,
        dim=p.dim,
        tensor=tensor,
        scheme=p.scheme,
        normalization=_normalization(p),
        deformed=True,
    )


def star_apply(kernel: StarKernel, f, h) -> np.ndarray:
    """Contract the kernel: (f * h)(g_x) = sum_{y,z} K[x][y][z] f(y) h(z)."""
    f = np.asarray(f, dtype=complex)
    h = np.asarray(h, dtype=complex)
    n = kernel.size
    if f.shape != (n,) or h.shape != (n,):
        raise ValueError(f"functions must have length {n}, got {f.shape} and {h.shape}")
    return np.einsum("xyz,y,z->x", kernel.tensor, f, h)


def lie_kernel(kernel: StarKernel) -> StarKernel:
    """Antisymmetric part C[x][y][z] = K[x][y][z] - K[x][z][y]."""
    tensor = kernel.tensor - kernel.tensor.transpose(0, 2, 1)
    tensor.setflags(write=False)
    return replace(kernel, tensor=tensor, kind="lie")


def jordan_kernel(kernel: StarKernel) -> StarKernel:
    """Symmetric part J[x][y][z] = (K[x][y][z] + K[x][z][y]) / 2."""
    tensor = (kernel.tensor + kernel.tensor.transpose(0, 2, 1)) / 2
    tensor.setflags(write=False)
    return replace(kernel, tensor=tensor, kind="jordan")


def associativity_residual(kernel: StarKernel) -> float:
    """Max deviation of the kernel-level associativity contraction."""
    k = kernel.tensor
    lhs = np.einsum("xut,uwv->xwvt", k, k)
    rhs = np.einsum("xwz,zvt->xwvt", k, k)
    return float(np.abs(lhs - rhs).max())


def algebra_structure_constants(r: Irrep, k=None) -> np.ndarray:
    """Expansion coefficients a[a][s][c] = Tr(u(g_a) k u(g_s) u(g_c)^{-1}) / dim.

    With ``k`` omitted the insertion is the identity and the coefficients
    reduce to chi(g_a g_s g_c^{-1}) / dim.
    """
    u = np.asarray(r.matrices, dtype=complex)
    u_inv = np.swapaxes(u, 1, 2).conj()
    if k is None:
        t = np.einsum("aij,sjm,cmi->asc", u, u, u_inv)
    else:
        k = np.asarray(k, dtype=complex)
        if k.shape != (r.dim, r.dim):
            raise ValueError(f"insertion matrix must be {r.dim}x{r.dim}, got shape {k.shape}")
        t = np.einsum("aij,jl,slm,cmi->asc", u, k, u, u_inv)
    return t / r.dim


def reference_kernels(g: GroupTable) -> dict:
    """Pointwise and group-convolution product kernels on a group."""
    n = g.order
    idx = np.arange(n)
    pointwise = np.zeros((n, n, n), dtype=complex)
    pointwise[idx, idx, idx] = 1.0
    convolution = np.zeros((n, n, n), dtype=complex)
    for y in range(n):
        for z in range(n):
            convolution[g.table[y, z], y, z] = 1.0
    pointwise.setflags(write=False)
    convolution.setflags(write=False)
    return {
        "pointwise": StarKernel(group=g, dim=0, tensor=pointwise, scheme="pointwise"),
        "convolution": StarKernel(group=g, dim=0, tensor=convolution, scheme="convolution"),
    }


def _complex_nested(t: np.ndarray):
    if t.ndim == 1:
        return [[float(z.real), float(z.imag)] for z in t]
    return [_complex_nested(row) for row in t]


def _nested_complex(doc) -> np.ndarray:
    arr = np.asarray(doc, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def kernel_to_doc(kernel: StarKernel, layout: str = "output-first") -> dict:
    """Plain-data form of a kernel (the on-disk document).

    ``layout`` selects the index order of the serialized tensor:
    ``output-first`` stores K[x][y][z] as computed, ``output-last`` stores
    K[y][z][x] with the output point moved to the final index.
    """
    if layout not in ("output-first", "output-last"):
        raise ValueError(f"layout must be 'output-first' or 'output-last', got {layout!r}")
    tensor = kernel.tensor
    if layout == "output-last":
        tensor = tensor.transpose(1, 2, 0)
    if kernel.group is None:
        group = None
    elif kernel.group.name:
        group = kernel.group.name
    else:
        group = group_to_doc(kernel.group)
    return {
        "group": group,
        "scheme": kernel.scheme,
        "kind": kernel.kind,
        "dim": kernel.dim,
        "normalization": float(kernel.normalization),
        "deformed": kernel.deformed,
        "layout": layout,
        "tensor": _complex_nested(tensor),
    }


def kernel_from_doc(doc: dict) -> StarKernel:
    """Rebuild a kernel from its document."""
    from .groups import builtin_group

    tensor = _nested_complex(doc["tensor"])
    if tensor.ndim != 3 or len(set(tensor.shape)) != 1:
        raise ValueError(f"kernel tensor must be N x N x N, got shape {tensor.shape}")
    if doc.get("layout", "output-first") == "output-last":
        tensor = tensor.transpose(2, 0, 1)
    group = doc.get("group")
    if isinstance(group, str):
        group = builtin_group(group)
    elif isinstance(group, dict):
        group = group_from_doc(group)
    tensor.setflags(write=False)
    return StarKernel(
        group=group,
        dim=int(doc.get("dim", 0)),
        tensor=tensor,
        scheme=str(doc.get("scheme", "custom")),
        kind=str(doc.get("kind", "star")),
        normalization=float(doc.get("normalization", 1.0)),
        deformed=bool(doc.get("deformed", False)),
    )


def function_to_doc(values) -> dict:
    """Plain-data form of a complex function on the group."""
    values = np.asarray(values, dtype=complex)
    return {"values": _complex_nested(values)}


def function_from_doc(doc: dict) -> np.ndarray:
    """Rebuild a function from its document."""
    return _nested_complex(doc["values"])
