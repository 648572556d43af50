"""Star products on SU(2) in the spin-1/2 defining representation.

Group elements are parameterized by Euler angles (theta, phi, psi) with
theta in [0, pi], phi in [0, 2 pi), psi in [0, 4 pi) and Cayley-Klein
parameters alpha = cos(theta/2) e^{i (phi + psi) / 2},
beta = sin(theta/2) e^{i (phi - psi) / 2}.  The invariant measure is
sin(theta) dtheta dphi dpsi with total volume V = 16 pi^2, and integrals
are evaluated on a Gauss-Legendre (in cos theta) times periodic-uniform
product grid that is exact for every integrand containing at most two
matrix elements per integrated group variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "HaarGrid",
    "MIN_NODES",
    "SU2Element",
    "VOLUME",
    "haar_grid",
    "haar_orthogonality_residual",
    "lie_kernel_expansion",
    "samples_from_doc",
    "samples_to_doc",
    "su2_element",
    "su2_kernel",
    "su2_lie_kernel",
    "su2_reconstruct",
    "su2_star",
    "su2_symbol",
    "su2_symbol_samples",
]

VOLUME = 16.0 * math.pi**2

# Smallest grids that integrate products of two spin-1/2 matrix elements
# exactly: such products are degree-1 polynomials in cos(theta) and carry
# integer phi-frequencies in {-1, 0, 1} and psi-frequencies in {-1, 0, 1}
# on the half-angle scale (period 4 pi in psi).
MIN_NODES = (2, 2, 3)


@dataclass(frozen=True)
class SU2Element:
    """A group element with canonical Euler angles and (alpha, beta)."""

    theta: float
    phi: float
    psi: float
    alpha: complex
    beta: complex

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.alpha, self.beta], [-self.beta.conjugate(), self.alpha.conjugate()]]
        )

    @property
    def inverse_matrix(self) -> np.ndarray:
        return np.array(
            [[self.alpha.conjugate(), -self.beta], [self.beta.conjugate(), self.alpha]]
        )


def _canonical_angles(theta: float, phi: float, psi: float) -> tuple[float, float, float]:
    two_pi = 2.0 * math.pi
    four_pi = 4.0 * math.pi
    theta = theta % four_pi
    if theta >= two_pi:
        # (theta - 2 pi, psi + 2 pi) represents the same element
        theta -= two_pi
        psi += two_pi
    if theta > math.pi:
        # reflect into [0, pi]; phi and psi shift by pi to compensate
        theta = two_pi - theta
        phi += math.pi
        psi += math.pi
    k = math.floor(phi / two_pi)
    phi -= two_pi * k
    psi += two_pi * k
    psi %= four_pi
    return theta, phi, psi


def su2_element(theta: float, phi: float, psi: float) -> SU2Element:
    """Construct an element from Euler angles, reduced to canonical ranges."""
    angles = (float(theta), float(phi), float(psi))
    if not all(math.isfinite(a) for a in angles):
        raise ValueError(f"angles must be finite, got {angles}")
    theta, phi, psi = _canonical_angles(*angles)
    half = 0.5 * theta
    alpha = math.cos(half) * complex(math.cos(0.5 * (phi + psi)), math.sin(0.5 * (phi + psi)))
    beta = math.sin(half) * complex(math.cos(0.5 * (phi - psi)), math.sin(0.5 * (phi - psi)))
    return SU2Element(theta=theta, phi=phi, psi=psi, alpha=alpha, beta=beta)


SU2_IDENTITY = su2_element(0.0, 0.0, 0.0)


class HaarGrid:
    """Product quadrature grid over the Euler angles.

    Gauss-Legendre nodes in cos(theta), uniform periodic nodes in phi and
    psi.  Node counts below :data:`MIN_NODES` are rejected because the
    grid could no longer integrate the band of functions the star-product
    machinery produces.
    """

    def __init__(self, n_theta: int = 8, n_phi: int = 8, n_psi: int = 8):
        counts = (int(n_theta), int(n_phi), int(n_psi))
        if any(c < m for c, m in zip(counts, MIN_NODES)):
            raise ValueError(
                f"grid {counts} is below the minimum node counts {MIN_NODES} "
                f"needed for exact two-element quadrature"
            )
        self.n_theta, self.n_phi, self.n_psi = counts
        x, wx = np.polynomial.legendre.leggauss(self.n_theta)
        thetas = np.arccos(x)
        phis = 2.0 * math.pi * np.arange(self.n_phi) / self.n_phi
        psis = 4.0 * math.pi * np.arange(self.n_psi) / self.n_psi
        w_phi = 2.0 * math.pi / self.n_phi
        w_psi = 4.0 * math.pi / self.n_psi
        elements = []
        weights = []
        for th, wt in zip(thetas, wx):
            for ph in phis:
                for ps in psis:
                    elements.append(su2_element(th, ph, ps))
                    weights.append(wt * w_phi * w_psi)
        self.elements: tuple[SU2Element, ...] = tuple(elements)
        self.weights = np.asarray(weights)
        self.weights.setflags(write=False)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def volume(self) -> float:
        return float(self.weights.sum())

    @cached_property
    def matrices(self) -> np.ndarray:
        m = np.stack([g.matrix for g in self.elements])
        m.setflags(write=False)
        return m

    @cached_property
    def inverse_matrices(self) -> np.ndarray:
        m = np.conjugate(np.swapaxes(self.matrices, 1, 2))
        m.setflags(write=False)
        return m

    @cached_property
    def _inverse_pairs(self) -> np.ndarray:
        # P[a, b] = M(a)^-1 M(b)^-1, reused by every primary-kernel sum
        mh = self.inverse_matrices
        return np.einsum("aij,bjk->abik", mh, mh)

    @cached_property
    def _forward_pairs(self) -> np.ndarray:
        m = self.matrices
        return np.einsum("aij,bjk->abik", m, m)


def haar_grid(n_theta: int = 8, n_phi: int = 8, n_psi: int = 8) -> HaarGrid:
    """Quadrature grid for the invariant measure; defaults are (8, 8, 8)."""
    return HaarGrid(n_theta, n_phi, n_psi)


def haar_orthogonality_residual(grid: HaarGrid) -> float:
    """Worst residual of the 16 matrix-element orthogonality integrals.

    Checks ``integral of u_mn conj(u_ab) = delta_ma delta_nb V / 2`` over
    all index pairs for the spin-1/2 matrix elements.
    """
    m = grid.matrices
    overlap = np.einsum("g,gmn,gab->mnab", grid.weights, m, m.conj())
    eye = np.eye(2)
    target = (VOLUME / 2.0) * np.einsum("ma,nb->mnab", eye, eye)
    return float(np.abs(overlap - target).max())


def su2_symbol(a, g: SU2Element, scheme: str = "primary") -> complex:
    """Symbol of a 2x2 operator at one group element.

    Primary scheme: f_A(g) = Tr(A u(g)).  Dual scheme:
    f_A(g) = (2/V) Tr(A u(g)^{-1}).
    """
    a = np.asarray(a, dtype=complex)
    if a.shape != (2, 2):
        raise ValueError(f"operator must be 2x2, got shape {a.shape}")
    if scheme == "primary":
        return complex(np.trace(a @ g.matrix))
    if scheme == "dual":
        return complex((2.0 / VOLUME) * np.trace(a @ g.inverse_matrix))
    raise ValueError(f"scheme must be 'primary' or 'dual', got {scheme!r}")


def su2_symbol_samples(a, grid: HaarGrid, scheme: str = "primary") -> np.ndarray:
    """Symbol of a 2x2 operator sampled on every grid node."""
    a = np.asarray(a, dtype=complex)
    if a.shape != (2, 2):
        raise ValueError(f"operator must be 2x2, got shape {a.shape}")
    if scheme == "primary":
        return np.einsum("ab,gba->g", a, grid.matrices)
    if scheme == "dual":
        return (2.0 / VOLUME) * np.einsum("ab,gba->g", a, grid.inverse_matrices)
    raise ValueError(f"scheme must be 'primary' or 'dual', got {scheme!r}")


def su2_reconstruct(f, grid: HaarGrid, scheme: str = "primary") -> np.ndarray:
    """Recover the operator from its sampled symbol by quadrature.

    Primary scheme: A = (2/V) integral of f(g) u(g)^{-1}; dual scheme:
    A = integral of f(g) u(g).  Exact for band-limited f (symbols of
    actual operators) at any valid grid size.
    """
    f = np.asarray(f, dtype=complex)
    if f.shape != (grid.size,):
        raise ValueError(f"expected {grid.size} samples, got shape {f.shape}")
    wf = grid.weights * f
    if scheme == "primary":
        return (2.0 / VOLUME) * np.einsum("g,gab->ab", wf, grid.inverse_matrices)
    if scheme == "dual":
        return np.einsum("g,gab->ab", wf, grid.matrices)
    raise ValueError(f"scheme must be 'primary' or 'dual', got {scheme!r}")


def su2_kernel(g1: SU2Element, g2: SU2Element, g3: SU2Element, scheme: str = "primary") -> complex:
    """Star-product kernel at a point triple.

    Primary: (4/V^2) Tr(u(g3)^{-1} u(g2)^{-1} u(g1)); in the star product
    g1 is the output point, g2 the right input and g3 the left input.
    Dual: (2/V) Tr(u(g1) u(g2) u(g3)^{-1}) with g1 the left input, g2 the
    right input and g3 the output point.
    """
    if scheme == "primary":
        return complex(
            (4.0 / VOLUME**2)
            * np.trace(g3.inverse_matrix @ g2.inverse_matrix @ g1.matrix)
        )
    if scheme == "dual":
        return complex(
            (2.0 / VOLUME) * np.trace(g1.matrix @ g2.matrix @ g3.inverse_matrix)
        )
    raise ValueError(f"scheme must be 'primary' or 'dual', got {scheme!r}")


def su2_lie_kernel(a: SU2Element, b: SU2Element, c: SU2Element, scheme: str = "primary") -> complex:
    """Antisymmetric kernel; the first two arguments form the commutator.

    Primary: (4/V^2) Tr([u(a)^{-1}, u(b)^{-1}] u(c)).
    Dual: (2/V) Tr([u(a), u(b)] u(c)^{-1}).
    """
    if scheme == "primary":
        ma, mb = a.inverse_matrix, b.inverse_matrix
        return complex((4.0 / VOLUME**2) * np.trace((ma @ mb - mb @ ma) @ c.matrix))
    if scheme == "dual":
        ma, mb = a.matrix, b.matrix
        return complex((2.0 / VOLUME) * np.trace((ma @ mb - mb @ ma) @ c.inverse_matrix))
    raise ValueError(f"scheme must be 'primary' or 'dual', got {scheme!r}")


def lie_kernel_expansion(a: SU2Element, b: SU2Element, c: SU2Element) -> complex:
    """Dual-scheme Lie kernel as an explicit polynomial in (alpha, beta).

    Equals ``su2_lie_kernel(a, b, c, "dual")`` identically; both vanish
    whenever the first two elements coincide.
    """
    a1, b1 = a.alpha, a.beta
    a2, b2 = b.alpha, b.beta
    a3, b3 = c.alpha, c.beta
    value = (
        (b2 * b1.conjugate() - b1 * b2.conjugate()) * a3.conjugate()
        + (a1 * b2 - a2 * b1 + b1 * a2.conjugate() - b2 * a1.conjugate()) * b3.conjugate()
        - b3
        * (
            b2.conjugate() * a1
            - b1.conjugate() * a2
            + a2.conjugate() * b1.conjugate()
            - a1.conjugate() * b2.conjugate()
        )
        + a3 * (b2.conjugate() * b1 - b1.conjugate() * b2)
    )
    return complex((2.0 / VOLUME) * value)


def su2_star(
    f1,
    f2,
    g: SU2Element,
    grid: HaarGrid,
    scheme: str = "primary",
    kind: str = "star",
) -> complex:
    """Double quadrature of the kernel against two sampled functions.

    With ``kind="star"`` this is the induced product; ``kind="lie"``
    contracts the antisymmetrized kernel instead.  If f1 and f2 are the
    sampled symbols of operators A and B the results are the symbols of
    A B and of the commutator [A, B] at g.
    """
    f1 = np.asarray(f1, dtype=complex)
    f2 = np.asarray(f2, dtype=complex)
    if f1.shape != (grid.size,) or f2.shape != (grid.size,):
        raise ValueError(
            f"expected two sample vectors of length {grid.size}, "
            f"got {f1.shape} and {f2.shape}"
        )
    if kind not in ("star", "lie"):
        raise ValueError(f"kind must be 'star' or 'lie', got {kind!r}")
    if scheme == "primary":
        kab = (4.0 / VOLUME**2) * np.einsum("abij,ji->ab", grid._inverse_pairs, g.matrix)
    elif scheme == "dual":
        kab = (2.0 / VOLUME) * np.einsum("abij,ji->ab", grid._forward_pairs, g.inverse_matrix)
    else:
        raise ValueError(f"scheme must be 'primary' or 'dual', got {scheme!r}")
    if kind == "lie":
        kab = kab - kab.T
    return complex((grid.weights * f1) @ kab @ (grid.weights * f2))


def samples_to_doc(grid: HaarGrid, values) -> dict:
    """Plain-data form of a sampled function with its grid descriptor."""
    values = np.asarray(values, dtype=complex)
    if values.shape != (grid.size,):
        raise ValueError(f"expected {grid.size} samples, got shape {values.shape}")
    return {
        "grid": {"n_theta": grid.n_theta, "n_phi": grid.n_phi, "n_psi": grid.n_psi},
        "samples": [
            [g.theta, g.phi, g.psi, [float(v.real), float(v.imag)]]
            for g, v in zip(grid.elements, values)
        ],
    }


def samples_from_doc(doc: dict) -> tuple[HaarGrid, np.ndarray]:
    """Rebuild a grid and sample vector, checking node agreement."""
    spec = doc["grid"]
    grid = HaarGrid(spec["n_theta"], spec["n_phi"], spec["n_psi"])
    samples = doc["samples"]
    if len(samples) != grid.size:
        raise ValueError(f"expected {grid.size} samples, got {len(samples)}")
    values = np.empty(grid.size, dtype=complex)
    for idx, (record, g) in enumerate(zip(samples, grid.elements)):
        theta, phi, psi, (re, im) = record
        if (
            abs(theta - g.theta) > 1e-12
            or abs(phi - g.phi) > 1e-12
            or abs(psi - g.psi) > 1e-12
        ):
            raise ValueError(f"sample {idx} does not sit on the declared grid node")
        values[idx] = complex(re, im)
    return grid, values
