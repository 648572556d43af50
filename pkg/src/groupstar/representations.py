"""Unitary irreducible representations of the built-in groups."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import GroupTable, builtin_group, canonical_group_name, group_from_doc, group_to_doc

__all__ = [
    "CharacterTable",
    "Irrep",
    "UnknownLabel",
    "ValidationReport",
    "builtin_irrep",
    "builtin_irreps",
    "character",
    "character_table",
    "irrep_from_doc",
    "irrep_labels",
    "irrep_to_doc",
    "validate_irrep",
]


class UnknownLabel(ValueError):
    """No representation is registered under the requested label."""


@dataclass(frozen=True, eq=False)
class Irrep:
    """A unitary irreducible representation given by one matrix per element."""

    group: GroupTable
    dim: int
    matrices: np.ndarray    # (N, dim, dim) complex
    label: str


@dataclass(frozen=True, eq=False)
class ValidationReport:
    """Residuals of the representation axioms for one matrix family."""

    group: str
    label: str
    tolerance: float
    residuals: dict
    passed: bool

    @property
    def worst(self) -> float:
        return max(self.residuals.values())


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """Characters of a family of irreps, one row per representation."""

    group: GroupTable
    labels: tuple[str, ...]
    rows: np.ndarray                       # (n_irreps, N) complex
    class_representatives: tuple[int, ...]


_S0 = np.eye(2, dtype=complex)
_S1 = np.array([[0, 1], [1, 0]], dtype=complex)
_S2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_S3 = np.array([[1, 0], [0, -1]], dtype=complex)

_PHI = np.exp(2j * np.pi / 3)


def _q8_2d() -> np.ndarray:
    # The sign of the sigma_2 factors is pinned by u(K) u(L) = u(M) in the
    # Q8 table; every other entry is the plain Pauli assignment.
    return np.stack([
        _S0, -_S0,
        1j * _S1, -1j * _S2, 1j * _S3,
        -1j * _S1, 1j * _S2, -1j * _S3,
    ])


def _d4_2d() -> np.ndarray:
    # Rotations are powers of i*sigma_3; the reflection assignment is the
    # unique one (up to a global relabel) realizing the D4 table above.
    return np.stack([
        _S0, 1j * _S3, -_S0, -1j * _S3,
        -_S2, _S2, _S1, -_S1,
    ])


def _c3v_2d() -> np.ndarray:
    w = _PHI
    return np.stack([
        np.eye(2, dtype=complex),
        np.diag([w, w.conjugate()]),
        np.diag([w.conjugate(), w]),
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, w], [w.conjugate(), 0]]),
        np.array([[0, w.conjugate()], [w, 0]]),
    ])


# 1D representations are stored as their character rows (element order as
# in the group tables) and realized as (N, 1, 1) matrix families.
_ONE_DIM_ROWS = {
    "Z2": {
        "triv": (1, 1),
        "sign": (1, -1),
    },
    "Q8": {
        "triv": (1, 1, 1, 1, 1, 1, 1, 1),
        "sign_k": (1, 1, 1, -1, -1, 1, -1, -1),
        "sign_l": (1, 1, -1, 1, -1, -1, 1, -1),
        "sign_m": (1, 1, -1, -1, 1, -1, -1, 1),
    },
    "D4": {
        "triv": (1, 1, 1, 1, 1, 1, 1, 1),
        "a2": (1, 1, 1, 1, -1, -1, -1, -1),
        "b1": (1, -1, 1, -1, 1, 1, -1, -1),
        "b2": (1, -1, 1, -1, -1, -1, 1, 1),
    },
    "C3v": {
        "triv": (1, 1, 1, 1, 1, 1),
        "sign": (1, 1, 1, -1, -1, -1),
    },
}

_TWO_DIM = {"Q8": _q8_2d, "D4": _d4_2d, "C3v": _c3v_2d}

_LABEL_ORDER = {
    "Z2": ("triv", "sign"),
    "Q8": ("triv", "sign_k", "sign_l", "sign_m", "2d"),
    "D4": ("triv", "a2", "b1", "b2", "2d"),
    "C3v": ("triv", "sign", "2d"),
}


def irrep_labels(group_name: str) -> tuple[str, ...]:
    """Labels of the registered irreps of a built-in group."""
    return _LABEL_ORDER[canonical_group_name(group_name)]


def builtin_irrep(group_name: str, label: str) -> Irrep:
    """A registered irrep of a built-in group."""
    canonical = canonical_group_name(group_name)
    g = builtin_group(canonical)
    if label in _ONE_DIM_ROWS[canonical]:
        row = np.asarray(_ONE_DIM_ROWS[canonical][label], dtype=complex)
        mats = row.reshape(g.order, 1, 1)
        dim = 1
    elif label == "2d" and canonical in _TWO_DIM:
        mats = _TWO_DIM[canonical]()
        dim = 2
    else:
        raise UnknownLabel(
            f"group {canonical} has no irrep {label!r}; "
            f"available: {', '.join(_LABEL_ORDER[canonical])}"
        )
    mats.setflags(write=False)
    return Irrep(group=g, dim=dim, matrices=mats, label=label)


def builtin_irreps(group_name: str) -> tuple[Irrep, ...]:
    """All registered irreps of a built-in group."""
    return tuple(builtin_irrep(group_name, lab) for lab in irrep_labels(group_name))


def character(r: Irrep) -> np.ndarray:
    """Character values chi(g_k) = trace of the representing matrix."""
    return np.trace(r.matrices, axis1=1, axis2=2)


def validate_irrep(g: GroupTable, r: Irrep, tol: float = 1e-12) -> ValidationReport:
    """Check homomorphism, unitarity, orthogonality and irreducibility.

    Orthogonality is the sum rule
    ``sum_k u_mn(g_k) conj(u_ab(g_k)) = delta_ma delta_nb N / dim``;
    irreducibility is ``sum_k |chi(g_k)|^2 = N``.
    """
    u = np.asarray(r.matrices, dtype=complex)
    if u.shape[0] != g.order:
        raise ValueError(f"got {u.shape[0]} matrices for a group of order {g.order}")
    if u.ndim != 3 or u.shape[1] != u.shape[2] or u.shape[1] != r.dim:
        raise ValueError(f"matrices must have shape (N, {r.dim}, {r.dim}), got {u.shape}")
    n, d = g.order, r.dim
    products = np.einsum("iab,jbc->ijac", u, u)
    hom = float(np.abs(products - u[g.table]).max())
    gram = np.einsum("iab,icb->iac", u, u.conj())
    unitary = float(np.abs(gram - np.eye(d)).max())
    overlap = np.einsum("kmn,kab->mnab", u, u.conj())
    target = (n / d) * np.einsum("ma,nb->mnab", np.eye(d), np.eye(d))
    orth = float(np.abs(overlap - target).max())
    chi = character(r)
    irr = float(abs((np.abs(chi) ** 2).sum() - n))
    residuals = {
        "homomorphism": hom,
        "unitarity": unitary,
        "orthogonality": orth,
        "irreducibility": irr,
    }
    return ValidationReport(
        group=g.name or f"order-{n}",
        label=r.label,
        tolerance=tol,
        residuals=residuals,
        passed=all(v <= tol for v in residuals.values()),
    )


def character_table(g: GroupTable, irreps) -> CharacterTable:
    """Characters of ``irreps`` as one row per representation."""
    rows = []
    for r in irreps:
        if not g.same_table(r.group):
            raise ValueError(f"irrep {r.label!r} belongs to a different group")
        report = validate_irrep(g, r)
        if not report.passed:
            raise ValueError(
                f"irrep {r.label!r} fails validation (worst residual {report.worst:.3e})"
            )
        rows.append(character(r))
    return CharacterTable(
        group=g,
        labels=tuple(r.label for r in irreps),
        rows=np.array(rows),
        class_representatives=tuple(c[0] for c in g.classes),
    )


def irrep_to_doc(r: Irrep) -> dict:
    """Plain-data form of an irrep (the on-disk document)."""
    group = r.group.name if r.group.name else group_to_doc(r.group)
    return {
        "group": group,
        "dim": r.dim,
        "label": r.label,
        "matrices": [
            [[[float(z.real), float(z.imag)] for z in row] for row in mat]
            for mat in r.matrices
        ],
    }


def irrep_from_doc(doc: dict) -> Irrep:
    """Rebuild an irrep from its document."""
    group = doc["group"]
    g = builtin_group(group) if isinstance(group, str) else group_from_doc(group)
    mats = np.array(
        [[[complex(re, im) for re, im in row] for row in mat] for mat in doc["matrices"]]
    )
    dim = int(doc["dim"])
    if mats.shape != (g.order, dim, dim):
        raise ValueError(f"matrices have shape {mats.shape}, expected {(g.order, dim, dim)}")
    mats.setflags(write=False)
    return Irrep(group=g, dim=dim, matrices=mats, label=str(doc.get("label", "?")))
