"""Finite groups presented as validated Cayley tables."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "BUILTIN_GROUPS",
    "GroupTable",
    "NotAGroup",
    "build_group",
    "builtin_group",
    "conjugacy_classes",
    "group_from_doc",
    "group_to_doc",
    "relabel_by_shift",
]

BUILTIN_GROUPS = ("Z2", "Q8", "D4", "C3v")


class NotAGroup(ValueError):
    """A multiplication table violates one of the group axioms."""


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group of order N with 0-based element indices.

    ``table[i, j]`` holds the index of the product of elements i and j.
    Instances are immutable; the arrays are read-only.
    """

    order: int
    table: np.ndarray
    identity: int
    inverses: np.ndarray
    names: tuple[str, ...]
    classes: tuple[tuple[int, ...], ...]
    name: str | None = None

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv(self, i: int) -> int:
        return int(self.inverses[i])

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def same_table(self, other: "GroupTable") -> bool:
        return self.order == other.order and np.array_equal(self.table, other.table)


def _conjugacy_classes(table: np.ndarray, inverses: np.ndarray) -> tuple[tuple[int, ...], ...]:
    n = table.shape[0]
    seen = [False] * n
    classes = []
    for x in range(n):
        if seen[x]:
            continue
        orbit = {int(table[table[h, x], inverses[h]]) for h in range(n)}
        for y in orbit:
            seen[y] = True
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=min)
    return tuple(classes)


def build_group(table, names=None, name: str | None = None) -> GroupTable:
    """Validate a multiplication table and assemble a :class:`GroupTable`.

    Raises :class:`NotAGroup` naming the first failing check if the table
    is not a Latin square, is not associative, or lacks an identity or
    two-sided inverses.
    """
    t = np.asarray(table, dtype=int)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotAGroup(f"table must be a nonempty square array, got shape {t.shape}")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise NotAGroup(f"table entries must be element indices in [0, {n})")
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(t[i]), full):
            raise NotAGroup(f"row {i} is not a permutation of 0..{n - 1}")
        if not np.array_equal(np.sort(t[:, i]), full):
            raise NotAGroup(f"column {i} is not a permutation of 0..{n - 1}")
    left = t[t, :]      # left[i, j, k] = t[t[i, j], k]
    right = t[:, t]     # right[i, j, k] = t[i, t[j, k]]
    bad = np.argwhere(left != right)
    if bad.size:
        i, j, k = (int(v) for v in bad[0])
        raise NotAGroup(
            f"associativity fails at triple ({i}, {j}, {k}): "
            f"({i}*{j})*{k} = {int(left[i, j, k])} but {i}*({j}*{k}) = {int(right[i, j, k])}"
        )
    identity = None
    for e in range(n):
        if np.array_equal(t[e], full) and np.array_equal(t[:, e], full):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no two-sided identity element")
    inverses = np.empty(n, dtype=int)
    for i in range(n):
        j = int(np.where(t[i] == identity)[0][0])
        if t[j, i] != identity:
            raise NotAGroup(f"element {i} has no two-sided inverse")
        inverses[i] = j
    if names is None:
        names = tuple(f"g{i + 1}" for i in range(n))
    else:
        names = tuple(str(x) for x in names)
        if len(names) != n:
            raise NotAGroup(f"got {len(names)} names for a group of order {n}")
    classes = _conjugacy_classes(t, inverses)
    t.setflags(write=False)
    inverses.setflags(write=False)
    return GroupTable(
        order=n,
        table=t,
        identity=identity,
        inverses=inverses,
        names=names,
        classes=classes,
        name=name,
    )


def conjugacy_classes(g: GroupTable) -> tuple[tuple[int, ...], ...]:
    """Partition of the element indices into conjugacy classes."""
    return g.classes


def relabel_by_shift(g: GroupTable, g0: int) -> GroupTable:
    """Deform the product to ``a * b -> a g0^{-1} b`` on the same element set.

    The result is a valid group with identity at index ``g0``, isomorphic
    to the input via right multiplication by ``g0``.
    """
    if not 0 <= g0 < g.order:
        raise IndexError(f"shift element index {g0} out of range for order {g.order}")
    k = g.inv(g0)
    rows = g.table[:, k]                 # rows[i] = i * g0^{-1}
    return build_group(g.table[rows, :], names=g.names)


# Built-in tables. Element order follows the conventions used by the
# matching representations module: Q8 as (E, P, K, L, M, K', L', M') with
# K*L = M and L*K = M'; D4 as (E, C4, C4^2, C4^3, Sigma1, Sigma2,
# sigma13, sigma24); C3v with rotations first.

_Z2_TABLE = (
    (0, 1),
    (1, 0),
)
_Z2_NAMES = ("e", "p")

_Q8_TABLE = (
    (0, 1, 2, 3, 4, 5, 6, 7),
    (1, 0, 5, 6, 7, 2, 3, 4),
    (2, 5, 1, 4, 6, 0, 7, 3),
    (3, 6, 7, 1, 2, 4, 0, 5),
    (4, 7, 3, 5, 1, 6, 2, 0),
    (5, 2, 0, 7, 3, 1, 4, 6),
    (6, 3, 4, 0, 5, 7, 1, 2),
    (7, 4, 6, 2, 0, 3, 5, 1),
)
_Q8_NAMES = ("E", "P", "K", "L", "M", "K'", "L'", "M'")

_D4_TABLE = (
    (0, 1, 2, 3, 4, 5, 6, 7),
    (1, 2, 3, 0, 7, 6, 4, 5),
    (2, 3, 0, 1, 5, 4, 7, 6),
    (3, 0, 1, 2, 6, 7, 5, 4),
    (4, 6, 5, 7, 0, 2, 1, 3),
    (5, 7, 4, 6, 2, 0, 3, 1),
    (6, 5, 7, 4, 3, 1, 0, 2),
    (7, 4, 6, 5, 1, 3, 2, 0),
)
_D4_NAMES = ("E", "C4", "C4^2", "C4^3", "Sigma1", "Sigma2", "sigma13", "sigma24")

_C3V_TABLE = (
    (0, 1, 2, 3, 4, 5),
    (1, 2, 0, 4, 5, 3),
    (2, 0, 1, 5, 3, 4),
    (3, 5, 4, 0, 2, 1),
    (4, 3, 5, 1, 0, 2),
    (5, 4, 3, 2, 1, 0),
)
_C3V_NAMES = ("e", "c3", "c3^2", "s1", "s2", "s3")

_BUILTIN_DATA = {
    "Z2": (_Z2_TABLE, _Z2_NAMES),
    "Q8": (_Q8_TABLE, _Q8_NAMES),
    "D4": (_D4_TABLE, _D4_NAMES),
    "C3v": (_C3V_TABLE, _C3V_NAMES),
}

_CANONICAL_NAMES = {k.lower(): k for k in _BUILTIN_DATA}


def canonical_group_name(name: str) -> str:
    key = str(name).lower()
    if key not in _CANONICAL_NAMES:
        raise ValueError(f"unknown group {name!r}; available: {', '.join(BUILTIN_GROUPS)}")
    return _CANONICAL_NAMES[key]


@lru_cache(maxsize=None)
def builtin_group(name: str) -> GroupTable:
    """One of the built-in groups Z2, Q8, D4, C3v."""
    canonical = canonical_group_name(name)
    table, names = _BUILTIN_DATA[canonical]
    return build_group(table, names=names, name=canonical)


def group_to_doc(g: GroupTable) -> dict:
    """Plain-data form of a group (the on-disk table document)."""
    return {
        "order": g.order,
        "table": [[int(x) for x in row] for row in g.table],
        "names": list(g.names),
    }


def group_from_doc(doc: dict) -> GroupTable:
    """Rebuild a group from its table document."""
    table = doc["table"]
    order = doc.get("order")
    if order is not None and int(order) != len(table):
        raise ValueError(f"declared order {order} does not match table size {len(table)}")
    return build_group(table, names=doc.get("names"))
