import numpy as np
import pytest

from groupstar import (
    BUILTIN_GROUPS,
    NotAGroup,
    build_group,
    builtin_group,
    conjugacy_classes,
    group_from_doc,
    group_to_doc,
    irrep_labels,
    relabel_by_shift,
)


def element_orders(g):
    orders = []
    for x in range(g.order):
        k, acc = 1, x
        while acc != g.identity:
            acc = g.mul(acc, x)
            k += 1
        orders.append(k)
    return orders


def are_isomorphic(g1, g2):
    """Backtracking isomorphism search pruned by element orders."""
    if g1.order != g2.order:
        return False
    o1, o2 = element_orders(g1), element_orders(g2)
    if sorted(o1) != sorted(o2):
        return False
    n = g1.order
    candidates = [[y for y in range(n) if o2[y] == o1[x]] for x in range(n)]
    mapping = [-1] * n
    used = [False] * n

    def consistent(upto):
        for a in range(upto + 1):
            for b in range(upto + 1):
                c = g1.mul(a, b)
                if mapping[c] != -1 and g2.mul(mapping[a], mapping[b]) != mapping[c]:
                    return False
        return True

    def extend(x):
        if x == n:
            return True
        for y in candidates[x]:
            if used[y]:
                continue
            mapping[x] = y
            used[y] = True
            if consistent(x) and extend(x + 1):
                return True
            mapping[x] = -1
            used[y] = False
        return False

    return extend(0)


@pytest.mark.parametrize("name", BUILTIN_GROUPS)
def test_builtin_group_axioms(name):
    g = builtin_group(name)
    n = g.order
    full = np.arange(n)
    for i in range(n):
        assert np.array_equal(np.sort(g.table[i]), full)
        assert np.array_equal(np.sort(g.table[:, i]), full)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                assert g.mul(g.mul(i, j), k) == g.mul(i, g.mul(j, k))
        assert g.mul(g.identity, i) == i == g.mul(i, g.identity)
        assert g.mul(i, g.inv(i)) == g.identity
    members = sorted(x for c in g.classes for x in c)
    assert members == list(range(n))
    for c in g.classes:
        for x in c:
            for h in range(n):
                assert g.mul(g.mul(h, x), g.inv(h)) in c


def test_z2_from_table():
    g = build_group([[0, 1], [1, 0]])
    assert g.order == 2
    assert g.identity == 0
    assert list(g.inverses) == [0, 1]


def test_c3v_table_structure():
    g = builtin_group("C3v")
    assert g.identity == 0
    assert g.classes == ((0,), (1, 2), (3, 4, 5))
    # sample products from the six-element table
    assert g.mul(1, 1) == 2 and g.mul(1, 2) == 0
    assert g.mul(1, 3) == 4 and g.mul(3, 1) == 5
    assert g.mul(4, 4) == 0


def test_q8_products():
    g = builtin_group("Q8")
    names = g.names
    k, l, m = names.index("K"), names.index("L"), names.index("M")
    assert g.mul(k, l) == m
    assert names[g.mul(l, k)] == "M'"
    p = names.index("P")
    for x in (k, l, m):
        assert g.mul(x, x) == p
    assert g.classes == ((0,), (1,), (2, 5), (3, 6), (4, 7))


def test_d4_row_g5():
    g = builtin_group("D4")
    # row of the first reflection, 0-based: (g5, g7, g6, g8, g1, g3, g2, g4)
    assert list(g.table[4]) == [4, 6, 5, 7, 0, 2, 1, 3]


def test_not_latin_square_rejected():
    with pytest.raises(NotAGroup, match="column 0"):
        build_group([[0, 1], [0, 1]])


def test_nonassociative_loop_rejected():
    # A Latin square with two-sided identity 0 that is not associative.
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 3, 4, 0, 1],
        [3, 4, 1, 2, 0],
        [4, 2, 0, 1, 3],
    ]
    with pytest.raises(NotAGroup, match="associativity fails at triple"):
        build_group(table)


def test_malformed_tables_rejected():
    with pytest.raises(NotAGroup, match="square"):
        build_group([[0, 1]])
    with pytest.raises(NotAGroup, match="indices"):
        build_group([[0, 5], [5, 0]])
    with pytest.raises(NotAGroup, match="names"):
        build_group([[0, 1], [1, 0]], names=["only-one"])


def test_relabel_identity_shift_is_noop():
    for name in BUILTIN_GROUPS:
        g = builtin_group(name)
        shifted = relabel_by_shift(g, g.identity)
        assert np.array_equal(shifted.table, g.table)


def test_relabel_z2():
    g = builtin_group("Z2")
    shifted = relabel_by_shift(g, 1)
    assert shifted.identity == 1
    # right multiplication by the shift element is the isomorphism
    bijection = [g.mul(a, 1) for a in range(2)]
    assert bijection == [1, 0]
    for a in range(2):
        for b in range(2):
            assert shifted.mul(bijection[a], bijection[b]) == bijection[g.mul(a, b)]


@pytest.mark.parametrize("name", BUILTIN_GROUPS)
def test_relabel_shift_isomorphism_property(name):
    g = builtin_group(name)
    for g0 in range(g.order):
        shifted = relabel_by_shift(g, g0)
        assert shifted.identity == g0
        phi = [g.mul(a, g0) for a in range(g.order)]
        for a in range(g.order):
            for b in range(g.order):
                assert shifted.mul(phi[a], phi[b]) == phi[g.mul(a, b)]


def test_relabel_shift_then_inverse_shift_restores():
    for name in BUILTIN_GROUPS:
        g = builtin_group(name)
        for g0 in range(g.order):
            back = relabel_by_shift(relabel_by_shift(g, g0), g.identity)
            assert np.array_equal(back.table, g.table)


def test_relabel_d4_shift_is_isomorphic():
    g = builtin_group("D4")
    shifted = relabel_by_shift(g, 2)
    assert are_isomorphic(g, shifted)


def test_relabel_out_of_range():
    with pytest.raises(IndexError):
        relabel_by_shift(builtin_group("Z2"), 2)


def test_q8_not_isomorphic_to_d4():
    assert not are_isomorphic(builtin_group("Q8"), builtin_group("D4"))


def test_conjugacy_classes_match_irrep_counts():
    for name in BUILTIN_GROUPS:
        g = builtin_group(name)
        assert len(conjugacy_classes(g)) == len(irrep_labels(name))


def test_group_doc_roundtrip():
    for name in BUILTIN_GROUPS:
        g = builtin_group(name)
        doc = group_to_doc(g)
        back = group_from_doc(doc)
        assert np.array_equal(back.table, g.table)
        assert back.names == g.names
    with pytest.raises(ValueError, match="order"):
        group_from_doc({"order": 3, "table": [[0, 1], [1, 0]]})
