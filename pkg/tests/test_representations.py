import numpy as np
import pytest

from groupstar import (
    BUILTIN_GROUPS,
    Irrep,
    UnknownLabel,
    builtin_group,
    builtin_irrep,
    builtin_irreps,
    character,
    character_table,
    irrep_from_doc,
    irrep_labels,
    irrep_to_doc,
    validate_irrep,
)

ALL_PAIRS = [(g, lab) for g in BUILTIN_GROUPS for lab in irrep_labels(g)]


@pytest.mark.parametrize("group_name,label", ALL_PAIRS)
def test_builtin_irreps_valid(group_name, label):
    g = builtin_group(group_name)
    r = builtin_irrep(group_name, label)
    report = validate_irrep(g, r, tol=1e-12)
    assert report.passed, report.residuals


def test_q8_2d_matrices():
    r = builtin_irrep("Q8", "2d")
    s0 = np.eye(2)
    s1 = np.array([[0, 1], [1, 0]])
    s3 = np.array([[1, 0], [0, -1]])
    assert np.array_equal(r.matrices[0], s0)
    assert np.array_equal(r.matrices[1], -s0)
    assert np.array_equal(r.matrices[2], 1j * s1)
    assert np.array_equal(r.matrices[4], 1j * s3)
    # primed elements are the negatives of the unprimed ones
    for unprimed, primed in ((2, 5), (3, 6), (4, 7)):
        assert np.array_equal(r.matrices[primed], -r.matrices[unprimed])
    # the sigma_2 pair is off-diagonal and purely real
    assert r.matrices[3][0, 0] == 0 and r.matrices[3][0, 1].imag == 0


def test_c3v_2d_matrices():
    r = builtin_irrep("C3v", "2d")
    w = np.exp(2j * np.pi / 3)
    assert np.allclose(r.matrices[1], np.diag([w, w.conjugate()]))
    assert np.array_equal(r.matrices[3], np.array([[0, 1], [1, 0]]))


def test_z2_triv_matrices():
    r = builtin_irrep("Z2", "triv")
    assert np.array_equal(r.matrices, np.ones((2, 1, 1)))


@pytest.mark.parametrize("group_name,label", ALL_PAIRS)
def test_characters_are_class_functions(group_name, label):
    g = builtin_group(group_name)
    chi = character(builtin_irrep(group_name, label))
    for h in range(g.order):
        for x in range(g.order):
            conj = g.mul(g.mul(h, x), g.inv(h))
            assert abs(chi[conj] - chi[x]) <= 1e-12


def test_q8_2d_character_row():
    chi = character(builtin_irrep("Q8", "2d"))
    assert np.allclose(chi, [2, -2, 0, 0, 0, 0, 0, 0])


def test_c3v_2d_character_row():
    chi = character(builtin_irrep("C3v", "2d"))
    assert np.allclose(chi, [2, -1, -1, 0, 0, 0])


def test_trivial_characters_all_ones():
    for name in BUILTIN_GROUPS:
        chi = character(builtin_irrep(name, "triv"))
        assert np.allclose(chi, 1.0)


def test_z2_character_table():
    g = builtin_group("Z2")
    table = character_table(g, builtin_irreps("Z2"))
    assert np.allclose(table.rows, [[1, 1], [1, -1]])


def test_q8_character_table_rows():
    table = character_table(builtin_group("Q8"), builtin_irreps("Q8"))
    # element order (E, P, K, L, M, K', L', M')
    expected = {
        "triv": [1, 1, 1, 1, 1, 1, 1, 1],
        "sign_k": [1, 1, 1, -1, -1, 1, -1, -1],
        "sign_l": [1, 1, -1, 1, -1, -1, 1, -1],
        "sign_m": [1, 1, -1, -1, 1, -1, -1, 1],
        "2d": [2, -2, 0, 0, 0, 0, 0, 0],
    }
    for label, row in zip(table.labels, table.rows):
        assert np.allclose(row, expected[label])


def test_d4_character_table_rows():
    table = character_table(builtin_group("D4"), builtin_irreps("D4"))
    expected = {
        "triv": [1, 1, 1, 1, 1, 1, 1, 1],
        "a2": [1, 1, 1, 1, -1, -1, -1, -1],
        "b1": [1, -1, 1, -1, 1, 1, -1, -1],
        "b2": [1, -1, 1, -1, -1, -1, 1, 1],
        "2d": [2, 0, -2, 0, 0, 0, 0, 0],
    }
    for label, row in zip(table.labels, table.rows):
        assert np.allclose(row, expected[label])


@pytest.mark.parametrize("name", BUILTIN_GROUPS)
def test_character_rows_orthonormal(name):
    g = builtin_group(name)
    table = character_table(g, builtin_irreps(name))
    gram = (table.rows @ table.rows.conj().T) / g.order
    assert np.abs(gram - np.eye(len(table.labels))).max() <= 1e-12


@pytest.mark.parametrize("name", BUILTIN_GROUPS)
def test_dimension_sum_rule(name):
    g = builtin_group(name)
    total = sum(builtin_irrep(name, lab).dim ** 2 for lab in irrep_labels(name))
    assert total == g.order


def test_invalid_family_fails_validation():
    g = builtin_group("Z2")
    bad = Irrep(group=g, dim=1, matrices=np.array([[[1.0]], [[2.0]]]), label="bad")
    report = validate_irrep(g, bad, tol=1e-12)
    assert not report.passed
    assert report.residuals["unitarity"] > 1
    assert report.residuals["homomorphism"] > 1


def test_shape_mismatches_raise():
    g = builtin_group("Z2")
    with pytest.raises(ValueError, match="matrices"):
        validate_irrep(g, Irrep(group=g, dim=1, matrices=np.ones((3, 1, 1)), label="n"))
    with pytest.raises(ValueError, match="shape"):
        validate_irrep(g, Irrep(group=g, dim=2, matrices=np.ones((2, 1, 1)), label="n"))


def test_unknown_label():
    with pytest.raises(UnknownLabel):
        builtin_irrep("Z2", "nope")


def test_character_table_rejects_foreign_irrep():
    with pytest.raises(ValueError, match="different group"):
        character_table(builtin_group("Z2"), [builtin_irrep("C3v", "triv")])


@pytest.mark.parametrize("group_name,label", ALL_PAIRS)
def test_irrep_doc_roundtrip(group_name, label):
    r = builtin_irrep(group_name, label)
    back = irrep_from_doc(irrep_to_doc(r))
    assert back.dim == r.dim
    assert back.label == r.label
    assert np.allclose(back.matrices, r.matrices)
    assert np.array_equal(back.group.table, r.group.table)
