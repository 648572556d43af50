import numpy as np
import pytest

from groupstar import (
    BUILTIN_GROUPS,
    OrthogonalityViolation,
    algebra_structure_constants,
    associativity_residual,
    builtin_group,
    builtin_irrep,
    character,
    custom_pair,
    function_from_doc,
    function_to_doc,
    irrep_labels,
    jacobi_residual,
    jordan_kernel,
    k_deformed_kernel,
    kernel_from_doc,
    kernel_to_doc,
    lie_kernel,
    pair_overlap_matrix,
    quantizer_pair,
    reconstruct,
    reconstruction_residual,
    reference_kernels,
    star_apply,
    star_kernel,
    symbol,
)
from groupstar.identities import random_matrices

ALL_PAIRS = [(g, lab) for g in BUILTIN_GROUPS for lab in irrep_labels(g)]
SCHEMES = ("primary", "dual")


def test_z2_triv_primary_pair():
    p = quantizer_pair(builtin_irrep("Z2", "triv"), "primary")
    assert np.allclose(p.U.ravel(), [1, 1])
    assert np.allclose(p.D.ravel(), [0.5, 0.5])


def test_c3v_2d_dual_dequantizer():
    r = builtin_irrep("C3v", "2d")
    p = quantizer_pair(r, "dual")
    u_inv = np.swapaxes(r.matrices, 1, 2).conj()
    assert np.allclose(p.U, u_inv / 3)
    assert np.allclose(p.D, r.matrices)


@pytest.mark.parametrize("group_name,label", ALL_PAIRS)
def test_primary_dual_exchange(group_name, label):
    r = builtin_irrep(group_name, label)
    primary = quantizer_pair(r, "primary")
    dual = quantizer_pair(r, "dual")
    assert np.allclose(primary.U, dual.D)
    assert np.allclose(primary.D, dual.U)


@pytest.mark.parametrize("group_name,label", ALL_PAIRS)
@pytest.mark.parametrize("scheme", SCHEMES)
def test_reconstruction_identity(group_name, label, scheme):
    p = quantizer_pair(builtin_irrep(group_name, label), scheme)
    assert reconstruction_residual(p) <= 1e-12


def test_custom_pair_matrix_units():
    units = np.eye(4, dtype=complex).reshape(4, 2, 2)
    transposed = np.swapaxes(units, 1, 2)
    g = builtin_group("Z2")
    # needs a group of order four; build the cyclic one from scratch
    from groupstar import build_group

    z4 = build_group([[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]])
    p = custom_pair(units, transposed, group=z4)
    assert p.scheme == "custom"
    assert np.abs(pair_overlap_matrix(p) - np.eye(4)).max() <= 1e-15
    # the family spans all 2x2 matrices, so symbols close under the product
    rng = np.random.default_rng(3)
    a, b = random_matrices(rng, 2, 2)
    kernel = star_kernel(p)
    out = star_apply(kernel, symbol(p, a), symbol(p, b))
    assert np.abs(out - symbol(p, a @ b)).max() <= 1e-12
    assert g.order != z4.order  # keep both groups distinct in this test


def test_custom_pair_rejects_identity_copies():
    fam = np.stack([np.eye(2, dtype=complex)] * 2)
    with pytest.raises(OrthogonalityViolation) as err:
        custom_pair(fam, fam)
    assert err.value.residual == pytest.approx(2.0)
    assert (err.value.i, err.value.j) in ((0, 1), (1, 0))


def test_custom_pair_rejects_overcomplete_frame():
    # the primary pair of an irrep with dim^2 < order is a frame, not a basis
    p = quantizer_pair(builtin_irrep("Z2", "triv"), "primary")
    with pytest.raises(OrthogonalityViolation):
        custom_pair(p.U, p.D)


def test_custom_pair_group_size_mismatch():
    units = np.eye(4, dtype=complex).reshape(4, 2, 2)
    with pytest.raises(ValueError, match="order"):
        custom_pair(units, np.swapaxes(units, 1, 2), group=builtin_group("Z2"))


@pytest.mark.parametrize("group_name,label", ALL_PAIRS)
def test_symbol_of_identity_is_character(group_name, label):
    r = builtin_irrep(group_name, label)
    p = quantizer_pair(r, "primary")
    assert np.abs(symbol(p, np.eye(r.dim)) - character(r)).max() <= 1e-12


def test_c3v_dual_symbol_of_identity():
    p = quantizer_pair(builtin_irrep("C3v", "2d"), "dual")
    values = symbol(p, np.eye(2))
    assert np.allclose(values, [2 / 3, -1 / 3, -1 / 3, 0, 0, 0])


def test_symbol_of_zero():
    p = quantizer_pair(builtin_irrep("Q8", "2d"), "primary")
    assert np.abs(symbol(p, np.zeros((2, 2)))).max() == 0


def test_symbol_shape_check():
    p = quantizer_pair(builtin_irrep("Q8", "2d"), "primary")
    with pytest.raises(ValueError, match="2x2"):
        symbol(p, np.eye(3))


def test_reconstruct_constant_function_trivial_rep():
    p = quantizer_pair(builtin_irrep("C3v", "triv"), "primary")
    a = 2.5 - 1.25j
    out = reconstruct(p, np.full(6, a))
    assert out.shape == (1, 1)
    assert abs(out[0, 0] - a) <= 1e-15


def test_reconstruct_roundtrip_seeded():
    rng = np.random.default_rng(7)
    for group_name, label in ALL_PAIRS:
        for scheme in SCHEMES:
            p = quantizer_pair(builtin_irrep(group_name, label), scheme)
            for a in random_matrices(rng, 5, p.dim):
                assert np.abs(reconstruct(p, symbol(p, a)) - a).max() <= 1e-12


def test_reconstruct_length_check():
    p = quantizer_pair(builtin_irrep("Z2", "triv"), "primary")
    with pytest.raises(ValueError, match="length"):
        reconstruct(p, np.ones(3))


def test_z2_triv_kernel_entries():
    kernel = star_kernel(quantizer_pair(builtin_irrep("Z2", "triv"), "primary"))
    assert np.allclose(kernel.tensor, 0.25)
    assert kernel.normalization == pytest.approx(0.25)


def test_z2_sign_kernel_sign_pattern():
    g = builtin_group("Z2")
    r = builtin_irrep("Z2", "sign")
    chi = character(r).real
    kernel = star_kernel(quantizer_pair(r, "primary"))
    # unnormalized character factor chi(g_a g_b g_k), inputs first:
    # (e,e,e) -> 1, (e,e,p) -> -1, (e,p,e) -> -1, (e,p,p) -> 1
    factors = {
        (a, b, k): chi[g.mul(g.mul(a, b), g.inv(k))]
        for a in range(2)
        for b in range(2)
        for k in range(2)
    }
    assert factors[0, 0, 0] == 1
    assert factors[0, 0, 1] == -1
    assert factors[0, 1, 0] == -1
    assert factors[0, 1, 1] == 1
    for (a, b, k), value in factors.items():
        assert kernel.tensor[k, a, b] == pytest.approx(0.25 * value)


def test_q8_2d_kernel_entry_and_closed_form():
    g = builtin_group("Q8")
    r = builtin_irrep("Q8", "2d")
    chi = character(r)
    kernel = star_kernel(quantizer_pair(r, "primary"))
    assert kernel.tensor[0, 0, 0] == pytest.approx(1 / 8)
    for x in range(8):
        for y in range(8):
            for z in range(8):
                want = (1 / 16) * chi[g.mul(g.mul(g.inv(y), g.inv(z)), x)]
                assert abs(kernel.tensor[x, y, z] - want) <= 1e-13


@pytest.mark.parametrize("group_name,label", ALL_PAIRS)
def test_dual_kernel_closed_form(group_name, label):
    g = builtin_group(group_name)
    r = builtin_irrep(group_name, label)
    chi = character(r)
    kernel = star_kernel(quantizer_pair(r, "dual"))
    c = r.dim / g.order
    for x in range(g.order):
        for y in range(g.order):
            for z in range(g.order):
                want = c * chi[g.mul(g.mul(y, z), g.inv(x))]
                assert abs(kernel.tensor[x, y, z] - want) <= 1e-12


def test_deformed_kernel_identity_insertion():
    p = quantizer_pair(builtin_irrep("C3v", "2d"), "primary")
    base = star_kernel(p)
    deformed = k_deformed_kernel(p, np.eye(2))
    assert np.abs(deformed.tensor - base.tensor).max() <= 1e-15
    assert deformed.deformed


def test_deformed_kernel_linearity_in_insertion():
    p = quantizer_pair(builtin_irrep("Q8", "2d"), "dual")
    base = star_kernel(p)
    doubled = k_deformed_kernel(p, 2 * np.eye(2))
    assert np.abs(doubled.tensor - 2 * base.tensor).max() <= 1e-14


@pytest.mark.parametrize("scheme", SCHEMES)
def test_deformed_kernel_closure(scheme):
    r = builtin_irrep("C3v", "2d")
    p = quantizer_pair(r, scheme)
    k = r.matrices[3]
    kernel = k_deformed_kernel(p, k)
    rng = np.random.default_rng(11)
    for _ in range(50):
        a, b = random_matrices(rng, 2, 2)
        got = star_apply(kernel, symbol(p, a), symbol(p, b))
        want = symbol(p, a @ k @ b)
        assert np.abs(got - want).max() <= 1e-10


@pytest.mark.parametrize("scheme", SCHEMES)
def test_deformed_kernel_character_reduction(scheme):
    # Tr(D(y) k D(z) U(x)) reduces to a character-style evaluation of the
    # symbol of k at g_z^-1 g_x g_y^-1 (primary) or g_z g_x^-1 g_y (dual).
    g = builtin_group("C3v")
    r = builtin_irrep("C3v", "2d")
    p = quantizer_pair(r, scheme)
    k = r.matrices[4]
    kernel = k_deformed_kernel(p, k)
    u = r.matrices
    c = (r.dim / g.order) ** 2 if scheme == "primary" else r.dim / g.order
    for x in range(6):
        for y in range(6):
            for z in range(6):
                if scheme == "primary":
                    arg = g.mul(g.mul(g.inv(z), x), g.inv(y))
                else:
                    arg = g.mul(g.mul(z, g.inv(x)), y)
                want = c * np.trace(k @ u[arg])
                assert abs(kernel.tensor[x, y, z] - want) <= 1e-12


def test_star_apply_z2_triv_product():
    kernel = star_kernel(quantizer_pair(builtin_irrep("Z2", "triv"), "primary"))
    f = np.array([2.0, 3.0])
    h = np.array([5.0, 7.0])
    out = star_apply(kernel, f, h)
    total = 0.25 * (f[0] + f[1]) * (h[0] + h[1])
    assert np.allclose(out, [total, total])


def test_star_apply_z2_sign_product():
    kernel = star_kernel(quantizer_pair(builtin_irrep("Z2", "sign"), "primary"))
    x1, x2, y1, y2 = 2.0, 3.0, 5.0, 7.0
    out = star_apply(kernel, np.array([x1, x2]), np.array([y1, y2]))
    first = 0.25 * (x1 * y1 - x1 * y2 - x2 * y1 + x2 * y2)
    assert np.allclose(out, [first, -first])


def test_star_apply_annihilates_odd_vector():
    kernel = star_kernel(quantizer_pair(builtin_irrep("Z2", "triv"), "primary"))
    out = star_apply(kernel, np.array([4.0, -4.0]), np.array([3.0, 7.0]))
    assert np.abs(out).max() == 0


@pytest.mark.parametrize("group_name,label", ALL_PAIRS)
@pytest.mark.parametrize("scheme", SCHEMES)
def test_star_apply_closure_oracle(group_name, label, scheme):
    p = quantizer_pair(builtin_irrep(group_name, label), scheme)
    kernel = star_kernel(p)
    rng = np.random.default_rng(13)
    a_mats = random_matrices(rng, 20, p.dim)
    b_mats = random_matrices(rng, 20, p.dim)
    for a, b in zip(a_mats, b_mats):
        got = star_apply(kernel, symbol(p, a), symbol(p, b))
        assert np.abs(got - symbol(p, a @ b)).max() <= 1e-10


def test_lie_kernel_zero_for_one_dimensional():
    for group_name, label in ALL_PAIRS:
        r = builtin_irrep(group_name, label)
        if r.dim != 1:
            continue
        kernel = lie_kernel(star_kernel(quantizer_pair(r, "primary")))
        assert np.abs(kernel.tensor).max() <= 1e-15


def test_lie_kernel_q8_commutator_oracle():
    r = builtin_irrep("Q8", "2d")
    p = quantizer_pair(r, "primary")
    kernel = lie_kernel(star_kernel(p))
    assert np.abs(kernel.tensor).max() > 0.1
    u = r.matrices
    u_inv = np.swapaxes(u, 1, 2).conj()
    c = (2 / 8) ** 2
    for x in range(8):
        for y in range(8):
            for z in range(8):
                comm = u_inv[y] @ u_inv[z] - u_inv[z] @ u_inv[y]
                want = c * np.trace(comm @ u[x])
                assert abs(kernel.tensor[x, y, z] - want) <= 1e-13


def test_lie_kernel_antisymmetry():
    kernel = lie_kernel(star_kernel(quantizer_pair(builtin_irrep("C3v", "2d"), "dual")))
    assert np.abs(kernel.tensor + kernel.tensor.transpose(0, 2, 1)).max() <= 1e-15


def test_jordan_kernel_identities():
    p = quantizer_pair(builtin_irrep("Q8", "2d"), "primary")
    base = star_kernel(p)
    jordan = jordan_kernel(base)
    lie = lie_kernel(base)
    assert np.abs(jordan.tensor + 0.5 * lie.tensor - base.tensor).max() <= 1e-15
    assert np.abs(jordan.tensor - jordan.tensor.transpose(0, 2, 1)).max() <= 1e-15
    # symmetric on an already symmetric kernel
    triv = star_kernel(quantizer_pair(builtin_irrep("Z2", "triv"), "primary"))
    assert np.abs(jordan_kernel(triv).tensor - triv.tensor).max() == 0


def test_jordan_kernel_anticommutator_oracle():
    p = quantizer_pair(builtin_irrep("Q8", "2d"), "primary")
    jordan = jordan_kernel(star_kernel(p))
    doubled = 2 * jordan.tensor
    rng = np.random.default_rng(17)
    for _ in range(20):
        a, b = random_matrices(rng, 2, 2)
        got = np.einsum("xyz,y,z->x", doubled, symbol(p, a), symbol(p, b))
        want = symbol(p, a @ b + b @ a)
        assert np.abs(got - want).max() <= 1e-10


def test_lie_kernel_jacobi():
    for group_name, label in (("Q8", "2d"), ("D4", "2d"), ("C3v", "2d")):
        p = quantizer_pair(builtin_irrep(group_name, label), "primary")
        lie = lie_kernel(star_kernel(p))
        assert jacobi_residual(lie, trials=20, seed=0) <= 1e-9


def test_structure_constants_z2_sign():
    a = algebra_structure_constants(builtin_irrep("Z2", "sign"))
    assert a[1, 1, 0] == pytest.approx(1.0)


def test_structure_constants_match_cayley_table():
    g = builtin_group("Q8")
    a = algebra_structure_constants(builtin_irrep("Q8", "2d"))
    for i in range(8):
        for j in range(8):
            assert a[i, j, g.mul(i, j)] == pytest.approx(1.0)


def test_structure_constants_identity_insertion():
    r = builtin_irrep("C3v", "2d")
    assert np.allclose(
        algebra_structure_constants(r),
        algebra_structure_constants(r, np.eye(2)),
    )


def test_reference_kernels_z2():
    g = builtin_group("Z2")
    kernels = reference_kernels(g)
    x = np.array([2.0, 3.0])
    y = np.array([5.0, 7.0])
    assert np.allclose(star_apply(kernels["pointwise"], x, y), [10.0, 21.0])
    assert np.allclose(star_apply(kernels["convolution"], x, y), [31.0, 29.0])
    for kernel in kernels.values():
        assert associativity_residual(kernel) <= 1e-12


@pytest.mark.parametrize("group_name,label", ALL_PAIRS)
@pytest.mark.parametrize("scheme", SCHEMES)
def test_kernel_level_associativity(group_name, label, scheme):
    kernel = star_kernel(quantizer_pair(builtin_irrep(group_name, label), scheme))
    assert associativity_residual(kernel) <= 1e-10


def test_kernel_doc_roundtrip():
    p = quantizer_pair(builtin_irrep("C3v", "2d"), "dual")
    kernel = star_kernel(p)
    for layout in ("output-first", "output-last"):
        doc = kernel_to_doc(kernel, layout=layout)
        back = kernel_from_doc(doc)
        assert np.abs(back.tensor - kernel.tensor).max() == 0
        assert back.scheme == kernel.scheme
        assert back.dim == kernel.dim
        assert np.array_equal(back.group.table, kernel.group.table)


def test_function_doc_roundtrip():
    values = np.array([1 + 2j, -0.25, 3.5j])
    assert np.array_equal(function_from_doc(function_to_doc(values)), values)


def test_kernel_doc_rejects_bad_tensor():
    with pytest.raises(ValueError, match="N x N x N"):
        kernel_from_doc({"tensor": [[[0.0, 0.0], [0.0, 0.0]]]})
