"""Core linear algebra: shapes, kets, bipartitions, reductions, and the
Jacobi eigensolver (cross-checked against LAPACK)."""

import numpy as np
import pytest

from umeb.hilbert import (
    Bipartition,
    Ket,
    Operator,
    SystemShape,
    all_bipartitions,
    apply_local,
    basis_ket,
    coefficient_matrix,
    density,
    gram_matrix,
    hermitian_eigenvalues,
    inner,
    kron,
    numerical_rank,
    orthonormal_complement,
    partial_trace,
    random_unit_ket,
    random_unitary,
    stack_amps,
)


def test_system_shape_basics():
    s = SystemShape((2, 3, 3))
    assert s.total == 18
    assert s.nsys == 3
    assert str(s) == "2x3x3"
    # big-endian row-major: |i j l> at 9i + 3j + l
    assert s.flat_index((0, 0, 0)) == 0
    assert s.flat_index((1, 0, 0)) == 9
    assert s.flat_index((0, 2, 1)) == 7
    assert s.flat_index((1, 2, 2)) == 17


def test_system_shape_rejects_bad_dims():
    with pytest.raises(ValueError):
        SystemShape(())
    with pytest.raises(ValueError):
        SystemShape((2, 1))


def test_ket_validation_and_immutability():
    s = SystemShape((2, 2))
    v = Ket(s, [1, 0, 0, 0])
    assert v.amps.dtype == np.complex128
    assert v.is_unit()
    with pytest.raises(ValueError):
        v.amps[0] = 0.5
    with pytest.raises(ValueError):
        Ket(s, [1, 0, 0])
    with pytest.raises(ValueError):
        Ket(s, [np.nan, 0, 0, 0])
    assert not Ket(s, [2, 0, 0, 0]).is_unit()


def test_basis_ket_places_single_amplitude():
    s = SystemShape((2, 3))
    v = basis_ket(s, (1, 2))
    expected = np.zeros(6)
    expected[5] = 1.0
    assert np.array_equal(v.amps, expected)


def test_bipartition_normalizes_and_validates():
    s = SystemShape((2, 3, 3))
    cut = Bipartition(s, (2, 0))
    assert cut.sites == (0, 2)
    assert cut.other_sites == (1,)
    assert cut.dim_a == 6
    assert cut.dim_b == 3
    with pytest.raises(ValueError):
        Bipartition(s, ())
    with pytest.raises(ValueError):
        Bipartition(s, (0, 1, 2))
    with pytest.raises(ValueError):
        Bipartition(s, (0, 0))
    with pytest.raises(ValueError):
        Bipartition(s, (3,))


def test_all_bipartitions_canonical_orientation():
    # 2x2x2: only the three single-site splits have dim(A) <= dim(B)
    cuts = all_bipartitions(SystemShape((2, 2, 2)))
    assert [c.sites for c in cuts] == [(0,), (1,), (2,)]
    cuts = all_bipartitions(SystemShape((2, 3, 3)))
    assert [c.sites for c in cuts] == [(0,), (1,), (2,)]
    assert [c.sites for c in all_bipartitions(SystemShape((2, 3)))] == [(0,)]
    # ties keep the side containing subsystem 0
    assert [c.sites for c in all_bipartitions(SystemShape((2, 2)))] == [(0,)]
    cuts = all_bipartitions(SystemShape((2, 2, 2, 2)))
    assert [c.sites for c in cuts] == [
        (0,),
        (1,),
        (2,),
        (3,),
        (0, 1),
        (0, 2),
        (0, 3),
    ]


def test_kron_kets_and_operators():
    a = Ket(SystemShape((2,)), [1, 0])
    b = Ket(SystemShape((3,)), [0, 1, 0])
    ab = kron(a, b)
    assert ab.shape.dims == (2, 3)
    assert np.argmax(np.abs(ab.amps)) == 1
    x = Operator(np.array([[0, 1], [1, 0]], dtype=complex))
    xx = kron(x, x)
    assert xx.entries.shape == (4, 4)
    with pytest.raises(TypeError):
        kron(a, x)


def test_apply_local_matches_full_kron():
    rng = np.random.default_rng(7)
    shape = SystemShape((2, 3, 2))
    for _ in range(20):
        ops = [random_unitary(d, rng) for d in shape.dims]
        v = random_unit_ket(shape, rng)
        full = np.kron(np.kron(ops[0].entries, ops[1].entries), ops[2].entries)
        got = apply_local(ops, v)
        assert np.allclose(got.amps, full @ v.amps, atol=1e-13)


def test_apply_local_validates_arity_and_dims():
    v = random_unit_ket(SystemShape((2, 3)), np.random.default_rng(0))
    eye2 = Operator(np.eye(2, dtype=complex))
    with pytest.raises(ValueError):
        apply_local([eye2], v)
    with pytest.raises(ValueError):
        apply_local([eye2, eye2], v)


def test_inner_is_conjugate_linear_in_first_argument():
    s = SystemShape((2,))
    a = Ket(s, [1j, 0])
    b = Ket(s, [1, 0])
    assert inner(a, b) == pytest.approx(-1j)
    assert inner(b, a) == pytest.approx(1j)
    with pytest.raises(ValueError):
        inner(a, Ket(SystemShape((3,)), [1, 0, 0]))


def test_density_is_rank_one_projector():
    rng = np.random.default_rng(3)
    v = random_unit_ket(SystemShape((2, 2)), rng)
    rho = density(v)
    assert rho.is_density()
    assert np.allclose(rho.entries @ rho.entries, rho.entries, atol=1e-12)
    with pytest.raises(ValueError):
        density(Ket(SystemShape((2,)), [2, 0]))


def test_partial_trace_of_product_state_is_pure():
    a = Ket(SystemShape((2,)), [0.6, 0.8])
    b = Ket(SystemShape((3,)), [0, 1, 0])
    v = kron(a, b)
    rho = partial_trace(v, Bipartition(v.shape, (0,)))
    assert np.allclose(rho.entries, np.outer(a.amps, a.amps.conj()), atol=1e-14)


def test_partial_trace_against_einsum_oracle():
    rng = np.random.default_rng(11)
    shape = SystemShape((2, 3, 3))
    for _ in range(25):
        v = random_unit_ket(shape, rng)
        t = v.amps.reshape(2, 3, 3)
        oracles = {
            (0,): np.einsum("ijk,ljk->il", t, t.conj()),
            (1,): np.einsum("ijk,ilk->jl", t, t.conj()),
            (2,): np.einsum("ijk,ijl->kl", t, t.conj()),
            (0, 2): np.einsum("ijk,ljm->iklm", t, t.conj()).reshape(6, 6),
        }
        for sites, expect in oracles.items():
            rho = partial_trace(v, Bipartition(shape, sites))
            assert np.allclose(rho.entries, expect, atol=1e-13)
            assert abs(np.trace(rho.entries) - 1.0) < 1e-12


def test_partial_trace_requires_unit_ket():
    v = Ket(SystemShape((2, 2)), [1, 0, 0, 1])
    with pytest.raises(ValueError):
        partial_trace(v, Bipartition(v.shape, (0,)))


def test_coefficient_matrix_reproduces_reduced_state():
    rng = np.random.default_rng(5)
    shape = SystemShape((2, 3, 3))
    v = random_unit_ket(shape, rng)
    cut = Bipartition(shape, (1,))
    m = coefficient_matrix(v, cut)
    assert m.shape == (3, 6)
    rho = partial_trace(v, cut)
    assert np.allclose(m @ m.conj().T, rho.entries, atol=1e-13)


def test_jacobi_matches_lapack_on_random_hermitian():
    rng = np.random.default_rng(23)
    for n in (2, 3, 4, 6, 9):
        for _ in range(20):
            z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            h = (z + z.conj().T) / 2
            got = hermitian_eigenvalues(Operator(h))
            expect = np.sort(np.linalg.eigvalsh(h))[::-1]
            assert np.allclose(got, expect, atol=1e-11)


def test_jacobi_handles_degenerate_spectra():
    rng = np.random.default_rng(29)
    for _ in range(10):
        u = random_unitary(4, rng).entries
        h = u @ np.diag([0.5, 0.5, 0.0, 0.0]) @ u.conj().T
        got = hermitian_eigenvalues(Operator(h))
        assert np.allclose(got, [0.5, 0.5, 0.0, 0.0], atol=1e-12)


def test_jacobi_accepts_diagonal_and_one_by_one():
    assert np.allclose(
        hermitian_eigenvalues(Operator(np.diag([1.0, 3.0, 2.0]).astype(complex))),
        [3.0, 2.0, 1.0],
    )
    assert np.allclose(hermitian_eigenvalues(Operator(np.array([[4.0 + 0j]]))), [4.0])


def test_jacobi_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_eigenvalues(Operator(np.array([[0, 1], [0, 0]], dtype=complex)))


def test_jacobi_scales_stopping_criterion_with_norm():
    rng = np.random.default_rng(31)
    z = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    h = 1e6 * (z + z.conj().T) / 2
    got = hermitian_eigenvalues(Operator(h))
    expect = np.sort(np.linalg.eigvalsh(h))[::-1]
    assert np.allclose(got, expect, rtol=1e-12, atol=1e-6)


def test_gram_matrix_values():
    s = SystemShape((2,))
    a = Ket(s, [1, 0])
    b = Ket(s, [1 / np.sqrt(2), 1j / np.sqrt(2)])
    g = gram_matrix([a, b]).entries
    assert g[0, 0] == pytest.approx(1.0)
    assert g[0, 1] == pytest.approx(1 / np.sqrt(2))
    assert g[1, 0] == pytest.approx(1 / np.sqrt(2))
    assert np.allclose(g, g.conj().T)


def test_numerical_rank_counts_independent_directions():
    s = SystemShape((2, 2))
    a = Ket(s, [1, 0, 0, 0])
    b = Ket(s, [0, 1, 0, 0])
    c = Ket(s, np.array([1, 1, 0, 0]) / np.sqrt(2))
    assert numerical_rank([a, b]) == 2
    assert numerical_rank([a, b, c]) == 2
    assert numerical_rank([]) == 0


def test_orthonormal_complement_properties():
    rng = np.random.default_rng(17)
    shape = SystemShape((2, 3, 3))
    for _ in range(10):
        u = random_unitary(18, rng).entries
        vs = [Ket(shape, u[i]) for i in range(12)]
        comp = orthonormal_complement(vs)
        assert len(comp) == 6
        g = gram_matrix(comp).entries
        assert np.max(np.abs(g - np.eye(6))) < 1e-12
        cross = stack_amps(vs).conj() @ stack_amps(comp).T
        assert np.max(np.abs(cross)) < 1e-12
        assert numerical_rank(vs + comp) == 18


def test_orthonormal_complement_of_complete_set_is_empty():
    shape = SystemShape((2, 2))
    vs = [basis_ket(shape, divmod(i, 2)) for i in range(4)]
    assert orthonormal_complement(vs) == []


def test_orthonormal_complement_rejects_dependent_input():
    shape = SystemShape((2, 2))
    a = basis_ket(shape, (0, 0))
    with pytest.raises(ValueError, match="rank"):
        orthonormal_complement([a, a])


def test_orthonormal_complement_accepts_non_orthogonal_independent_input():
    shape = SystemShape((2, 2))
    a = basis_ket(shape, (0, 0))
    b = Ket(shape, np.array([1, 1, 0, 0]) / np.sqrt(2))
    comp = orthonormal_complement([a, b])
    assert len(comp) == 2
    cross = stack_amps([a, b]).conj() @ stack_amps(comp).T
    assert np.max(np.abs(cross)) < 1e-12


def test_random_unitary_and_unit_ket():
    rng = np.random.default_rng(41)
    for n in (2, 3, 6):
        u = random_unitary(n, rng)
        assert u.is_unitary(1e-12)
    for _ in range(5):
        assert random_unit_ket(SystemShape((2, 3)), rng).is_unit(1e-12)
