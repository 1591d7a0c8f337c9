# tests/test_states.py
"""Validation, Fano decomposition and partial transposes."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from spinparity.exceptions import NotHermitian, NotPositive, TraceNotOne
from spinparity.schemas import DensityMatrix, FanoDecomposition, FreeParams
from spinparity.services.dirac import rho_free
from spinparity.services.linalg import hermitian_eigenvalues4, is_hermitian
from spinparity.services.quantifiers import partial_transpose_spectrum
from spinparity.services.states import (
    bell_state,
    fano_compose,
    fano_decompose,
    fidelity_pure,
    maximally_mixed,
    partial_transpose_1,
    partial_transpose_2,
    product_state,
    pure_state,
    purity,
    random_density_matrix,
    random_pure_state,
    unitary_conjugate,
    validate,
)


class TestValidate:

    def test_maximally_mixed(self):
        assert_allclose(validate(np.eye(4) / 4).matrix, np.eye(4) / 4)

    def test_pure_projector(self):
        validate(np.diag([1.0, 0, 0, 0]))

    def test_negative_eigenvalue(self):
        with pytest.raises(NotPositive) as info:
            validate(np.diag([2.0, -1.0, 0, 0]))
        assert info.value.violation == pytest.approx(1.0)

    def test_trace(self):
        with pytest.raises(TraceNotOne) as info:
            validate(np.eye(4) / 2)
        assert info.value.violation == pytest.approx(1.0)

    def test_not_hermitian(self):
        m = np.eye(4, dtype=complex) / 4
        m[0, 1] = 0.1j
        with pytest.raises(NotHermitian):
            validate(m)

    def test_matrix_is_read_only(self):
        rho = maximally_mixed()
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0


class TestFano:

    def test_maximally_mixed(self):
        f = fano_decompose(maximally_mixed())
        assert_allclose(f.a1, 0, atol=1e-15)
        assert_allclose(f.a2, 0, atol=1e-15)
        assert_allclose(f.T, 0, atol=1e-15)

    def test_bell_state(self, bell):
        f = fano_decompose(bell)
        assert_allclose(f.a1, 0, atol=1e-12)
        assert_allclose(f.a2, 0, atol=1e-12)
        assert_allclose(f.T, np.diag([1, -1, 1]), atol=1e-12)

    def test_product_up_up(self):
        f = fano_decompose(validate(np.diag([1.0, 0, 0, 0])))
        assert_allclose(f.a1, [0, 0, 1], atol=1e-12)
        assert_allclose(f.a2, [0, 0, 1], atol=1e-12)
        expected = np.zeros((3, 3))
        expected[2, 2] = 1.0
        assert_allclose(f.T, expected, atol=1e-12)

    def test_compose_zero(self):
        f = FanoDecomposition(a1=np.zeros(3), a2=np.zeros(3), T=np.zeros((3, 3)))
        assert_allclose(fano_compose(f).matrix, np.eye(4) / 4, atol=1e-15)

    def test_compose_bell(self, bell):
        f = FanoDecomposition(a1=np.zeros(3), a2=np.zeros(3), T=np.diag([1.0, -1.0, 1.0]))
        assert_allclose(fano_compose(f).matrix, bell.matrix, atol=1e-12)

    def test_compose_unphysical(self):
        f = FanoDecomposition(a1=np.zeros(3), a2=np.zeros(3), T=np.eye(3))
        with pytest.raises(NotPositive):
            fano_compose(f)

    def test_round_trip(self, rng):
        for _ in range(200):
            rho = random_density_matrix(rng)
            back = fano_compose(fano_decompose(rho))
            assert np.max(np.abs(back.matrix - rho.matrix)) < 1e-12

    def test_bloch_vector_too_long(self):
        with pytest.raises(ValueError):
            FanoDecomposition(a1=[0, 0, 1.5], a2=np.zeros(3), T=np.zeros((3, 3)))


class TestPartialTranspose:

    def test_maximally_mixed(self):
        matrix, _ = partial_transpose_1(maximally_mixed())
        assert_allclose(matrix, np.eye(4) / 4)

    def test_bell_spectrum(self, bell):
        matrix, _ = partial_transpose_1(bell)
        assert_allclose(hermitian_eigenvalues4(matrix), [-0.5, 0.5, 0.5, 0.5], atol=1e-12)

    def test_free_particle_invariant(self):
        rho = rho_free(FreeParams(m=0.6, p=0.8, A=0.3))
        matrix, _ = partial_transpose_1(rho)
        assert_allclose(matrix, rho.matrix, atol=1e-15)

    def test_involution(self, random_states):
        for rho in random_states:
            once, _ = partial_transpose_1(rho)
            twice, _ = partial_transpose_1(DensityMatrix(matrix=once))
            assert np.array_equal(twice, rho.matrix)

    def test_trace_and_hermiticity(self, random_states):
        for rho in random_states:
            matrix, _ = partial_transpose_1(rho)
            assert abs(np.trace(matrix) - 1) < 1e-12
            assert is_hermitian(matrix) < 1e-12

    def test_decomposition_signs(self, random_states):
        for rho in random_states:
            f = fano_decompose(rho)
            _, pt = partial_transpose_1(rho)
            assert_allclose(pt.b1, f.a1 * [1, -1, 1])
            assert_allclose(pt.b2, f.a2)
            assert_allclose(pt.Q, np.diag([1, -1, 1]) @ f.T)

    def test_decomposition_matches_matrix(self, random_states):
        for rho in random_states[:10]:
            matrix, pt = partial_transpose_1(rho)
            rebuilt = fano_decompose(DensityMatrix(matrix=matrix))
            assert_allclose(rebuilt.a1, pt.b1, atol=1e-12)
            assert_allclose(rebuilt.T, pt.Q, atol=1e-12)

    def test_both_sides_share_spectrum(self, random_states):
        for rho in random_states:
            second = hermitian_eigenvalues4(partial_transpose_2(rho))
            assert_allclose(partial_transpose_spectrum(rho), second, atol=1e-10)


class TestStateProperties:

    def test_purity_range(self, random_states):
        for rho in random_states:
            assert 0.25 - 1e-10 <= purity(rho) <= 1 + 1e-10

    def test_pure_states(self, rng):
        for _ in range(20):
            assert purity(random_pure_state(rng)) == pytest.approx(1.0, abs=1e-10)

    def test_bell_fidelity(self, bell):
        assert fidelity_pure(bell, bell) == pytest.approx(1.0)
        assert fidelity_pure(maximally_mixed(), bell) == pytest.approx(0.25)

    def test_product_state(self):
        rho = product_state([0, 0, 1], [1, 0, 0])
        expected = np.kron(np.diag([1, 0]), np.full((2, 2), 0.5))
        assert_allclose(rho.matrix, expected, atol=1e-15)

    def test_unitary_conjugate_keeps_spectrum(self, rng, random_states):
        u = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))[0]
        rho = random_states[0]
        assert_allclose(
            hermitian_eigenvalues4(unitary_conjugate(rho, u).matrix),
            hermitian_eigenvalues4(rho.matrix),
            atol=1e-12
        )

    def test_pure_state_normalizes(self):
        rho = pure_state(np.array([2.0, 0, 0, 0]))
        assert_allclose(rho.matrix, np.diag([1, 0, 0, 0]))
