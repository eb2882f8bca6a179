import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from choiopt import linalg
from choiopt.errors import (
    AllZeroError,
    DimensionMismatchError,
    NegativeEigenvalueError,
    NonSquareError,
    NotHermitianError,
)
from helpers import random_hermitian, random_psd, unot_r_matrix


class TestHermEig:
    def test_identity(self):
        eig = linalg.herm_eig(np.eye(2))
        assert np.allclose(eig.eigenvalues, [1.0, 1.0])

    def test_unot_target_spectrum(self):
        # Eigenvalues of the one-copy inverting-gate target: 1/3 threefold, 0.
        eig = linalg.herm_eig(unot_r_matrix())
        assert np.allclose(eig.eigenvalues, [1 / 3, 1 / 3, 1 / 3, 0.0], atol=1e-14)

    @pytest.mark.parametrize("seed", range(5))
    def test_reconstruction_random_6x6(self, seed):
        m = random_hermitian(np.random.default_rng(seed), 6)
        eig = linalg.herm_eig(m)
        assert np.linalg.norm(eig.reconstruct() - m) <= 1e-10 * max(1.0, np.linalg.norm(m))

    def test_eigenvalues_descending_and_vectors_orthonormal(self):
        m = random_hermitian(np.random.default_rng(7), 8)
        eig = linalg.herm_eig(m)
        assert np.all(np.diff(eig.eigenvalues) <= 0)
        gram = eig.eigenvectors.conj().T @ eig.eigenvectors
        assert np.abs(gram - np.eye(8)).max() <= 1e-12

    def test_rejects_non_square(self):
        with pytest.raises(NonSquareError):
            linalg.herm_eig(np.ones((2, 3)))

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            linalg.herm_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))

    @given(st.integers(0, 2**32 - 1), st.integers(2, 9))
    @settings(max_examples=60, deadline=None)
    def test_spectral_identities_hold(self, seed, n):
        m = random_hermitian(np.random.default_rng(seed), n)
        eig = linalg.herm_eig(m)
        gram = eig.eigenvectors.conj().T @ eig.eigenvectors
        assert np.abs(gram - np.eye(n)).max() <= 1e-12
        assert np.linalg.norm(eig.reconstruct() - m) <= 1e-10 * max(1.0, np.linalg.norm(m))


class TestPsdSqrt:
    def test_identity(self):
        assert np.allclose(linalg.psd_sqrt(np.eye(3)), np.eye(3))

    def test_diagonal(self):
        assert np.allclose(linalg.psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))

    @pytest.mark.parametrize("seed", range(5))
    def test_square_recovers_input(self, seed):
        p = random_psd(np.random.default_rng(seed), 5)
        s = linalg.psd_sqrt(p)
        assert np.linalg.norm(s @ s - p) <= 1e-10 * max(1.0, np.linalg.norm(p))

    def test_result_is_hermitian_psd(self):
        s = linalg.psd_sqrt(random_psd(np.random.default_rng(3), 6))
        assert np.abs(s - s.conj().T).max() < 1e-12
        assert np.linalg.eigvalsh(s).min() >= 0.0

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(NegativeEigenvalueError):
            linalg.psd_sqrt(np.diag([1.0, -1.0]))

    def test_tiny_negative_is_clipped(self):
        s = linalg.psd_sqrt(np.diag([1.0, -1e-13]))
        assert np.allclose(s, np.diag([1.0, 0.0]))


class TestRegInverse:
    def test_identity(self):
        assert np.allclose(linalg.reg_inverse(np.eye(4)), np.eye(4))

    def test_singular_diagonal(self):
        assert np.allclose(linalg.reg_inverse(np.diag([2.0, 0.0])), np.diag([0.5, 0.0]))

    @pytest.mark.parametrize("seed", range(5))
    def test_multiply_back(self, seed):
        rng = np.random.default_rng(seed)
        p = random_psd(rng, 4) + 0.5 * np.eye(4)  # keep it comfortably invertible
        assert np.abs(linalg.reg_inverse(p) @ p - np.eye(4)).max() <= 1e-10

    def test_rejects_zero_matrix(self):
        with pytest.raises(AllZeroError):
            linalg.reg_inverse(np.zeros((3, 3)))

    def test_zero_cutoff_still_skips_null_space(self):
        got = linalg.reg_inverse(np.diag([2.0, 0.0]), rel_cutoff=0.0)
        assert np.all(np.isfinite(got))
        assert np.allclose(got, np.diag([0.5, 0.0]))


class TestKron:
    def test_identities(self):
        assert np.array_equal(linalg.kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_diagonal_layout(self):
        got = linalg.kron(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
        assert np.array_equal(got, np.diag([0.0, 1.0, 0.0, 0.0]))

    @pytest.mark.parametrize("seed", range(5))
    def test_multiplicativity(self, seed):
        rng = np.random.default_rng(seed)
        a, b = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(2))
        x, y = (rng.standard_normal((2, 1)) + 1j * rng.standard_normal((2, 1)) for _ in range(2))
        lhs = linalg.kron(a, b) @ linalg.kron(x, y)
        rhs = linalg.kron(a @ x, b @ y)
        assert np.abs(lhs - rhs).max() <= 1e-12


class TestPartialTrace:
    def test_unnormalized_entangled_projector(self):
        v = np.zeros(4, dtype=complex)
        v[0] = v[3] = 1.0  # sum_j |jj>
        m = np.outer(v, v.conj())
        assert np.allclose(linalg.partial_trace(m, 2, 2, keep="first"), np.eye(2))

    def test_product_keep_second(self):
        rng = np.random.default_rng(0)
        a, b = random_hermitian(rng, 2), random_hermitian(rng, 3)
        got = linalg.partial_trace(linalg.kron(a, b), 2, 3, keep="second")
        assert np.allclose(got, np.trace(a) * b)

    def test_maxmix_channel_satisfies_trace_constraint(self):
        chi0 = linalg.kron(np.eye(2), np.eye(2) / 2)
        assert np.allclose(linalg.partial_trace(chi0, 2, 2, keep="first"), np.eye(2))

    @given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.integers(2, 4))
    @settings(max_examples=60, deadline=None)
    def test_preserves_trace(self, seed, d1, d2):
        rng = np.random.default_rng(seed)
        m = rng.standard_normal((d1 * d2,) * 2) + 1j * rng.standard_normal((d1 * d2,) * 2)
        for keep in ("first", "second"):
            out = linalg.partial_trace(m, d1, d2, keep=keep)
            assert abs(np.trace(out) - np.trace(m)) <= 1e-12 * max(1.0, abs(np.trace(m)))

    def test_rejects_bad_dims(self):
        with pytest.raises(DimensionMismatchError):
            linalg.partial_trace(np.eye(5), 2, 2, keep="first")


class TestPartialTranspose:
    def test_product_state(self):
        rng = np.random.default_rng(1)
        a, b = random_hermitian(rng, 2), random_hermitian(rng, 2)
        got = linalg.partial_transpose(linalg.kron(a, b), 2, 2, which="first")
        assert np.allclose(got, linalg.kron(a.T, b))

    def test_entangled_state_goes_negative(self):
        v = np.zeros(4, dtype=complex)
        v[0], v[3] = 1 / np.sqrt(2), -1 / np.sqrt(2)
        pt = linalg.partial_transpose(np.outer(v, v.conj()), 2, 2, which="second")
        assert abs(np.linalg.eigvalsh(pt).min() - (-0.5)) <= 1e-12

    def test_involution(self):
        rng = np.random.default_rng(2)
        m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        for which in ("first", "second"):
            twice = linalg.partial_transpose(
                linalg.partial_transpose(m, 2, 3, which=which), 2, 3, which=which
            )
            assert np.array_equal(twice, m)

    def test_preserves_trace_and_hermiticity(self):
        m = random_hermitian(np.random.default_rng(3), 6)
        pt = linalg.partial_transpose(m, 3, 2, which="first")
        assert abs(np.trace(pt) - np.trace(m)) <= 1e-12
        assert np.abs(pt - pt.conj().T).max() <= 1e-12
