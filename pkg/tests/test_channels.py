import numpy as np
import pytest

from choiopt import channels, models
from choiopt.errors import DimensionMismatchError, InvalidChoiError, TraceConditionError
from choiopt.solver import random_choi
from choiopt.targets import TargetOperator, fidelity_bound
from helpers import (
    random_density,
    random_state,
    unot_channel_action,
    unot_r_matrix,
)


def unot_choi():
    # Optimal one-copy inverting channel: twice the target projector.
    return channels.ChoiOperator(2, 2, 2.0 * unot_r_matrix())


class TestApply:
    @pytest.mark.parametrize("seed", range(3))
    def test_identity_channel(self, seed):
        rho = channels.DensityMatrix(random_density(np.random.default_rng(seed), 2))
        out = channels.apply(channels.identity_choi(2), rho)
        assert np.abs(out.matrix - rho.matrix).max() <= 1e-12

    @pytest.mark.parametrize("seed", range(3))
    def test_unot_channel_matches_reference_action(self, seed):
        rho = random_density(np.random.default_rng(seed), 2)
        out = channels.apply(unot_choi(), channels.DensityMatrix(rho))
        assert np.abs(out.matrix - unot_channel_action(rho)).max() <= 1e-12

    def test_half_pi_shift_sends_everything_to_south_pole(self):
        chi = models.damping_channel(np.pi / 2)
        for theta, phi in [(0.0, 0.0), (1.1, 2.3), (np.pi / 2, 4.0), (3.0, 0.4)]:
            rho = channels.density_from_state(models.bloch_state(theta, phi))
            out = channels.apply(chi, rho)
            assert np.abs(out.matrix - np.diag([0.0, 1.0])).max() <= 1e-12

    def test_output_trace_and_positivity(self):
        chi = random_choi(2, 3, seed=11)
        rho = channels.DensityMatrix(random_density(np.random.default_rng(5), 2))
        out = channels.apply(chi, rho)
        assert abs(np.trace(out.matrix).real - 1.0) <= 1e-10
        assert np.linalg.eigvalsh(out.matrix).min() >= -1e-10

    def test_dimension_mismatch(self):
        rho = channels.DensityMatrix(np.eye(3) / 3)
        with pytest.raises(DimensionMismatchError):
            channels.apply(channels.identity_choi(2), rho)

    def test_invalid_choi_rejected(self):
        bad = channels.ChoiOperator(2, 2, np.diag([1.5, 0.5, 0.5, 0.5]))
        rho = channels.DensityMatrix(np.eye(2) / 2)
        with pytest.raises(InvalidChoiError):
            channels.apply(bad, rho)


class TestFidelity:
    def test_unot_reaches_two_thirds(self):
        r = TargetOperator(2, 2, unot_r_matrix())
        assert abs(channels.fidelity(unot_choi(), r) - 2 / 3) <= 1e-12

    def test_entangler_a_isometry_value(self):
        spec = models.ModelSpec("entangler_a")
        best = models.known_optimum(spec)
        f = channels.fidelity(best.chi, models.analytic_r(spec))
        assert abs(f - models.ENTANGLER_A_FIDELITY) <= 1e-12

    def test_identity_channel_against_zero_shift(self):
        r = models.analytic_r(models.ModelSpec("shifter", alpha=0.0))
        assert abs(channels.fidelity(channels.identity_choi(2), r) - 1.0) <= 1e-12

    @pytest.mark.parametrize("seed", range(8))
    def test_envelope(self, seed):
        rng = np.random.default_rng(seed)
        chi = random_choi(2, 2, seed=seed)
        p = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        p = p @ p.conj().T
        r = TargetOperator(2, 2, p / np.trace(p).real)
        f = channels.fidelity(chi, r)
        assert -1e-9 <= f <= fidelity_bound(r) + 1e-9


class TestKraus:
    def test_identity_channel_single_operator(self):
        ks = channels.kraus_from_choi(channels.identity_choi(2))
        assert len(ks.operators) == 1
        assert np.abs(ks.operators[0] - np.eye(2)).max() <= 1e-12

    def test_unot_three_operators_reconstruct_action(self):
        chi = unot_choi()
        ks = channels.kraus_from_choi(chi)
        assert len(ks.operators) == 3
        for i in range(2):
            for j in range(2):
                unit = np.zeros((2, 2), dtype=complex)
                unit[i, j] = 1.0
                via_kraus = sum(a @ unit @ a.conj().T for a in ks.operators)
                assert np.abs(via_kraus - channels.apply_matrix(chi, unit)).max() <= 1e-10

    def test_entangler_a_single_kraus_is_the_isometry(self):
        best = models.known_optimum(models.ModelSpec("entangler_a"))
        ks = channels.kraus_from_choi(best.chi)
        assert len(ks.operators) == 1
        assert np.abs(ks.operators[0] - models.entangler_a_isometry()).max() <= 1e-10

    @pytest.mark.parametrize("dims,seed", [((2, 2), 0), ((2, 3), 1), ((3, 2), 2), ((2, 4), 3)])
    def test_round_trip(self, dims, seed):
        chi = random_choi(*dims, seed=seed)
        back = channels.choi_from_kraus(channels.kraus_from_choi(chi, cutoff=0.0))
        assert np.linalg.norm(back.matrix - chi.matrix) <= 1e-9

    def test_trace_condition(self):
        ks = channels.kraus_from_choi(random_choi(2, 3, seed=4))
        assert channels.kraus_trace_deviation(ks) <= 1e-9


class TestDilation:
    def test_identity_channel(self):
        d = channels.dilation(channels.kraus_from_choi(channels.identity_choi(2)))
        assert d.shape == (2, 2)
        assert np.abs(d - np.eye(2)).max() <= 1e-12

    def test_unot_dimension_and_isometry(self):
        d = channels.dilation(channels.kraus_from_choi(unot_choi()))
        assert d.shape == (6, 2)
        assert np.abs(d.conj().T @ d - np.eye(2)).max() <= 1e-10

    @pytest.mark.parametrize("dims,seed", [((2, 2), 5), ((3, 2), 6), ((2, 4), 7)])
    def test_columns_orthonormal(self, dims, seed):
        ks = channels.kraus_from_choi(random_choi(*dims, seed=seed))
        d = channels.dilation(ks)
        assert d.shape == (len(ks.operators) * dims[1], dims[0])
        assert np.abs(d.conj().T @ d - np.eye(dims[0])).max() <= 1e-10

    def test_rejects_scaled_kraus_set(self):
        ks = channels.kraus_from_choi(channels.identity_choi(2))
        broken = channels.KrausSet(2, 2, (0.9 * ks.operators[0],), ks.weights)
        with pytest.raises(TraceConditionError):
            channels.dilation(broken)


class TestValidateChoi:
    def test_maxmix(self):
        report = channels.validate_choi(channels.maxmix_choi(2, 2))
        assert report.trace_preservation_deviation <= 1e-14
        assert report.hermiticity_deviation <= 1e-14
        assert abs(report.min_eigenvalue - 0.5) <= 1e-14

    def test_identity_channel(self):
        report = channels.validate_choi(channels.identity_choi(2))
        assert abs(report.min_eigenvalue) <= 1e-14
        assert report.trace_preservation_deviation <= 1e-14
        assert report.within(1e-10)

    def test_constructed_violation(self):
        chi = channels.ChoiOperator(2, 2, np.diag([0.55, 0.55, 0.45, 0.45]))
        report = channels.validate_choi(chi)
        assert abs(report.trace_preservation_deviation - 0.1) <= 1e-12
        assert not report.within(1e-10)


class TestDensityMatrix:
    def test_from_state(self):
        psi = random_state(np.random.default_rng(0), 3)
        rho = channels.density_from_state(psi)
        assert abs(np.trace(rho.matrix) - 1.0) <= 1e-12

    def test_rejects_unnormalized(self):
        with pytest.raises(Exception):
            channels.DensityMatrix(np.eye(2))
