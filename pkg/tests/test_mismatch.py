import math

import numpy as np
import pytest
from scipy.stats import norm, truncnorm

from spinrevival.dynamics import ModelParams, initial_state
from spinrevival.errors import DomainError, StructuralError
from spinrevival.measures import linear_entropy, purity
from spinrevival.mismatch import (ensemble_average_series, gaussian_weight_grid,
                                  member_density_series)
from spinrevival.statekit import coherent_fock_amplitudes, spin_coherent_amplitudes

from analysis import peak_in_window
from conftest import run_preset

BELL = np.array([1, 0, 0, 1]) * math.sqrt(0.5)
SWAP = np.eye(4)[[0, 2, 1, 3]]
GRID = np.linspace(0, 20, 81)


def small_field(lam=1.0):
    return ModelParams("field", 1.0, (1.0, 1.0), (lam, lam), n_max=40)


def small_psi0():
    return initial_state(BELL, coherent_fock_amplitudes(3.0, 40))


class TestWeights:
    def test_zero_width(self):
        e = gaussian_weight_grid(0.0, 61)
        assert np.array_equal(e.deltas, [0.0]) and np.array_equal(e.weights, [1.0])
        assert e.sample_count == 1

    @pytest.mark.parametrize("width,count", [(0.1, 61), (0.5, 11), (2.0, 121), (0.3, 1)])
    def test_symmetric_and_normalized(self, width, count):
        e = gaussian_weight_grid(width, count)
        assert np.array_equal(e.weights, e.weights[::-1])
        assert np.array_equal(e.deltas, -e.deltas[::-1])
        assert abs(math.fsum(e.weights) - 1) < 1e-12
        if count > 1:
            assert e.deltas[0] == pytest.approx(-3 * width, rel=1e-15)
            assert np.allclose(np.diff(e.deltas), 6 * width / (count - 1), rtol=1e-12)

    @pytest.mark.parametrize("count", [0, 2, 60, -1, 3.5])
    def test_bad_count(self, count):
        with pytest.raises(DomainError):
            gaussian_weight_grid(0.3, count)

    def test_negative_width(self):
        with pytest.raises(DomainError):
            gaussian_weight_grid(-0.1)

    def test_moments(self):
        e = gaussian_weight_grid(0.3, 61)
        assert abs(np.sum(e.weights * e.deltas)) < 1e-14
        second = np.sum(e.weights * e.deltas ** 2) / 0.09
        # Oracle 1: the same discrete sum built from scipy's normal density.
        x = np.linspace(-0.9, 0.9, 61)
        f = norm.pdf(x, scale=0.3)
        assert second == pytest.approx(np.sum(f * x ** 2) / np.sum(f) / 0.09, rel=1e-12)
        # Oracle 2: the continuous 3-sigma truncated normal, which the grid approximates.
        assert truncnorm.var(-3, 3) == pytest.approx(0.973, abs=5e-4)
        assert second == pytest.approx(truncnorm.var(-3, 3), abs=5e-3)
        assert second < 1


class TestEnsembleAverage:
    def test_zero_width_bit_for_bit(self):
        base, psi0 = small_field(), small_psi0()
        avg = ensemble_average_series(base, gaussian_weight_grid(0.0), psi0, GRID)
        assert np.array_equal(avg, member_density_series(base, 0.0, psi0, GRID))

    def test_zero_width_scenario_matches_plain_run(self):
        plain = run_preset("fig1")
        zero = run_preset("fig6a", delta_width=0.0)
        for col in plain.columns:
            assert np.array_equal(plain[col], zero[col])

    def test_convex_combination_is_valid_density(self):
        avg = ensemble_average_series(small_field(), gaussian_weight_grid(0.3, 21),
                                      small_psi0(), GRID)
        assert np.max(np.abs(avg - np.swapaxes(avg.conj(), -1, -2))) < 1e-10
        assert np.max(np.abs(np.trace(avg, axis1=-2, axis2=-1) - 1)) < 1e-10
        assert np.linalg.eigvalsh(avg).min() > -1e-10

    def test_weighted_sum_of_members(self):
        base, psi0 = small_field(), small_psi0()
        e = gaussian_weight_grid(0.2, 5)
        members = [member_density_series(base, d, psi0, GRID) for d in e.deltas]
        expect = sum(w * m for w, m in zip(e.weights, members))
        avg = ensemble_average_series(base, e, psi0, GRID)
        assert np.max(np.abs(avg - expect)) < 1e-14

    def test_delta_in_units_of_second_coupling(self):
        base, psi0 = small_field(lam=2.0), small_psi0()
        e = gaussian_weight_grid(0.1, 3)
        avg = ensemble_average_series(base, e, psi0, GRID)
        members = [member_density_series(base, 2.0 * d, psi0, GRID) for d in e.deltas]
        assert np.max(np.abs(avg - sum(w * m for w, m in zip(e.weights, members)))) < 1e-14

    def test_swap_symmetry_restored(self):
        base, psi0 = small_field(), small_psi0()
        member = member_density_series(base, 0.3, psi0, GRID)
        assert np.max(np.abs(SWAP @ member @ SWAP - member)) > 1e-3
        avg = ensemble_average_series(base, gaussian_weight_grid(0.3, 21), psi0, GRID)
        assert np.max(np.abs(SWAP @ avg @ SWAP - avg)) < 1e-9

    def test_swap_maps_one_sided_member_to_other_qubit(self):
        # What swap actually does under λ₁ = λ₂ + δ: it moves δ onto qubit 2.
        psi0 = small_psi0()
        a = member_density_series(small_field(), 0.3, psi0, GRID)
        other = ModelParams("field", 1.0, (1.0, 1.0), (1.0, 1.3), n_max=40)
        b = member_density_series(other, 0.0, psi0, GRID)
        assert np.max(np.abs(SWAP @ a @ SWAP - b)) < 1e-9

    def test_mixing_never_purifies(self):
        base, psi0 = small_field(), small_psi0()
        e = gaussian_weight_grid(0.4, 15)
        avg = ensemble_average_series(base, e, psi0, GRID)
        mean_member = sum(w * linear_entropy(member_density_series(base, d, psi0, GRID))
                          for w, d in zip(e.weights, e.deltas))
        assert np.all(linear_entropy(avg) >= mean_member - 1e-12)

    def test_worker_count_does_not_change_result(self):
        base = ModelParams("spin", 1.0, (1.0, 1.0), (1.0, 1.0), n_spins=40)
        psi0 = initial_state(BELL, spin_coherent_amplitudes(3.0, 40))
        e = gaussian_weight_grid(0.3, 11)
        runs = [ensemble_average_series(base, e, psi0, GRID, workers=w) for w in (1, 2, 7)]
        assert np.array_equal(runs[0], runs[1]) and np.array_equal(runs[0], runs[2])

    def test_needs_two_qubits(self):
        base = ModelParams("field", 1.0, (1.0,), (1.0,), n_max=10)
        psi0 = initial_state([1, 0], coherent_fock_amplitudes(0.5, 10))
        with pytest.raises(StructuralError):
            ensemble_average_series(base, gaussian_weight_grid(0.1, 3), psi0, GRID)

    def test_averaged_purity_bounded(self):
        avg = ensemble_average_series(small_field(), gaussian_weight_grid(0.3, 21),
                                      small_psi0(), GRID)
        assert np.all(purity(avg) <= 1 + 1e-12)


class TestScenarios:
    def test_fig6_stronger_mismatch_suppresses_more(self):
        weak = peak_in_window(run_preset("fig6a"), "tangle")
        strong = peak_in_window(run_preset("fig6c"), "tangle")
        assert strong < weak

    def test_fig7_monotone_suppression(self):
        peaks = [peak_in_window(run_preset("fig4"), "tangle")]
        peaks += [peak_in_window(run_preset(n), "tangle") for n in ("fig7a", "fig7b", "fig7c")]
        assert all(b <= a for a, b in zip(peaks, peaks[1:])), peaks

    def test_fig9_survives_weak_but_not_strong_mismatch(self):
        assert peak_in_window(run_preset("fig9b"), "tangle") > 0.1
        assert peak_in_window(run_preset("fig9a", delta_width=0.5), "tangle") < 0.05

    @pytest.mark.parametrize("preset", ["fig7a", "fig7b", "fig7c"])
    def test_61_samples_converged_against_121(self, preset):
        coarse = run_preset(preset)
        fine = run_preset(preset, delta_samples=121)
        assert np.max(np.abs(coarse["tangle"] - fine["tangle"])) < 1e-3
