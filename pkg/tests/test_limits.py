"""Macroscopic-limit engine: exponential factors, event times, asymptotics."""
from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dephase import (
    ModelParams,
    UnsupportedConfigurationError,
    amplification_crossover,
    asymptotic_correlations,
    chi_branch,
    correlation_timeseries,
    discord_entanglement_crossover,
    discord_sudden_change_time,
    entry_time,
    evolve_two_qubit,
    exit_time,
    limit_f_pair,
    limit_f_pair_distinct,
    limit_f_pair_same,
    limit_f_single,
    mixture_state,
    progress_fraction,
    progress_fractions,
    second_period_change_time,
    spin_flip_probability,
    sudden_death_time,
)

# reference geometry: 1001 spins on [100, 1100], unit spacing and speed
def reference_params(q: float = 0.005, xB: float = 0.0) -> ModelParams:
    return ModelParams.from_flip_probability(q, n_spins=1001, x1=100.0, xA=0.0, xB=xB)


class TestKinematics:
    def test_entry_and_exit(self):
        p = reference_params(xB=-200.0)
        assert entry_time(p, "A") == 100.0
        assert exit_time(p, "A") == 1100.0
        assert entry_time(p, "B") == 300.0
        assert exit_time(p, "B") == 1300.0

    def test_progress_fraction_clamps(self):
        p = reference_params()
        assert progress_fraction(p, "A", 0.0) == 0.0
        assert progress_fraction(p, "A", 100.0) == 0.0
        assert progress_fraction(p, "A", 600.0) == pytest.approx(0.5)
        assert progress_fraction(p, "A", 1100.0) == 1.0
        assert progress_fraction(p, "A", 5000.0) == 1.0

    def test_progress_fractions_pair(self):
        p = reference_params(xB=-200.0)
        g = progress_fractions(p, 600.0)
        assert g.gA == pytest.approx(0.5)
        assert g.gB == pytest.approx(0.3)

    def test_flip_probability_modes(self):
        a = 0.3
        assert spin_flip_probability(a) == pytest.approx(math.sin(0.3) ** 2)
        assert spin_flip_probability(a, mode="weak") == pytest.approx(0.09)
        with pytest.raises(ValueError):
            spin_flip_probability(a, mode="bogus")


class TestLimitFactors:
    def test_single_particle_frozen(self):
        # nbar = 5.005, half way: exp(-5.005/4)
        p = reference_params()
        assert limit_f_single(p, 600.0) == pytest.approx(0.28614688960275325, rel=1e-12)

    def test_same_trajectory_frozen(self):
        p = reference_params()
        pair = limit_f_pair_same(p, 600.0)
        assert abs(pair.f1) == pytest.approx(1.0, abs=1e-15)
        # exp(-2 * 5.005 * 0.5)
        assert abs(pair.f2) == pytest.approx(0.006704341348228926, rel=1e-12)

    def test_distinct_trajectories_frozen(self):
        p = reference_params(xB=-200.0)
        pair = limit_f_pair_distinct(p, 600.0)
        # exp(-5.005/2 * (0.5 - 0.3)) and exp(-5.005/2 * 0.5 - 3*5.005/2 * 0.3)
        assert abs(pair.f1) == pytest.approx(0.606227470186475, rel=1e-12)
        assert abs(pair.f2) == pytest.approx(0.030091877323717063, rel=1e-12)

    def test_distinct_reduces_to_same(self):
        p = reference_params()
        for t in (0.0, 150.0, 600.0, 1100.0, 1300.0):
            same = limit_f_pair_same(p, t)
            dist = limit_f_pair_distinct(p, t)
            assert abs(dist.f1) == pytest.approx(abs(same.f1), abs=1e-14)
            assert abs(dist.f2) == pytest.approx(abs(same.f2), abs=1e-14)

    def test_dispatch_on_geometry(self):
        same = reference_params()
        dist = reference_params(xB=-200.0)
        assert abs(limit_f_pair(same, 600.0).f2) == abs(limit_f_pair_same(same, 600.0).f2)
        assert abs(limit_f_pair(dist, 600.0).f2) == abs(limit_f_pair_distinct(dist, 600.0).f2)
        with pytest.raises(UnsupportedConfigurationError):
            limit_f_pair_same(dist, 600.0)

    def test_phases_carry_qubit_frequencies(self):
        p = ModelParams.from_flip_probability(
            0.005, n_spins=1001, x1=100.0, xA=0.0, xB=0.0, omegaA=0.4, omegaB=-0.1
        )
        t = 600.0
        pair = limit_f_pair(p, t)
        assert np.angle(pair.f1) == pytest.approx(math.remainder((0.4 + 0.1) * t, 2 * math.pi), abs=1e-9)

    @given(t=st.floats(0.0, 1500.0), dt=st.floats(0.0, 1500.0))
    @settings(max_examples=80, deadline=None)
    def test_joint_modulus_never_recovers(self, t, dt):
        p = reference_params(xB=-200.0)
        assert abs(limit_f_pair(p, t + dt).f2) <= abs(limit_f_pair(p, t).f2) + 1e-15

    @given(q=st.floats(1e-4, 0.05), t=st.floats(0.0, 1500.0))
    @settings(max_examples=60, deadline=None)
    def test_moduli_bounded_by_one(self, q, t):
        p = reference_params(q=q, xB=-150.0)
        pair = limit_f_pair(p, t)
        assert abs(pair.f1) <= 1.0 + 1e-12
        assert abs(pair.f2) <= 1.0 + 1e-12


def detect_death(samples) -> float:
    """First grid time at which the concurrence has reached zero."""
    for s in samples:
        if s.concurrence <= 1e-12:
            return s.t
    raise AssertionError("concurrence never died on the grid")


def detect_branch_switch(params, c3, grid) -> list[float]:
    """Grid times at which the classical-correlation branch label flips."""
    initial = mixture_state(c3)
    labels = [
        chi_branch(evolve_two_qubit(initial, limit_f_pair(params, float(t)))) for t in grid
    ]
    return [float(grid[i]) for i in range(1, len(grid)) if labels[i] != labels[i - 1]]


class TestCriticalTimes:
    def test_sudden_death_frozen_and_detected(self):
        p = reference_params()
        t0 = sudden_death_time(p, 0.5)
        assert t0 == pytest.approx(209.75147738942155, rel=1e-12)
        grid = np.linspace(0.0, 400.0, 1601)  # 0.25 steps
        samples = correlation_timeseries(p, mixture_state(0.5), "limit", grid)
        assert abs(detect_death(samples) - t0) <= 0.25 + 1e-9

    def test_no_death_for_negative_c3(self):
        p = reference_params()
        assert sudden_death_time(p, -0.5) is None
        assert sudden_death_time(p, 0.0) is None
        grid = np.linspace(0.0, 1300.0, 261)
        samples = correlation_timeseries(p, mixture_state(-0.5), "limit", grid)
        assert min(s.concurrence for s in samples) >= 0.5 - 1e-9

    def test_discord_kink_frozen_and_detected(self):
        p = reference_params()
        tc = discord_sudden_change_time(p, 0.7)
        assert tc == pytest.approx(143.48831880697762, rel=1e-12)
        grid = np.linspace(100.0, 200.0, 401)  # 0.25 steps
        switches = detect_branch_switch(p, 0.7, grid)
        assert len(switches) == 1
        assert abs(switches[0] - tc) <= 0.25 + 1e-9

    def test_no_kink_below_third(self):
        p = reference_params()
        assert discord_sudden_change_time(p, 1.0 / 3.0) is None
        assert discord_sudden_change_time(p, 0.2) is None
        assert discord_sudden_change_time(p, -0.9) is None
        switches = detect_branch_switch(p, 0.2, np.linspace(0.0, 1300.0, 1301))
        assert switches == []

    def test_staggered_kink_frozen_and_detected(self):
        p = reference_params(xB=-200.0)
        tbar = second_period_change_time(p, -0.8)
        assert tbar == pytest.approx(189.16825227341047, rel=1e-12)
        # window where only the leading particle is inside the array
        grid = np.linspace(100.0, 300.0, 801)
        switches = detect_branch_switch(p, -0.8, grid)
        assert any(abs(s - tbar) <= 0.25 + 1e-9 for s in switches)

    def test_staggered_kink_threshold(self):
        p = reference_params(xB=-200.0)
        # threshold exp(-nbar * 200 / 2000) = exp(-0.5005)
        threshold = math.exp(-0.5005)
        assert threshold == pytest.approx(0.6062274701864752, rel=1e-12)
        assert second_period_change_time(p, -0.5) is None
        assert second_period_change_time(p, threshold * 0.999) is None
        assert second_period_change_time(p, threshold * 1.001) is not None

    def test_staggered_kink_domain_errors(self):
        p = reference_params(xB=-200.0)
        with pytest.raises(ValueError):
            second_period_change_time(p, 0.0)
        with pytest.raises(ValueError):
            second_period_change_time(p, 1.0)
        with pytest.raises(UnsupportedConfigurationError):
            second_period_change_time(reference_params(), -0.8)

    def test_same_position_required_for_first_period_times(self):
        p = reference_params(xB=-200.0)
        with pytest.raises(UnsupportedConfigurationError):
            sudden_death_time(p, 0.5)
        with pytest.raises(UnsupportedConfigurationError):
            discord_sudden_change_time(p, 0.7)

    @given(c3=st.floats(0.01, 0.99))
    @settings(max_examples=60, deadline=None)
    def test_death_time_is_exact_root(self, c3):
        # at t0 the inner corner bound equals the outer coherence
        p = reference_params()
        t0 = sudden_death_time(p, c3)
        pair = limit_f_pair(p, t0)
        lhs = (1.0 + c3) * abs(pair.f2)
        rhs = 1.0 - c3
        assert lhs == pytest.approx(rhs, rel=1e-9)


class TestAsymptotics:
    def test_initial_values_match_entropy_formula(self):
        a = asymptotic_correlations(0.5)
        assert a.c_initial == 0.5
        d0 = 0.5 * 0.5 * math.log2(0.5) + 0.5 * 1.5 * math.log2(1.5)
        assert a.d_initial == pytest.approx(d0, abs=1e-15)

    def test_final_discord_at_zero_frozen(self):
        # 1.5 - 0.75 * log2(3)
        a = asymptotic_correlations(0.0)
        assert a.d_final == pytest.approx(1.5 - 0.75 * math.log2(3.0), abs=1e-15)
        assert a.d_final == pytest.approx(0.31127812445913283, abs=1e-15)
        assert a.d_initial == 0.0
        assert a.c_initial == 0.0 and a.c_final == 0.0

    def test_final_concurrence_sign_split(self):
        assert asymptotic_correlations(-0.7).c_final == pytest.approx(0.7)
        assert asymptotic_correlations(0.7).c_final == 0.0

    def test_series_approaches_asymptote_when_decay_is_deep(self):
        # nbar = 12.012: the residual joint coherence exp(-2 nbar) shifts
        # the discord by well under 1e-9 bits
        p = reference_params(q=0.012)
        grid = np.array([0.0, 1300.0])
        for c3 in np.linspace(-0.9, 0.9, 19):
            a = asymptotic_correlations(float(c3))
            first, last = correlation_timeseries(p, mixture_state(float(c3)), "limit", grid)
            assert first.concurrence == pytest.approx(a.c_initial, abs=1e-12)
            assert first.discord == pytest.approx(a.d_initial, abs=1e-9)
            assert last.concurrence == pytest.approx(a.c_final, abs=1e-12)
            assert last.discord == pytest.approx(a.d_final, abs=1e-9)

    def test_shallow_decay_leaves_visible_residual(self):
        # at nbar = 5.005 the saturated joint coherence still moves the
        # discord by more than 1e-6 bits near c3 = -0.1; this pins the
        # coupling choice used by the deep-decay checks above
        p = reference_params(q=0.005)
        a = asymptotic_correlations(-0.1)
        (last,) = correlation_timeseries(p, mixture_state(-0.1), "limit", np.array([1300.0]))
        gap = abs(last.discord - a.d_final)
        assert 1e-6 < gap < 1e-4

    def test_amplification_crossover(self):
        c = amplification_crossover()
        assert c == pytest.approx(0.5458156095612938, abs=1e-9)
        a = asymptotic_correlations(c)
        assert a.d_final == pytest.approx(a.d_initial, abs=1e-10)
        below = asymptotic_correlations(c - 0.05)
        above = asymptotic_correlations(c + 0.05)
        assert below.d_final > below.d_initial
        assert above.d_final < above.d_initial

    def test_discord_entanglement_crossover(self):
        c = discord_entanglement_crossover()
        assert c == pytest.approx(-0.4589588117376369, abs=1e-9)
        a = asymptotic_correlations(c)
        assert a.d_final == pytest.approx(a.c_final, abs=1e-10)
        deeper = asymptotic_correlations(c - 0.05)
        assert deeper.c_final > deeper.d_final

    @given(c3=st.floats(-0.99, 0.99))
    @settings(max_examples=100, deadline=None)
    def test_asymptotes_stay_in_range(self, c3):
        a = asymptotic_correlations(c3)
        assert 0.0 <= a.c_initial <= 1.0
        assert 0.0 <= a.c_final <= a.c_initial + 1e-15
        assert -1e-12 <= a.d_initial <= 1.0
        assert -1e-12 <= a.d_final <= 1.0
