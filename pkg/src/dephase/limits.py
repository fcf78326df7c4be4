"""Macroscopic weak-coupling limit of the spin-array decoherence factors.

For a long array crossed with a small per-site flip probability q, at fixed
mean excitation number nbar = q * N, the cosine products of the exact engine
collapse to exponentials driven by each particle's fractional progress
through the array.  This module evaluates those closed forms together with
the critical times at which the derived correlation measures change
behaviour, and the initial/final values the correlations approach.
"""
from __future__ import annotations

import math
from typing import NamedTuple, Optional

from scipy.optimize import brentq

from .model import DecoherencePair, ModelParams, UnsupportedConfigurationError

__all__ = [
    "AsymptoticCorrelations",
    "ProgressFractions",
    "amplification_crossover",
    "asymptotic_correlations",
    "discord_entanglement_crossover",
    "discord_sudden_change_time",
    "entry_time",
    "exit_time",
    "limit_f_pair",
    "limit_f_pair_distinct",
    "limit_f_pair_same",
    "limit_f_single",
    "progress_fraction",
    "progress_fractions",
    "second_period_change_time",
    "spin_flip_probability",
    "sudden_death_time",
]


class ProgressFractions(NamedTuple):
    """Fractions of the array each particle has crossed, clamped to [0, 1]."""

    gA: float
    gB: float


class AsymptoticCorrelations(NamedTuple):
    """Initial and final concurrence / discord of the mixture family."""

    c_initial: float
    c_final: float
    d_initial: float
    d_final: float


def spin_flip_probability(coupling_angle: float, mode: str = "exact") -> float:
    """Per-site flip probability for a given tipping angle.

    ``mode="exact"`` returns sin^2(a); ``mode="weak"`` returns the small-angle
    approximation a^2 used when taking the macroscopic limit.
    """
    if mode == "exact":
        return math.sin(coupling_angle) ** 2
    if mode == "weak":
        return coupling_angle**2
    raise ValueError(f"mode must be 'exact' or 'weak', got {mode!r}")


def entry_time(params: ModelParams, particle: str) -> float:
    """Time at which the particle reaches the first array spin."""
    x0 = params.xA if particle == "A" else params.xB
    return (params.x1 - x0) / params.velocity


def exit_time(params: ModelParams, particle: str) -> float:
    """Time at which the particle reaches the last array spin."""
    x0 = params.xA if particle == "A" else params.xB
    return (params.x_last - x0) / params.velocity


def progress_fraction(params: ModelParams, particle: str, t: float) -> float:
    """Fraction of the array behind the particle at time ``t``, in [0, 1]."""
    if particle not in ("A", "B"):
        raise ValueError(f"particle must be 'A' or 'B', got {particle!r}")
    x0 = params.xA if particle == "A" else params.xB
    s = x0 + params.velocity * t - params.x1
    if params.length == 0.0:
        # single-spin array: progress is a pure step
        return 1.0 if s > 0 else 0.0
    return min(max(s / params.length, 0.0), 1.0)


def progress_fractions(params: ModelParams, t: float) -> ProgressFractions:
    return ProgressFractions(
        gA=progress_fraction(params, "A", t),
        gB=progress_fraction(params, "B", t),
    )


def limit_f_single(params: ModelParams, t: float) -> float:
    """Single-particle factor exp(-nbar/2 * gA) in the macroscopic limit."""
    g = progress_fraction(params, "A", t)
    return math.exp(-0.5 * params.mean_excitations * g)


def limit_f_pair_same(params: ModelParams, t: float) -> DecoherencePair:
    """Pair factors when both particles follow the same trajectory.

    The relative factor keeps unit modulus because the tipping angles cancel
    site by site; the joint factor decays at four times the single-particle
    exponent rate.
    """
    if params.xA != params.xB:
        raise UnsupportedConfigurationError(
            f"same-trajectory limit requires xA == xB, got xA={params.xA}, xB={params.xB}"
        )
    g = progress_fraction(params, "A", t)
    nbar = params.mean_excitations
    f1 = complex(math.cos((params.omegaA - params.omegaB) * t), math.sin((params.omegaA - params.omegaB) * t))
    f2_mod = math.exp(-2.0 * nbar * g)
    f2 = f2_mod * complex(math.cos((params.omegaA + params.omegaB) * t), -math.sin((params.omegaA + params.omegaB) * t))
    return DecoherencePair(f1=f1, f2=f2)


def limit_f_pair_distinct(params: ModelParams, t: float) -> DecoherencePair:
    """Pair factors for staggered trajectories.

    With g_hi/g_lo the leading and trailing progress fractions::

        |f1| = exp(-nbar/2 * (g_hi - g_lo))
        |f2| = exp(-nbar/2 * g_hi - 3*nbar/2 * g_lo)

    The relative factor recovers unit modulus once both particles have
    crossed the whole array.
    """
    gA, gB = progress_fractions(params, t)
    g_hi, g_lo = (gA, gB) if gA >= gB else (gB, gA)
    nbar = params.mean_excitations
    f1_mod = math.exp(-0.5 * nbar * (g_hi - g_lo))
    f2_mod = math.exp(-0.5 * nbar * g_hi - 1.5 * nbar * g_lo)
    phase1 = (params.omegaA - params.omegaB) * t
    phase2 = -(params.omegaA + params.omegaB) * t
    f1 = f1_mod * complex(math.cos(phase1), math.sin(phase1))
    f2 = f2_mod * complex(math.cos(phase2), math.sin(phase2))
    return DecoherencePair(f1=f1, f2=f2)


def limit_f_pair(params: ModelParams, t: float) -> DecoherencePair:
    """Dispatch to the same- or distinct-trajectory limit by geometry."""
    if params.xA == params.xB:
        return limit_f_pair_same(params, t)
    return limit_f_pair_distinct(params, t)


def _require_mixture_c3(c3: float) -> None:
    if not abs(c3) < 1.0:
        raise ValueError(f"mixture parameter must satisfy |c3| < 1, got {c3}")


def _require_same_positions(params: ModelParams) -> None:
    if params.xA != params.xB:
        raise UnsupportedConfigurationError(
            f"this critical time is defined for a common trajectory, got xA={params.xA}, xB={params.xB}"
        )


def sudden_death_time(params: ModelParams, c3: float) -> Optional[float]:
    """Time at which the mixture-family concurrence vanishes.

    Only mixtures weighted toward the double-flip coherent component
    (c3 > 0) lose their entanglement; for c3 <= 0 the concurrence stays at
    |c3| forever and ``None`` is returned.
    """
    _require_mixture_c3(c3)
    _require_same_positions(params)
    if c3 <= 0.0:
        return None
    nbar = params.mean_excitations
    scale = params.length / (2.0 * nbar * params.velocity)
    return entry_time(params, "A") - scale * math.log((1.0 - c3) / (1.0 + c3))


def discord_sudden_change_time(params: ModelParams, c3: float) -> Optional[float]:
    """Time of the kink in the mixture-family discord decay.

    The classical-correlation maximisation switches branch only when
    c3 > 1/3; otherwise the decay is smooth and ``None`` is returned.
    """
    _require_mixture_c3(c3)
    _require_same_positions(params)
    if not c3 > 1.0 / 3.0:
        return None
    nbar = params.mean_excitations
    scale = params.length / (2.0 * nbar * params.velocity)
    return entry_time(params, "A") - scale * math.log((3.0 * c3 - 1.0) / (1.0 + c3))


def second_period_change_time(params: ModelParams, c3: float) -> Optional[float]:
    """Discord kink while only the leading particle is inside the array.

    Exists when |c3| exceeds exp(-nbar * d / (2 L)) with d the head start of
    the leading particle; for smaller |c3| the branch switch would fall
    after the trailing particle enters, and ``None`` is returned.
    """
    _require_mixture_c3(c3)
    if c3 == 0.0:
        raise ValueError("mixture parameter c3 must be nonzero for a second-period kink")
    lead = max(params.xA, params.xB)
    lag = min(params.xA, params.xB)
    if lead == lag:
        raise UnsupportedConfigurationError("second-period kink requires staggered trajectories")
    nbar = params.mean_excitations
    threshold = math.exp(-nbar * (lead - lag) / (2.0 * params.length))
    if not abs(c3) > threshold:
        return None
    t_lead_entry = (params.x1 - lead) / params.velocity
    return t_lead_entry - 2.0 * params.length * math.log(abs(c3)) / (nbar * params.velocity)


def asymptotic_correlations(c3: float) -> AsymptoticCorrelations:
    """Initial and long-time concurrence and discord of the mixture family.

    The final values take the joint coherence as fully decayed, which the
    time series approaches once the mean excitation number is large.
    All entropies in bits.
    """
    _require_mixture_c3(c3)
    c_initial = abs(c3)
    c_final = abs(c3) if c3 < 0.0 else 0.0
    d_initial = 0.5 * (1.0 - c3) * math.log2(1.0 - c3) + 0.5 * (1.0 + c3) * math.log2(1.0 + c3)
    theta = max(abs(c3), 0.5 * (1.0 - c3))
    d_final = (
        0.5 * (1.0 - c3) * math.log2(2.0 * (1.0 - c3))
        + 0.5 * (1.0 + c3) * math.log2(1.0 + c3)
        - 0.5 * (1.0 + theta) * math.log2(1.0 + theta)
        - 0.5 * (1.0 - theta) * math.log2(1.0 - theta)
    )
    return AsymptoticCorrelations(c_initial, c_final, d_initial, d_final)


def amplification_crossover() -> float:
    """Mixture parameter below which full dephasing amplifies the discord.

    Root of d_final(c3) == d_initial(c3); located numerically.
    """
    f = lambda c3: asymptotic_correlations(c3).d_final - asymptotic_correlations(c3).d_initial
    return brentq(f, 0.0, 0.999, xtol=1e-12)


def discord_entanglement_crossover() -> float:
    """Negative mixture parameter where final discord equals final concurrence.

    Below the root the surviving entanglement exceeds the discord; located
    numerically.
    """
    f = lambda c3: asymptotic_correlations(c3).d_final - asymptotic_correlations(c3).c_final
    return brentq(f, -0.999, -1e-9, xtol=1e-12)
