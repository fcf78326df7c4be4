"""Entanglement and discord measures for dephased two-qubit states.

Closed forms exploit the X shape of every state produced by the dephasing
channel: the relevant eigenvalues, the concurrence and the measured
classical correlation all reduce to elementary expressions in the
populations and the two corner coherences.  Brute-force counterparts
(full-matrix spin-flip concurrence, measurement-sweep discord) are kept
alongside them as independent cross-checks.  All entropies are in bits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar

from .limits import limit_f_pair
from .model import ModelParams, exact_f_pair
from .states import BellDiagonalState, XState, evolve_two_qubit

__all__ = [
    "CorrelationSample",
    "MeasurementAngles",
    "UnsupportedStateError",
    "chi_branch",
    "classical_correlation",
    "concurrence_general",
    "concurrence_x",
    "correlation_timeseries",
    "discord_bruteforce",
    "discord_closed",
    "mutual_information",
    "von_neumann_entropy",
]

_NEG_EIG_TOL = 1e-10
_DISCORD_CLAMP = 1e-9

# sigma_y (x) sigma_y, the spin-flip kernel of the two-qubit concurrence
_SPIN_FLIP = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ],
    dtype=complex,
)


class UnsupportedStateError(ValueError):
    """Raised when a closed form is applied outside its state family."""


def _plogp(x: np.ndarray) -> np.ndarray:
    """x * log2(x) elementwise with the 0 log 0 = 0 convention."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(x > 0.0, x * np.log2(np.where(x > 0.0, x, 1.0)), 0.0)


def von_neumann_entropy(state) -> float:
    """Entropy in bits of a density matrix or of a probability spectrum.

    Parameters
    ----------
    state : array_like
        Either a Hermitian density matrix (2-D) or its eigenvalue
        spectrum (1-D).  Eigenvalues may carry numerical dust down to
        -1e-10; anything more negative is rejected.
    """
    arr = np.asarray(state)
    if arr.ndim == 2:
        if arr.shape[0] != arr.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {arr.shape}")
        if not np.allclose(arr, arr.conj().T, atol=1e-9):
            raise ValueError("density matrix input must be Hermitian")
        spectrum = np.linalg.eigvalsh(arr)
    elif arr.ndim == 1:
        spectrum = np.real(arr).astype(float)
    else:
        raise ValueError(f"expected a matrix or a spectrum, got ndim={arr.ndim}")
    low = float(spectrum.min()) if spectrum.size else 0.0
    if low < -_NEG_EIG_TOL:
        raise ValueError(f"spectrum has negative eigenvalue {low}")
    return float(-np.sum(_plogp(np.clip(spectrum, 0.0, None))))


# ---------------------------------------------------------------------------
# closed forms on balanced X states
# ---------------------------------------------------------------------------

def _balanced_invariants(x: XState) -> tuple[float, float, float]:
    """(c3, 4|r23|, 4|r14|) after checking both marginals are maximally mixed."""
    if abs(x.p1 + x.p2 - 0.5) > 1e-9 or abs(x.p1 + x.p3 - 0.5) > 1e-9:
        raise UnsupportedStateError(
            "closed forms require maximally mixed marginals "
            f"(populations {x.p1}, {x.p2}, {x.p3}, {x.p4})"
        )
    return 4.0 * x.p1 - 1.0, 4.0 * abs(x.r23), 4.0 * abs(x.r14)


def mutual_information(x: XState) -> float:
    """Total correlation of a balanced X state, in bits.

    Both marginals are maximally mixed, so this is 2 minus the joint
    entropy, with the four joint eigenvalues available in closed form.
    """
    c3, big1, big2 = _balanced_invariants(x)
    lams = np.array(
        [
            0.25 * (1.0 - c3 + big1),
            0.25 * (1.0 - c3 - big1),
            0.25 * (1.0 + c3 + big2),
            0.25 * (1.0 + c3 - big2),
        ]
    )
    return float(2.0 + np.sum(_plogp(np.clip(lams, 0.0, None))))


def _chi(x: XState) -> tuple[float, float, float]:
    c3, big1, big2 = _balanced_invariants(x)
    return abs(c3), 0.5 * (big1 + big2), c3


def classical_correlation(x: XState) -> float:
    """Correlation extractable by the best projective measurement, in bits."""
    zz, xy, _ = _chi(x)
    chi = max(zz, xy)
    return float(0.5 * (_plogp(1.0 + chi) + _plogp(1.0 - chi)))


def chi_branch(x: XState) -> str:
    """Which term wins the classical-correlation maximisation.

    Returns ``"xy"`` while the mean corner coherence dominates and
    ``"zz"`` once the static population correlation takes over.  The
    switch of this label locates the sudden-change kinks of the discord.
    """
    zz, xy, _ = _chi(x)
    return "xy" if xy > zz else "zz"


def discord_closed(x: XState) -> float:
    """Quantum discord of a balanced X state, in bits.

    Difference of :func:`mutual_information` and
    :func:`classical_correlation`; negative dust within 1e-9 is clamped
    to zero and anything beyond that is treated as an internal error.
    """
    d = mutual_information(x) - classical_correlation(x)
    if d < -_DISCORD_CLAMP:
        raise RuntimeError(f"classical correlation exceeds mutual information by {-d}")
    return max(d, 0.0)


def concurrence_x(x: XState) -> float:
    """Concurrence of an X-shaped density matrix."""
    inner = abs(x.r14) - math.sqrt(x.p2 * x.p3)
    outer = abs(x.r23) - math.sqrt(x.p1 * x.p4)
    return 2.0 * max(0.0, inner, outer)


def _validate_density(rho: np.ndarray) -> None:
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=1e-9):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-9:
        raise ValueError(f"density matrix trace is {np.trace(rho).real}, expected 1")
    low = float(np.linalg.eigvalsh(rho).min())
    if low < -_NEG_EIG_TOL:
        raise ValueError(f"density matrix has negative eigenvalue {low}")


def concurrence_general(rho) -> float:
    """Concurrence of an arbitrary two-qubit density matrix.

    Square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy),
    sorted decreasingly; the concurrence is the largest minus the rest,
    floored at zero.  Serves as the structure-free cross-check for
    :func:`concurrence_x`.
    """
    rho = np.asarray(rho, dtype=complex)
    _validate_density(rho)
    flipped = _SPIN_FLIP @ rho.conj() @ _SPIN_FLIP
    eig = np.linalg.eigvals(rho @ flipped)
    lams = np.sort(np.sqrt(np.clip(eig.real, 0.0, None)))[::-1]
    return float(max(0.0, lams[0] - lams[1] - lams[2] - lams[3]))


# ---------------------------------------------------------------------------
# measurement-sweep discord
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MeasurementAngles:
    """Projective measurement direction on the Bloch sphere.

    The measured basis is ``cos(theta)|0> + e^{i phi} sin(theta)|1>`` and
    its orthogonal complement, with theta in [0, pi/2] and phi in [0, 2 pi).
    """

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= math.pi / 2:
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")

    def kets(self) -> tuple[np.ndarray, np.ndarray]:
        k1, k2 = _measurement_kets(self.theta, self.phi)
        return k1, k2


def _measurement_kets(theta, phi) -> tuple[np.ndarray, np.ndarray]:
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    ct, st = np.cos(theta), np.sin(theta)
    ph = np.exp(1j * phi)
    k1 = np.stack([ct + 0j * ph, ph * st], axis=-1)
    k2 = np.stack([np.conj(ph) * st, -ct + 0j * ph], axis=-1)
    return k1, k2


@lru_cache(maxsize=4)
def _grid_kets(n_theta: int, n_phi: int):
    thetas = np.linspace(0.0, math.pi / 2, n_theta)
    phis = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    tg, pg = np.meshgrid(thetas, phis, indexing="ij")
    k1, k2 = _measurement_kets(tg.ravel(), pg.ravel())
    return tg.ravel(), pg.ravel(), k1, k2


def _held_information(rho4: np.ndarray, s_held: float, k1: np.ndarray, k2: np.ndarray):
    """Information about the held qubit revealed by measuring the other.

    ``rho4`` is the density matrix reshaped to (2, 2, 2, 2) with the
    measured subsystem second; ``k1``/``k2`` are (..., 2) batches of
    orthonormal measurement kets.
    """
    avg_cond = 0.0
    for ket in (k1, k2):
        cond = np.einsum("abcd,...b,...d->...ac", rho4, ket.conj(), ket)
        a00 = cond[..., 0, 0].real
        a11 = cond[..., 1, 1].real
        prob = a00 + a11
        rad = np.sqrt(np.maximum((0.5 * (a00 - a11)) ** 2 + np.abs(cond[..., 0, 1]) ** 2, 0.0))
        hi = np.maximum(0.5 * prob + rad, 0.0)
        lo = np.maximum(0.5 * prob - rad, 0.0)
        # prob * S(cond / prob) rewritten to stay finite as prob -> 0
        avg_cond = avg_cond + (-(_plogp(hi) + _plogp(lo)) + _plogp(prob))
    return s_held - avg_cond


def discord_bruteforce(
    rho,
    n_theta: int = 181,
    n_phi: int = 360,
    measured: str = "B",
    refine_tol: float = 1e-8,
) -> float:
    """Quantum discord by direct maximisation over projective measurements.

    Sweeps an (n_theta x n_phi) grid of measurement directions on the
    chosen subsystem, then polishes the best grid point by alternating
    bounded line searches in each angle until the objective improves by
    less than ``refine_tol``.  Independent of every X-state closed form,
    which is the point: it is the oracle those are checked against.
    """
    rho = np.asarray(rho, dtype=complex)
    _validate_density(rho)
    rho4 = rho.reshape(2, 2, 2, 2)
    if measured == "A":
        rho4 = rho4.transpose(1, 0, 3, 2)
    elif measured != "B":
        raise ValueError(f"measured must be 'A' or 'B', got {measured!r}")
    held = np.einsum("abcb->ac", rho4)
    meas = np.einsum("abad->bd", rho4)
    s_held = von_neumann_entropy(held)
    mutual = s_held + von_neumann_entropy(meas) - von_neumann_entropy(rho)

    tg, pg, k1, k2 = _grid_kets(n_theta, n_phi)
    values = _held_information(rho4, s_held, k1, k2)
    best = int(np.argmax(values))
    theta, phi = float(tg[best]), float(pg[best])
    value = float(values[best])

    def objective(th: float, ph: float) -> float:
        ket1, ket2 = _measurement_kets(th, ph)
        return float(_held_information(rho4, s_held, ket1, ket2))

    for _ in range(60):
        previous = value
        res = minimize_scalar(
            lambda th: -objective(th, phi),
            bounds=(0.0, math.pi / 2),
            method="bounded",
            options={"xatol": 1e-8},
        )
        if -res.fun > value:
            theta, value = float(res.x), float(-res.fun)
        res = minimize_scalar(
            lambda ph: -objective(theta, ph),
            bounds=(0.0, 2.0 * math.pi),
            method="bounded",
            options={"xatol": 1e-8},
        )
        if -res.fun > value:
            phi, value = float(res.x), float(-res.fun)
        if value - previous < refine_tol:
            break
    return float(mutual - value)


# ---------------------------------------------------------------------------
# time series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorrelationSample:
    """All correlation measures of the evolved pair at one instant."""

    t: float
    concurrence: float
    discord: float
    mutual_info: float
    classical_corr: float
    abs_f1: float
    abs_f2: float


def correlation_timeseries(
    params: ModelParams,
    initial: BellDiagonalState,
    engine: str,
    grid,
) -> list[CorrelationSample]:
    """Correlation measures along a time grid.

    ``engine="exact"`` evaluates the finite-N cosine products,
    ``engine="limit"`` the macroscopic closed forms (dispatching on
    whether the two trajectories coincide).  The grid must be strictly
    increasing.
    """
    times = np.asarray(grid, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("time grid must be a nonempty 1-D array")
    if np.any(np.diff(times) <= 0.0):
        raise ValueError("time grid must be strictly increasing")
    if engine == "exact":
        factor_fn = exact_f_pair
    elif engine == "limit":
        factor_fn = limit_f_pair
    else:
        raise ValueError(f"engine must be 'exact' or 'limit', got {engine!r}")

    samples: list[CorrelationSample] = []
    for t in times:
        factors = factor_fn(params, float(t))
        x = evolve_two_qubit(initial, factors)
        info = mutual_information(x)
        classical = classical_correlation(x)
        d = info - classical
        if d < -_DISCORD_CLAMP:
            raise RuntimeError(f"classical correlation exceeds mutual information by {-d}")
        samples.append(
            CorrelationSample(
                t=float(t),
                concurrence=concurrence_x(x),
                discord=max(d, 0.0),
                mutual_info=info,
                classical_corr=classical,
                abs_f1=abs(factors.f1),
                abs_f2=abs(factors.f2),
            )
        )
    return samples
