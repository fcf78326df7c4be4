"""Two-qubit state families and their evolution under pure dephasing.

The initial states handled here are Bell-diagonal, parameterised by the
three correlation coefficients (c1, c2, c3) of the spin-spin expectation
values.  Dephasing by the spin array never touches the populations; it only
scales the two anti-diagonal coherences, so every evolved state is an
X-shaped matrix determined by the populations plus those two corners.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import DecoherencePair

__all__ = [
    "BellDiagonalState",
    "InvalidStateError",
    "QubitState",
    "XState",
    "evolve_single_qubit",
    "evolve_two_qubit",
    "make_bell_diagonal",
    "mixture_state",
]

_EIG_TOL = 1e-12
_SUM_TOL = 1e-9


class InvalidStateError(ValueError):
    """Raised when state parameters violate positivity or normalisation."""


@dataclass(frozen=True)
class BellDiagonalState:
    """Bell-diagonal two-qubit state with correlation coefficients c1, c2, c3."""

    c1: float
    c2: float
    c3: float

    def eigenvalues(self) -> tuple[float, float, float, float]:
        """Weights of the four Bell projectors, in a fixed order."""
        c1, c2, c3 = self.c1, self.c2, self.c3
        return (
            0.25 * (1.0 - c1 - c2 - c3),
            0.25 * (1.0 - c1 + c2 + c3),
            0.25 * (1.0 + c1 - c2 + c3),
            0.25 * (1.0 + c1 + c2 - c3),
        )

    def __post_init__(self) -> None:
        worst = min(self.eigenvalues())
        if worst < -_EIG_TOL:
            raise InvalidStateError(
                f"correlation coefficients ({self.c1}, {self.c2}, {self.c3}) "
                f"give a negative eigenvalue {worst}"
            )


def make_bell_diagonal(c1: float, c2: float, c3: float) -> BellDiagonalState:
    """Validated Bell-diagonal state from its three correlation coefficients."""
    return BellDiagonalState(c1, c2, c3)


def mixture_state(c3: float, sign: int = 1) -> BellDiagonalState:
    """One-parameter mixture of a double-flip and a single-flip Bell pair.

    Weights (1+c3)/2 and (1-c3)/2 respectively, with ``sign`` selecting
    which of the two Bell pairs of each kind enters.  Requires |c3| < 1.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    if not abs(c3) < 1.0:
        raise ValueError(f"mixture parameter must satisfy |c3| < 1, got {c3}")
    return BellDiagonalState(float(sign), -float(sign) * c3, c3)


@dataclass(frozen=True)
class XState:
    """X-shaped two-qubit density matrix in the product basis 00,01,10,11.

    ``p1..p4`` are the populations; ``r14`` is the 00-11 corner and ``r23``
    the 01-10 corner.  Construction validates positivity of both 2x2
    blocks, with eigenvalue dust inside a small tolerance clamped to zero.
    """

    p1: float
    p2: float
    p3: float
    p4: float
    r14: complex
    r23: complex

    def __post_init__(self) -> None:
        pops = (self.p1, self.p2, self.p3, self.p4)
        for label, p in zip(("p1", "p2", "p3", "p4"), pops):
            if p < -_EIG_TOL:
                raise InvalidStateError(f"population {label}={p} is negative")
            if p < 0.0:
                object.__setattr__(self, label, 0.0)
        total = self.p1 + self.p2 + self.p3 + self.p4
        if abs(total - 1.0) > _SUM_TOL:
            raise InvalidStateError(f"populations sum to {total}, expected 1")
        if abs(self.r14) > math.sqrt(self.p1 * self.p4) + _EIG_TOL:
            raise InvalidStateError(
                f"corner coherence |r14|={abs(self.r14)} exceeds sqrt(p1*p4)={math.sqrt(self.p1 * self.p4)}"
            )
        if abs(self.r23) > math.sqrt(self.p2 * self.p3) + _EIG_TOL:
            raise InvalidStateError(
                f"corner coherence |r23|={abs(self.r23)} exceeds sqrt(p2*p3)={math.sqrt(self.p2 * self.p3)}"
            )

    def to_matrix(self) -> np.ndarray:
        """Dense 4x4 density matrix."""
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3] = self.p1, self.p2, self.p3, self.p4
        rho[0, 3] = self.r14
        rho[3, 0] = np.conj(self.r14)
        rho[1, 2] = self.r23
        rho[2, 1] = np.conj(self.r23)
        return rho


def evolve_two_qubit(state: BellDiagonalState, factors: DecoherencePair) -> XState:
    """Dephased state of a Bell-diagonal pair after scaling its coherences.

    Populations are untouched; the 01-10 corner is scaled by the relative
    factor and the 00-11 corner by the joint one.
    """
    c1, c2, c3 = state.c1, state.c2, state.c3
    p_outer = 0.25 * (1.0 + c3)
    p_inner = 0.25 * (1.0 - c3)
    r14 = 0.25 * (c1 - c2) * factors.f2
    r23 = 0.25 * np.conj((c1 + c2) * factors.f1)
    return XState(p1=p_outer, p2=p_inner, p3=p_inner, p4=p_outer, r14=r14, r23=r23)


@dataclass(frozen=True, eq=False)
class QubitState:
    """Single-qubit density matrix wrapper with basic physicality checks."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise InvalidStateError(f"expected a 2x2 matrix, got shape {m.shape}")
        if not np.allclose(m, m.conj().T, atol=1e-9):
            raise InvalidStateError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > _SUM_TOL:
            raise InvalidStateError(f"trace is {np.trace(m).real}, expected 1")
        if np.linalg.eigvalsh(m).min() < -1e-10:
            raise InvalidStateError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "matrix", m)

    @property
    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


def evolve_single_qubit(c0: complex, c1: complex, factor: float) -> QubitState:
    """Dephased qubit that started in the pure state c0|0> + c1|1>.

    The populations survive and the coherence is scaled by the real
    decoherence factor.  Amplitudes must be normalised.
    """
    norm = abs(c0) ** 2 + abs(c1) ** 2
    if abs(norm - 1.0) > _SUM_TOL:
        raise ValueError(f"amplitudes must be normalised, |c0|^2+|c1|^2 = {norm}")
    off = c1 * np.conj(c0) * factor
    rho = np.array(
        [
            [abs(c0) ** 2, np.conj(off)],
            [off, abs(c1) ** 2],
        ],
        dtype=complex,
    )
    return QubitState(rho)
