"""Exact finite-N decoherence factors for two particles crossing a spin array.

Two spin-1/2 particles (labelled A and B) travel at a common constant speed
past a one-dimensional array of N environment spins.  Each environment spin
that a particle has passed is tipped by a fixed angle, so the environment
overlap that multiplies each qubit coherence reduces to a product of one
cosine per site.  Because every site contributes the same angle, the products
collapse to closed-form integer powers, which is how this module evaluates
them.  Sites are counted with the convention that a spin located exactly at a
particle's current position has not been passed yet.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

__all__ = [
    "DecoherencePair",
    "ModelParams",
    "UnsupportedConfigurationError",
    "exact_f_pair",
    "exact_f_single",
    "heaviside",
    "passed_count",
    "spin_position",
    "tipping_angle",
]

_MODULUS_TOL = 1e-12


class UnsupportedConfigurationError(ValueError):
    """Raised for parameter combinations the engines do not model."""


@dataclass(frozen=True)
class ModelParams:
    """Geometry, coupling and motion parameters shared by both engines.

    Parameters
    ----------
    n_spins : int
        Number of environment spins in the array (N >= 1).
    coupling_angle : float
        Tipping angle, in radians, imprinted on each environment spin a
        particle passes.  The per-site flip probability is sin^2 of it.
    x1 : float
        Position of the first array spin.  Spin n sits at
        ``x1 + (n - 1) * spacing``.
    xA, xB : float
        Initial particle positions.  Both must start before the array,
        i.e. strictly left of ``x1``.
    spacing : float
        Distance between neighbouring array spins (default 1).
    velocity : float
        Common particle speed, in spacings per unit time (default 1).
    omegaA, omegaB : float
        Free precession frequencies of the two qubits.  They only rotate
        the phases of the pair factors.
    array_frequency : float
        Level splitting of the environment spins.  Kept for completeness;
        it drops out of every quantity computed here.
    """

    n_spins: int
    coupling_angle: float
    x1: float
    xA: float
    xB: float
    spacing: float = 1.0
    velocity: float = 1.0
    omegaA: float = 0.0
    omegaB: float = 0.0
    array_frequency: float = 0.0

    def __post_init__(self) -> None:
        if not isinstance(self.n_spins, int) or self.n_spins < 1:
            raise ValueError(f"n_spins must be a positive integer, got {self.n_spins!r}")
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        if not self.velocity > 0:
            raise ValueError(f"velocity must be positive, got {self.velocity}")
        if not self.xA < self.x1:
            raise ValueError(f"particle A must start before the array: xA={self.xA} >= x1={self.x1}")
        if not self.xB < self.x1:
            raise ValueError(f"particle B must start before the array: xB={self.xB} >= x1={self.x1}")

    @classmethod
    def from_flip_probability(cls, q: float, **kwargs) -> "ModelParams":
        """Build parameters from a per-site flip probability ``q = sin^2(a)``."""
        if not 0.0 <= q <= 1.0:
            raise ValueError(f"flip probability must lie in [0, 1], got {q}")
        return cls(coupling_angle=math.asin(math.sqrt(q)), **kwargs)

    @property
    def flip_probability(self) -> float:
        """Probability sin^2(a) that a passed spin is flipped."""
        return math.sin(self.coupling_angle) ** 2

    @property
    def mean_excitations(self) -> float:
        """Mean number of flipped array spins after a full crossing, q * N."""
        return self.flip_probability * self.n_spins

    @property
    def x_last(self) -> float:
        """Position of the final array spin."""
        return self.x1 + (self.n_spins - 1) * self.spacing

    @property
    def length(self) -> float:
        """Extent of the array, x_last - x1 (zero for a single spin)."""
        return (self.n_spins - 1) * self.spacing


@dataclass(frozen=True)
class DecoherencePair:
    """The two complex factors that scale the off-diagonal pair coherences.

    ``f1`` multiplies the one-flip coherences (|01><10| sector) and ``f2``
    the double-flip coherence (|00><11| sector).  Both have modulus at
    most one for any physical configuration.
    """

    f1: complex
    f2: complex

    def __post_init__(self) -> None:
        if abs(self.f1) > 1.0 + _MODULUS_TOL or abs(self.f2) > 1.0 + _MODULUS_TOL:
            raise ValueError(
                f"decoherence factors must have modulus <= 1, got |f1|={abs(self.f1)}, |f2|={abs(self.f2)}"
            )


def _start_position(params: ModelParams, particle: str) -> float:
    if particle == "A":
        return params.xA
    if particle == "B":
        return params.xB
    raise ValueError(f"particle must be 'A' or 'B', got {particle!r}")


def spin_position(params: ModelParams, n: int) -> float:
    """Position of array spin ``n`` (1-based)."""
    if not 1 <= n <= params.n_spins:
        raise ValueError(f"spin index must lie in [1, {params.n_spins}], got {n}")
    return params.x1 + (n - 1) * params.spacing


def heaviside(y: float) -> int:
    """Unit step with the convention heaviside(0) == 0."""
    return 1 if y > 0 else 0


def tipping_angle(params: ModelParams, particle: str, n: int, t: float) -> float:
    """Angle imprinted on spin ``n`` by the given particle at time ``t``.

    Zero until the particle has moved strictly past the spin, the full
    coupling angle afterwards.
    """
    x0 = _start_position(params, particle)
    return params.coupling_angle * heaviside(x0 + params.velocity * t - spin_position(params, n))


def passed_count(params: ModelParams, particle: str, t: float) -> int:
    """Number of array spins strictly behind the particle at time ``t``."""
    x0 = _start_position(params, particle)
    s = x0 + params.velocity * t - params.x1
    if s <= 0:
        return 0
    # spins k = 0 .. N-1 sit at k*spacing past x1; k*spacing < s <=> k < s/spacing
    count = math.ceil(s / params.spacing)
    return min(count, params.n_spins)


def exact_f_single(params: ModelParams, t: float) -> float:
    """Single-particle decoherence factor, (cos a)^m with m spins passed.

    Uses particle A.  Equal to the product of per-site cosine overlaps,
    since each passed site contributes cos(a) and untouched sites
    contribute 1.
    """
    m = passed_count(params, "A", t)
    return math.cos(params.coupling_angle) ** m


def exact_f_pair(params: ModelParams, t: float) -> DecoherencePair:
    """Both pair decoherence factors at time ``t``.

    Sites passed by both particles carry tipping angles that cancel in the
    relative factor and add in the joint one, so with m_A, m_B passed
    counts::

        |f1| = cos(a) ** |m_A - m_B|
        |f2| = cos(2a) ** min(m_A, m_B) * cos(a) ** |m_A - m_B|

    multiplied by the free precession phases exp(+i (wA - wB) t) and
    exp(-i (wA + wB) t) respectively.
    """
    a = params.coupling_angle
    m_a = passed_count(params, "A", t)
    m_b = passed_count(params, "B", t)
    shared = min(m_a, m_b)
    solo = abs(m_a - m_b)
    f1 = cmath.exp(1j * (params.omegaA - params.omegaB) * t) * math.cos(a) ** solo
    f2 = (
        cmath.exp(-1j * (params.omegaA + params.omegaB) * t)
        * math.cos(2.0 * a) ** shared
        * math.cos(a) ** solo
    )
    return DecoherencePair(f1=f1, f2=f2)
