"""Shared fixtures: seeded RNG and well-conditioned random state factories."""
from __future__ import annotations

import numpy as np
import pytest

from dephase import BellDiagonalState, DecoherencePair, InvalidStateError, XState, evolve_two_qubit


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)


def random_bell_diagonal(rng: np.random.Generator, margin: float = 0.0) -> BellDiagonalState:
    """Uniform sample from the Bell-diagonal tetrahedron, by rejection.

    ``margin`` keeps every Bell weight at least that far from zero, which
    keeps downstream spectral computations well conditioned.
    """
    while True:
        c1, c2, c3 = rng.uniform(-1.0, 1.0, size=3)
        try:
            state = BellDiagonalState(c1, c2, c3)
        except InvalidStateError:
            continue
        if min(state.eigenvalues()) >= margin:
            return state


def random_factors(rng: np.random.Generator) -> DecoherencePair:
    """Random dephasing pair with independent moduli in [0, 1] and phases."""
    m1, m2 = rng.uniform(0.0, 1.0, size=2)
    ph1, ph2 = rng.uniform(0.0, 2.0 * np.pi, size=2)
    return DecoherencePair(f1=m1 * np.exp(1j * ph1), f2=m2 * np.exp(1j * ph2))


def random_evolved_state(rng: np.random.Generator, margin: float = 0.0) -> XState:
    """A dephased Bell-diagonal state with random coefficients and factors."""
    return evolve_two_qubit(random_bell_diagonal(rng, margin), random_factors(rng))


PAULI = {
    "x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


def bell_diagonal_matrix(state: BellDiagonalState) -> np.ndarray:
    """Dense density matrix (I + sum_i c_i s_i x s_i) / 4, built by kron."""
    rho = np.eye(4, dtype=complex)
    for c, axis in zip((state.c1, state.c2, state.c3), "xyz"):
        rho += c * np.kron(PAULI[axis], PAULI[axis])
    return rho / 4.0
