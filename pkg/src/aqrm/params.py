"""Parameter and result containers for the asymmetric Rabi ground-state solvers.

The model Hamiltonian is

    H = (delta/2) sigma_z + omega a^dag a + g (a^dag + a) sigma_x + (epsilon/2) sigma_x

and the trial state is a weighted superposition of two displaced (optionally
squeezed) field states entangled with two non-orthogonal qubit states,
parameterized by (alpha, theta, p, gamma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class ModelParams:
    """Physical couplings of the asymmetric quantum Rabi model."""

    delta: float
    omega: float
    g: float
    epsilon: float

    def __post_init__(self):
        for name in ("delta", "omega", "g", "epsilon"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.omega <= 0.0:
            raise ValueError("omega must be positive")


@dataclass(frozen=True)
class VariationalParams:
    """Trial-state parameters: displacement, qubit rotation, weight, squeezing."""

    alpha: float
    theta: float
    p: float
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "theta", "p", "gamma"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.alpha < 0.0:
            raise ValueError("alpha must be >= 0")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError("theta must lie in [0, pi]")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")


@dataclass(frozen=True)
class ObservableSet:
    """Ground-state energy and expectation values of the standard diagnostics."""

    energy: float
    photon_number: float
    sz: float
    sx: float
    correlation: float


@dataclass(frozen=True)
class CanonicalFlags:
    """Reflections applied by canonicalize; needed to restore observable signs."""

    g_flipped: bool = False
    epsilon_flipped: bool = False


def canonicalize(m: ModelParams) -> tuple[ModelParams, CanonicalFlags]:
    """Map couplings to the g >= 0, epsilon >= 0 representative.

    Conjugation by (-1)^(a^dag a) flips the sign of g, and conjugation by the
    parity operator sigma_z (-1)^(a^dag a) flips the sign of epsilon; both leave
    the spectrum unchanged.
    """
    g_flipped = m.g < 0.0
    eps_flipped = m.epsilon < 0.0
    if not (g_flipped or eps_flipped):
        return m, CanonicalFlags()
    return (
        ModelParams(m.delta, m.omega, abs(m.g), abs(m.epsilon)),
        CanonicalFlags(g_flipped=g_flipped, epsilon_flipped=eps_flipped),
    )


def restore_observables(obs: ObservableSet, flags: CanonicalFlags) -> ObservableSet:
    """Undo canonicalize on observables computed in the canonical frame.

    Flipping g negates the qubit-photon correlation; flipping epsilon negates
    the sigma_x orientation. Energy, photon number and sigma_z are invariant.
    """
    corr = -obs.correlation if flags.g_flipped else obs.correlation
    sx = -obs.sx if flags.epsilon_flipped else obs.sx
    return ObservableSet(obs.energy, obs.photon_number, obs.sz, sx, corr)
