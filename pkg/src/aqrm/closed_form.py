"""Closed-form expressions for the non-orthogonal-qubit trial state.

Everything here is an analytic function of the trial parameters
(alpha, theta, p, gamma) and, for the energy, of the model couplings. The
brute-force Fock-space versions of the same quantities live in ``exact`` and
are used as an independent cross-check in the test suite.
"""

from __future__ import annotations

import math

from . import _kernels
from .errors import DegenerateState
from .params import ModelParams, ObservableSet, VariationalParams

NORM_FLOOR = _kernels.NORM_FLOOR


def normalization(v: VariationalParams) -> float:
    """Self-overlap N = 1 - 2 p sqrt(1-p^2) e^(-2 alpha^2) cos(theta).

    Raises DegenerateState when the trial state collapses to the zero vector
    (the alpha = 0, theta -> 0, p -> 1/sqrt(2) corner).
    """
    nrm = _kernels.normalization(v.alpha, v.theta, v.p)
    if nrm <= NORM_FLOOR:
        raise DegenerateState(
            f"trial-state norm {nrm:.3e} at alpha={v.alpha}, theta={v.theta}, p={v.p}"
        )
    return nrm


def atomic_population(v: VariationalParams) -> float:
    """<sigma_z>, in the regularized form (cos th - 2 p q e^(-2 a^2)) / N."""
    normalization(v)
    return _kernels.sigma_z(v.alpha, v.theta, v.p)


def photon_number(v: VariationalParams) -> float:
    """<a^dag a>, squeezing-aware."""
    normalization(v)
    return _kernels.photon_number(v.alpha, v.theta, v.p, v.gamma)


def correlation(v: VariationalParams) -> float:
    """<sigma_x (a^dag + a)> = (-2 alpha sin th / N) e^(-gamma); always <= 0."""
    normalization(v)
    return _kernels.correlation(v.alpha, v.theta, v.p, v.gamma)


def qubit_orientation(v: VariationalParams) -> float:
    """<sigma_x> = (1 - 2 p^2) sin th / N."""
    normalization(v)
    return _kernels.sigma_x(v.alpha, v.theta, v.p)


def energy(m: ModelParams, v: VariationalParams) -> float:
    """Variational energy (a Rayleigh quotient, so an upper bound on E0)."""
    e = _kernels.energy(
        m.delta, m.omega, m.g, m.epsilon, v.alpha, v.theta, v.p, v.gamma
    )
    if math.isinf(e):
        raise DegenerateState(
            f"trial-state norm collapsed at alpha={v.alpha}, theta={v.theta}, p={v.p}"
        )
    return e


def observables(m: ModelParams, v: VariationalParams) -> ObservableSet:
    """All closed-form ground-state diagnostics in one call."""
    return ObservableSet(
        energy=energy(m, v),
        photon_number=photon_number(v),
        sz=atomic_population(v),
        sx=qubit_orientation(v),
        correlation=correlation(v),
    )


def limit_energy_zero_coupling(m: ModelParams) -> float:
    """Ground energy of the decoupled model; exact when g = 0."""
    return -0.5 * math.hypot(m.delta, m.epsilon)


def limit_energy_zero_delta(m: ModelParams) -> float:
    """Displaced-oscillator ground energy; exact when delta = 0."""
    return -m.g * m.g / m.omega - 0.5 * abs(m.epsilon)


def polaron_coefficients(v: VariationalParams) -> tuple[float, float, float, float]:
    """Unnormalized amplitudes of the trial state in the |+z>, |-z> basis.

    Returns (c_plus_pos, c_plus_neg, c_minus_pos, c_minus_neg): the pair
    attached to (|alpha>, |-alpha>) on |+z>, then the pair on |-z>.
    """
    q = math.sqrt(max(0.0, 1.0 - v.p * v.p))
    ch = math.cos(0.5 * v.theta)
    sh = math.sin(0.5 * v.theta)
    return (v.p * ch, -q * ch, -v.p * sh, -q * sh)
