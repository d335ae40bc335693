"""Exact-diagonalization oracle in a truncated Fock (x) qubit basis.

Basis ordering: index 2n + s with s = 0 for |+z> and s = 1 for |-z>, n the
Fock index. All matrices are real symmetric; the ground state of the model
Hamiltonian is obtained by dense diagonalization with a convergence check that
doubles the truncation until the ground energy is stable.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import closed_form
from .errors import (
    DegenerateState,
    DimensionOverflow,
    EigenFailure,
    NearDegeneracyWarning,
    NoConvergence,
    TruncationTooSmall,
)
from .params import ModelParams, ObservableSet, VariationalParams

DIM_CAP = 16384
GAP_FLOOR = 1e-6  # in units of omega; below this the ground state is flagged degenerate
TAIL_MASS_TOL = 1e-10


@dataclass(frozen=True)
class FockTruncation:
    """Highest retained Fock index; basis dimension is 2 (n_max + 1)."""

    n_max: int

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")

    @property
    def dim(self) -> int:
        return 2 * (self.n_max + 1)


@dataclass(frozen=True)
class ExactGroundState:
    """Converged lowest eigenpair with truncation metadata and spectral gap."""

    params: ModelParams
    energy: float
    amplitudes: np.ndarray  # length 2 (n_max + 1), unit norm, sign-fixed
    n_max: int
    gap: float
    converged: bool


def build_hamiltonian(m: ModelParams, t: FockTruncation) -> np.ndarray:
    """Dense symmetric matrix of the model in the truncated basis."""
    dim = t.dim
    if dim > DIM_CAP:
        raise DimensionOverflow(f"dimension {dim} exceeds cap {DIM_CAP}")
    nmax = t.n_max
    n = np.arange(nmax + 1)
    h = np.zeros((dim, dim))
    h[2 * n, 2 * n] = m.omega * n + 0.5 * m.delta
    h[2 * n + 1, 2 * n + 1] = m.omega * n - 0.5 * m.delta
    h[2 * n, 2 * n + 1] = 0.5 * m.epsilon
    hop = m.g * np.sqrt(n[:-1] + 1.0)
    nn = n[:-1]
    h[2 * nn, 2 * (nn + 1) + 1] = hop
    h[2 * nn + 1, 2 * (nn + 1)] = hop
    # assembled once in the upper triangle, then mirrored: exactly symmetric
    h = h + np.triu(h, 1).T
    return h


def ground_state(m: ModelParams, t: FockTruncation, converged: bool = False) -> ExactGroundState:
    """Lowest eigenpair and spectral gap of the truncated Hamiltonian.

    The eigenvector sign is fixed by making its largest-magnitude amplitude
    positive.
    """
    h = build_hamiltonian(m, t)
    try:
        vals, vecs = scipy.linalg.eigh(h, subset_by_index=[0, 1])
    except scipy.linalg.LinAlgError as err:  # pragma: no cover - rare LAPACK failure
        raise EigenFailure(str(err)) from err
    amp = vecs[:, 0]
    i = int(np.argmax(np.abs(amp)))
    if amp[i] < 0.0:
        amp = -amp
    return ExactGroundState(
        params=m,
        energy=float(vals[0]),
        amplitudes=amp,
        n_max=t.n_max,
        gap=float(vals[1] - vals[0]),
        converged=converged,
    )


def initial_truncation(m: ModelParams) -> int:
    """Heuristic starting n_max: coherent occupation near (g/omega)^2 plus tails."""
    r = abs(m.g) / m.omega
    return max(16, math.ceil(4.0 * r * r + 10.0 * r + 10.0))


def converged_ground_state(m: ModelParams, tol: float = 1e-10) -> ExactGroundState:
    """Double the truncation until the ground energy is stable to tol * omega."""
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    n_max = initial_truncation(m)
    s1 = ground_state(m, FockTruncation(n_max))
    while True:
        n_next = 2 * n_max
        if 2 * (n_next + 1) > DIM_CAP:
            raise NoConvergence(
                f"truncation doubling hit the dimension cap {DIM_CAP} before tol {tol}"
            )
        s2 = ground_state(m, FockTruncation(n_next), converged=True)
        if abs(s1.energy - s2.energy) < tol * m.omega:
            return s2
        n_max, s1 = n_next, s2


def exact_observables(s: ExactGroundState) -> ObservableSet:
    """Diagnostics contracted on the numerical ground state.

    Warns NearDegeneracyWarning when the gap is below 1e-6 * omega; the
    observables of a (nearly) non-unique ground state are representative only.
    """
    m = s.params
    if s.gap < GAP_FLOOR * m.omega:
        warnings.warn(
            f"spectral gap {s.gap:.3e} < {GAP_FLOOR:.0e} * omega; "
            "ground state nearly degenerate",
            NearDegeneracyWarning,
            stacklevel=2,
        )
    a = s.amplitudes.reshape(-1, 2)  # columns: |+z>, |-z>
    w = a * a
    n = np.arange(a.shape[0])
    photon = float(np.sum(n * (w[:, 0] + w[:, 1])))
    sz = float(np.sum(w[:, 0] - w[:, 1]))
    sx = float(2.0 * np.sum(a[:, 0] * a[:, 1]))
    root = np.sqrt(n[:-1] + 1.0)
    corr = float(
        2.0 * np.sum(root * (a[:-1, 0] * a[1:, 1] + a[:-1, 1] * a[1:, 0]))
    )
    energy = 0.5 * m.delta * sz + m.omega * photon + m.g * corr + 0.5 * m.epsilon * sx
    if abs(energy - s.energy) > 1e-9 * m.omega:
        raise EigenFailure(
            f"observable self-check failed: {energy} vs eigenvalue {s.energy}"
        )
    return ObservableSet(
        energy=s.energy, photon_number=photon, sz=sz, sx=sx, correlation=corr
    )


def parity_expectation(s: ExactGroundState) -> float:
    """<sigma_z (-1)^(a^dag a)>; equals -1 for the unbiased ground state."""
    a = s.amplitudes.reshape(-1, 2)
    w = a * a
    sign = (-1.0) ** np.arange(a.shape[0])
    return float(np.sum(sign * (w[:, 0] - w[:, 1])))


def required_truncation(v: VariationalParams) -> int:
    return math.ceil(8.0 + 4.0 * v.alpha * v.alpha + 16.0 * abs(v.gamma))


def ansatz_state_vector(v: VariationalParams, t: FockTruncation) -> np.ndarray:
    """Unnormalized trial state expanded in the (n, s) basis.

    The self-overlap reproduces the closed-form normalization; the squeeze, if
    any, is applied as the truncated matrix exponential of the quadratic
    generator -(gamma/2)(a^dag^2 - a^2).
    """
    if t.n_max < required_truncation(v):
        raise TruncationTooSmall(
            f"n_max {t.n_max} < required {required_truncation(v)} for alpha={v.alpha}, "
            f"gamma={v.gamma}"
        )
    nmax = t.n_max
    # coherent amplitudes e^(-a^2/2) alpha^n / sqrt(n!), by stable recursion
    c = np.empty(nmax + 1)
    c[0] = math.exp(-0.5 * v.alpha * v.alpha)
    for k in range(1, nmax + 1):
        c[k] = c[k - 1] * v.alpha / math.sqrt(k)
    cm = c * (-1.0) ** np.arange(nmax + 1)  # coherent amplitudes of |-alpha>

    q = math.sqrt(max(0.0, 1.0 - v.p * v.p))
    plus = math.cos(0.5 * v.theta) * (v.p * c - q * cm)
    minus = -math.sin(0.5 * v.theta) * (v.p * c + q * cm)

    if v.gamma != 0.0:
        lower = np.diag(np.sqrt(np.arange(1, nmax + 1)), 1)  # annihilation operator
        gen = -0.5 * v.gamma * (lower.T @ lower.T - lower @ lower)
        squeeze = scipy.linalg.expm(gen)
        plus = squeeze @ plus
        minus = squeeze @ minus

    vec = np.empty(2 * (nmax + 1))
    vec[0::2] = plus
    vec[1::2] = minus

    nrm_closed = closed_form.normalization(v)
    tail = nrm_closed - float(vec @ vec)
    if abs(tail) > TAIL_MASS_TOL:
        raise TruncationTooSmall(
            f"tail mass {tail:.3e} beyond n_max {nmax} exceeds {TAIL_MASS_TOL:.0e}"
        )
    return vec


def rayleigh_quotient(m: ModelParams, v: VariationalParams, t: FockTruncation) -> float:
    """Brute-force energy of the expanded trial state; cross-checks the closed form."""
    vec = ansatz_state_vector(v, t)
    h = build_hamiltonian(m, t)
    return float(vec @ h @ vec) / float(vec @ vec)


def fidelity(v: VariationalParams, s: ExactGroundState) -> float:
    """|<exact|trial>|^2 / <trial|trial>, expanded at the oracle truncation."""
    vec = ansatz_state_vector(v, FockTruncation(s.n_max))
    overlap = float(s.amplitudes @ vec)
    return overlap * overlap / float(vec @ vec)
