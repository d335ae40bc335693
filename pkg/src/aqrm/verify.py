"""Invariant-verification suites behind the ``verify`` CLI subcommand.

``quick`` runs a few hundred property checks (formula equivalence, observable
bounds, parity, spectral symmetries, closed-form limits, brute-force
cross-checks) in well under a minute. ``full`` adds the 500-point
variational-upper-bound grid and a truncation-doubling stress test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import closed_form, exact, optimize
from .optimize import OptimizerConfig, SQRT_HALF
from .params import ModelParams, VariationalParams

_ALPHAS = (0.0, 0.3, 1.0, 1.7, 2.5)
_THETAS = (0.05, 0.8, 0.5 * math.pi, 2.2, 3.0)
_PS = (0.0, 0.2, SQRT_HALF, 0.9, 1.0)
_GAMMAS = (-0.4, -0.1, 0.0, 0.1, 0.4)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check(name, passed, detail=""):
    return CheckResult(name, bool(passed), detail)


def _sample_states(with_gamma=False):
    gammas = _GAMMAS if with_gamma else (0.0,)
    for a in _ALPHAS:
        for th in _THETAS:
            for p in _PS:
                for gm in gammas:
                    yield VariationalParams(a, th, p, gm)


def check_formula_equivalence() -> CheckResult:
    """Regularized <sigma_z> equals the literal (N - sin^2)/(N cos) form."""
    worst = 0.0
    for v in _sample_states():
        ct = math.cos(v.theta)
        if abs(ct) <= 1e-6:
            continue
        nrm = closed_form.normalization(v)
        literal = (nrm - math.sin(v.theta) ** 2) / (nrm * ct)
        reg = closed_form.atomic_population(v)
        worst = max(worst, abs(literal - reg) / max(1.0, abs(literal)))
    return _check("formula-equivalence-sz", worst <= 1e-12, f"worst rel diff {worst:.2e}")


def check_gamma_zero_reduction() -> CheckResult:
    """Squeezing-aware photon/correlation formulas reduce exactly at gamma = 0."""
    import aqrm._kernels as k

    ok = True
    for v in _sample_states():
        a, th, p = v.alpha, v.theta, v.p
        nrm = k.normalization(a, th, p)
        plain_ph = a * a * (2.0 / nrm - 1.0)
        plain_corr = -2.0 * a * math.sin(th) / nrm
        ok &= k.photon_number(a, th, p, 0.0) == plain_ph
        ok &= k.correlation(a, th, p, 0.0) == plain_corr
    return _check("gamma-zero-reduction", ok)


def check_ranges() -> CheckResult:
    """Normalization in (0, 2]; observables within their physical bounds."""
    ok = True
    worst = ""
    for v in _sample_states(with_gamma=True):
        nrm = closed_form.normalization(v)
        ph = closed_form.photon_number(v)
        sz = closed_form.atomic_population(v)
        sx = closed_form.qubit_orientation(v)
        corr = closed_form.correlation(v)
        tol = 1e-12
        good = (
            0.0 < nrm <= 2.0 + tol
            and ph >= -tol
            and abs(sz) <= 1.0 + tol
            and abs(sx) <= 1.0 + tol
            and corr <= tol
        )
        if not good:
            ok = False
            worst = f"violation at {v}"
    return _check("observable-ranges", ok, worst)


def check_polaron_norm() -> CheckResult:
    """Self-overlap assembled from the polaron amplitudes reproduces N."""
    worst = 0.0
    for v in _sample_states():
        cpp, cpn, cmp_, cmn = closed_form.polaron_coefficients(v)
        w = math.exp(-2.0 * v.alpha * v.alpha)  # <alpha|-alpha>
        nrm = (
            cpp * cpp + cpn * cpn + cmp_ * cmp_ + cmn * cmn
            + 2.0 * w * (cpp * cpn + cmp_ * cmn)
        )
        worst = max(worst, abs(nrm - closed_form.normalization(v)))
    return _check("polaron-normalization", worst <= 1e-12, f"worst diff {worst:.2e}")


def check_oracle_equivalence() -> CheckResult:
    """Closed-form observables match the brute-force truncated-basis values."""
    t = exact.FockTruncation(64)
    worst = 0.0
    samples = [
        VariationalParams(a, th, p, gm)
        for a in (0.0, 0.5, 1.5, 2.5)
        for th in (0.4, 2.0943951023931953, 2.9)
        for p in (0.2, 0.8)
        for gm in (-0.3, 0.0, 0.2)
    ]
    for v in samples:
        vec = exact.ansatz_state_vector(v, t)
        nrm = float(vec @ vec)
        a2 = vec.reshape(-1, 2)
        w = a2 * a2
        n = np.arange(a2.shape[0])
        ph = float(np.sum(n * (w[:, 0] + w[:, 1]))) / nrm
        sz = float(np.sum(w[:, 0] - w[:, 1])) / nrm
        sx = float(2.0 * np.sum(a2[:, 0] * a2[:, 1])) / nrm
        root = np.sqrt(n[:-1] + 1.0)
        corr = float(2.0 * np.sum(root * (a2[:-1, 0] * a2[1:, 1] + a2[:-1, 1] * a2[1:, 0]))) / nrm
        worst = max(
            worst,
            abs(nrm - closed_form.normalization(v)),
            abs(ph - closed_form.photon_number(v)),
            abs(sz - closed_form.atomic_population(v)),
            abs(sx - closed_form.qubit_orientation(v)),
            abs(corr - closed_form.correlation(v)),
        )
    return _check("closed-form-vs-brute-force", worst <= 1e-8, f"worst diff {worst:.2e}")


def check_rayleigh_crosscheck() -> CheckResult:
    """Energy functional equals the Rayleigh quotient of the expanded state."""
    t = exact.FockTruncation(64)
    m = ModelParams(1.0, 1.0, 0.8, 0.5)
    worst = 0.0
    for v in (
        VariationalParams(0.7, 1.8, 0.8),
        VariationalParams(1.5, 1.2, 0.4, -0.2),
        VariationalParams(0.0, 3.0, SQRT_HALF),
    ):
        worst = max(
            worst,
            abs(exact.rayleigh_quotient(m, v, t) - closed_form.energy(m, v)),
        )
    return _check("rayleigh-crosscheck", worst <= 1e-8, f"worst diff {worst:.2e}")


def check_hermiticity() -> CheckResult:
    ok = True
    for m in (ModelParams(1.0, 1.0, 0.5, 0.3), ModelParams(0.3, 2.0, 1.5, 1.0)):
        h = exact.build_hamiltonian(m, exact.FockTruncation(20))
        ok &= bool(np.array_equal(h, h.T))
    return _check("hamiltonian-hermiticity", ok)


def check_limits() -> CheckResult:
    """Optimized energy hits the closed-form g = 0 and delta = 0 limits."""
    worst = 0.0
    for delta, eps in ((1.0, 0.0), (1.0, 1.5), (0.4, 2.5)):
        m = ModelParams(delta, 1.0, 0.0, eps)
        res = optimize.minimize_energy(m)
        worst = max(worst, abs(res.e_var - closed_form.limit_energy_zero_coupling(m)))
    for g, eps in ((0.5, 0.0), (1.0, 0.7), (1.8, 2.0)):
        m = ModelParams(0.0, 1.0, g, eps)
        res = optimize.minimize_energy(m)
        worst = max(worst, abs(res.e_var - closed_form.limit_energy_zero_delta(m)))
    return _check("closed-form-limits", worst <= 1e-6, f"worst diff {worst:.2e}")


def check_parity() -> CheckResult:
    """Unbiased converged ground states have parity -1."""
    worst = 0.0
    for delta in (0.2, 1.0, 5.0):
        for g in (0.3, 1.0, 2.0):
            s = exact.converged_ground_state(ModelParams(delta, 1.0, g, 0.0))
            worst = max(worst, abs(exact.parity_expectation(s) + 1.0))
    return _check("unbiased-parity", worst <= 1e-8, f"worst |P+1| {worst:.2e}")


def check_spectral_symmetry() -> CheckResult:
    """Ground energy invariant under g -> -g and epsilon -> -epsilon."""
    worst = 0.0
    for delta, g, eps in ((1.0, 0.7, 0.4), (0.5, 1.5, 1.0), (2.0, 1.0, 2.0)):
        e = exact.converged_ground_state(ModelParams(delta, 1.0, g, eps)).energy
        eg = exact.converged_ground_state(ModelParams(delta, 1.0, -g, eps)).energy
        ee = exact.converged_ground_state(ModelParams(delta, 1.0, g, -eps)).energy
        worst = max(worst, abs(e - eg), abs(e - ee))
    return _check("spectral-symmetry", worst <= 1e-10, f"worst diff {worst:.2e}")


def check_convergence_monotonicity() -> CheckResult:
    """Truncated ground energy is non-increasing in the truncation size."""
    m = ModelParams(1.0, 1.0, 1.5, 0.5)
    energies = [
        exact.ground_state(m, exact.FockTruncation(n)).energy for n in (16, 24, 32, 48, 64)
    ]
    ok = all(e2 <= e1 + 1e-12 for e1, e2 in zip(energies, energies[1:]))
    return _check("truncation-monotonicity", ok, f"energies {energies}")


def check_weight_recovery() -> CheckResult:
    """Unbiased models optimize to the symmetric weight 1/sqrt(2)."""
    worst = 0.0
    for delta in (0.2, 1.0, 2.0):
        for g in (0.1, 1.0, 2.0):
            res = optimize.minimize_energy(ModelParams(delta, 1.0, g, 0.0))
            worst = max(worst, abs(res.v_opt.p - SQRT_HALF))
    return _check("symmetric-weight-recovery", worst <= 1e-3, f"worst |p-1/sqrt2| {worst:.2e}")


def check_energy_p_symmetry() -> CheckResult:
    """At epsilon = 0 the energy is invariant under p -> sqrt(1 - p^2)."""
    m = ModelParams(1.0, 1.0, 0.8, 0.0)
    worst = 0.0
    for v in _sample_states():
        if not 0.0 < v.p < 1.0:
            continue
        mirrored = VariationalParams(v.alpha, v.theta, math.sqrt(1.0 - v.p * v.p), v.gamma)
        worst = max(worst, abs(closed_form.energy(m, v) - closed_form.energy(m, mirrored)))
    return _check("weight-mirror-symmetry", worst <= 1e-12, f"worst diff {worst:.2e}")


def upper_bound_grid() -> list[tuple[ModelParams, float, float]]:
    """Deterministic 500-point grid: (model, e_var, e_exact) triples."""
    out = []
    for delta in np.linspace(0.1, 2.0, 10):
        for g in np.linspace(0.0, 2.0, 10):
            for eps in np.linspace(0.0, 3.0, 5):
                m = ModelParams(float(delta), 1.0, float(g), float(eps))
                res = optimize.minimize_energy(m, OptimizerConfig(stationarity_check=False))
                s = exact.converged_ground_state(m, tol=1e-10)
                out.append((m, res.e_var, s.energy))
    return out


def check_upper_bound_500() -> CheckResult:
    triples = upper_bound_grid()
    worst = min(e_var - e_exact for _, e_var, e_exact in triples)
    bad = sum(1 for _, e_var, e_exact in triples if e_var - e_exact < -1e-9)
    return _check(
        "variational-upper-bound-500",
        bad == 0,
        f"{bad} violations of {len(triples)}; min deviation {worst:.2e}",
    )


def check_convergence_doubling() -> CheckResult:
    """Doubling stress: strong-coupling points converge with sane truncations."""
    ok = True
    detail = []
    for g in (2.0, 3.0):
        s = exact.converged_ground_state(ModelParams(1.0, 1.0, g, 1.0), tol=1e-10)
        ok &= s.converged and s.n_max >= exact.initial_truncation(ModelParams(1.0, 1.0, g, 1.0))
        detail.append(f"g={g}: n_max={s.n_max}")
    return _check("convergence-doubling", ok, "; ".join(detail))


QUICK_CHECKS = (
    check_formula_equivalence,
    check_gamma_zero_reduction,
    check_ranges,
    check_polaron_norm,
    check_oracle_equivalence,
    check_rayleigh_crosscheck,
    check_hermiticity,
    check_limits,
    check_parity,
    check_spectral_symmetry,
    check_convergence_monotonicity,
    check_weight_recovery,
    check_energy_p_symmetry,
)

FULL_CHECKS = QUICK_CHECKS + (
    check_upper_bound_500,
    check_convergence_doubling,
)


def run(level: str = "quick") -> list[CheckResult]:
    checks = QUICK_CHECKS if level == "quick" else FULL_CHECKS
    return [fn() for fn in checks]
