"""Derivative-free minimization of the trial-state energy.

The search is a bounded Nelder-Mead simplex run from a deterministic grid of
start points (no RNG anywhere): a cheap scouting pass over every start, then a
tight polish of the best candidates. Enabling the squeezing parameter always
includes the gamma = 0 optimum as a warm start, so enlarging the search space
can never raise the reported minimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

from . import _kernels
from .params import ModelParams, VariationalParams

SQRT_HALF = math.sqrt(0.5)

# scouting pass settings; the polish pass uses the config tolerances
_SCOUT_XATOL = 1e-6
_SCOUT_FATOL = 1e-10
_SCOUT_MAXFEV = 400
_N_POLISH = 3
_TIE_TOL = 1e-11
_FD_STEP = 1e-6
_BOUNDARY_MARGIN = 1e-6


class SolveStatus(Enum):
    CONVERGED = "Converged"
    MAX_EVALS = "MaxEvals"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class OptimizerConfig:
    include_gamma: bool = False
    energy_tol: float = 1e-12
    param_tol: float = 1e-10
    max_evals: int = 20000
    start_set: tuple[VariationalParams, ...] | None = None  # None -> default grid
    warm_start: VariationalParams | None = None
    stationarity_check: bool = True

    def __post_init__(self):
        if self.energy_tol <= 0.0 or self.param_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_evals < 1:
            raise ValueError("max_evals must be >= 1")
        if self.start_set is not None and len(self.start_set) == 0:
            raise ValueError("start_set must be non-empty")


@dataclass(frozen=True)
class SolveResult:
    v_opt: VariationalParams
    e_var: float
    e_exact: float | None = None
    deviation: float | None = None
    stationarity: float = math.nan
    starts_used: int = 0
    status: SolveStatus = SolveStatus.CONVERGED

    def with_exact(self, e_exact: float) -> "SolveResult":
        return replace(self, e_exact=e_exact, deviation=self.e_var - e_exact)


def default_start_grid(
    m: ModelParams, include_gamma: bool = False
) -> tuple[VariationalParams, ...]:
    """Deterministic start grid bracketing the known limits and both branches."""
    r = m.g / m.omega
    alphas = sorted({0.0, 0.5 * r, r})
    thetas = (0.25 * math.pi, 0.5 * math.pi, 0.75 * math.pi, math.pi - 0.05)
    ps = (0.25, SQRT_HALF, 0.97)
    gammas = (-0.2, 0.0, 0.2) if include_gamma else (0.0,)
    return tuple(
        VariationalParams(a, th, p, gm)
        for a in alphas
        for th in thetas
        for p in ps
        for gm in gammas
    )


def _bounds(m: ModelParams) -> tuple[tuple[float, ...], tuple[float, ...]]:
    return (0.0, 0.0, 0.0, -1.0), (m.g / m.omega + 3.0, math.pi, 1.0, 1.0)


def _check_canonical(m: ModelParams):
    if m.g < 0.0 or m.epsilon < 0.0:
        raise ValueError("model must be canonicalized (g >= 0, epsilon >= 0) first")


def _search(
    m: ModelParams,
    cfg: OptimizerConfig,
    starts: list[VariationalParams],
    mask: tuple[bool, bool, bool, bool],
) -> tuple[tuple[float, float, float, float], float, bool, int]:
    """Scout every start, polish the best candidates, return the winner."""
    lo, hi = _bounds(m)
    scout_fev = min(_SCOUT_MAXFEV, cfg.max_evals)
    candidates = []
    for v in starts:
        x0 = (v.alpha, v.theta, v.p, v.gamma)
        x, f, _, _ = _kernels.minimize_energy(
            m.delta, m.omega, m.g, m.epsilon, x0, lo, hi, mask,
            _SCOUT_XATOL, _SCOUT_FATOL, scout_fev,
        )
        candidates.append((f, x))
    candidates.sort(key=lambda c: (c[0], c[1][2]))  # by energy, then weight

    polished = []
    for f0, x0 in candidates[:_N_POLISH]:
        if math.isinf(f0):
            continue
        x, f, nfev, conv = _kernels.minimize_energy(
            m.delta, m.omega, m.g, m.epsilon, x0, lo, hi, mask,
            cfg.param_tol, cfg.energy_tol, cfg.max_evals,
        )
        # restart once from the found point: rebuilding the simplex escapes
        # collapsed-simplex stalls and tightens the final coordinates
        x, f2, nfev2, conv2 = _kernels.minimize_energy(
            m.delta, m.omega, m.g, m.epsilon, x, lo, hi, mask,
            cfg.param_tol, cfg.energy_tol, cfg.max_evals,
        )
        polished.append((min(f, f2), x, conv and conv2, nfev + nfev2))

    if not polished:
        return (starts[0].alpha, starts[0].theta, starts[0].p, starts[0].gamma), math.inf, False, 0

    best_f = min(p[0] for p in polished)
    near = [p for p in polished if p[0] <= best_f + _TIE_TOL]
    near.sort(key=lambda p: p[1][2])  # equal-energy tie-break: smaller weight p
    return near[0][1], near[0][0], near[0][2], sum(p[3] for p in polished)


def minimize_energy(m: ModelParams, cfg: OptimizerConfig = OptimizerConfig()) -> SolveResult:
    """Best local optimum of the trial-state energy over the bounded box.

    The model must already be canonical (g >= 0, epsilon >= 0). When the
    squeezing parameter is enabled, the gamma = 0 problem is solved first and
    its optimum seeds the enlarged search.
    """
    _check_canonical(m)
    starts = list(cfg.start_set) if cfg.start_set is not None else list(
        default_start_grid(m, cfg.include_gamma)
    )
    if cfg.warm_start is not None:
        starts.insert(0, cfg.warm_start)

    if cfg.include_gamma:
        base = minimize_energy(
            m,
            replace(cfg, include_gamma=False, stationarity_check=False,
                    start_set=None, warm_start=cfg.warm_start),
        )
        seed = replace(base.v_opt, gamma=0.0)
        starts.insert(0, seed)
        mask = (True, True, True, True)
        x, f, conv, _ = _search(m, cfg, starts, mask)
        if f <= base.e_var:
            v_opt = VariationalParams(*x)
            e_var = f
        else:
            v_opt, e_var = seed, base.e_var
            conv = base.status is SolveStatus.CONVERGED
    else:
        mask = (True, True, True, False)
        starts = [replace(v, gamma=0.0) for v in starts]
        x, f, conv, _ = _search(m, cfg, starts, mask)
        v_opt = VariationalParams(*x)
        e_var = f

    if math.isinf(e_var):
        return SolveResult(
            v_opt=starts[0], e_var=math.inf, starts_used=len(starts),
            status=SolveStatus.DEGENERATE,
        )

    stat = math.nan
    if cfg.stationarity_check:
        stat = stationarity_residual(m, v_opt, include_gamma=cfg.include_gamma)

    return SolveResult(
        v_opt=v_opt,
        e_var=e_var,
        stationarity=stat,
        starts_used=len(starts),
        status=SolveStatus.CONVERGED if conv else SolveStatus.MAX_EVALS,
    )


def stationarity_residual(
    m: ModelParams, v: VariationalParams, include_gamma: bool = False
) -> float:
    """Inf-norm of the central finite-difference energy gradient at v.

    Components within 1e-6 of a box bound are skipped (one-sided stationarity
    there is enforced by the bound, not by a zero gradient).
    """
    lo, hi = _bounds(m)
    x = [v.alpha, v.theta, v.p, v.gamma]
    ncomp = 4 if include_gamma else 3
    res = 0.0
    for i in range(ncomp):
        if x[i] - lo[i] < _BOUNDARY_MARGIN or hi[i] - x[i] < _BOUNDARY_MARGIN:
            continue
        h = _FD_STEP
        xp = list(x)
        xm = list(x)
        xp[i] = min(hi[i], x[i] + h)
        xm[i] = max(lo[i], x[i] - h)
        fp = _kernels.energy(m.delta, m.omega, m.g, m.epsilon, *xp)
        fm = _kernels.energy(m.delta, m.omega, m.g, m.epsilon, *xm)
        res = max(res, abs(fp - fm) / (xp[i] - xm[i]))
    return res


def fixed_weight_solve(m: ModelParams, cfg: OptimizerConfig = OptimizerConfig()) -> SolveResult:
    """Minimize with the superposition weight pinned to 1/sqrt(2)."""
    _check_canonical(m)
    starts = list(cfg.start_set) if cfg.start_set is not None else list(
        default_start_grid(m, cfg.include_gamma)
    )
    if cfg.warm_start is not None:
        starts.insert(0, cfg.warm_start)
    starts = [replace(v, p=SQRT_HALF) for v in starts]
    if not cfg.include_gamma:
        starts = [replace(v, gamma=0.0) for v in starts]
    # dedupe (the p-axis of the grid collapses)
    seen, uniq = set(), []
    for v in starts:
        key = (v.alpha, v.theta, v.gamma)
        if key not in seen:
            seen.add(key)
            uniq.append(v)
    mask = (True, True, False, cfg.include_gamma)
    x, f, conv, _ = _search(m, cfg, uniq, mask)
    if math.isinf(f):
        return SolveResult(
            v_opt=uniq[0], e_var=math.inf, starts_used=len(uniq),
            status=SolveStatus.DEGENERATE,
        )
    v_opt = VariationalParams(*x)
    stat = math.nan
    if cfg.stationarity_check:
        stat = stationarity_residual(m, v_opt, include_gamma=cfg.include_gamma)
    return SolveResult(
        v_opt=v_opt, e_var=f, stationarity=stat, starts_used=len(uniq),
        status=SolveStatus.CONVERGED if conv else SolveStatus.MAX_EVALS,
    )


def continuation_sweep(
    points: list[ModelParams], cfg: OptimizerConfig = OptimizerConfig()
) -> list[SolveResult]:
    """Solve an ordered list of models, warm-starting each from the previous optimum.

    The warm start is added on top of the full start set, so results match
    independent solves; continuation only accelerates them.
    """
    results: list[SolveResult] = []
    warm = cfg.warm_start
    for m in points:
        res = minimize_energy(m, replace(cfg, warm_start=warm))
        results.append(res)
        if res.status is not SolveStatus.DEGENERATE:
            warm = res.v_opt
    return results
