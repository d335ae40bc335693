"""Point solves, parameter sweeps and the squeezing-parameter density map.

Output is deterministic CSV: fixed column order, 12-significant-digit
scientific notation, LF line endings. Oracle columns of a sweep are evaluated
concurrently (the eigensolver releases the GIL); the variational continuation
chain stays sequential, and rows are emitted in grid order regardless of
completion order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import closed_form, exact, optimize
from .errors import AqrmError
from .optimize import OptimizerConfig, SolveResult, SolveStatus
from .params import CanonicalFlags, ModelParams, ObservableSet, canonicalize, restore_observables

ORACLE_TOL = 1e-10

CSV_COLUMNS = (
    "delta", "omega", "g", "epsilon",
    "alpha", "theta", "p", "gamma",
    "e_var", "e_exact", "deviation",
    "photon_var", "photon_exact",
    "sz_var", "sz_exact",
    "sx_var", "sx_exact",
    "corr_var", "corr_exact",
    "fidelity", "stationarity", "status",
)
FIXED_WEIGHT_COLUMNS = ("e_var_fixed", "deviation_fixed")

GAMMA_MAP_COLUMNS = (
    "delta", "omega", "g", "epsilon", "gamma_abs", "e_var_gamma", "e_var_nogamma", "status",
)


@dataclass(frozen=True)
class SweepSpec:
    """One-axis sweep: fixed couplings plus a swept field."""

    fixed: ModelParams
    axis: str
    start: float
    stop: float
    steps: int
    include_gamma: bool = False
    with_exact: bool = False
    with_fixed_weight: bool = False

    def __post_init__(self):
        if self.axis not in ("g", "epsilon", "delta"):
            raise ValueError("axis must be one of g, epsilon, delta")
        if self.steps < 2:
            raise ValueError("steps must be >= 2")
        if self.start > self.stop:
            raise ValueError("start must be <= stop")

    def points(self) -> list[ModelParams]:
        values = np.linspace(self.start, self.stop, self.steps)
        return [replace(self.fixed, **{self.axis: float(v)}) for v in values]


@dataclass(frozen=True)
class GammaMapSpec:
    """Grid over (delta, epsilon) at the critical coupling g = sqrt(delta*omega)/2."""

    omega: float = 1.0
    delta_range: tuple[float, float] = (0.2, 6.0)
    epsilon_range: tuple[float, float] = (0.0, 3.0)
    grid: tuple[int, int] = (60, 60)

    def __post_init__(self):
        if self.omega <= 0.0:
            raise ValueError("omega must be positive")
        if self.delta_range[0] <= 0.0 or self.delta_range[0] > self.delta_range[1]:
            raise ValueError("delta_range must be positive and ordered")
        if self.epsilon_range[0] < 0.0 or self.epsilon_range[0] > self.epsilon_range[1]:
            raise ValueError("epsilon_range must be non-negative and ordered")
        if self.grid[0] < 2 or self.grid[1] < 2:
            raise ValueError("grid must be at least 2 x 2")

    def points(self) -> list[ModelParams]:
        deltas = np.linspace(*self.delta_range, self.grid[0])
        epsilons = np.linspace(*self.epsilon_range, self.grid[1])
        return [
            ModelParams(float(d), self.omega, math.sqrt(float(d) * self.omega) / 2.0, float(e))
            for d in deltas
            for e in epsilons
        ]


@dataclass(frozen=True)
class ReportRow:
    """One CSV row; optional fields are None when the column was not requested."""

    model: ModelParams
    result: SolveResult
    obs: ObservableSet | None = None
    exact_obs: ObservableSet | None = None
    fidelity: float | None = None
    e_var_fixed: float | None = None
    status: str = "Converged"

    def values(self, with_fixed_weight: bool = False) -> list[str]:
        m, r = self.model, self.result
        v = r.v_opt
        ob = self.obs
        ex = self.exact_obs
        out = [
            _fmt(m.delta), _fmt(m.omega), _fmt(m.g), _fmt(m.epsilon),
            _fmt(v.alpha), _fmt(v.theta), _fmt(v.p), _fmt(v.gamma),
            _fmt(r.e_var), _fmt(r.e_exact), _fmt(r.deviation),
            _fmt(ob.photon_number if ob else None), _fmt(ex.photon_number if ex else None),
            _fmt(ob.sz if ob else None), _fmt(ex.sz if ex else None),
            _fmt(ob.sx if ob else None), _fmt(ex.sx if ex else None),
            _fmt(ob.correlation if ob else None), _fmt(ex.correlation if ex else None),
            _fmt(self.fidelity), _fmt(r.stationarity), self.status,
        ]
        if with_fixed_weight:
            dev_fixed = (
                self.e_var_fixed - r.e_exact
                if self.e_var_fixed is not None and r.e_exact is not None
                else None
            )
            out += [_fmt(self.e_var_fixed), _fmt(dev_fixed)]
        return out


def _fmt(x: float | None) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return f"{x:.11e}"


def solve_point(
    m: ModelParams,
    cfg: OptimizerConfig = OptimizerConfig(),
    with_exact: bool = False,
    with_fixed_weight: bool = False,
    oracle: exact.ExactGroundState | None = None,
) -> ReportRow:
    """Solve one model and assemble a report row.

    The model is canonicalized internally; sign-sensitive observables are
    mapped back to the caller's frame.
    """
    mc, flags = canonicalize(m)
    try:
        res = optimize.minimize_energy(mc, cfg)
    except AqrmError as err:
        return ReportRow(
            model=m,
            result=SolveResult(
                v_opt=optimize.default_start_grid(mc)[0], e_var=math.nan,
                status=SolveStatus.DEGENERATE,
            ),
            status=f"Error:{type(err).__name__}",
        )
    if res.status is SolveStatus.DEGENERATE:
        return ReportRow(model=m, result=res, status=res.status.value)

    obs = restore_observables(closed_form.observables(mc, res.v_opt), flags)
    exact_obs = None
    fid = None
    status = res.status.value
    if with_exact:
        if oracle is None:
            try:
                oracle = exact.converged_ground_state(mc, tol=ORACLE_TOL)
            except AqrmError as err:
                oracle = None
                status = f"Error:{type(err).__name__}"
        if oracle is not None:
            res = res.with_exact(oracle.energy)
            exact_obs = restore_observables(exact.exact_observables(oracle), flags)
            fid = exact.fidelity(res.v_opt, oracle)

    e_fixed = None
    if with_fixed_weight:
        e_fixed = optimize.fixed_weight_solve(mc, cfg).e_var

    return ReportRow(
        model=m, result=res, obs=obs, exact_obs=exact_obs,
        fidelity=fid, e_var_fixed=e_fixed, status=status,
    )


def run_sweep(
    spec: SweepSpec,
    cfg: OptimizerConfig = OptimizerConfig(),
    threads: int = 1,
) -> list[ReportRow]:
    """Continuation-accelerated sweep along one axis, oracle columns in parallel."""
    cfg = replace(cfg, include_gamma=spec.include_gamma)
    points = [canonicalize(m) for m in spec.points()]

    oracles: list[exact.ExactGroundState | None] = [None] * len(points)
    if spec.with_exact:
        def solve_oracle(mc):
            return exact.converged_ground_state(mc, tol=ORACLE_TOL)
        with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
            oracles = list(pool.map(solve_oracle, [mc for mc, _ in points]))

    rows = []
    warm = cfg.warm_start
    for m, (mc, _flags), oracle in zip(spec.points(), points, oracles):
        row = solve_point(
            m,
            replace(cfg, warm_start=warm),
            with_exact=spec.with_exact,
            with_fixed_weight=spec.with_fixed_weight,
            oracle=oracle,
        )
        rows.append(row)
        if row.result.status is not SolveStatus.DEGENERATE:
            warm = row.result.v_opt
    return rows


def gamma_map(spec: GammaMapSpec, threads: int = 1) -> list[list[str]]:
    """Optimal |gamma| and the paired energies over the (delta, epsilon) grid."""
    points = spec.points()

    def solve(m: ModelParams) -> list[str]:
        try:
            r0 = optimize.minimize_energy(m, OptimizerConfig(stationarity_check=False))
            r1 = optimize.minimize_energy(
                m, OptimizerConfig(include_gamma=True, stationarity_check=False)
            )
        except AqrmError as err:
            return [_fmt(m.delta), _fmt(m.omega), _fmt(m.g), _fmt(m.epsilon),
                    "", "", "", f"Error:{type(err).__name__}"]
        if r0.status is SolveStatus.CONVERGED and r1.status is SolveStatus.CONVERGED:
            status = SolveStatus.CONVERGED.value
        else:
            status = (r1.status if r1.status is not SolveStatus.CONVERGED else r0.status).value
        return [
            _fmt(m.delta), _fmt(m.omega), _fmt(m.g), _fmt(m.epsilon),
            _fmt(abs(r1.v_opt.gamma)), _fmt(r1.e_var), _fmt(r0.e_var), status,
        ]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(solve, points))
    return [solve(m) for m in points]


def write_csv(path_or_file, header: list[str] | tuple[str, ...], rows: list[list[str]]):
    """RFC-4180-style CSV, UTF-8, LF line endings. Values are pre-formatted."""
    def emit(fh):
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")

    if hasattr(path_or_file, "write"):
        emit(path_or_file)
    else:
        with open(path_or_file, "w", encoding="utf-8", newline="") as fh:
            emit(fh)
