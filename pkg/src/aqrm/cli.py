"""Command-line front end: solve, sweep, gamma-map, verify.

Exit codes: 0 success, 1 verification failure, 2 solver non-convergence,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import config as config_mod
from . import sweep as sweep_mod
from . import verify as verify_mod
from .errors import AqrmError, ConfigError
from .optimize import OptimizerConfig
from .params import ModelParams
from .sweep import (
    CSV_COLUMNS,
    FIXED_WEIGHT_COLUMNS,
    GAMMA_MAP_COLUMNS,
    GammaMapSpec,
    SweepSpec,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_NOT_CONVERGED = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> _Parser:
    parser = _Parser(prog="aqrm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_model_flags(p):
        p.add_argument("--delta", type=float, help="qubit level splitting")
        p.add_argument("--omega", type=float, help="field frequency (> 0)")
        p.add_argument("--g", type=float, help="qubit-field coupling")
        p.add_argument("--epsilon", type=float, help="bias")

    def add_common_flags(p):
        p.add_argument("--config", help="key = value configuration file")
        p.add_argument("--out", help="output CSV file (default: stdout)")
        p.add_argument("--threads", type=int, help="worker threads for independent rows")
        p.add_argument("--gamma", action="store_true", default=None,
                       help="optimize the squeezing parameter too")
        p.add_argument("--exact", action="store_true", default=None,
                       help="add exact-diagonalization reference columns")
        p.add_argument("--fixed-weight", action="store_true", default=None,
                       help="add the pinned-weight (p = 1/sqrt 2) baseline columns")

    p_solve = sub.add_parser("solve", help="solve a single parameter point")
    add_model_flags(p_solve)
    add_common_flags(p_solve)
    p_solve.add_argument("--header", action="store_true", help="print the CSV header line")

    p_sweep = sub.add_parser("sweep", help="sweep one coupling axis")
    add_model_flags(p_sweep)
    add_common_flags(p_sweep)
    p_sweep.add_argument("--axis", choices=("g", "epsilon", "delta"))
    p_sweep.add_argument("--start", type=float)
    p_sweep.add_argument("--stop", type=float)
    p_sweep.add_argument("--steps", type=int)

    p_map = sub.add_parser("gamma-map", help="optimal squeezing over (delta, epsilon)")
    add_common_flags(p_map)
    p_map.add_argument("--delta-start", type=float)
    p_map.add_argument("--delta-stop", type=float)
    p_map.add_argument("--epsilon-start", type=float)
    p_map.add_argument("--epsilon-stop", type=float)
    p_map.add_argument("--grid-delta", type=int)
    p_map.add_argument("--grid-epsilon", type=int)

    p_verify = sub.add_parser("verify", help="run the invariant-verification suite")
    p_verify.add_argument("--level", choices=("quick", "full"), default="quick")

    return parser


def _merged_values(args, kind: str) -> dict[str, str]:
    """Config-file values with CLI flags layered on top."""
    values: dict[str, str] = {}
    if getattr(args, "config", None):
        values = config_mod.load_config(args.config, kind)
    overrides = {
        "delta": getattr(args, "delta", None),
        "omega": getattr(args, "omega", None),
        "g": getattr(args, "g", None),
        "epsilon": getattr(args, "epsilon", None),
        "axis": getattr(args, "axis", None),
        "start": getattr(args, "start", None),
        "stop": getattr(args, "stop", None),
        "steps": getattr(args, "steps", None),
        "gamma": getattr(args, "gamma", None),
        "exact": getattr(args, "exact", None),
        "fixed-weight": getattr(args, "fixed_weight", None),
        "delta-start": getattr(args, "delta_start", None),
        "delta-stop": getattr(args, "delta_stop", None),
        "epsilon-start": getattr(args, "epsilon_start", None),
        "epsilon-stop": getattr(args, "epsilon_stop", None),
        "grid-delta": getattr(args, "grid_delta", None),
        "grid-epsilon": getattr(args, "grid_epsilon", None),
        "out": getattr(args, "out", None),
        "threads": getattr(args, "threads", None),
    }
    keyset = config_mod._KEYSETS[kind]
    for key, val in overrides.items():
        if val is not None and key in keyset:
            values[key] = str(val)
    return values


def _emit(out_path, header, rows):
    if out_path:
        sweep_mod.write_csv(out_path, header, rows)
    else:
        sweep_mod.write_csv(sys.stdout, header, rows)


def cmd_solve(args) -> int:
    values = _merged_values(args, "solve")
    m = ModelParams(
        delta=config_mod._as_float(values, "delta", 1.0),
        omega=config_mod._as_float(values, "omega", 1.0),
        g=config_mod._as_float(values, "g", 0.0),
        epsilon=config_mod._as_float(values, "epsilon", 0.0),
    )
    with_gamma = config_mod._as_bool(values, "gamma", False)
    with_exact = config_mod._as_bool(values, "exact", False)
    with_fixed = config_mod._as_bool(values, "fixed-weight", False)
    row = sweep_mod.solve_point(
        m,
        OptimizerConfig(include_gamma=with_gamma),
        with_exact=with_exact,
        with_fixed_weight=with_fixed,
    )
    header = CSV_COLUMNS + (FIXED_WEIGHT_COLUMNS if with_fixed else ())
    out = values.get("out")
    body = [row.values(with_fixed_weight=with_fixed)]
    if out:
        _emit(out, header, body)
    else:
        if args.header:
            sys.stdout.write(",".join(header) + "\n")
        sys.stdout.write(",".join(body[0]) + "\n")
    return EXIT_OK if row.status == "Converged" else EXIT_NOT_CONVERGED


def cmd_sweep(args) -> int:
    values = _merged_values(args, "sweep")
    spec = config_mod.build_sweep_spec(values)
    threads = config_mod._as_int(values, "threads", 1)
    rows = sweep_mod.run_sweep(spec, threads=threads)
    header = CSV_COLUMNS + (FIXED_WEIGHT_COLUMNS if spec.with_fixed_weight else ())
    _emit(values.get("out"), header, [r.values(spec.with_fixed_weight) for r in rows])
    failed = any(r.status != "Converged" for r in rows)
    return EXIT_NOT_CONVERGED if failed else EXIT_OK


def cmd_gamma_map(args) -> int:
    values = _merged_values(args, "gamma-map")
    spec = config_mod.build_gamma_map_spec(values)
    threads = config_mod._as_int(values, "threads", 1)
    rows = sweep_mod.gamma_map(spec, threads=threads)
    _emit(values.get("out"), GAMMA_MAP_COLUMNS, rows)
    failed = any(r[-1] != "Converged" for r in rows)
    return EXIT_NOT_CONVERGED if failed else EXIT_OK


def cmd_verify(args) -> int:
    results = verify_mod.run(args.level)
    for r in results:
        line = f"{'PASS' if r.passed else 'FAIL'} {r.name}"
        if r.detail:
            line += f"  ({r.detail})"
        print(line)
    summary = {
        "level": args.level,
        "total": len(results),
        "failed": [r.name for r in results if not r.passed],
    }
    print(json.dumps(summary))
    return EXIT_OK if not summary["failed"] else EXIT_VERIFY_FAILED


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "solve": cmd_solve,
        "sweep": cmd_sweep,
        "gamma-map": cmd_gamma_map,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as err:
        print(f"aqrm: config error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except AqrmError as err:
        print(f"aqrm: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except ValueError as err:
        print(f"aqrm: invalid parameters: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
