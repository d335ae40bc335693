"""Plain-text run configurations: one ``key = value`` per line, ``#`` comments.

Every CLI flag has a twin key here; flag values override file values. Unknown
keys fail with a suggestion drawn from the valid key set.
"""

from __future__ import annotations

import difflib

from .errors import ConfigError
from .params import ModelParams
from .sweep import GammaMapSpec, SweepSpec

SWEEP_KEYS = (
    "delta", "omega", "g", "epsilon", "axis", "start", "stop", "steps",
    "gamma", "exact", "fixed-weight", "out", "threads",
)
GAMMA_MAP_KEYS = (
    "omega", "delta-start", "delta-stop", "epsilon-start", "epsilon-stop",
    "grid-delta", "grid-epsilon", "out", "threads",
)
SOLVE_KEYS = (
    "delta", "omega", "g", "epsilon", "gamma", "exact", "fixed-weight",
    "out", "threads",
)

_KEYSETS = {"solve": SOLVE_KEYS, "sweep": SWEEP_KEYS, "gamma-map": GAMMA_MAP_KEYS}

_TRUE = {"true", "yes", "1", "on"}
_FALSE = {"false", "no", "0", "off"}


def load_config(path: str, kind: str) -> dict[str, str]:
    """Read and validate raw key/value pairs for the given subcommand."""
    valid = _KEYSETS[kind]
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip().replace("_", "-")
            value = value.strip()
            if key not in valid:
                hint = difflib.get_close_matches(key, valid, n=3)
                suffix = f"; did you mean {', '.join(hint)}?" if hint else ""
                raise ConfigError(
                    f"{path}:{lineno}: unknown key {key!r}{suffix} "
                    f"(valid keys: {', '.join(valid)})"
                )
            if not value:
                raise ConfigError(f"{path}:{lineno}: empty value for {key!r}")
            values[key] = value
    return values


def _as_float(values: dict[str, str], key: str, default: float) -> float:
    if key not in values:
        return default
    try:
        return float(values[key])
    except ValueError:
        raise ConfigError(f"key {key!r}: not a number: {values[key]!r}") from None


def _as_int(values: dict[str, str], key: str, default: int) -> int:
    if key not in values:
        return default
    try:
        return int(values[key])
    except ValueError:
        raise ConfigError(f"key {key!r}: not an integer: {values[key]!r}") from None


def _as_bool(values: dict[str, str], key: str, default: bool) -> bool:
    if key not in values:
        return default
    v = values[key].lower()
    if v in _TRUE:
        return True
    if v in _FALSE:
        return False
    raise ConfigError(f"key {key!r}: not a boolean: {values[key]!r}")


def build_sweep_spec(values: dict[str, str]) -> SweepSpec:
    fixed = ModelParams(
        delta=_as_float(values, "delta", 1.0),
        omega=_as_float(values, "omega", 1.0),
        g=_as_float(values, "g", 0.0),
        epsilon=_as_float(values, "epsilon", 0.0),
    )
    if "axis" not in values:
        raise ConfigError("missing required key 'axis'")
    try:
        return SweepSpec(
            fixed=fixed,
            axis=values["axis"],
            start=_as_float(values, "start", 0.0),
            stop=_as_float(values, "stop", 0.0),
            steps=_as_int(values, "steps", 2),
            include_gamma=_as_bool(values, "gamma", False),
            with_exact=_as_bool(values, "exact", False),
            with_fixed_weight=_as_bool(values, "fixed-weight", False),
        )
    except ValueError as err:
        raise ConfigError(str(err)) from None


def build_gamma_map_spec(values: dict[str, str]) -> GammaMapSpec:
    try:
        return GammaMapSpec(
            omega=_as_float(values, "omega", 1.0),
            delta_range=(
                _as_float(values, "delta-start", 0.2),
                _as_float(values, "delta-stop", 6.0),
            ),
            epsilon_range=(
                _as_float(values, "epsilon-start", 0.0),
                _as_float(values, "epsilon-stop", 3.0),
            ),
            grid=(
                _as_int(values, "grid-delta", 60),
                _as_int(values, "grid-epsilon", 60),
            ),
        )
    except ValueError as err:
        raise ConfigError(str(err)) from None


def parse_config(path: str, kind: str = "sweep") -> SweepSpec | GammaMapSpec:
    """File -> spec, with no CLI overrides applied."""
    values = load_config(path, kind)
    if kind == "gamma-map":
        return build_gamma_map_spec(values)
    return build_sweep_spec(values)
