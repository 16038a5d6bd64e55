"""Run configuration: a JSON file with either a preset name or explicit data.

Schema (all keys optional when "preset" is given, required otherwise):

    {
      "preset":    "paper-n4",          // expands matrices + topology
      "n":         4,                   // ambient dimension
      "m":         5,                   // oscillator count
      "omega":     [[...], ...],        // m matrices, each row-major n*n
                                        // (flat) or nested n x n
      "adjacency": [[...], ...],        // m x m nonnegative, zero diagonal
      "k":         0.9,                 // coupling gain >= 0
      "dt":        0.001,
      "t_end":     100.0,
      "stride":    100,                 // recording interval in steps
      "seed":      1,
      "margin":    0.05,                // hemisphere margin, in (0, 1)
      "p":         [0, 0, 0, 1]        // optional hemisphere axis
    }

When "preset" is present the matrices and topology come from the preset and
cannot be overridden; the scalar parameters can.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import numpy as np

from .errors import ParseError, ValidationError
from .graph import Digraph
from .linalg import FloatArray, SkewMatrix
from .presets import PRESETS
from .wspace import FrequencyEnsemble

_SCALAR_KEYS = ("k", "dt", "t_end", "stride", "seed", "margin")
_ALLOWED_KEYS = frozenset(
    ("preset", "n", "m", "omega", "adjacency", "p") + _SCALAR_KEYS
)

# Ambient dimensions beyond this are outside the dense-small design envelope.
MAX_DIMENSION = 64


@dataclass(frozen=True)
class RunConfig:
    """Validated inputs for one analysis or simulation run."""

    n: int
    m: int
    omegas: tuple[FloatArray, ...]
    adjacency: FloatArray
    k: float
    dt: float
    t_end: float
    stride: int
    seed: int
    margin: float
    preset: Optional[str] = None
    p: Optional[FloatArray] = None

    def ensemble(self) -> FrequencyEnsemble:
        return FrequencyEnsemble(tuple(SkewMatrix(w) for w in self.omegas))

    def digraph(self) -> Digraph:
        return Digraph(self.adjacency)


def _as_matrix(value: Any, side: int, field: str) -> FloatArray:
    try:
        arr = np.asarray(value, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{field}: not a numeric array") from exc
    if arr.ndim == 1:
        if arr.size != side * side:
            raise ValidationError(
                f"{field}: flat row-major array must have {side * side} entries, "
                f"got {arr.size}"
            )
        arr = arr.reshape(side, side)
    if arr.shape != (side, side):
        raise ValidationError(f"{field}: expected {side}x{side}, got {arr.shape}")
    return arr


def _require_number(cfg: dict, key: str, default: Any = None) -> Any:
    value = cfg.get(key, default)
    if value is None:
        raise ValidationError(f"{key}: missing required field")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{key}: must be a number, got {value!r}")
    return value


def load_config(path: str | Path) -> RunConfig:
    """Load and validate a run configuration file.

    Raises ParseError when the file is missing or not valid JSON, and
    ValidationError naming the offending field otherwise.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read config file {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError(f"config file {path} must contain a JSON object")

    unknown = set(raw) - _ALLOWED_KEYS
    if unknown:
        raise ValidationError(f"unknown config fields: {sorted(unknown)}")

    preset_name = raw.get("preset")
    if preset_name is not None:
        if preset_name not in PRESETS:
            raise ValidationError(
                f"preset: unknown name {preset_name!r}; "
                f"available: {sorted(PRESETS)}"
            )
        if "omega" in raw or "adjacency" in raw:
            raise ValidationError(
                "omega/adjacency cannot be overridden when a preset is given"
            )
        preset = PRESETS[preset_name]
        n, m = preset.n, preset.m
        for key in ("n", "m"):
            if key in raw and raw[key] != {"n": n, "m": m}[key]:
                raise ValidationError(f"{key}: conflicts with preset {preset_name}")
        omegas = tuple(np.array(w, dtype=np.float64) for w in preset.omegas)
        adjacency = preset.digraph().adjacency
        defaults = {
            "k": preset.k,
            "dt": preset.dt,
            "t_end": preset.t_end,
            "stride": preset.stride,
            "seed": preset.seed,
            "margin": preset.margin,
        }
        p_default = None if preset.p is None else np.array(preset.p)
    else:
        n = raw.get("n")
        m = raw.get("m")
        if not isinstance(n, int) or n < 1:
            raise ValidationError("n: must be a positive integer")
        if not isinstance(m, int) or m < 2:
            raise ValidationError("m: oscillator ensemble needs m >= 2")
        if n > MAX_DIMENSION:
            raise ValidationError(f"n: dimensions above {MAX_DIMENSION} unsupported")
        omega_raw = raw.get("omega")
        if not isinstance(omega_raw, list) or len(omega_raw) != m:
            raise ValidationError(f"omega: expected a list of {m} matrices")
        omegas = tuple(
            _as_matrix(w, n, f"omega[{idx}]") for idx, w in enumerate(omega_raw)
        )
        if "adjacency" not in raw:
            raise ValidationError("adjacency: missing required field")
        adjacency = _as_matrix(raw["adjacency"], m, "adjacency")
        defaults = {
            "k": None,
            "dt": 1e-3,
            "t_end": 50.0,
            "stride": 50,
            "seed": 1,
            "margin": 0.05,
        }
        p_default = None

    k = float(_require_number(raw, "k", defaults["k"]))
    dt = float(_require_number(raw, "dt", defaults["dt"]))
    t_end = float(_require_number(raw, "t_end", defaults["t_end"]))
    stride = _require_number(raw, "stride", defaults["stride"])
    seed = _require_number(raw, "seed", defaults["seed"])
    margin = float(_require_number(raw, "margin", defaults["margin"]))

    if k < 0:
        raise ValidationError("k: coupling gain must be nonnegative")
    if dt <= 0:
        raise ValidationError("dt: step must be positive")
    if t_end < 0:
        raise ValidationError("t_end: horizon must be nonnegative")
    if not isinstance(stride, int) or stride < 1:
        raise ValidationError("stride: must be a positive integer")
    if not isinstance(seed, int):
        raise ValidationError("seed: must be an integer")
    if not 0.0 < margin < 1.0:
        raise ValidationError("margin: must lie strictly between 0 and 1")
    n_steps = round(t_end / dt)
    if n_steps % stride != 0:
        raise ValidationError(
            f"stride: {stride} does not divide the step count {n_steps}"
        )

    for idx, w in enumerate(omegas):
        scale = np.abs(w).max()
        residual = np.abs(w + w.T).max()
        if residual > 1e-12 * scale:
            raise ValidationError(
                f"omega[{idx}]: not skew-symmetric, max symmetric residual "
                f"{residual:g}"
            )
    try:
        Digraph(adjacency)
    except ValueError as exc:
        raise ValidationError(f"adjacency: {exc}") from exc

    p = p_default
    if "p" in raw:
        p_arr = np.asarray(raw["p"], dtype=np.float64)
        if p_arr.shape != (n,):
            raise ValidationError(f"p: expected {n} components, got shape {p_arr.shape}")
        p = p_arr
    if p is not None:
        nrm = np.linalg.norm(p)
        if nrm < 1e-12:
            raise ValidationError("p: must be a nonzero vector")
        p = p / nrm

    return RunConfig(
        n=n,
        m=m,
        omegas=omegas,
        adjacency=adjacency,
        k=k,
        dt=dt,
        t_end=t_end,
        stride=stride,
        seed=seed,
        margin=margin,
        preset=preset_name,
        p=p,
    )


def config_echo(config: RunConfig) -> dict[str, Any]:
    """Stable-order summary of the resolved configuration for reports."""
    echo: dict[str, Any] = {}
    echo["preset"] = config.preset if config.preset else "(explicit matrices)"
    echo["n"] = config.n
    echo["m"] = config.m
    echo["k"] = config.k
    echo["dt"] = config.dt
    echo["t_end"] = config.t_end
    echo["stride"] = config.stride
    echo["seed"] = config.seed
    echo["margin"] = config.margin
    echo["p"] = "(auto)" if config.p is None else list(config.p)
    if config.preset is None:
        echo["omega"] = [w.reshape(-1).tolist() for w in config.omegas]
        echo["adjacency"] = config.adjacency.tolist()
    return echo
