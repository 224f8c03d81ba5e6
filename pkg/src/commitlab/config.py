"""JSON model configuration files.

    {
      "utility": {"family": "quadratic"},
      "belief":  {"family": "triangular", "mode": 0.5},
      "ideals":  {"t_l": 0.0, "t_r": 1.0},
      "solver":  {"grid_size": 2001, "fixpoint_tol": 1e-9}
    }

``solver`` is optional; any of ``grid_size``, ``refine_tol``, ``tie_tol``,
``fixpoint_tol``, ``max_iters`` may be given.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .beliefs import MedianBelief
from .contest import ElectionModel, IdealPair
from .errors import DomainError
from .preferences import UtilitySpec
from .solver import BROptions, SolverOptions

_BR_KEYS = {"grid_size": int, "refine_tol": float, "tie_tol": float}
_ITER_KEYS = {"fixpoint_tol": float, "max_iters": int}


class ConfigError(ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass(frozen=True)
class ModelConfig:
    model: ElectionModel
    solver: SolverOptions


def _section(d: dict, key: str) -> dict:
    if key not in d:
        raise ConfigError(key, "missing")
    if not isinstance(d[key], dict):
        raise ConfigError(key, "must be an object")
    return d[key]


def parse_config(d: dict) -> ModelConfig:
    if not isinstance(d, dict):
        raise ConfigError("<root>", "config must be a JSON object")
    try:
        utility = UtilitySpec.from_dict(_section(d, "utility"))
    except (DomainError, TypeError, ValueError) as exc:
        raise ConfigError("utility", str(exc)) from None
    try:
        belief = MedianBelief.from_dict(_section(d, "belief"))
    except (DomainError, TypeError, ValueError) as exc:
        raise ConfigError("belief", str(exc)) from None
    ideals = _section(d, "ideals")
    for k in ("t_l", "t_r"):
        if k not in ideals:
            raise ConfigError(f"ideals.{k}", "missing")
        if isinstance(ideals[k], bool) or not isinstance(ideals[k], (int, float)):
            raise ConfigError(f"ideals.{k}", "must be a number")
        if not 0.0 <= ideals[k] <= 1.0:
            raise ConfigError(f"ideals.{k}", f"{ideals[k]} is outside [0, 1]")
    if not ideals["t_l"] < ideals["t_r"]:
        raise ConfigError("ideals.t_r", f"must exceed t_l (got t_l={ideals['t_l']}, t_r={ideals['t_r']})")
    pair = IdealPair(ideals["t_l"], ideals["t_r"])

    solver = d.get("solver", {})
    if not isinstance(solver, dict):
        raise ConfigError("solver", "must be an object")
    br, it = {}, {}
    for k, v in solver.items():
        target = br if k in _BR_KEYS else it if k in _ITER_KEYS else None
        if target is None:
            raise ConfigError(f"solver.{k}", "unknown option")
        cast = {**_BR_KEYS, **_ITER_KEYS}[k]
        try:
            target[k] = cast(v)
        except (TypeError, ValueError):
            raise ConfigError(f"solver.{k}", f"expected {cast.__name__}") from None
    try:
        opts = SolverOptions(br=BROptions(**br), **it)
    except DomainError as exc:
        raise ConfigError("solver", str(exc)) from None
    return ModelConfig(ElectionModel(utility, belief, pair), opts)


def load_config(path) -> ModelConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(str(path), f"cannot read ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return parse_config(data)
