"""McShane-Whitney extension of fuzzy Lipschitz maps between fuzzy metric spaces."""

from __future__ import annotations

import json as _json
import os as _os
from dataclasses import dataclass as _dataclass

from . import _core
from ._core import (
    ConfigError,
    ConstructionError,
    DomainError,
    EuclideanFuzzyMetric,
    ExtensionUndefinedError,
    FiniteFuzzyMetricSpace,
    FuzzylipError,
    HypothesisError,
    InfeasibleError,
    InvalidMetricError,
    IoError,
    MonotoneFunction,
    NumericError,
    TNorm,
    chain_pseudometric,
    left_continuous_envelope,
    log_grid,
    rho_matrix,
    right_adjoint,
)

__version__ = "0.1.0"

DEFAULT_TOLERANCE = 1e-9


@_dataclass(frozen=True)
class Outcome:
    exit_code: int
    report: dict
    csv: str


def _tolerance(tolerance):
    if tolerance is not None:
        return float(tolerance)
    return float(_os.environ.get("FUZZYLIP_TOLERANCE", DEFAULT_TOLERANCE))


def _run(command, config, base_dir, tolerance, seed):
    text = config if isinstance(config, str) else _json.dumps(config)
    code, report, csv = _core._run_command(command, text, base_dir, _tolerance(tolerance), seed)
    return Outcome(code, _json.loads(report), csv)


def validate(config, base_dir=".", tolerance=None, seed=0) -> Outcome:
    """Run the validators on a configuration dict (or JSON text)."""
    return _run("validate", config, base_dir, tolerance, seed)


def extend(config, base_dir=".", tolerance=None, seed=0) -> Outcome:
    """Extend the sampled map described by a configuration and verify the result."""
    return _run("extend", config, base_dir, tolerance, seed)


def check_galois(phi, grid, tolerance=DEFAULT_TOLERANCE) -> dict:
    return _json.loads(_core.check_galois(phi, list(grid), tolerance))


def validate_codomain_conditions(efm, x_grid, t_grid, tolerance=DEFAULT_TOLERANCE) -> dict:
    return _json.loads(_core.validate_codomain_conditions(efm, list(x_grid), list(t_grid), tolerance))


def validate_fuzzy_metric(space, t_grid, s_grid, tolerance=DEFAULT_TOLERANCE) -> dict:
    return _json.loads(_core.validate_fuzzy_metric(space, list(t_grid), list(s_grid), tolerance))


def space_from_config(space: dict) -> FiniteFuzzyMetricSpace:
    return FiniteFuzzyMetricSpace.from_json(_json.dumps(space))
