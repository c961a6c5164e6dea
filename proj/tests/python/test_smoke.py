import json
import math
import os
from pathlib import Path

import pytest

import fuzzylip

CONFIG_DIR = Path(os.environ.get("FUZZYLIP_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))


def test_tnorms():
    assert fuzzylip.TNorm.lukasiewicz()(0.7, 0.6) == pytest.approx(0.3)
    assert fuzzylip.TNorm.from_tag("prod")(1.0, 0.42) == 0.42
    with pytest.raises(fuzzylip.DomainError):
        fuzzylip.TNorm.minimum()(1.5, 0.2)


def test_clamp_adjoint():
    phi = fuzzylip.MonotoneFunction.clamp(2, 1)
    assert phi(0.6) == 0.3
    assert fuzzylip.right_adjoint(phi, 0.3) == 0.6
    assert math.isinf(fuzzylip.right_adjoint(phi, 0.5))
    report = fuzzylip.check_galois(phi, fuzzylip.log_grid(1e-3, 1e3, 100))
    assert report["passed"]


def test_custom_function_roundtrip():
    phi = fuzzylip.MonotoneFunction.custom(lambda x: min(x, 2.0) / 4.0, 0.5, True)
    assert fuzzylip.right_adjoint(phi, 0.25) == pytest.approx(1.0, abs=1e-9)
    pw = fuzzylip.MonotoneFunction.piecewise_linear([(0, 0), (1, 0.5)])
    assert json.loads(pw.to_json())["kind"] == "piecewise_linear"


def test_space_and_validators():
    space = fuzzylip.space_from_config({"preset": "exp", "metric": {"matrix": [[0, math.log(2)], [math.log(2), 0]]}})
    assert len(space) == 2
    assert space.membership(0, 1, 1.0) == pytest.approx(0.5)
    grid = fuzzylip.log_grid(1e-2, 1e2, 5)
    assert fuzzylip.validate_fuzzy_metric(space, grid, grid)["passed"]
    efm = fuzzylip.EuclideanFuzzyMetric.standard()
    assert efm.membership(0.0, 0.4, 1.0) == pytest.approx(0.8)
    assert fuzzylip.validate_codomain_conditions(efm, grid, grid)["passed"]


def test_chain_pseudometric():
    space = fuzzylip.space_from_config({"preset": "exp", "metric": {"points": [[0.0], [1.0], [2.0]]}})
    efm = fuzzylip.EuclideanFuzzyMetric.standard()
    d = fuzzylip.chain_pseudometric(space, efm, 0.4, 1.0)
    rho = fuzzylip.rho_matrix(space, efm, 0.4, 1.0)
    assert d[0][0] == 0.0
    assert d[0][2] <= rho[0][2]


def test_extend_from_config_file():
    config = json.loads((CONFIG_DIR / "exp_five.json").read_text())
    outcome = fuzzylip.extend(config, base_dir=str(CONFIG_DIR))
    assert outcome.exit_code == 0
    assert outcome.report["verification"]["passed"]
    assert outcome.csv.splitlines()[0] == "point,t,f_M,f_W,f_alpha"
    again = fuzzylip.extend(config, base_dir=str(CONFIG_DIR))
    assert again.csv == outcome.csv


def test_hypothesis_failure_and_validation():
    config = json.loads((CONFIG_DIR / "exp_five_k06.json").read_text())
    assert fuzzylip.extend(config, base_dir=str(CONFIG_DIR)).exit_code == 3
    bad = json.loads((CONFIG_DIR / "g_too_large.json").read_text())
    outcome = fuzzylip.validate(bad)
    assert outcome.exit_code == 2
    assert not outcome.report["validation"]["codomain_conditions"]["item3_g_bounded"]["passed"]


def test_config_errors_raise():
    with pytest.raises(fuzzylip.ConfigError):
        fuzzylip.extend({"space": {"preset": "nope"}})
