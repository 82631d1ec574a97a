import json
import os
import subprocess

import pytest

import redenv


def test_version():
    assert redenv.__version__


def test_rref_and_kernel():
    rows, rank = redenv.rref(5, [[2, 4], [1, 2]])
    assert rank == 1
    assert rows[0] == [1, 2]
    ker = redenv.kernel(5, [[1, 2, 0]])
    assert len(ker) == 2


def test_baby_verma_dims():
    assert redenv.baby_verma_dim("sl2", 5, "f=1", "2") == 5
    assert redenv.baby_verma_dim("sl3", 3, "zero", "0,0,0") == 27


def test_worked_tensor_filtration():
    rep = json.loads(redenv.tensor_filtration("sl2", 5, "f=1", "f=-1", "2", "3"))
    assert rep["certified"] is True
    weights = [s["weight"][0] for s in rep["results"]["steps"]]
    assert weights == [0, 3, 1, 4, 2]


def test_composition_factors_match_oracle():
    engine = redenv.tensor_composition_factors("sl2", 5, "f=1", "f=-1", "2", "3")
    oracle = redenv.tensor_composition_factors("sl2", 5, "f=1", "f=-1", "2", "3", use_oracle=True)
    key = lambda f: (tuple(f["label"]), f["multiplicity"], f["dim"])
    assert sorted(map(key, engine)) == sorted(map(key, oracle))
    assert sum(f["multiplicity"] * f["dim"] for f in engine) == 25


def test_pyramid_layer():
    dims = redenv.centralizer_dims([1, 2, 2, 4], 7)
    assert (dims["gl_centralizer"], dims["b_centralizer"], dims["orbit_dim"]) == (27, 18, 54)
    lift = redenv.lift_column_connected([1, 2, 2, 4], [2, 1, 6, 0, 5, 6, 4, 1, 0], 7)
    assert redenv.rs_shape(lift) == [4, 2, 2, 1]
    assert redenv.sigma_check([1, 2, 2, 4], lift)
    assert len(redenv.min_dim_classification([1, 1], 5)) == 5


def test_base_change_pipeline():
    assert redenv.m_p_chi_matches_baby_verma("sl2", 5, "1/2", "f=1")
    assert redenv.dim_L_p_chi("sl2", 5, "2", "zero") == 3
    report = redenv.minimal_label_pipeline([2], 5, [3, 1])
    assert report["nonzero"] and report["surjection"]
    assert report["annihilator_claims"] == "not checked"


def test_suite_report_roundtrip():
    rep = json.loads(redenv.run_suite("example-2-3", 5))
    assert rep["certified"] is True
    assert rep["results"]["reference_discrepancy"]["flag"] is True


@pytest.mark.skipif("REDENV_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_roundtrip():
    out = subprocess.run(
        [os.environ["REDENV_CLI"], "tensor-filt", "--alg", "sl2", "--p", "5", "--chi", "f=1",
         "--chi2", "f=-1", "--lambda", "2", "--mu", "3", "--json"],
        capture_output=True, text=True, check=True)
    rep = json.loads(out.stdout)
    assert rep["certified"] is True
    # byte-identical re-serialization (sorted keys)
    assert json.dumps(rep, sort_keys=True, separators=(",", ":")) == json.dumps(
        json.loads(out.stdout), sort_keys=True, separators=(",", ":"))
