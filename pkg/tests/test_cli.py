import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tklab import instances
from tklab.cli import main
from tklab.cli.scenario import run_scenario_record
from tklab.cli.serialize import (
    blaschke_record,
    canonical_json,
    read_blaschke,
    read_h2,
    read_ratfun,
    read_symbol,
    ratfun_record,
    symbol_record,
)
from tklab.cli.suites import SUITES, list_suites, poly_text, run_suite
from tklab.errors import UnknownSuite, ValidationError

CONJ_Z = {"anti": {"num": [[0, 0], [1, 0]], "den": [[1, 0]]}, "ana": 1, "power": 0}
B_HALF = {"zeros": [[-0.5, 0, 1]], "unimodular": [1, 0]}
Z_SQUARED = {"zeros": [[0, 0, 2]], "unimodular": [1, 0]}


def _write(tmp_path, rec, name="scenario.json"):
    p = tmp_path / name
    p.write_text(json.dumps(rec))
    return p


def _run(tmp_path, args, name="report.json"):
    out = tmp_path / name
    code = main([*args, "--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None)


# --- canonical JSON ---------------------------------------------------------


def test_canonical_json_format():
    text = canonical_json({"b": 0.1, "a": [1, float("nan"), True, None], "c": 1j})
    assert text == '{"a":[1,null,true,null],"b":0.10000000000000001,"c":[0,1]}'


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_records_round_trip(seed):
    rng = np.random.default_rng(seed)
    s = instances.symbol(rng)
    rec = json.loads(canonical_json(symbol_record(s)))
    assert symbol_record(read_symbol(rec, "s")) == symbol_record(s)
    b = instances.blaschke(rng, int(rng.integers(0, 5)))
    rec = json.loads(canonical_json(blaschke_record(b)))
    assert blaschke_record(read_blaschke(rec, "b")) == blaschke_record(b)
    f = instances.rational(rng, 2, 2)
    rec = json.loads(canonical_json(ratfun_record(f)))
    back = read_ratfun(rec, "f")
    assert np.array_equal(back.num.coeffs, f.num.coeffs) and np.array_equal(back.den.coeffs, f.den.coeffs)


def test_validation_reports_field_paths():
    with pytest.raises(ValidationError) as e:
        read_blaschke({"zeros": [[0.1, 0, 1], [2.0, 0, 1]]}, "inputs.theta")
    assert e.value.path == "inputs.theta.zeros[1]"
    with pytest.raises(ValidationError) as e:
        read_symbol({"anti": {"num": [[1, "x"]]}}, "inputs.F")
    assert e.value.path == "inputs.F.anti.num[0][1]"
    with pytest.raises(ValidationError) as e:
        read_h2({"num": [[1, 0]], "den": [[-0.5, 0], [1, 0]]}, "inputs.basis[0]")
    assert e.value.path == "inputs.basis[0]"
    with pytest.raises(ValidationError) as e:
        read_blaschke({"zeros": [], "unimodular": [2, 0]}, "u")
    assert e.value.path == "u.unimodular"


def test_poly_text():
    assert poly_text([0, 4, 1]) == "z^2+4z"
    assert poly_text([4, 1]) == "z+4"
    assert poly_text([-1, 0, -2]) == "-2z^2-1"


# --- scenarios --------------------------------------------------------------


def test_kernel_scenario(tmp_path):
    code, rep = _run(tmp_path, ["run", str(_write(tmp_path, {"kind": "kernel", "inputs": {"symbol": CONJ_Z}}))])
    assert code == 0
    details = rep["results"][0]["details"]
    assert details["dim"] == 1
    assert details["basis"] == [{"num": [[1, 0]], "den": [[1, 0]]}]


def test_minimal_model_scenario():
    rep = run_scenario_record({"kind": "minimalModel", "inputs": {"theta": B_HALF, "psi": Z_SQUARED}})
    assert all(r["passed"] for r in rep["results"])
    v = read_blaschke(rep["results"][0]["details"]["v"], "v")
    expect = read_blaschke({"zeros": [[0, 2 ** -0.5, 1], [0, -(2 ** -0.5), 1]]}, "e")
    assert v.same_zeros(expect)


def test_weighted_and_compose_scenarios():
    for kind in ("weightedPre", "weightedPost"):
        rep = run_scenario_record({"kind": kind, "inputs": {"theta": B_HALF, "psi": Z_SQUARED, "u": B_HALF}})
        assert all(r["passed"] for r in rep["results"])
    rep = run_scenario_record({"kind": "compose", "inputs": {"F": {"anti": {"num": [[0.2, 0], [1, 0]],
                                                                             "den": [[1, 0], [-0.2, 0]]}},
                                                              "psi": {"zeros": [[0.3, 0.1, 1]]}}})
    assert rep["results"][1]["details"]["equal"] is True


def test_hitt_and_oracle_scenarios():
    rep = run_scenario_record({"kind": "hitt", "inputs": {"basis": [{"num": [[4, 0], [4, 0], [1, 0]]}]}})
    assert rep["results"][0]["passed"]
    u = rep["results"][0]["details"]["u"]["num"]
    assert np.allclose([c[0] for c in u], np.array([4, 4, 1]) / np.sqrt(33))
    rep = run_scenario_record({"kind": "oracleCrossCheck", "inputs": {"symbol": CONJ_Z}})
    assert all(r["passed"] for r in rep["results"])


def test_verify_scenario_final_example(tmp_path):
    code, rep = _run(tmp_path, ["run", str(_write(tmp_path, {"kind": "verify", "inputs": {"suite": "final-example"}}))])
    assert code == 0
    check = next(r for r in rep["results"] if r["check"] == "not-nearly-invariant")
    assert check["details"]["sample"]["witness"] == {"contains": "z^2+4z", "excludes": "z+4"}


def test_report_is_deterministic(tmp_path):
    a = _write(tmp_path, {"kind": "verify", "inputs": {"suite": "thm-1.3"}, "seed": 3, "trials": 6})
    main(["run", str(a), "--out", str(tmp_path / "r1.json")])
    main(["run", str(a), "--out", str(tmp_path / "r2.json")])
    assert (tmp_path / "r1.json").read_bytes() == (tmp_path / "r2.json").read_bytes()


# --- exit codes -------------------------------------------------------------


def test_exit_code_for_invalid_input(tmp_path, capsys):
    bad = _write(tmp_path, {"kind": "minimalModel", "inputs": {"theta": {"zeros": [[1.5, 0, 1]]}, "psi": Z_SQUARED}})
    assert main(["run", str(bad)]) == 2
    assert "inputs.theta.zeros[0]" in capsys.readouterr().err
    assert main(["run", str(_write(tmp_path, {"kind": "nope"}))]) == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert main(["run", str(broken)]) == 2
    assert main(["verify", "no-such-suite"]) == 2


def test_exit_code_for_failed_check(tmp_path):
    sym = {"anti": {"num": [[-0.018, 0.042], [0.0, 0.0], [0.0, 0.0], [1, 0]]}}
    rec = {"kind": "oracleCrossCheck", "inputs": {"symbol": sym}, "tolerances": {"angle": 1e-300}}
    code, rep = _run(tmp_path, ["run", str(_write(tmp_path, rec))])
    assert code == 1
    failed = [r for r in rep["results"] if not r["passed"]]
    assert failed and all(r["details"] for r in failed)


def test_exit_code_for_inconsistency(monkeypatch, tmp_path):
    import tklab.cli.suites as suites
    from tklab.errors import InconsistencyDetected

    def disagree(*args):
        raise InconsistencyDetected("containment=True, smirnov=False, maximal-vector=True")

    monkeypatch.setattr(suites, "composition_maps_into", disagree)
    code, rep = _run(tmp_path, ["verify", "prop-fgpsi", "--seed", "1", "--trials", "3"])
    assert code == 3
    assert rep["summary"]["inconsistent"] is True


def test_failure_carries_repro(monkeypatch, tmp_path):
    import tklab.cli.suites as suites

    monkeypatch.setattr(suites, "coburn_dims", lambda s: (1, 1))
    code, rep = _run(tmp_path, ["verify", "coburn", "--seed", "4", "--trials", "2"])
    assert code == 1
    fail = rep["results"][0]["details"]["failures"][1]
    repro = fail["repro"]
    assert repro["suite"] == "coburn" and repro["seed"] == 4 and repro["trial"] == 1
    sym = read_symbol(repro["instance"]["symbol"], "symbol")
    monkeypatch.undo()
    code, single = _run(tmp_path, ["verify", "coburn", "--seed", "4", "--only-trial", "1"], "single.json")
    assert code == 0
    assert single["results"][0]["details"]["sample"]["winding"] == fail["details"]["winding"]
    assert sym is not None


# --- suites -----------------------------------------------------------------


def test_list_suites(tmp_path):
    entries = list_suites()
    assert len(entries) == len(SUITES) == 22
    names = [e["name"] for e in entries]
    assert names[0] == "thm-1.3" and len(set(names)) == 22
    by = {e["name"]: e for e in entries}
    assert "minimal model space containing" in by["thm-1.3"]["description"]
    assert by["thm-utg2"]["description"] == "G=ψ(F∘ψ)·conj(u)/(z u_o)"
    code = main(["list-suites", "--out", str(tmp_path / "l.json")])
    assert code == 0 and json.loads((tmp_path / "l.json").read_text()) == entries


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope", 0, 1)


@pytest.mark.parametrize("name", [s.name for s in SUITES if s.name not in ("dimension-law", "oracle-crosscheck")])
def test_every_suite_passes_a_short_run(name):
    out = run_suite(name, 11, 6)
    assert not out.inconsistent
    assert all(r["passed"] for r in out.results), [r for r in out.results if not r["passed"]]
