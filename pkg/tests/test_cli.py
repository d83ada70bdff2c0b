"""Golden-file tests for every subcommand.

Set HYPERSHIFT_REGEN_GOLDEN=1 to rewrite the golden files after an intended
change of output.
"""

import io
import json
import os
from pathlib import Path

import pytest

from hypershift.cli import run

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

CASES = {
    "classify_example1": ["classify", "example1.mat", "--json"],
    "classify_full2_human": ["classify", "full2.mat", "--symbols", "01"],
    "kron_golden_mean": ["kron", "golden_mean.mat", "-k", "2", "--json"],
    "dist_zero_one": ["dist", "(0)", "(1)", "--json"],
    "dist_human": ["dist", "01(1010)", "0(10)"],
    "hausdorff_sets": ["hausdorff", "zero.set", "zero_one.set", "--json"],
    "sens_fib": ["sens", "--system", "sturmian:fib", "--cylinder", "0", "--delta-exp", "3",
                 "--horizon", "2000", "--json"],
    "sens_wk": ["sens", "--system", "wk:linear", "--cylinder", "0101", "--delta-exp", "1",
                "--horizon", "600", "--json"],
    "sens_sft": ["sens", "--system", "sft:golden_mean.mat", "--cylinder", "12", "--delta-exp", "2",
                 "--horizon", "100", "--json"],
    "witness_periodize": ["witness", "periodize", "--prefixes", "010,111", "--json"],
    "witness_leo": ["witness", "leo", "--prefixes", "00,01", "--target", "(0),(1)", "--json"],
    "witness_full_sens": ["witness", "full-sens", "--elements", "(01),(10)", "--depth", "3", "--json"],
    "witness_liyorke": ["witness", "liyorke", "--point", "(0)", "--json"],
    "witness_sft_sens": ["witness", "sft-sens", "golden_mean.mat", "--elements", "(121)", "--depth", "2", "--json"],
    "witness_dense_periodic": ["witness", "dense-periodic", "golden_mean.mat", "--elements", "(112),1(1)",
                               "--depth", "3", "--json"],
    "witness_example2": ["witness", "example2-hyper", "--offsets", "0,2", "--json"],
    "expansivity_n3": ["expansivity-counterexample", "-n", "3", "--json"],
    "probe_example1_absent": ["probe-hyper", "example1.mat", "--src", "1,3", "--dst", "1", "--horizon", "12", "--json"],
    "probe_golden_mean": ["probe-hyper", "golden_mean.mat", "--src", "1", "--dst", "2", "--horizon", "6", "--json"],
    "sweep_default": ["sweep", "--json"],
}

# commands whose work can be spread over processes
PARALLEL = {"sens_fib", "sens_wk", "sweep_default"}


def invoke(argv, cwd=DATA):
    out, err = io.StringIO(), io.StringIO()
    old = os.getcwd()
    os.chdir(cwd)
    try:
        code = run(argv, out, err)
    finally:
        os.chdir(old)
    return code, out.getvalue(), err.getvalue()


def golden_path(name):
    return GOLDEN / (name + (".json" if "--json" in CASES[name] else ".txt"))


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, out, err = invoke(CASES[name])
    assert code == 0, err
    path = golden_path(name)
    if os.environ.get("HYPERSHIFT_REGEN_GOLDEN"):
        path.write_text(out, encoding="utf-8")
    assert out == path.read_text(encoding="utf-8")


@pytest.mark.parametrize("name", sorted(CASES))
def test_repeatable(name):
    first = invoke(CASES[name])
    second = invoke(CASES[name])
    assert first == second


@pytest.mark.parametrize("name", sorted(PARALLEL))
def test_worker_count_does_not_change_bytes(name):
    base = invoke(CASES[name])
    for workers in ("2", "3"):
        assert invoke(CASES[name] + ["--workers", workers]) == base


def test_json_is_canonical():
    for name, argv in CASES.items():
        if "--json" not in argv:
            continue
        text = golden_path(name).read_text(encoding="utf-8")
        doc = json.loads(text)
        assert json.dumps(doc, sort_keys=True, indent=2) + "\n" == text
        assert "." not in json.dumps(_numbers(doc))


def _numbers(doc):
    if isinstance(doc, dict):
        return [_numbers(v) for v in doc.values()]
    if isinstance(doc, list):
        return [_numbers(v) for v in doc]
    return doc if isinstance(doc, (int, float)) and not isinstance(doc, bool) else 0


def test_human_and_json_share_content():
    _, human, _ = invoke(["classify", "example1.mat"])
    _, js, _ = invoke(["classify", "example1.mat", "--json"])
    doc = json.loads(js)
    for key, value in doc["classification"].items():
        if isinstance(value, list):
            rendered = ", ".join(value) if value else "(none)"
        elif isinstance(value, bool):
            rendered = "yes" if value else "no"
        else:
            rendered = value
        assert f"  {key}: {rendered}" in human


def test_example1_flags():
    _, out, _ = invoke(CASES["classify_example1"])
    c = json.loads(out)["classification"]
    assert c["transitive"] is True and c["induced_transitive"] is False


def test_dist_value():
    _, out, _ = invoke(CASES["dist_zero_one"])
    assert json.loads(out)["distance"] == "2"


def test_sens_fib_cofinite():
    _, out, _ = invoke(CASES["sens_fib"])
    doc = json.loads(out)
    assert doc["verdicts"]["cofinite_from"] is not None
    assert doc["verdicts"]["qualifier"] == "empirical up to horizon"


def test_config_echo_lists_defaults():
    _, out, _ = invoke(CASES["sens_fib"])
    cfg = json.loads(out)["config"]
    assert cfg == {"budget": None, "command": "sens", "cylinder": "0", "delta_exp": 3, "horizon": 2000,
                   "output": "json", "symbols": "", "system": "sturmian:fib"}


def test_kron_output_file(tmp_path):
    target = tmp_path / "k2.mat"
    code, out, _ = invoke(["kron", "example1.mat", "-k", "2", "-o", str(target), "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["kron"]["dimension"] == 16 and doc["kron"]["irreducible"] is False
    assert len(target.read_text().splitlines()) == 16


@pytest.mark.parametrize("argv,fragment", [
    (["dist", "(0", "(1)"], "malformed literal"),
    (["dist", "(0)", "()"], "empty period"),
    (["classify", "missing.mat"], "cannot read missing.mat"),
    (["classify", "bad.mat"], "expected 0 or 1"),
    (["kron", "full2.mat", "-k", "13"], "exceeds cap"),
    (["sens", "--system", "sturmian:fib", "--cylinder", "11", "--delta-exp", "2", "--horizon", "50"],
     "not in the language"),
    (["witness", "sft-sens", "swap.mat", "--elements", "(12)", "--depth", "2"], "isolated points"),
    (["probe-hyper", "golden_mean.mat", "--src", "22", "--dst", "1"], "not allowed"),
])
def test_domain_errors_exit_1(argv, fragment):
    code, out, err = invoke(argv)
    assert code == 1 and out == ""
    assert err.count("\n") == 1 and fragment in err


def test_horizon_cap(monkeypatch):
    monkeypatch.setenv("HYPERSHIFT_MAX_HORIZON", "100")
    code, _, err = invoke(CASES["sens_fib"])
    assert code == 1 and "exceeds cap" in err


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["dist", "(0)"],
    ["kron", "full2.mat"],
    ["kron", "full2.mat", "-k", "two"],
    ["witness"],
    ["witness", "nope"],
    ["sens", "--system", "sturmian:fib"],
])
def test_usage_errors_exit_2(argv):
    code, out, err = invoke(argv)
    assert code == 2 and out == "" and err
