import json

import pytest

from nullstrat import cli
from nullstrat.cli import REGISTRY, main, run_scenario, write_report

BUILTINS = ["v34", "seven-points", "nullcone", "two-form-theta", "double-bundle-search", "binary-forms",
            "theta-ledger", "torbit"]


def strip_runtime(doc):
    for c in doc["certificates"]:
        c["runtime"] = 0
    return doc


def test_registry_contents(capsys):
    assert list(REGISTRY) == BUILTINS
    assert main(["list", "--json"]) == 0
    names = [s["name"] for s in json.loads(capsys.readouterr().out)]
    assert names == BUILTINS


@pytest.mark.parametrize("name", ["seven-points", "two-form-theta", "theta-ledger", "binary-forms"])
def test_scenarios_pass(name):
    run = run_scenario(name)
    assert run.certificates
    assert run.exit_code == 0, [c.claim for c in run.certificates if c.verdict != "pass"]


def test_nullcone_cli_dual_module(tmp_path, capsys):
    out = tmp_path / "cert.json"
    code = main(["run", "nullcone", "--group", "SL3", "--module", "0,4-dual", "--json", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["schema"] == 1
    comp = [c for c in doc["certificates"] if c["claim"] == "nullcone.component_dims"][0]
    assert comp["computed"] == [10, 11] and comp["verdict"] == "pass"
    for field in ("claim", "anchor", "expected", "computed", "verdict", "runtime", "input_hash", "seed"):
        assert field in comp


def test_reruns_are_identical(tmp_path):
    docs = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        main(["run", "seven-points", "--seed", "5", "--json", str(out)])
        docs.append(strip_runtime(json.loads(out.read_text())))
    assert docs[0] == docs[1]
    assert any(c["seed"] == 5 for c in docs[0]["certificates"])


def test_exit_codes(capsys):
    assert main(["run", "nullcone", "--group", "SL5", "--module", "ext:2"]) == 2
    assert main(["run", "no-such-scenario"]) == 64
    assert main(["run", "v34", "--prime", "10"]) == 64
    run = run_scenario("theta-ledger")
    run.certificates[0].verdict = "fail"
    assert run.exit_code == 1


def test_failing_expectation_reports_fail():
    run = cli.Run("adhoc", {"seed": 0})
    run.check("x", "anchor", 3, lambda: 4)
    run.check("y", "anchor", None, lambda: 4)
    assert [c.verdict for c in run.certificates] == ["fail", "undetermined"]
    assert run.exit_code == 1


def test_report_files(tmp_path):
    run = run_scenario("binary-forms")
    paths = write_report(run, tmp_path)
    names = {p.name for p in paths}
    assert "binary-forms.tsv" in names
    assert "binary-forms_verdicts.png" in names
    assert "binary-forms_binary_closure_dims.png" in names
    rows = (tmp_path / "binary-forms.tsv").read_text().splitlines()
    assert rows[0].split("\t")[:2] == ["claim", "verdict"]
    assert len(rows) == len(run.certificates) + 1


def test_unknown_parameter():
    with pytest.raises(ValueError):
        run_scenario("theta-ledger", prime=7)
