import json

import pytest

from rankvar.cli import main, traceability_markdown
from rankvar.suites import SUITES, SuiteResult, emit_report, run_suite, UnsupportedParameters, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_repring_ext(capsys):
    code, out, _ = run(capsys, "repring", "--p", "5", "ext", "4", "2")
    data = json.loads(out)
    assert code == 0 and data["matrix"] == [5, 1] and data["gaussian"] == [5, 1] and data["agree"]


def test_repring_other_ops(capsys):
    code, out, _ = run(capsys, "repring", "--p", "5", "sym", "4", "2")
    assert code == 0 and json.loads(out)["matrix"] == [5, 5]
    code, out, _ = run(capsys, "repring", "--p", "5", "tensor", "3", "5")
    assert json.loads(out)["matrix"] == [5, 5, 5]
    code, out, _ = run(capsys, "repring", "--p", "5", "ext", "4", "6")
    assert code == 0 and json.loads(out)["gaussian"] is None


def test_module_build(capsys):
    for which, extra in [("D1", []), ("Dr", ["--r", "2"]), ("natural", []), ("specht-hook", ["--r", "2"])]:
        code, out, _ = run(capsys, "module", "build", "--p", "3", "--k", "2", "--which", which, *extra)
        data = json.loads(out)
        assert code == 0 and data["order_p"] and data["commute"]
    code, _, err = run(capsys, "module", "build", "--p", "3", "--k", "2", "--which", "Dr")
    assert code == 2 and "--r" in err


def test_scan_json_and_csv(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "scan", "--module", "D(p-1)", "--p", "3", "--k", "2", "--e", "2", "--out", str(out))
    data = json.loads(out.read_text())
    assert code == 0 and data["verdicts"]["membership_matches_predicate"] and data["seed"] == 0
    csv_path = tmp_path / "r.csv"
    code, _, _ = run(capsys, "scan", "--module", "D(p-1)", "--p", "3", "--k", "2", "--e", "2",
                     "--format", "csv", "--out", str(csv_path))
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "alpha,jordan_type,in_variety,f_zero,p_zero" and len(lines) == 82


def test_verify_is_byte_stable(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run(capsys, "verify", "--suite", "main", "--p", "3", "--k", "2", "--e", "2",
                         "--out", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["pass"] is True


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "verify", "--suite", "bogus", "--p", "3")[0] == 2
    assert run(capsys, "verify", "--suite", "main", "--p", "11", "--k", "2")[0] == 3
    assert run(capsys, "verify", "--suite", "main", "--p", "9", "--k", "2")[0] == 3
    assert run(capsys, "verify", "--suite", "main", "--p", "3", "--k", "5")[0] == 3
    assert run(capsys, "verify", "--suite", "main", "--p", "3", "--k", "2",
               "--out", str(tmp_path / "missing" / "x.json"))[0] == 4
    assert run(capsys, "verify", "--suite", "lemma2.4", "--p", "5")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["scan"])
    assert exc.value.code == 2


def test_generic_verb(capsys):
    code, out, _ = run(capsys, "generic", "--module", "D1", "--p", "3", "--k", "2", "--trials", "3", "--seed", "7")
    data = json.loads(out)
    assert code == 0 and data["generic_type"] == [3, 1] and data["certificate"]["seed"] == 7


def test_lr_verify(capsys):
    code, out, _ = run(capsys, "lr", "verify", "--p", "5", "--m", "2", "--b-range", "3..4", "--case", "2")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 2 and all(r["equal"] for r in rows)
    code, out, _ = run(capsys, "lr", "verify", "--p", "5", "--m", "3", "--b-range", "4", "--case", "1")
    rows = json.loads(out)
    assert code == 1
    assert all({"case", "mu", "beta", "oracle_set", "predicted_set", "equal"} <= set(r) for r in rows)


def test_traceability(tmp_path, capsys):
    path = tmp_path / "t.md"
    code, out, _ = run(capsys, "traceability", "--out", str(path))
    assert code == 0 and path.read_text() == out == traceability_markdown()
    for name in SUITES:
        assert f"`{name}`" in out


def test_run_suite_errors_and_guardrail_override():
    with pytest.raises(UsageError):
        run_suite("nope", {"p": 3})
    with pytest.raises(UnsupportedParameters):
        run_suite("lemma2.6", {"p": 11})
    assert run_suite("lemma2.6", {"p": 11}, allow_large=True).passed


def test_suite_registry_passes_where_expected():
    assert run_suite("thm3.6", {"p": 3, "k": 2, "e": 2}).passed
    assert run_suite("lemma2.6", {"p": 7}).passed
    res = run_suite("lemma4.6", {"p": 3, "k": 2})
    assert res.passed and all(v["failed"] == 0 for v in res.counters.values())


def test_emit_report_csv_for_suite(tmp_path):
    res = run_suite("main", {"p": 3, "k": 2, "e": 2})
    text = emit_report(res, "csv", str(tmp_path / "s.csv"))
    assert text.count("\n") == len(res.records) + 1
    with pytest.raises(UsageError):
        emit_report(res, "xml")
    res2 = SuiteResult("x", {})
    res2.check(False, "c", {"why": 1})
    assert not res2.passed and res2.to_json()["counters"] == {"c": {"checked": 1, "failed": 1}}
