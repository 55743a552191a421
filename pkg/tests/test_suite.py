import json
import os

import pytest

from relscheme.cli import main
from relscheme.errors import ParseError, ResolutionError, ValidationError
from relscheme.report import CheckReport, Status
from relscheme.suite import (
    OPS,
    emit_report,
    load_suite,
    parse_suite,
    run_suite,
    shipped_corpus_path,
    summarize,
)

ONE = {"elements": ["e"], "unit": "e", "table": [[0]]}
Z2 = {"elements": ["e", "g"], "unit": "e", "table": [[0, 1], [1, 0]]}
BAD = {"elements": ["e", "x"], "unit": "e", "table": [[0, 1], [1, 0]], "zero": "x"}


def doc(**kw):
    d = {"name": "t", "monoids": {"one": ONE, "z2": Z2},
         "morphisms": {"u2": {"dom": "one", "cod": "z2", "map": {"e": "e"}},
                       "c2": {"dom": "z2", "cod": "one", "map": {"e": "e", "g": "e"}}},
         "actions": {"set": {"kind": "self"}}, "checks": []}
    d.update(kw)
    return d


class TestParse:
    def test_minimal(self):
        S = parse_suite({"monoids": {"one": ONE}, "checks": [{"op": "check_comm_monoid", "args": ["one"]}]})
        assert len(S.checks) == 1
        assert S.checks[0].check_id == "check_comm_monoid(one)"

    def test_dangling_codomain(self):
        d = doc()
        d["morphisms"]["u2"]["cod"] = "z3"
        with pytest.raises(ResolutionError, match="z3"):
            parse_suite(d)

    def test_undeclared_argument(self):
        with pytest.raises(ResolutionError):
            parse_suite(doc(checks=[{"op": "is_epi", "args": ["nope"]}]))

    def test_schema_location(self):
        d = doc()
        d["monoids"]["z2"] = {"elements": ["e", "g"], "unit": "e", "table": [[0, 1]]}
        with pytest.raises(ParseError, match="monoids.z2.table"):
            parse_suite(d)
        with pytest.raises(ParseError, match=r"checks\[0\]"):
            parse_suite(doc(checks=[{"op": "no_such_op"}]))
        with pytest.raises(ParseError, match="line 1"):
            parse_suite("{not json")
        with pytest.raises(ParseError, match="unknown top-level"):
            parse_suite({"extra": 1})

    def test_validation_names_object(self):
        d = doc()
        d["monoids"]["bad"] = BAD
        with pytest.raises(ValidationError, match="bad"):
            parse_suite(d)

    def test_deferred_validation(self):
        d = doc(checks=[{"op": "check_comm_monoid", "args": ["bad"]}])
        d["monoids"]["bad"] = BAD
        S = parse_suite(d, validate=False)
        (r,) = run_suite(S)
        assert r.status is Status.FAIL and r.witness

    def test_non_morphism_rejected(self):
        d = doc()
        d["morphisms"]["swap"] = {"dom": "z2", "cod": "z2", "map": {"e": "g", "g": "e"}}
        with pytest.raises(ValidationError, match="swap"):
            parse_suite(d)

    def test_shipped_corpus_roundtrip(self):
        S = load_suite(shipped_corpus_path())
        assert len(S.checks) >= 50
        T = parse_suite(S.to_doc())
        assert T.to_doc() == S.to_doc()
        assert [c.check_id for c in T.checks] == [c.check_id for c in S.checks]

    def test_shipped_acceptance_lists_every_criterion(self):
        S = load_suite(shipped_corpus_path("acceptance"))
        assert [c.params["number"] for c in S.checks] == list(range(1, 10))
        assert parse_suite(S.to_doc()).to_doc() == S.to_doc()

    def test_every_op_is_registered_once(self):
        assert len(OPS) == len(set(OPS))
        assert {"is_epi", "flatness_probe", "check_theta_iso", "glue", "acceptance"} <= set(OPS)

    def test_duplicate_check_ids_are_numbered(self):
        c = {"op": "is_epi", "args": ["c2"]}
        S = parse_suite(doc(checks=[c, c]))
        assert [x.check_id for x in S.checks] == ["is_epi(c2)", "is_epi(c2)#2"]

    def test_env_default_budget(self, monkeypatch):
        monkeypatch.setenv("RELSCHEME_MAX_SIZE", "3")
        assert parse_suite(doc()).budget.max_module_size == 3
        monkeypatch.setenv("RELSCHEME_MAX_SIZE", "x")
        with pytest.raises(ParseError):
            parse_suite(doc())


class TestRun:
    def test_empty(self):
        assert run_suite(parse_suite({})) == []
        text = emit_report([], "human")
        assert text.splitlines()[0].startswith("relscheme verification report")
        assert json.loads(emit_report([], "structured"))["reports"] == []

    def test_planted_defects(self):
        checks = [
            {"op": "is_epi", "args": ["c2"]},
            {"op": "is_epi", "args": ["u2"]},
            {"op": "flatness_probe", "args": ["c2", "set"]},
            {"op": "check_comm_monoid", "args": ["z2"]},
        ]
        rs = run_suite(parse_suite(doc(checks=checks)))
        assert [r.status.value for r in rs] == ["PASS", "FAIL", "FAIL", "PASS"]

    def test_crash_becomes_error(self):
        checks = [{"op": "check_theta_iso", "args": ["u2", "id", "m"], "params": {"functor": "nope"}},
                  {"op": "is_epi", "args": ["c2"]}]
        d = doc(checks=checks, adjunctions={"id": {"kind": "identity"}},
                modules={"m": {"action": "set", "over": "one", "kind": "regular"}})
        rs = run_suite(parse_suite(d))
        assert rs[0].status is Status.ERROR and "nope" in rs[0].details["error"]
        assert rs[1].status is Status.PASS

    def test_expect_wrapper(self):
        checks = [{"op": "is_epi", "args": ["u2"], "expect": "FAIL"},
                  {"op": "is_epi", "args": ["c2"], "expect": "FAIL"}]
        a, b = run_suite(parse_suite(doc(checks=checks)))
        assert a.status is Status.PASS and a.items[0].status is Status.FAIL
        assert b.status is Status.FAIL and b.witness == {"expected": "FAIL", "observed": "PASS"}

    def test_order_and_bytes_independent_of_jobs(self):
        S = load_suite(shipped_corpus_path())
        one = emit_report(run_suite(S, jobs=1), "structured", S)
        S = load_suite(shipped_corpus_path())
        four = emit_report(run_suite(S, jobs=4), "structured", S)
        assert one == four

    def test_structured_roundtrip(self):
        S = parse_suite(doc(checks=[{"op": "is_epi", "args": ["u2"]}, {"op": "flatness_probe", "args": ["u2", "set"]}]))
        rs = run_suite(S)
        out = json.loads(emit_report(rs, "structured", S))
        assert out["summary"] == summarize(rs)
        for r, d in zip(rs, out["reports"]):
            assert CheckReport.from_dict(d).to_dict() == json.loads(json.dumps(r.to_dict()))

    def test_human_witness_uses_labels(self):
        S = parse_suite(doc(checks=[{"op": "is_epi", "args": ["u2"]}]))
        text = emit_report(run_suite(S), "human", S)
        assert '"element": "g"' in text
        assert "[FAIL] is_epi(u2)" in text


class TestCli:
    def write(self, tmp_path, d):
        p = tmp_path / "suite.json"
        p.write_text(json.dumps(d))
        return str(p)

    def test_exit_codes(self, tmp_path, capsys):
        ok = self.write(tmp_path, doc(checks=[{"op": "is_epi", "args": ["c2"]}]))
        assert main(["verify", ok]) == 0
        bad = self.write(tmp_path, doc(checks=[{"op": "is_epi", "args": ["u2"]}]))
        assert main(["verify", bad]) == 1
        assert main(["verify", str(tmp_path / "missing.json")]) == 2
        broken = self.write(tmp_path, {"monoids": {"x": {"elements": []}}})
        assert main(["verify", broken]) == 2
        capsys.readouterr()

    def test_report_file_and_overrides(self, tmp_path):
        s = self.write(tmp_path, doc(checks=[{"op": "flatness_probe", "args": ["c2", "set"]}]))
        out = tmp_path / "r.json"
        code = main(["verify", s, "--format", "structured", "--report", str(out), "--seed", "7", "--max-size", "1"])
        # the product witness needs modules of size 2, beyond this budget
        assert code == 0
        rep = json.loads(out.read_text())
        assert rep["reports"][0]["status"] == "PASSED_WITHIN_BUDGET"
        assert rep["seed"] == 7
        assert rep["reports"][0]["budget"]["max_module_size"] == 1
        assert rep["reports"][0]["budget"]["seed"] == 7

    def test_shipped_corpus(self, capsys):
        assert main(["verify", "corpus", "--format", "human"]) == 0
        assert "checks:" in capsys.readouterr().out

    def test_module_entry_point(self, tmp_path):
        import subprocess
        import sys

        s = self.write(tmp_path, doc(checks=[{"op": "is_epi", "args": ["c2"]}]))
        p = subprocess.run([sys.executable, "-m", "relscheme", "verify", s, "--format", "structured"],
                           capture_output=True, text=True, env={**os.environ})
        assert p.returncode == 0
        assert json.loads(p.stdout)["summary"]["ok"] is True


def test_docs_table_maps_every_op_once():
    import re
    from pathlib import Path

    table = Path(__file__).resolve().parents[1] / "docs" / "report_ops.md"
    rows = re.findall(r"^\| `([a-z_0-9]+)` \|", table.read_text(), flags=re.M)
    assert sorted(rows) == sorted(OPS)
    assert len(rows) == len(set(rows))
