import json
import subprocess
import sys

import pytest

from reesval.cli import main, run_scenario
from reesval.suites import emit_suite

GOOD = {"seed": 0, "jobs": [
    {"kind": "hypersurface-verify", "d": 2, "m": 3, "forms": ["X", "Y"], "extras": [],
     "p_max": 2, "degree_bound": 6},
    {"kind": "theorem-check", "check": "4.6.1", "F": "Y^2", "G": "X^3", "Fstar": "Y", "Gstar": "X"},
    {"kind": "reduction-check", "d": 2, "m": 3, "forms": ["X", "Y"], "H": ["X"], "p": 1,
     "expect_error": "DividesTangentCone"},
    {"kind": "reduction-check", "d": 2, "m": 3, "forms": ["X", "Y"], "H": ["X+Y"], "p": [1, 2, 3]},
    {"kind": "valuation-eval", "valuation": {"steps": ["Free(0)", "Free(0)", "inf"]},
     "f": "Y^2-X^3", "expect": 6},
    {"kind": "contact", "V": {"steps": ["Free(0)"]}, "W": {"steps": ["Free(0)", "Free(0)", "inf"]},
     "method": "both"},
    {"kind": "contact", "field": "sqrt2", "V": {"steps": ["Free(0)", "Free(alpha)"]},
     "W": {"steps": ["Free(0)"]}},
    {"kind": "pencil-resolve", "F": "Y*(Y-X^2)", "G": "X^5"},
    {"kind": "intersect", "f": "Y^2-X^3", "g": "X^2-Y^3"},
    {"kind": "theorem-check", "check": "4.6.3", "F": "Y^2", "G": "X^3", "Fstar": "Y^2", "Gstar": "X^3"},
    {"kind": "theorem-check", "check": "4.6.2", "I": [{"steps": ["Free(0)"], "n": 1}],
     "J": [{"steps": ["Free(0)", "Free(0)", "inf"], "n": 2}]},
    {"kind": "testing-curve-demo", "ts": ["0", "1", "2", "3", "inf"]},
], "fields": {"sqrt2": {"tower": [{"name": "alpha", "minpoly": "alpha^2 - 2"}]}}}


def write(tmp_path, obj, name="scenario.json"):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def test_good_scenario_passes(tmp_path, capsys):
    path = write(tmp_path, GOOD)
    out = tmp_path / "report.json"
    assert main(["run", path, "--report", str(out)]) == 0
    table = capsys.readouterr().out
    assert f"{len(GOOD['jobs'])}/{len(GOOD['jobs'])} jobs passed" in table
    report = json.loads(out.read_text())
    assert report["seed"] == 0
    assert report["jobs"][0]["claim"] == "(33)" and report["jobs"][0]["status"] == "pass"
    assert report["jobs"][1]["claim"] == "(4.6.1)"
    assert report["jobs"][1]["lhs"] == report["jobs"][1]["rhs"] == 2
    assert all("ms" not in r for r in report["jobs"])


def test_reports_are_deterministic_and_independent_of_workers(tmp_path):
    path = write(tmp_path, GOOD)
    outs = []
    for extra in ([], [], ["--jobs", "3"]):
        out = tmp_path / f"r{len(outs)}.json"
        assert main(["run", path, "--report", str(out)] + extra) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_timing_adds_milliseconds(tmp_path, capsys):
    path = write(tmp_path, {"jobs": [GOOD["jobs"][8]]})
    assert main(["run", path, "--json", "--timing"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert isinstance(report["jobs"][0]["ms"], int)


def test_failed_claim_exits_one_with_witness(tmp_path, capsys):
    scn = {"jobs": [{"kind": "valuation-eval", "valuation": {"steps": ["Free(0)"]},
                     "f": "Y^2-X^3", "expect": 3},
                    {"kind": "probe-4.10", "F": "Y^2", "G": "X^3", "Fstar": "Y", "Gstar": "X",
                     "phi": "Y^2", "phistar": "Y"}]}
    assert main(["run", write(tmp_path, scn), "--json"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert [r["status"] for r in report["jobs"]] == ["fail", "fail"]
    assert all(r.get("witness") for r in report["jobs"])


def test_unexpected_library_error_is_a_failure(tmp_path, capsys):
    scn = {"jobs": [{"kind": "pencil-resolve", "F": "Y^2 - 2*X^2", "G": "X^3"}]}
    assert main(["run", write(tmp_path, scn), "--json"]) == 1
    rec = json.loads(capsys.readouterr().out)["jobs"][0]
    assert rec["witness"]["error"] == "RootOutsideField"


@pytest.mark.parametrize("bad", [
    "{not json",
    {"jobs": []},
    {"jobs": [{"kind": "no-such-kind"}]},
    {"jobs": [{"kind": "intersect", "f": "X"}]},
    {"jobs": [{"kind": "intersect", "f": "X", "g": "Y +* 2"}]},
    {"jobs": [{"kind": "contact", "field": "k", "V": {"steps": ["Free(0)"]},
               "W": {"steps": ["Free(0)"]}}]},
    {"jobs": [{"kind": "theorem-check", "check": "4.6.9"}]},
    {"seed": -1, "jobs": [{"kind": "intersect", "f": "X", "g": "Y"}]},
    {"fields": {"k": {"tower": [{"name": "a", "minpoly": "a^2 - 4"}]}},
     "jobs": [{"kind": "intersect", "f": "X", "g": "Y"}]},
])
def test_schema_errors_exit_two(tmp_path, capsys, bad):
    assert main(["run", write(tmp_path, bad)]) == 2
    assert "error:" in capsys.readouterr().err


def test_schema_error_names_the_job(tmp_path, capsys):
    scn = {"jobs": [{"kind": "intersect", "f": "X", "g": "Y"}, {"kind": "intersect", "f": "X"}]}
    assert main(["run", write(tmp_path, scn)]) == 2
    assert "job 1" in capsys.readouterr().err


def test_missing_file_and_bad_arguments(capsys):
    assert main(["run", "/nonexistent/scenario.json"]) == 2
    assert main(["bogus"]) == 2
    assert main(["emit-suite", "--kind", "nothing"]) == 2
    assert main(["emit-suite", "--kind", "contact", "--count", "10001"]) == 2


def test_seed_override_is_reported():
    report = run_scenario({"seed": 4, "jobs": [GOOD["jobs"][8]]}, seed=11)
    assert report["seed"] == 11


def test_resource_exhaustion_is_inconclusive(monkeypatch):
    from reesval import cli
    from reesval.errors import TruncationExhausted

    def exhausted(job, field, seed):
        raise TruncationExhausted("cap reached")
    monkeypatch.setitem(cli.RUNNERS, "intersect", exhausted)
    rec = run_scenario({"jobs": [GOOD["jobs"][8]]})["jobs"][0]
    assert rec["status"] == "inconclusive"
    assert rec["witness"]["error"] == "TruncationExhausted"


def test_demo_output(capsys):
    assert main(["demo", "testing-curve", "--ts", "0,1,2", "--catalog", "Y+X", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["rows"][0]["values"] == [1, 2, 1]
    assert main(["demo", "testing-curve", "--ts", "0,1,inf", "--catalog", "X"]) == 0
    assert "X" in capsys.readouterr().out


def test_emit_suite_is_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["emit-suite", "--kind", "contact", "--seed", "7", "--count", "100",
                 "--out", str(a)]) == 0
    assert main(["emit-suite", "--kind", "contact", "--seed", "7", "--count", "100",
                 "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(json.loads(a.read_text())["jobs"]) == 100


def test_emit_suite_kinds():
    assert len(emit_suite("theorem", 7, 20)["jobs"]) == 20
    fams = emit_suite("hypersurface", 7, 5)["jobs"]
    assert len(fams) == 5 and all(j["m"] <= 6 for j in fams)
    assert emit_suite("theorem", 7, 3) == emit_suite("theorem", 7, 3)


def test_emitted_suite_runs(tmp_path):
    path = tmp_path / "suite.json"
    path.write_text(json.dumps(emit_suite("intersect", 3, 10)))
    assert main(["run", str(path)]) == 0


def test_probe_command(capsys):
    args = ["probe", "--F", "Y^2", "--G", "X^3", "--Fstar", "Y", "--Gstar", "X",
            "--phi", "Y^2 + X^3", "--phistar", "Y + X", "--json"]
    assert main(args) == 0
    rec = json.loads(capsys.readouterr().out)["jobs"][0]
    assert rec["claim"] == "(4.10)" and rec["lhs"] == rec["rhs"] == 2


def test_module_entry_point(tmp_path):
    path = write(tmp_path, {"jobs": [GOOD["jobs"][1]]})
    proc = subprocess.run([sys.executable, "-m", "reesval", "run", path],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "(4.6.1)" in proc.stdout
