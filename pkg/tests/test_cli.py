import json
from pathlib import Path

import pytest

from amalgamtop.cli import main
from amalgamtop.harness import Failure, PropertyReport

DEMOS = Path(__file__).resolve().parent.parent / "demos"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_circle(capsys):
    code, out, _ = run(capsys, "build", DEMOS / "circle.json")
    assert code == 0
    assert "points: 20" in out
    assert "opens: 66631" in out
    assert "connected: true" in out
    assert "components: 1" in out
    assert "ind: not computed (more than 10 points)" in out


def test_build_singleton_factors_reports_base_copy(capsys):
    code, out, _ = run(capsys, "build", DEMOS / "identity.json")
    assert code == 0
    assert "points: 4" in out
    assert "homeomorphic to base: true" in out


def test_build_writes_artifacts(tmp_path, capsys):
    code, out, _ = run(capsys, "build", DEMOS / "cone.json", "--out", tmp_path)
    assert code == 0
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["points"] == 3 and summary["connected"] is True
    assert (tmp_path / "hasse.png").read_bytes()[:4] == b"\x89PNG"
    assert (tmp_path / "amalgam.dot").read_text().startswith('digraph "amalgam"')
    assert "wrote summary.json" in out


def test_build_rejects_empty_member(tmp_path, capsys):
    spec = tmp_path / "bad.json"
    spec.write_text(
        json.dumps(
            {
                "points": ["p", "q"],
                "opens_generators": [["p"], ["q"]],
                "subbase": [["p"], ["q"], []],
            }
        )
    )
    code, _, err = run(capsys, "build", spec)
    assert code == 2
    assert "do not include ∅" in err


def test_build_input_errors(tmp_path, capsys):
    code, _, err = run(capsys, "build", tmp_path / "missing.json")
    assert code == 2
    garbled = tmp_path / "garbled.json"
    garbled.write_text("{oops")
    code, _, err = run(capsys, "build", garbled)
    assert code == 2
    assert "not valid JSON" in err


def test_build_budget_exit(capsys):
    code, _, err = run(capsys, "build", DEMOS / "circle.json", "--budget", "10")
    assert code == 3
    assert "budget exceeded" in err


def test_verify_single_suite(capsys):
    code, out, _ = run(
        capsys, "verify", "conn-witness", "--trials", "10", "--seed", "7"
    )
    assert code == 0
    assert out.startswith("conn-witness: pass")


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "all", "--trials", "2")
    assert code == 0
    lines = [l for l in out.splitlines() if ": pass (" in l]
    assert len(lines) == 11


def test_verify_writes_artifacts(tmp_path, capsys):
    code, out, _ = run(
        capsys, "verify", "facts", "--trials", "5", "--out", tmp_path
    )
    assert code == 0
    assert (tmp_path / "report.csv").read_text().startswith("suite,")
    assert (tmp_path / "failures.csv").exists()
    assert (tmp_path / "report.png").read_bytes()[:4] == b"\x89PNG"


def test_verify_rejects_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "no-such-suite")
    assert code == 2
    assert "invalid choice" in err


def test_verify_failure_exit_code(monkeypatch, capsys):
    broken = PropertyReport(
        suite="facts",
        attempted=1,
        passed=0,
        skipped=0,
        failures=(Failure(0, "made-up invariant", '{"points":["a"]}'),),
        seconds=0.0,
    )
    monkeypatch.setattr("amalgamtop.cli.run_suite", lambda name, cfg: broken)
    code, out, _ = run(capsys, "verify", "facts")
    assert code == 1
    assert "facts: FAIL" in out
    assert "trial 0 violated: made-up invariant" in out
    assert 'instance: {"points":["a"]}' in out


def test_demo_circle(capsys):
    code, out, _ = run(capsys, "demo", "circle")
    assert code == 0
    assert "points: 20" in out
    assert "some member contains both antipodes {c,d}: false" in out
    assert "ind base: 1" in out and "ind amalgam: 1" in out
    assert "z0 = a|0-00" in out


def test_demo_cone(capsys):
    code, out, _ = run(capsys, "demo", "cone")
    assert code == 0
    assert "points: 3" in out
    assert "minimal neighborhood of s0|-0" in out


def test_demo_connectify(capsys):
    code, out, _ = run(capsys, "demo", "connectify")
    assert code == 0
    assert "amalgam points: 4, connected: false" in out
    assert "extension points: 5, connected: true" in out
    assert "proper: true" in out and "dense: true" in out


def test_export_dot(tmp_path, capsys):
    spec = tmp_path / "chain.json"
    spec.write_text(
        json.dumps(
            {
                "points": ["s0", "s1"],
                "opens_generators": [["s1"]],
                "subbase": [["s1"], ["s0", "s1"]],
            }
        )
    )
    out_file = tmp_path / "chain.dot"
    code, out, _ = run(capsys, "export-dot", spec, out_file)
    assert code == 0
    text = out_file.read_text()
    assert text.count("->") == 1 and "n1 -> n0" in text
    assert f"wrote {out_file}" in out


def test_export_dot_discrete(tmp_path, capsys):
    spec = tmp_path / "three.json"
    spec.write_text(
        json.dumps(
            {
                "points": ["a", "b", "c"],
                "opens_generators": [["a"], ["b"], ["c"]],
                "subbase": [["a"], ["b"], ["c"]],
            }
        )
    )
    out_file = tmp_path / "three.dot"
    code, _, _ = run(capsys, "export-dot", spec, out_file)
    assert code == 0
    assert "->" not in out_file.read_text()


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert main([]) == 2
