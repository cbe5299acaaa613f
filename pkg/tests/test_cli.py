import math

import pytest

from zxq import diagram_io
from zxq.cli import cli_main
from zxq.diagram import VertexKind, spider_diagram
from zxq.phase import Phase


@pytest.fixture()
def files(tmp_path):
    (tmp_path / "cnotcnot.zxc").write_text("qubits 2\ncnot 0 1\ncnot 0 1\n")
    (tmp_path / "id2.zxc").write_text("qubits 2\n")
    (tmp_path / "t.zxc").write_text("qubits 1\nt 0\n")
    (tmp_path / "s.zxc").write_text("qubits 1\ns 0\n")
    diagram_io.save(
        spider_diagram(VertexKind.Z, Phase.exact(1, 4), 1, 1), str(tmp_path / "t.zxg")
    )
    return tmp_path


def test_eval_circuit(files, capsys):
    assert cli_main(["eval", str(files / "t.zxc")]) == 0
    out = capsys.readouterr().out
    rows = out.strip().split("\n")
    assert rows[0].split("\t")[0] == "1+0i"
    assert "0.707106781187+0.707106781187i" in rows[1]


def test_eval_diagram_matches_circuit(files, capsys):
    cli_main(["eval", str(files / "t.zxg")])
    got_diagram = capsys.readouterr().out
    cli_main(["eval", str(files / "t.zxc")])
    got_circuit = capsys.readouterr().out
    assert got_diagram == got_circuit


def test_check_equal(files):
    assert cli_main(["check", str(files / "cnotcnot.zxc"), str(files / "id2.zxc")]) == 0


def test_check_mixed_formats(files):
    assert cli_main(["check", str(files / "t.zxc"), str(files / "t.zxg")]) == 0


def test_check_unequal_exits_one(files):
    assert cli_main(["check", str(files / "t.zxc"), str(files / "s.zxc")]) == 1


def test_check_tolerance_flag(files):
    assert cli_main(["check", str(files / "t.zxc"), str(files / "s.zxc"), "--tol", "1e-12"]) == 1


def test_env_tolerance(files, monkeypatch):
    monkeypatch.setenv("ZXQ_TOL", "not-a-float")
    assert cli_main(["check", str(files / "t.zxc"), str(files / "t.zxc")]) == 2
    monkeypatch.setenv("ZXQ_TOL", "1e-9")
    assert cli_main(["check", str(files / "t.zxc"), str(files / "t.zxc")]) == 0


def test_simplify_writes_output_and_trace(files, capsys):
    out_path = files / "out.zxg"
    trace_path = files / "trace.txt"
    rc = cli_main(
        ["simplify", str(files / "cnotcnot.zxc"), "-o", str(out_path), "--trace", str(trace_path)]
    )
    assert rc == 0
    assert out_path.exists()
    lines = trace_path.read_text().strip().split("\n")
    assert all("digest:" in line for line in lines)
    # output must check equal against its input
    assert cli_main(["check", str(files / "cnotcnot.zxc"), str(out_path)]) == 0


def test_simplify_budget_and_full(files, capsys):
    out_path = files / "out2.zxg"
    rc = cli_main(["simplify", str(files / "cnotcnot.zxc"), "-o", str(out_path), "--budget", "1", "--full"])
    assert rc == 0
    assert "budget" in capsys.readouterr().err


def test_euler_quarter_angles(capsys):
    assert cli_main(["euler", "1/2", "1/2", "1/2"]) == 0
    vals = [float(x) for x in capsys.readouterr().out.split()]
    assert vals == pytest.approx([math.pi / 2] * 3)


def test_euler_accepts_floats(capsys):
    assert cli_main(["euler", "f:0.3", "1.0", "0.3"]) == 0
    assert len(capsys.readouterr().out.split()) == 3


def test_verify_rules_exit_zero(capsys):
    assert cli_main(["verify", "rules", "--samples", "5", "--seed", "1"]) == 0
    assert "result: PASS" in capsys.readouterr().out


def test_verify_relations_exit_zero(capsys):
    assert cli_main(["verify", "relations"]) == 0
    out = capsys.readouterr().out
    assert sum(line.startswith("relation") for line in out.splitlines()) == 17


def test_verify_pformulas_exit_zero(capsys):
    assert cli_main(["verify", "pformulas", "--samples", "50"]) == 0


def test_fixtures_export(tmp_path, capsys):
    rc = cli_main(["fixtures", "export", str(tmp_path / "fx")])
    assert rc == 0
    assert len(list((tmp_path / "fx").iterdir())) == 34


def test_usage_errors_exit_two(files, capsys):
    assert cli_main([]) == 2
    assert cli_main(["frobnicate"]) == 2
    assert cli_main(["eval", str(files / "t.zxc").replace(".zxc", ".nope")]) == 2
    assert cli_main(["eval", "/nonexistent/x.zxc"]) == 2
    bad = files / "bad.zxc"
    bad.write_text("qubits 2\ncnot 0 0\n")
    assert cli_main(["eval", str(bad)]) == 2


def test_eval_resource_cap(files, capsys):
    wide = files / "wide.zxg"
    diagram_io.save(spider_diagram(VertexKind.Z, Phase.zero(), 0, 12), str(wide))
    assert cli_main(["eval", str(wide), "--cap", "16"]) == 2
