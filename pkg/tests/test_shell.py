import io
import subprocess
import sys

import pytest

from conftest import FIX1
from vcsh.cli import main
from vcsh.errors import CommandError
from vcsh.shell import exec_command, parse_command, repl, run_lines, run_script
from vcsh.workspace import Workspace, dumps

TAUTOLOGY = "concept C over x : (I -> T) at I := x = x\n"


def run(ws, line, fmt="text"):
    return exec_command(parse_command(line), ws, fmt)


def test_eval_false():
    _, out = run(Workspace(), "world I = { i1 }")
    ws, _ = run(Workspace(), "world I = { i1 }")
    assert run(ws, "eval at I : false")[1] == "false"
    assert out == ""


def test_materialize_tautology(fix1):
    ws, _ = run(fix1, TAUTOLOGY.strip())
    _, out = run(ws, "materialize C at I")
    assert len(out.splitlines()) == 4


def test_shift(fix1):
    assert run(fix1, "shift h_ab along f")[1] == "{b1 -> a}"


def test_materialize_along(fix1):
    ws, _ = run(fix1, TAUTOLOGY.strip())
    assert run(ws, "materialize C along f")[1] == "{b1 -> a}\n{b1 -> b}"


def test_rows_format(fix1):
    ws, _ = run(fix1, "concept K over x : (I -> T) at I := x = h_ab")
    assert run(ws, "materialize K", "rows")[1] == "i1\ta\ni2\tb"
    assert run(ws, "instantiate K at i2", "rows")[1] == "i2\tb"
    assert run(ws, "instantiate K")[1] == "i1 : {a}\ni2 : {b}"


def test_describe(fix1):
    ws, _ = run(fix1, "concept K over x : (I -> T) at I := x = h_ab")
    out = run(ws, "describe at I : the y : [I -> T] . forall h : (I -> T) . (h = h_aa <-> y(h))")[1]
    assert out == "{{i1 -> a, i2 -> a}}"


def test_eval_along(fix1):
    assert run(fix1, "eval along f : h_ab = h_aa")[1] == "true"
    assert run(fix1, "eval at I : h_ab = h_aa")[1] == "false"


def test_typecheck_command(fix1):
    out = run(fix1, "typecheck")[1].splitlines()
    assert out[-1].startswith("PASS")
    assert run(fix1, "typecheck h_ab")[1].endswith("PASS")


def test_declarations_do_not_mutate_input(fix1):
    before = dumps(fix1)
    new, _ = run(fix1, "individual h2 : B -> T = { b1 -> a }")
    assert dumps(fix1) == before
    assert "h2" in new.individuals


def test_queries_return_same_workspace(fix1):
    ws, _ = run(fix1, "list")
    assert ws is fix1


def test_bad_commands():
    for line in ("frobnicate", "eval I false", "materialize", "type T = a"):
        with pytest.raises(CommandError):
            parse_command(line)


def test_run_lines_stops_at_first_error(fix1):
    out, err = io.StringIO(), io.StringIO()
    status, ws = run_lines(["eval at I : nope = nope", "eval at I : false"], fix1, out=out, err=err)
    assert status == 1
    assert "nope" in err.getvalue() and "line 1" in err.getvalue()
    assert out.getvalue() == ""


def test_keep_going(fix1):
    out, err = io.StringIO(), io.StringIO()
    status, _ = run_lines(["eval at I : nope = nope", "eval at I : false"], fix1,
                          keep_going=True, out=out, err=err)
    assert status == 1 and out.getvalue() == "false\n"


def test_failed_declaration_keeps_workspace(fix1):
    out, err = io.StringIO(), io.StringIO()
    status, ws = run_lines(["type T = { c }"], fix1, out=out, err=err)
    assert status == 1 and dumps(ws) == dumps(fix1)


def test_scripts(tmp_path):
    setup = tmp_path / "setup.vcs"
    setup.write_text(FIX1)
    assert run_script(setup, out=io.StringIO(), err=io.StringIO()) == 0
    empty = tmp_path / "empty.vcs"
    empty.write_text("")
    out = io.StringIO()
    assert run_script(empty, out=out, err=io.StringIO()) == 0 and out.getvalue() == ""
    bad = tmp_path / "bad.vcs"
    bad.write_text(FIX1 + "eval at I : h_zz = h_ab\n")
    err = io.StringIO()
    assert run_script(bad, out=io.StringIO(), err=err) == 1
    assert "h_zz" in err.getvalue()
    assert run_script(tmp_path / "missing.vcs", err=io.StringIO()) == 1


def test_script_determinism(tmp_path):
    script = tmp_path / "s.vcs"
    script.write_text(FIX1 + TAUTOLOGY + "materialize C\ninstantiate C at i1\nlist\ntypecheck\n")
    outs = []
    for _ in range(2):
        out = io.StringIO()
        run_script(script, out=out, err=io.StringIO())
        outs.append(out.getvalue())
    assert outs[0] == outs[1] and outs[0]


def test_save_and_load_commands(tmp_path, fix1):
    path = tmp_path / "ws.vcs"
    run(fix1, f"save {path}")
    ws, _ = run(Workspace(), f"load {path}")
    assert ws == fix1
    with pytest.raises(CommandError):
        run(Workspace(), f"load {tmp_path / 'missing'}")


def test_repl_is_a_thin_loop(fix1):
    stdin = io.StringIO("eval at I : false\nbogus\nshift h_ab along f\nquit\neval at I : false\n")
    out, err = io.StringIO(), io.StringIO()
    repl(fix1, stdin=stdin, out=out, err=err)
    assert out.getvalue() == "false\n{b1 -> a}\n"
    assert "unknown command" in err.getvalue()


def test_cli_main(tmp_path, capsys):
    ws = tmp_path / "fix1.vcs"
    ws.write_text(FIX1)
    assert main(["eval", "--workspace", str(ws), "--world", "B",
                 "exists x : (I -> T) . x = h_ab"]) == 0
    assert capsys.readouterr().out == "true\n"
    script = tmp_path / "q.vcs"
    script.write_text("materialize C\n")
    (tmp_path / "c.vcs").write_text(FIX1 + TAUTOLOGY)
    assert main(["run", str(script), "--workspace", str(tmp_path / "c.vcs"),
                 "--format", "rows"]) == 0
    assert capsys.readouterr().out == "i1\ta\ni1\tb\ni2\ta\ni2\tb\n"
    assert main(["eval", "--workspace", str(tmp_path / "none"), "--world", "I", "false"]) == 1


def test_cli_usage_error():
    proc = subprocess.run([sys.executable, "-m", "vcsh.cli", "run"], capture_output=True)
    assert proc.returncode == 2
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2
