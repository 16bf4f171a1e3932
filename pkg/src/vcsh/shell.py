"""The conceptual shell: a line-oriented command language over a workspace.

Declarations use the workspace file forms. Queries::

    eval at W : <formula>
    eval along f : <formula>
    materialize C [at W | along f]
    instantiate C [at i]
    shift h along f
    describe at W : <object term>
    typecheck [name]
    save <path> | load <path> | list

``exec_command`` never mutates its input workspace: declarations return a
new workspace, queries return the same one.
"""
from __future__ import annotations

import re
import sys
from dataclasses import dataclass

from .concepts import comprehend, f_concept, instantiate, variable_concept
from .errors import CommandError, VcshError
from .evaluator import render
from .parser import parse_formula, parse_object
from .syntax import ArrowSort
from .typecheck import check_workspace, judge
from .workspace import (
    DECLARATIONS, Workspace, apply_declaration, dumps, load_workspace, save_workspace,
    strip_comment,
)
from .worlds import Individual, shift_individual

FORMATS = ("text", "rows")

_ID = r"[A-Za-z_][A-Za-z0-9_]*"
_QUERIES = {
    "eval": re.compile(rf"eval\s+(at|along)\s+({_ID})\s*:\s*(.+)\Z"),
    "materialize": re.compile(rf"materialize\s+({_ID})(?:\s+(at|along)\s+({_ID}))?\Z"),
    "instantiate": re.compile(rf"instantiate\s+({_ID})(?:\s+at\s+({_ID}))?\Z"),
    "shift": re.compile(rf"shift\s+({_ID})\s+along\s+({_ID})\Z"),
    "describe": re.compile(rf"describe\s+at\s+({_ID})\s*:\s*(.+)\Z"),
    "typecheck": re.compile(rf"typecheck(?:\s+({_ID}))?\Z"),
    "save": re.compile(r"save\s+(\S+)\Z"),
    "load": re.compile(r"load\s+(\S+)\Z"),
    "list": re.compile(r"list\Z"),
}

_KINDS = {
    "type": "DeclareType", "world": "DeclareWorld", "evolvent": "DeclareEvolvent",
    "func": "DeclareFunc", "individual": "DeclareIndividual", "concept": "DefineConcept",
    "materialize": "Materialize", "instantiate": "Instantiate", "shift": "Shift",
    "describe": "Describe", "typecheck": "TypeCheck", "save": "Save", "load": "Load",
    "list": "List",
}


@dataclass(frozen=True)
class Command:
    kind: str
    args: tuple
    text: str

    @property
    def is_declaration(self) -> bool:
        return self.kind.startswith(("Declare", "Define"))


def parse_command(line: str) -> Command:
    text = strip_comment(line)
    if not text:
        raise CommandError("empty command")
    keyword = text.split(None, 1)[0]
    if keyword in DECLARATIONS:
        if DECLARATIONS[keyword].match(text) is None:
            raise CommandError(f"malformed {keyword} declaration")
        return Command(_KINDS[keyword], (), text)
    pattern = _QUERIES.get(keyword)
    if pattern is None:
        raise CommandError(f"unknown command {keyword!r}")
    m = pattern.match(text)
    if m is None:
        raise CommandError(f"malformed {keyword} command")
    if keyword == "eval":
        kind = "Eval" if m.group(1) == "at" else "EvalShifted"
        return Command(kind, (m.group(2), m.group(3)), text)
    return Command(_KINDS[keyword], m.groups(), text)


def exec_command(cmd: Command, ws: Workspace, fmt: str = "text"):
    """Run one command; returns ``(workspace, output_text)``."""
    if fmt not in FORMATS:
        raise CommandError(f"unknown format {fmt!r}")
    if cmd.is_declaration:
        new = ws.copy()
        apply_declaration(new, cmd.text)
        return new, ""
    handler = _HANDLERS[cmd.kind]
    return handler(ws, fmt, *cmd.args)


def _eval(ws, fmt, world, text):
    phi = parse_formula(text, functions=ws.functions)
    return ws, render(ws.evaluator.eval_formula(phi, ws.world(world)))


def _eval_shifted(ws, fmt, evolvent, text):
    phi = parse_formula(text, functions=ws.functions)
    return ws, render(ws.evaluator.eval_shifted(phi, ws.evolvent(evolvent)))


def _extension_output(ws, fmt, extension, world):
    if fmt == "rows" and all(isinstance(d, Individual) for d in extension):
        rows = [(i, h(i)) for i in world.indexes for h in extension]
        seen = []
        for row in rows:
            if row not in seen:
                seen.append(row)
        return "\n".join(f"{i}\t{e}" for i, e in seen)
    return "\n".join(render(d) for d in extension)


def _materialize(ws, fmt, name, mode, target):
    c = ws.concept(name)
    ev = ws.evaluator
    if mode is None:
        extension, world = c.extension, c.world
    elif mode == "at":
        world = ws.world(target)
        extension = comprehend(ev, c.intension, c.var, c.sort, world).extension
    else:
        f = ws.evolvent(target)
        if f.target != c.world:
            raise CommandError(f"{f.name} targets {f.target.name}, {name} lives at {c.world.name}")
        fc = f_concept(ev, c.intension, c.var, c.sort, f)
        extension, world = fc.extension, fc.world
    return ws, _extension_output(ws, fmt, extension, world)


def _instantiate(ws, fmt, name, index):
    c = ws.concept(name)
    if not isinstance(c.sort, ArrowSort):
        raise CommandError(f"{name} is not a concept of individuals")
    carrier = ws.type(c.sort.codomain.name)
    if index is not None:
        snap = instantiate(c, index, carrier)
        if fmt == "rows":
            return ws, "\n".join(f"{index}\t{e}" for e in snap.elements)
        return ws, str(snap)
    view = variable_concept(c, carrier)
    if fmt == "rows":
        return ws, "\n".join(f"{i}\t{e}" for i, e in view.pairs())
    return ws, "\n".join(f"{m.index} : {m}" for m in view.family)


def _shift(ws, fmt, name, evolvent):
    return ws, str(shift_individual(ws.individual(name), ws.evolvent(evolvent)))


def _describe(ws, fmt, world, text):
    term = parse_object(text, functions=ws.functions)
    return ws, render(ws.evaluator.eval_object(term, ws.world(world)))


def _typecheck(ws, fmt, name):
    if name is not None:
        return ws, judge(name, ws).line()
    report = check_workspace(ws)
    lines = report.lines()
    lines.append(f"{'PASS' if report.passed else 'FAIL'} {len(report.judgments)} judgments, "
                 f"{len(report.failures)} failed")
    return ws, "\n".join(lines)


def _save(ws, fmt, path):
    save_workspace(ws, path)
    return ws, ""


def _load(ws, fmt, path):
    try:
        return load_workspace(path, ws.cap), ""
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc.strerror}") from exc


def _list(ws, fmt):
    lines = dumps(ws).splitlines()
    for e in ws.closure:
        if e.name not in ws.evolvents:
            lines.append(f"# evolvent {e.name} : {e.source.name} -> {e.target.name}")
    return ws, "\n".join(lines)


_HANDLERS = {
    "Eval": _eval, "EvalShifted": _eval_shifted, "Materialize": _materialize,
    "Instantiate": _instantiate, "Shift": _shift, "Describe": _describe,
    "TypeCheck": _typecheck, "Save": _save, "Load": _load, "List": _list,
}


def run_lines(lines, ws=None, keep_going=False, fmt="text", out=None, err=None):
    """Execute commands in order. Returns ``(exit_status, workspace)``."""
    out = out or sys.stdout
    err = err or sys.stderr
    ws = ws if ws is not None else Workspace()
    status = 0
    for lineno, line in enumerate(lines, 1):
        if not strip_comment(line):
            continue
        try:
            ws, output = exec_command(parse_command(line), ws, fmt)
        except (VcshError, OSError) as exc:
            print(f"error: line {lineno}: {exc}", file=err)
            status = 1
            if not keep_going:
                break
            continue
        if output:
            print(output, file=out)
    return status, ws


def run_script(path, ws=None, keep_going=False, fmt="text", out=None, err=None) -> int:
    err = err or sys.stderr
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror}", file=err)
        return 1
    status, _ = run_lines(lines, ws, keep_going, fmt, out, err)
    return status


def repl(ws=None, fmt="text", stdin=None, out=None, err=None, prompt="vcsh> "):
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    err = err or sys.stderr
    ws = ws if ws is not None else Workspace()
    interactive = stdin.isatty()
    while True:
        if interactive:
            out.write(prompt)
            out.flush()
        line = stdin.readline()
        if not line:
            break
        if line.strip() in ("quit", "exit"):
            break
        if not strip_comment(line):
            continue
        try:
            ws, output = exec_command(parse_command(line), ws, fmt)
        except (VcshError, OSError) as exc:
            print(f"error: {exc}", file=err)
            continue
        if output:
            print(output, file=out)
    return ws
