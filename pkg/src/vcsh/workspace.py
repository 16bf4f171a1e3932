"""The workspace registry and its line-oriented file format.

One declaration per line; ``#`` starts a comment::

    type T = { a, b }
    world I = { i1, i2 }
    evolvent f : B -> I = { b1 -> i1 }
    func g : T -> T = { a -> b, b -> b }
    individual h_ab : I -> T = { i1 -> a, i2 -> b }
    concept C over x : (I -> T) at I := x = h_ab
"""
from __future__ import annotations

import re
from contextlib import contextmanager
from pathlib import Path

from .concepts import Concept, comprehend
from .errors import FormatError, NameClash, UnknownReference, VcshError
from .evaluator import Evaluator
from .parser import parse_formula, parse_sort
from .syntax import free_vars, is_variable_name, print_sort, print_term
from .worlds import (
    DEFAULT_CAP, DataType, Evolvent, Function, Individual, World, close_evolvents,
)

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Workspace:
    """Named registry of types, worlds, evolvents, functions, individuals and concepts.

    Types, worlds, carrier elements, indexes, individuals and concepts share
    one namespace, since all of them can appear as constants in formulas.
    Evolvents and functions each have their own. ``closure`` holds every
    identity and composite evolvent and is recomputed eagerly.
    """

    def __init__(self, cap: int = DEFAULT_CAP):
        self.cap = cap
        self.types: dict = {}
        self.worlds: dict = {}
        self.evolvents: dict = {}
        self.functions: dict = {}
        self.individuals: dict = {}
        self.concepts: dict = {}
        self.closure: tuple = ()
        self._reset_caches()

    def _reset_caches(self):
        self._evaluator = None
        self._into = {}
        self._elements = {e: t for t in self.types.values() for e in t.elements}
        self._indexes = {i: w for w in self.worlds.values() for i in w.indexes}

    def copy(self) -> "Workspace":
        ws = Workspace(self.cap)
        for attr in ("types", "worlds", "evolvents", "functions", "individuals", "concepts"):
            setattr(ws, attr, dict(getattr(self, attr)))
        ws.closure = self.closure
        ws._reset_caches()
        return ws

    def __eq__(self, other):
        if not isinstance(other, Workspace):
            return NotImplemented
        return all(getattr(self, a) == getattr(other, a) for a in
                   ("types", "worlds", "evolvents", "functions", "individuals", "concepts",
                    "closure"))

    @contextmanager
    def _transaction(self):
        saved = self.copy()
        try:
            yield
        except BaseException:
            self.__dict__.update(saved.__dict__)
            raise
        self._reset_caches()

    # lookups

    @property
    def evaluator(self) -> Evaluator:
        if self._evaluator is None:
            self._evaluator = Evaluator(self)
        return self._evaluator

    def into(self, world: World) -> tuple:
        """Registered evolvents with target ``world``, identity first."""
        if world not in self._into:
            self._into[world] = tuple(e for e in self.closure if e.target == world)
        return self._into[world]

    def element_type(self, name):
        return self._elements.get(name)

    def index_world(self, name):
        return self._indexes.get(name)

    def object_names(self) -> set:
        return (set(self.types) | set(self.worlds) | set(self._elements) | set(self._indexes)
                | set(self.individuals) | set(self.concepts))

    def is_empty(self) -> bool:
        return not (self.types or self.worlds or self.evolvents or self.functions
                    or self.individuals or self.concepts)

    def world(self, name) -> World:
        try:
            return self.worlds[name]
        except KeyError:
            raise UnknownReference(f"unknown world {name}") from None

    def type(self, name) -> DataType:
        try:
            return self.types[name]
        except KeyError:
            raise UnknownReference(f"unknown type {name}") from None

    def evolvent(self, name) -> Evolvent:
        if name in self.evolvents:
            return self.evolvents[name]
        for e in self.closure:
            if e.name == name:
                return e
        raise UnknownReference(f"unknown evolvent {name}")

    def concept(self, name) -> Concept:
        try:
            return self.concepts[name]
        except KeyError:
            raise UnknownReference(f"unknown concept {name}") from None

    def individual(self, name) -> Individual:
        try:
            return self.individuals[name]
        except KeyError:
            raise UnknownReference(f"unknown individual {name}") from None

    # declarations

    def _claim(self, names, namespace=None):
        taken = self.object_names() if namespace is None else set(namespace)
        seen = set()
        for name in names:
            if not _NAME.match(name):
                raise VcshError(f"invalid name {name!r}")
            if is_variable_name(name):
                raise VcshError(f"name {name!r} is reserved for variables")
            if name in taken or name in seen:
                raise NameClash(f"name {name} is already declared")
            seen.add(name)

    def declare_type(self, name, elements) -> DataType:
        t = DataType(name, elements)
        self._claim([name, *t.elements])
        with self._transaction():
            self.types[name] = t
        return t

    def declare_world(self, name, indexes) -> World:
        w = World(name, indexes)
        self._claim([name, *w.indexes])
        with self._transaction():
            self.worlds[name] = w
            self._recompute_closure()
        return w

    def declare_evolvent(self, name, source, target, mapping) -> Evolvent:
        self._claim([name], self.evolvents)
        e = Evolvent.from_mapping(name, self.world(source), self.world(target), mapping)
        with self._transaction():
            self.evolvents[name] = e
            self._recompute_closure()
        return e

    def declare_function(self, name, domain, codomain, mapping) -> Function:
        self._claim([name], self.functions)
        if name in self.object_names():
            raise NameClash(f"name {name} is already declared")
        dom, cod = self.type(domain), self.type(codomain)
        missing = [a for a in dom.elements if a not in mapping]
        extra = [a for a in mapping if a not in dom.elements]
        if missing or extra:
            raise VcshError(f"function {name}: mapping must cover exactly {dom.name}")
        g = Function(name, dom, cod, tuple(mapping[a] for a in dom.elements))
        with self._transaction():
            self.functions[name] = g
        return g

    def declare_individual(self, name, world, type_name, mapping) -> Individual:
        self._claim([name])
        if name in self.functions:
            raise NameClash(f"name {name} is already declared")
        w, t = self.world(world), self.type(type_name)
        h = Individual.from_mapping(w, t.name, mapping)
        bad = [v for v in h.values if v not in t]
        if bad:
            raise VcshError(f"individual {name}: {bad[0]!r} is not in {t.name}")
        with self._transaction():
            self.individuals[name] = h
        return h

    def define_concept(self, name, var, sort, world, intension) -> Concept:
        self._claim([name])
        if name in self.functions:
            raise NameClash(f"name {name} is already declared")
        w = self.world(world)
        extra = free_vars(intension) - {var}
        if extra:
            raise VcshError(f"concept {name}: free variables {', '.join(sorted(extra))} "
                            f"besides {var}")
        c = comprehend(self.evaluator, intension, var, sort, w, name=name)
        with self._transaction():
            self.concepts[name] = c
        return c

    def _recompute_closure(self):
        closure = close_evolvents(self.worlds.values(), self.evolvents.values())
        if closure == self.closure:
            return
        self.closure = closure
        self._reset_caches()
        # truth of implications and universals depends on the evolvent set
        for name, c in list(self.concepts.items()):
            self.concepts[name] = comprehend(self.evaluator, c.intension, c.var, c.sort,
                                             c.world, name=name)
            self._evaluator = None


# File format

def _braces(items) -> str:
    return "{ " + ", ".join(items) + " }" if items else "{}"


def _map_items(keys, values):
    return [f"{k} -> {v}" for k, v in zip(keys, values)]


def dumps(ws: Workspace) -> str:
    lines = []
    for t in ws.types.values():
        lines.append(f"type {t.name} = {_braces(t.elements)}")
    for w in ws.worlds.values():
        lines.append(f"world {w.name} = {_braces(w.indexes)}")
    for name, e in ws.evolvents.items():
        lines.append(f"evolvent {name} : {e.source.name} -> {e.target.name} = "
                     f"{_braces(_map_items(e.source.indexes, e.images))}")
    for name, g in ws.functions.items():
        lines.append(f"func {name} : {g.domain.name} -> {g.codomain.name} = "
                     f"{_braces(_map_items(g.domain.elements, g.images))}")
    for name, h in ws.individuals.items():
        lines.append(f"individual {name} : {h.world.name} -> {h.type} = "
                     f"{_braces(_map_items(h.world.indexes, h.values))}")
    for name, c in ws.concepts.items():
        lines.append(f"concept {name} over {c.var} : {print_sort(c.sort)} at {c.world.name} "
                     f":= {print_term(c.intension)}")
    return "".join(line + "\n" for line in lines)


_ID = r"[A-Za-z_][A-Za-z0-9_]*"
DECLARATIONS = {
    "type": re.compile(rf"type\s+({_ID})\s*=\s*\{{(.*)\}}\Z"),
    "world": re.compile(rf"world\s+({_ID})\s*=\s*\{{(.*)\}}\Z"),
    "evolvent": re.compile(rf"evolvent\s+({_ID})\s*:\s*({_ID})\s*->\s*({_ID})\s*=\s*\{{(.*)\}}\Z"),
    "func": re.compile(rf"func\s+({_ID})\s*:\s*({_ID})\s*->\s*({_ID})\s*=\s*\{{(.*)\}}\Z"),
    "individual": re.compile(
        rf"individual\s+({_ID})\s*:\s*({_ID})\s*->\s*({_ID})\s*=\s*\{{(.*)\}}\Z"),
    "concept": re.compile(rf"concept\s+({_ID})\s+over\s+({_ID}'*)\s*:\s*(.+?)\s+at\s+({_ID})"
                          rf"\s*:=\s*(.+)\Z"),
}


def _split_list(body: str) -> list:
    body = body.strip()
    if not body:
        return []
    items = [item.strip() for item in body.split(",")]
    if any(not _NAME.match(item) for item in items):
        raise VcshError(f"malformed list {{{body}}}")
    return items


def _split_map(body: str) -> dict:
    body = body.strip()
    result: dict = {}
    if not body:
        return result
    for item in body.split(","):
        parts = [p.strip() for p in item.split("->")]
        if len(parts) != 2 or not all(_NAME.match(p) for p in parts):
            raise VcshError(f"malformed map entry {item.strip()!r}; expected 'key -> value'")
        if parts[0] in result:
            raise VcshError(f"duplicate map key {parts[0]}")
        result[parts[0]] = parts[1]
    return result


def strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def is_declaration(line: str) -> bool:
    return line.split(None, 1)[0] in DECLARATIONS if line.strip() else False


def apply_declaration(ws: Workspace, line: str):
    """Apply one declaration line to ``ws``; returns the declared object."""
    keyword = line.split(None, 1)[0]
    m = DECLARATIONS[keyword].match(line)
    if m is None:
        raise VcshError(f"malformed {keyword} declaration")
    g = m.groups()
    if keyword == "type":
        return ws.declare_type(g[0], _split_list(g[1]))
    if keyword == "world":
        return ws.declare_world(g[0], _split_list(g[1]))
    if keyword == "evolvent":
        return ws.declare_evolvent(g[0], g[1], g[2], _split_map(g[3]))
    if keyword == "func":
        return ws.declare_function(g[0], g[1], g[2], _split_map(g[3]))
    if keyword == "individual":
        return ws.declare_individual(g[0], g[1], g[2], _split_map(g[3]))
    name, var, sort_text, world, formula_text = g
    sort = parse_sort(sort_text)
    phi = parse_formula(formula_text, functions=ws.functions)
    return ws.define_concept(name, var, sort, world, phi)


def loads(text: str, cap: int = DEFAULT_CAP) -> Workspace:
    ws = Workspace(cap)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = strip_comment(raw)
        if not line:
            continue
        if not is_declaration(line):
            raise FormatError(lineno, f"not a declaration: {line.split()[0]!r}")
        try:
            apply_declaration(ws, line)
        except VcshError as exc:
            raise FormatError(lineno, str(exc)) from exc
    return ws


def save_workspace(ws: Workspace, path) -> None:
    Path(path).write_text(dumps(ws), encoding="utf-8")


def load_workspace(path, cap: int = DEFAULT_CAP) -> Workspace:
    return loads(Path(path).read_text(encoding="utf-8"), cap)
