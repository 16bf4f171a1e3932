"""World-indexed evaluation of object terms and formulas.

Truth is Kripke-style over the workspace's evolvent category: implication
and universal quantification range over every registered evolvent into the
current world (identity included) and evaluate the subformulas under the
f-shifted valuation; the existential looks at the current world only.

Individual constants live over a home world. Evaluated at another world
``w`` they are read along the unique registered evolvent ``w -> home`` if
there is exactly one, and left untouched otherwise. Inside shifted
evaluation each shift reinterprets them once more by precomposition.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Union

from .errors import (
    EnumerationCapExceeded, NonUnique, NoWitness, SortMismatch, UnboundVariable,
    UnknownConstant, UnknownIndex, UnknownReference, WorldMismatch,
)
from .syntax import (
    And, Apply, ArrowSort, BaseSort, Const, Description, Equation, Exists, Falsum, Forall,
    FuncApp, Implies, Membership, Or, Pair, PowerSort, ProductSort, Var, print_sort,
    print_term,
)
from .worlds import Evolvent, Individual, World, enumerate_domain, shift_individual


@dataclass(frozen=True)
class Element:
    """A carrier element (``sort`` is a type name) or an index (``sort`` is a world name)."""

    value: str
    sort: str

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class PairVal:
    left: "Denotation"
    right: "Denotation"

    def __str__(self):
        return f"[{render(self.left)}, {render(self.right)}]"


@dataclass(frozen=True)
class SetVal:
    """A finite set; build with ``SetVal.of`` to get the canonical member order."""

    members: tuple
    _lookup: frozenset = field(default=frozenset(), init=False, repr=False, compare=False,
                               hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_lookup", frozenset(self.members))

    @classmethod
    def of(cls, items):
        return cls(tuple(sorted(set(items), key=sort_key)))

    def __contains__(self, d):
        return d in self._lookup

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __str__(self):
        return "{" + ", ".join(render(m) for m in self.members) + "}"


Denotation = Union[Element, Individual, PairVal, SetVal]


def sort_key(d):
    if isinstance(d, Element):
        return (0, d.sort, d.value)
    if isinstance(d, Individual):
        return (1, d.world.name, d.type, d.values)
    if isinstance(d, PairVal):
        return (2, sort_key(d.left), sort_key(d.right))
    if isinstance(d, SetVal):
        return (3, tuple(sort_key(m) for m in d.members))
    raise TypeError(f"not a denotation: {d!r}")


def render(d) -> str:
    if isinstance(d, bool):
        return "true" if d else "false"
    return str(d)


def shift_denotation(d, f: Evolvent):
    """Precompose every individual over ``f.target`` inside ``d`` with ``f``."""
    if isinstance(d, Individual):
        return shift_individual(d, f) if d.world == f.target else d
    if isinstance(d, PairVal):
        return PairVal(shift_denotation(d.left, f), shift_denotation(d.right, f))
    if isinstance(d, SetVal):
        return SetVal.of(shift_denotation(m, f) for m in d.members)
    return d


@dataclass(frozen=True)
class Environment:
    """Variable bindings at a world.

    ``root`` is the world evaluation started from and ``shifts`` the
    evolvents applied since; together they fix how constants are read.
    """

    world: World
    bindings: Mapping = field(default_factory=dict)
    root: World = None
    shifts: tuple = ()

    def __post_init__(self):
        if self.root is None:
            object.__setattr__(self, "root", self.world)
        for name, d in self.bindings.items():
            if isinstance(d, Individual) and d.world != self.world:
                raise WorldMismatch(
                    f"binding {name} is over {d.world.name}, environment is at {self.world.name}")

    def bind(self, name, value) -> "Environment":
        return Environment(self.world, {**self.bindings, name: value}, self.root, self.shifts)


def shift_env(env: Environment, f: Evolvent) -> Environment:
    if env.world != f.target:
        raise WorldMismatch(
            f"environment at {env.world.name} cannot shift along {f.name}, "
            f"which targets {f.target.name}")
    if f.is_identity:
        return env
    bindings = {k: shift_denotation(v, f) for k, v in env.bindings.items()}
    return Environment(f.source, bindings, env.root, env.shifts + (f,))


class Evaluator:
    """Evaluation map over one workspace snapshot. Caches are per instance."""

    def __init__(self, ws):
        self.ws = ws
        self.cap = ws.cap
        self._domains: dict = {}
        self._constants: dict = {}

    # domains

    def domain(self, sort, world: World) -> tuple:
        key = (sort, world)
        if key not in self._domains:
            self._domains[key] = self._domain(sort, world)
        return self._domains[key]

    def _domain(self, sort, world):
        ws = self.ws
        if isinstance(sort, BaseSort):
            if sort.name in ws.types:
                t = ws.types[sort.name]
                return tuple(Element(e, t.name) for e in t.elements)
            if sort.name in ws.worlds:
                w = ws.worlds[sort.name]
                return tuple(Element(i, w.name) for i in w.indexes)
            raise UnknownReference(f"unknown sort {sort.name}")
        if isinstance(sort, ArrowSort):
            if sort.domain not in ws.worlds:
                raise UnknownReference(f"unknown world {sort.domain} in sort {print_sort(sort)}")
            if not (isinstance(sort.codomain, BaseSort) and sort.codomain.name in ws.types):
                raise SortMismatch(f"individuals need a base type codomain, got {print_sort(sort)}")
            # the sort is read at the world of evaluation, so it follows shifts
            return enumerate_domain(ws.types[sort.codomain.name], world, self.cap).members
        if isinstance(sort, PowerSort):
            base = self.domain(sort.inner, world)
            if 2 ** len(base) > self.cap:
                raise EnumerationCapExceeded(2 ** len(base), self.cap)
            return tuple(SetVal.of(c) for k in range(len(base) + 1)
                         for c in itertools.combinations(base, k))
        if isinstance(sort, ProductSort):
            left, right = self.domain(sort.left, world), self.domain(sort.right, world)
            if len(left) * len(right) > self.cap:
                raise EnumerationCapExceeded(len(left) * len(right), self.cap)
            return tuple(PairVal(a, b) for a in left for b in right)
        raise TypeError(f"not a sort: {sort!r}")

    # constants

    def constant(self, name: str, env: Environment):
        key = (name, env.root, env.shifts)
        if key not in self._constants:
            d = self._default(name, env.root)
            for f in env.shifts:
                d = shift_denotation(d, f)
            self._constants[key] = d
        return self._constants[key]

    def _default(self, name, world):
        ws = self.ws
        if name in ws.individuals:
            d = ws.individuals[name]
            home = d.world
        elif name in ws.concepts:
            c = ws.concepts[name]
            d, home = SetVal.of(c.extension), c.world
        else:
            return self._rigid(name)
        if home != world:
            paths = [e for e in ws.into(home) if e.source == world]
            if len(paths) == 1:
                d = shift_denotation(d, paths[0])
        return d

    def _rigid(self, name):
        ws = self.ws
        t = ws.element_type(name)
        if t is not None:
            return Element(name, t.name)
        w = ws.index_world(name)
        if w is not None:
            return Element(name, w.name)
        if name in ws.types:
            return SetVal.of(Element(e, name) for e in ws.types[name].elements)
        if name in ws.worlds:
            return SetVal.of(Element(i, name) for i in ws.worlds[name].indexes)
        raise UnknownConstant(f"unknown constant {name}")

    # objects

    def eval_object(self, t, world: World, env: Environment = None):
        env = self._check_env(world, env)
        return self._obj(t, env)

    def _obj(self, t, env):
        if isinstance(t, Var):
            try:
                return env.bindings[t.name]
            except KeyError:
                raise UnboundVariable(f"unbound variable {t.name}") from None
        if isinstance(t, Const):
            return self.constant(t.name, env)
        if isinstance(t, FuncApp):
            if t.func not in self.ws.functions:
                if self._is_constant(t.func):
                    return self._apply(self.constant(t.func, env), self._obj(t.arg, env))
                raise UnknownConstant(f"unknown function {t.func}")
            return self._funcapp(self.ws.functions[t.func], self._obj(t.arg, env))
        if isinstance(t, Pair):
            return PairVal(self._obj(t.left, env), self._obj(t.right, env))
        if isinstance(t, Apply):
            return self._apply(self._obj(t.fun, env), self._obj(t.arg, env))
        if isinstance(t, Description):
            return self.describe(t, env.world, env)
        raise TypeError(f"not an object term: {t!r}")

    def _is_constant(self, name):
        return name in self.ws.object_names()

    def _funcapp(self, g, v):
        if isinstance(v, Element) and v.sort == g.domain.name:
            return Element(g(v.value), g.codomain.name)
        if isinstance(v, Individual) and v.type == g.domain.name:
            return Individual(v.world, g.codomain.name, tuple(g(x) for x in v.values))
        raise SortMismatch(f"{g.name} expects {g.domain.name}, got {render(v)}")

    def _apply(self, fun, arg):
        if not isinstance(fun, Individual):
            raise SortMismatch(f"cannot apply {render(fun)}: not an individual")
        if not (isinstance(arg, Element) and arg.sort == fun.world.name):
            raise SortMismatch(
                f"individual over {fun.world.name} applied to {render(arg)}, "
                f"which is not an index of {fun.world.name}")
        return Element(fun(arg.value), fun.type)

    # formulas

    def eval_formula(self, phi, world: World, env: Environment = None) -> bool:
        env = self._check_env(world, env)
        return self._holds(phi, env)

    def _holds(self, phi, env) -> bool:
        if isinstance(phi, Falsum):
            return False
        if isinstance(phi, Equation):
            return self._obj(phi.left, env) == self._obj(phi.right, env)
        if isinstance(phi, Membership):
            container = self._obj(phi.container, env)
            if not isinstance(container, SetVal):
                raise SortMismatch(f"{render(container)} is not a set")
            return self._obj(phi.elem, env) in container
        if isinstance(phi, And):
            return self._holds(phi.left, env) and self._holds(phi.right, env)
        if isinstance(phi, Or):
            return self._holds(phi.left, env) or self._holds(phi.right, env)
        if isinstance(phi, Implies):
            for f in self.ws.into(env.world):
                shifted = shift_env(env, f)
                if self._holds(phi.left, shifted) and not self._holds(phi.right, shifted):
                    return False
            return True
        if isinstance(phi, Forall):
            for f in self.ws.into(env.world):
                shifted = shift_env(env, f)
                for b in self.domain(phi.sort, f.source):
                    if not self._holds(phi.body, shifted.bind(phi.var, b)):
                        return False
            return True
        if isinstance(phi, Exists):
            return any(self._holds(phi.body, env.bind(phi.var, a))
                       for a in self.domain(phi.sort, env.world))
        raise TypeError(f"not a formula: {phi!r}")

    def eval_shifted(self, phi, f: Evolvent, env: Environment = None) -> bool:
        """Truth of ``phi`` at ``f.source`` under the f-shifted valuation of ``env``."""
        if env is None:
            env = Environment(f.target)
        return self._holds(phi, shift_env(env, f))

    def apply_lambda_subst(self, phi, var: str, h: Individual, index: str, world: World,
                           env: Environment = None) -> bool:
        """``(lambda var. phi) h`` at ``index``: bind ``var`` to the element ``h(index)``."""
        env = self._check_env(world, env)
        if index not in world.indexes:
            raise UnknownIndex(f"{index!r} is not an index of {world.name}")
        if h.world != world:
            raise WorldMismatch(f"individual over {h.world.name}, evaluation at {world.name}")
        return self._holds(phi, env.bind(var, Element(h(index), h.type)))

    # descriptions

    def satisfiers(self, var, sort, body, world: World, env: Environment = None) -> list:
        env = self._check_env(world, env)
        return [c for c in self.domain(sort, world) if self._holds(body, env.bind(var, c))]

    def describe(self, d: Description, world: World, env: Environment = None):
        found = self.satisfiers(d.var, d.sort, d.body, world, env)
        if not found:
            raise NoWitness(f"no witness for {print_term(d)} at {world.name}")
        if len(found) > 1:
            shown = ", ".join(render(w) for w in found[:4])
            more = "" if len(found) <= 4 else ", ..."
            raise NonUnique(f"{len(found)} witnesses for {print_term(d)} at {world.name}: "
                            f"{shown}{more}", found)
        return found[0]

    def _check_env(self, world, env):
        if env is None:
            return Environment(world)
        if env.world != world:
            raise WorldMismatch(f"environment is at {env.world.name}, evaluation at {world.name}")
        return env
