"""Comprehension, descriptions, and the concept family.

A ``Concept`` pairs an intension (a formula in one designated variable)
with its materialized extension at a world. Instantiating it at an index
gives an ``IndexedConcept`` (a snapshot); the family of all snapshots over
the world is a ``VariableConcept`` (a view). An ``FConcept`` is the
comprehension read along an evolvent.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import SortMismatch, UnknownIndex, WorldMismatch
from .evaluator import Environment, Evaluator, shift_denotation
from .syntax import ArrowSort, Description, print_sort, print_term
from .worlds import Evolvent, World


@dataclass(frozen=True)
class Concept:
    intension: object
    var: str
    sort: object
    world: World
    extension: tuple
    name: str = ""

    def __contains__(self, d):
        return d in self.extension

    def __len__(self):
        return len(self.extension)

    @property
    def element_type(self) -> str:
        if not isinstance(self.sort, ArrowSort):
            raise SortMismatch(
                f"concept over {print_sort(self.sort)} has no indexed snapshots; "
                f"instantiation needs an individual sort (W -> T)")
        return self.sort.codomain.name

    def __str__(self):
        label = self.name or "concept"
        return (f"{label} over {self.var} : {print_sort(self.sort)} at {self.world.name} "
                f":= {print_term(self.intension)}")


@dataclass(frozen=True)
class IndexedConcept:
    world: World
    index: str
    type: str
    elements: tuple

    def __str__(self):
        return "{" + ", ".join(self.elements) + "}"


@dataclass(frozen=True)
class VariableConcept:
    world: World
    type: str
    family: tuple

    def __getitem__(self, index) -> IndexedConcept:
        for member in self.family:
            if member.index == index:
                return member
        raise UnknownIndex(f"{index!r} is not an index of {self.world.name}")

    def pairs(self):
        """The family as a subset of ``world x type``: rows ``(index, element)``."""
        return [(m.index, e) for m in self.family for e in m.elements]


@dataclass(frozen=True)
class FConcept:
    evolvent: Evolvent
    base: Concept
    extension: tuple

    @property
    def world(self) -> World:
        return self.evolvent.source


def comprehend(ev: Evaluator, phi, var: str, sort, world: World, env: Environment = None,
               name: str = "") -> Concept:
    """``{h | phi(h) holds at world}``, in the domain's enumeration order."""
    found = ev.satisfiers(var, sort, phi, world, env)
    return Concept(phi, var, sort, world, tuple(found), name)


def instantiate(c: Concept, index: str, carrier=None) -> IndexedConcept:
    """Snapshot ``{h(i) | h in c}``.

    Elements come out in carrier order when ``carrier`` (a ``DataType``) is
    given, otherwise in first-seen order.
    """
    if index not in c.world.indexes:
        raise UnknownIndex(f"{index!r} is not an index of {c.world.name}")
    type_name = c.element_type
    seen = []
    for h in c.extension:
        v = h(index)
        if v not in seen:
            seen.append(v)
    if carrier is not None:
        seen.sort(key=carrier.elements.index)
    return IndexedConcept(c.world, index, type_name, tuple(seen))


def variable_concept(c: Concept, carrier=None) -> VariableConcept:
    family = tuple(instantiate(c, i, carrier) for i in c.world.indexes)
    return VariableConcept(c.world, c.element_type, family)


def f_concept(ev: Evaluator, phi, var: str, sort, f: Evolvent,
              env: Environment = None) -> FConcept:
    """Shifted comprehension ``{h . f | phi holds at f.source for h . f}`` for ``h`` over ``f.target``."""
    if env is None:
        env = Environment(f.target)
    if env.world != f.target:
        raise WorldMismatch(f"environment at {env.world.name}, evolvent {f.name} "
                            f"targets {f.target.name}")
    base = comprehend(ev, phi, var, sort, f.target, env)
    hits = set()
    for h in ev.domain(sort, f.target):
        if ev.eval_shifted(phi, f, env.bind(var, h)):
            hits.add(shift_denotation(h, f))
    order = ev.domain(sort, f.source)
    return FConcept(f, base, tuple(d for d in order if d in hits))


def resolve_description(ev: Evaluator, d: Description, world: World, env: Environment = None):
    """The unique satisfier of the description body; raises NoWitness or NonUnique."""
    return ev.describe(d, world, env)
