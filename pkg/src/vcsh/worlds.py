"""Finite worlds, evolvents between them, and variable domains.

An evolvent ``f: B -> I`` is read "events evolve from I to B". Individuals
over ``I`` move to ``B`` by precomposition, ``h |-> h . f``, which makes
the variable domain ``H_T(-)`` a contravariant functor.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    CompositionMismatch, EnumerationCapExceeded, UnknownIndex, VcshError, WorldMismatch,
)

DEFAULT_CAP = 10 ** 6


def _check_unique(kind, name, items):
    seen = set()
    for item in items:
        if item in seen:
            raise VcshError(f"{kind} {name}: duplicate entry {item!r}")
        seen.add(item)


@dataclass(frozen=True)
class DataType:
    """A base type with its finite carrier."""

    name: str
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        _check_unique("type", self.name, self.elements)

    def __contains__(self, value):
        return value in self.elements

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class World:
    name: str
    indexes: tuple

    def __post_init__(self):
        object.__setattr__(self, "indexes", tuple(self.indexes))
        _check_unique("world", self.name, self.indexes)

    def __contains__(self, index):
        return index in self.indexes

    def __len__(self):
        return len(self.indexes)


@dataclass(frozen=True)
class Evolvent:
    """A total map ``source.indexes -> target.indexes``.

    ``images`` is aligned with ``source.indexes``.
    """

    name: str
    source: World
    target: World
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != len(self.source.indexes):
            raise VcshError(f"evolvent {self.name}: not total on {self.source.name}")
        for img in self.images:
            if img not in self.target.indexes:
                raise UnknownIndex(
                    f"evolvent {self.name}: {img!r} is not an index of {self.target.name}")

    @classmethod
    def from_mapping(cls, name, source: World, target: World, mapping: Mapping[str, str]):
        missing = [b for b in source.indexes if b not in mapping]
        if missing:
            raise VcshError(f"evolvent {name}: no image for {', '.join(missing)}")
        extra = [b for b in mapping if b not in source.indexes]
        if extra:
            raise UnknownIndex(f"evolvent {name}: {extra[0]!r} is not an index of {source.name}")
        return cls(name, source, target, tuple(mapping[b] for b in source.indexes))

    @property
    def mapping(self) -> dict:
        return dict(zip(self.source.indexes, self.images))

    @property
    def key(self):
        return (self.source, self.target, self.images)

    @property
    def is_identity(self) -> bool:
        return self.source == self.target and self.images == self.source.indexes

    def __call__(self, index):
        try:
            return self.images[self.source.indexes.index(index)]
        except ValueError:
            raise UnknownIndex(f"{index!r} is not an index of {self.source.name}") from None


@dataclass(frozen=True)
class Function:
    """A unary function constant between carriers, ``images`` aligned with the domain."""

    name: str
    domain: DataType
    codomain: DataType
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != len(self.domain.elements):
            raise VcshError(f"function {self.name}: not total on {self.domain.name}")
        for img in self.images:
            if img not in self.codomain:
                raise VcshError(f"function {self.name}: {img!r} is not in {self.codomain.name}")

    def __call__(self, value):
        return self.images[self.domain.elements.index(value)]


@dataclass(frozen=True)
class Individual:
    """A total function ``h: world -> type``; ``values`` aligned with ``world.indexes``."""

    world: World
    type: str
    values: tuple
    _table: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "_table", dict(zip(self.world.indexes, self.values)))

    @classmethod
    def from_mapping(cls, world: World, type_name: str, mapping: Mapping[str, str]):
        extra = [i for i in mapping if i not in world.indexes]
        if extra:
            raise UnknownIndex(f"{extra[0]!r} is not an index of {world.name}")
        missing = [i for i in world.indexes if i not in mapping]
        if missing:
            raise VcshError(f"individual over {world.name}: no value at {', '.join(missing)}")
        return cls(world, type_name, tuple(mapping[i] for i in world.indexes))

    @property
    def table(self) -> dict:
        return dict(self._table)

    def __call__(self, index):
        try:
            return self._table[index]
        except KeyError:
            raise UnknownIndex(f"{index!r} is not an index of {self.world.name}") from None

    def pairs(self):
        """The pair form ``[i, h(i)]`` for each index."""
        return [(i, v) for i, v in zip(self.world.indexes, self.values)]

    def __str__(self):
        return "{" + ", ".join(f"{i} -> {v}" for i, v in zip(self.world.indexes, self.values)) + "}"


@dataclass(frozen=True)
class VariableDomain:
    type: DataType
    world: World
    members: tuple

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, h):
        return h in self.members


def identity_evolvent(w: World) -> Evolvent:
    return Evolvent(f"1_{w.name}", w, w, w.indexes)


def compose_evolvents(g: Evolvent, f: Evolvent) -> Evolvent:
    """``f . g`` for ``g: C -> B`` and ``f: B -> I``."""
    if g.target != f.source:
        raise CompositionMismatch(
            f"cannot compose {f.name} after {g.name}: {g.name} lands in {g.target.name}, "
            f"{f.name} starts at {f.source.name}")
    if f.is_identity:
        return g
    if g.is_identity:
        return f
    return Evolvent(f"{f.name}.{g.name}", g.source, f.target, tuple(f(b) for b in g.images))


def domain_size(t: DataType, w: World) -> int:
    return len(t.elements) ** len(w.indexes)


def enumerate_domain(t: DataType, w: World, cap: int = DEFAULT_CAP) -> VariableDomain:
    """All total functions ``w.indexes -> t.elements``, lexicographically ordered."""
    size = domain_size(t, w)
    if size > cap:
        raise EnumerationCapExceeded(size, cap)
    members = tuple(Individual(w, t.name, values)
                    for values in itertools.product(t.elements, repeat=len(w.indexes)))
    return VariableDomain(t, w, members)


def shift_individual(h: Individual, f: Evolvent) -> Individual:
    """``H_T(f)(h) = h . f``, an individual over ``f.source``."""
    if h.world != f.target:
        raise WorldMismatch(
            f"individual over {h.world.name} cannot shift along {f.name}, "
            f"which targets {f.target.name}")
    return Individual(f.source, h.type, tuple(h(i) for i in f.images))


def project(pair, which: str):
    """Projections of the pair form ``[i, h(i)]``: ``p`` gives the index, ``q`` the element."""
    index, element = pair
    if which == "p":
        return index
    if which == "q":
        return element
    raise ValueError(f"unknown projection {which!r}; use 'p' or 'q'")


def actual_objects(w: World, i: str, declared: Iterable[Individual]) -> frozenset:
    """The actual objects ``A_i = {h(i) | h declared}``."""
    if i not in w.indexes:
        raise UnknownIndex(f"{i!r} is not an index of {w.name}")
    return frozenset(h(i) for h in declared)


def close_evolvents(worlds: Iterable[World], evolvents: Iterable[Evolvent]) -> tuple:
    """Identities plus declared evolvents, closed under composition.

    Maps with identical graphs are one arrow; the first name seen wins, so
    declared names take precedence over synthesized ones.
    """
    arrows: dict = {}
    for w in worlds:
        ident = identity_evolvent(w)
        arrows.setdefault(ident.key, ident)
    for e in evolvents:
        arrows.setdefault(e.key, e)
    changed = True
    while changed:
        changed = False
        current = list(arrows.values())
        for g in current:
            for f in current:
                if g.target != f.source or f.is_identity or g.is_identity:
                    continue
                fg = compose_evolvents(g, f)
                if fg.key not in arrows:
                    arrows[fg.key] = fg
                    changed = True
    return tuple(arrows.values())
