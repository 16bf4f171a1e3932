"""Type_of / Instance_of judgments and the workspace checker.

``type_of`` answers from a fixed table keyed by entity kind. The checker
walks a workspace and records one judgment per entity and per instance of
each domain equation; failures are report entries, never exceptions.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .concepts import Concept, IndexedConcept, VariableConcept, comprehend, variable_concept
from .errors import UnknownEntity, VcshError
from .evaluator import Element, PairVal, render
from .syntax import ArrowSort, BaseSort, PowerSort, ProductSort, print_sort
from .worlds import Individual, project

RULE_INDEX = "Type_of(i)=I"
RULE_INSTANCE = "Instance_of(i)=I"
RULE_ELEMENT = "Type_of(h(i))=T"
RULE_INDIVIDUAL = "Type_of(h)=I->T"
RULE_PAIR = "Type_of([i,h(i)])=I*T"
RULE_SNAPSHOT = "Type_of(Concept)=Power_set(Type)"
RULE_VIEW = "Type_of(Variable_concept)=Power_set(Assignment*Type)"
RULE_VIEW_ROW = "Type_of(individual_concept)=Assignment*Type"
RULE_VIEW_MEMBER = "Type_of(individual_concept)=Variable_concept"
RULE_MEMBERSHIP = "Type_of(individual)=Concept"
RULE_CONCEPT = "C(I)={h|Phi}<=H_T(I)"
RULE_EVOLVENT = "f:B->I"
RULE_FUNCTION = "g:T->T"


@dataclass(frozen=True)
class TypingJudgment:
    subject: str
    verdict: object
    rule: str
    passed: bool = True
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"JUDGMENT {self.subject} : {print_sort(self.verdict)} [{self.rule}] {status}"


@dataclass
class Report:
    judgments: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(j.passed for j in self.judgments)

    @property
    def failures(self) -> list:
        return [j for j in self.judgments if not j.passed]

    def add(self, subject, verdict, rule, passed=True, note=""):
        self.judgments.append(TypingJudgment(subject, verdict, rule, bool(passed), note))

    def lines(self) -> list:
        return [j.line() for j in self.judgments]

    def text(self) -> str:
        out = []
        for j in self.judgments:
            mark = "ok  " if j.passed else "FAIL"
            extra = f"  ({j.note})" if j.note else ""
            out.append(f"{mark} {j.subject} : {print_sort(j.verdict)}  by {j.rule}{extra}")
        out.append(f"{len(self.judgments)} judgments, {len(self.failures)} failed")
        return "\n".join(out)


def type_of(entity, ws=None):
    """The type of an entity per the judgment table.

    Accepts denotations and concept objects directly, or a registered name
    when a workspace is given.
    """
    if isinstance(entity, str):
        if ws is None:
            raise UnknownEntity(f"cannot resolve {entity!r} without a workspace")
        return type_of(_resolve(entity, ws))
    if isinstance(entity, Element):
        return BaseSort(entity.sort)
    if isinstance(entity, Individual):
        return ArrowSort(entity.world.name, BaseSort(entity.type))
    if isinstance(entity, PairVal):
        return ProductSort(type_of(entity.left), type_of(entity.right))
    if isinstance(entity, IndexedConcept):
        return PowerSort(BaseSort(entity.type))
    if isinstance(entity, VariableConcept):
        return PowerSort(ProductSort(BaseSort(entity.world.name), BaseSort(entity.type)))
    if isinstance(entity, Concept):
        return PowerSort(entity.sort)
    raise UnknownEntity(f"no typing rule for {entity!r}")


def instance_of(index: str, ws):
    w = ws.index_world(index)
    if w is None:
        raise UnknownEntity(f"{index!r} is not a registered index")
    return BaseSort(w.name)


def judge(entity, ws=None) -> TypingJudgment:
    verdict = type_of(entity, ws)
    if isinstance(entity, str):
        entity = _resolve(entity, ws)
    if isinstance(entity, Element):
        is_index = ws is not None and entity.sort in ws.worlds
        return TypingJudgment(render(entity), verdict, RULE_INDEX if is_index else RULE_ELEMENT)
    if isinstance(entity, Individual):
        return TypingJudgment(render(entity), verdict, RULE_INDIVIDUAL)
    if isinstance(entity, PairVal):
        return TypingJudgment(render(entity), verdict, RULE_PAIR)
    if isinstance(entity, IndexedConcept):
        return TypingJudgment(f"C({{{entity.index}}})", verdict, RULE_SNAPSHOT)
    if isinstance(entity, VariableConcept):
        return TypingJudgment(f"C({entity.world.name})", verdict, RULE_VIEW)
    return TypingJudgment(entity.name or "concept", verdict, RULE_CONCEPT,
                          note=f"its members are typed by membership, {RULE_MEMBERSHIP}")


def _resolve(name, ws):
    w = ws.index_world(name)
    if w is not None:
        return Element(name, w.name)
    t = ws.element_type(name)
    if t is not None:
        return Element(name, t.name)
    if name in ws.individuals:
        return ws.individuals[name]
    if name in ws.concepts:
        return ws.concepts[name]
    raise UnknownEntity(f"unknown entity {name}")


def check_workspace(ws) -> Report:
    report = Report()
    for w in ws.worlds.values():
        for i in w.indexes:
            report.add(i, BaseSort(w.name), RULE_INDEX, ws.index_world(i) == w)
            report.add(i, BaseSort(w.name), RULE_INSTANCE, i in w.indexes)
    for name, e in ws.evolvents.items():
        ok = (e.source.name in ws.worlds and e.target.name in ws.worlds
              and len(e.images) == len(e.source.indexes)
              and all(i in e.target.indexes for i in e.images))
        report.add(name, ArrowSort(e.source.name, BaseSort(e.target.name)), RULE_EVOLVENT, ok)
    for name, g in ws.functions.items():
        ok = (len(g.images) == len(g.domain.elements)
              and all(v in g.codomain.elements for v in g.images))
        report.add(name, ArrowSort(g.domain.name, BaseSort(g.codomain.name)), RULE_FUNCTION, ok)
    for name, h in ws.individuals.items():
        _check_individual(report, name, h, ws)
    for name, c in ws.concepts.items():
        _check_concept(report, name, c, ws)
    return report


def _check_individual(report, name, h, ws):
    carrier = ws.types.get(h.type)
    total = (h.world.name in ws.worlds and len(h.values) == len(h.world.indexes))
    report.add(name, ArrowSort(h.world.name, BaseSort(h.type)), RULE_INDIVIDUAL,
               total and carrier is not None,
               note="" if total else f"not defined at every index of {h.world.name}")
    for i, v in zip(h.world.indexes, h.values):
        report.add(f"{name}({i})", BaseSort(h.type), RULE_ELEMENT,
                   carrier is not None and v in carrier.elements)
        pair = (i, v)
        # h is matched with its pair form by projection, not by a typing equation
        recovers = project(pair, "p") == i and project(pair, "q") == h(i)
        report.add(f"[{i}, {name}({i})]", ProductSort(BaseSort(h.world.name), BaseSort(h.type)),
                   RULE_PAIR, recovers and carrier is not None and v in carrier.elements)


def _check_concept(report, name, c, ws):
    verdict = PowerSort(c.sort)
    try:
        fresh = comprehend(ws.evaluator, c.intension, c.var, c.sort, c.world)
        domain = ws.evaluator.domain(c.sort, c.world)
    except VcshError as exc:
        report.add(name, verdict, RULE_CONCEPT, False, note=str(exc))
        return
    coherent = fresh.extension == c.extension and all(d in domain for d in c.extension)
    report.add(name, verdict, RULE_CONCEPT, coherent,
               note="" if coherent else "stored extension differs from its intension")
    for d in c.extension:
        report.add(render(d), BaseSort(name), RULE_MEMBERSHIP, d in fresh.extension)
    if not isinstance(c.sort, ArrowSort):
        return
    carrier = ws.types.get(c.sort.codomain.name)
    try:
        view = variable_concept(c, carrier)
    except VcshError as exc:
        report.add(f"{name}({c.world.name})", type_of(c), RULE_VIEW, False, note=str(exc))
        return
    elements = set(carrier.elements) if carrier else set()
    for snap in view.family:
        report.add(f"{name}({{{snap.index}}})", type_of(snap), RULE_SNAPSHOT,
                   set(snap.elements) <= elements)
    rows = view.pairs()
    report.add(f"{name}({c.world.name})", type_of(view), RULE_VIEW,
               all(i in c.world.indexes and e in elements for i, e in rows))
    row_sort = ProductSort(BaseSort(c.world.name), BaseSort(view.type))
    for i, e in rows:
        report.add(f"[{i}, {e}]", row_sort, RULE_VIEW_ROW,
                   i in c.world.indexes and e in elements)
        report.add(f"[{i}, {e}]", BaseSort(f"{name}({c.world.name})"), RULE_VIEW_MEMBER,
                   e in view[i].elements)
