"""Acceptance criteria, one test per criterion.

A summary line per criterion is printed at the end of the run by the
terminal-summary hook in conftest.
"""
import itertools
import random
import time

import pytest

from conftest import CAB, FIX1
from corpus import INDIVIDUAL, element_corpus, individual_corpus, random_term
from oracle import FIX1_MODEL, Oracle, ind
from vcsh import Environment, check_workspace, comprehend, dumps, f_concept, loads
from vcsh.concepts import instantiate, resolve_description, variable_concept
from vcsh.errors import NonUnique, NoWitness
from vcsh.evaluator import Element, PairVal, SetVal
from vcsh.parser import parse_formula, parse_object
from vcsh.syntax import (
    ArrowSort, BaseSort, Const, PowerSort, ProductSort, alpha_eq, freshen, is_formula,
    print_term, substitute,
)
from vcsh.typecheck import (
    RULE_CONCEPT, RULE_ELEMENT, RULE_INDIVIDUAL, instance_of, type_of,
)
from vcsh.worlds import (
    DataType, Individual, World, compose_evolvents, domain_size, enumerate_domain,
    identity_evolvent, project, shift_individual,
)

B2_EXTENSION = "world B2 = { e1, e2 }\nevolvent f2 : B2 -> I = { e1 -> i1, e2 -> i1 }\n"


@pytest.fixture(scope="module")
def corpus():
    return individual_corpus(depth=3, binders=2)


@pytest.fixture(scope="module")
def cab_ws():
    return loads(FIX1 + CAB)


def _envs(ws, world_name):
    w = ws.world(world_name)
    for h in ws.evaluator.domain(INDIVIDUAL, w):
        yield w, h, Environment(w, {"x": h})


def test_criterion_1_functor_laws():
    start = time.perf_counter()
    ws = loads(FIX1 + "world C = { c1, c2 }\nevolvent k : C -> B = { c1 -> b1, c2 -> b1 }\n"
               "evolvent m : C -> I = { c1 -> i2, c2 -> i1 }\n")
    t = ws.type("T")
    checked = 0
    for w in ws.worlds.values():
        for h in enumerate_domain(t, w):
            assert shift_individual(h, identity_evolvent(w)) == h
            checked += 1
    composable = [(g, f) for g in ws.closure for f in ws.closure if g.target == f.source]
    assert any(not g.is_identity and not f.is_identity for g, f in composable)
    for g, f in composable:
        fg = compose_evolvents(g, f)
        for h in enumerate_domain(t, f.target):
            assert shift_individual(h, fg) == shift_individual(shift_individual(h, f), g)
            checked += 1
    assert checked > 0
    assert time.perf_counter() - start < 1.0


def test_criterion_2_oracle_equivalence(corpus, cab_ws):
    start = time.perf_counter()
    model = dict(FIX1_MODEL, concepts={"Cab": ("x", "I", parse_formula("x = h_ab | x = h_ba"))})
    oracle = Oracle(model)
    ev = cab_ws.evaluator
    disagreements = []
    for phi in corpus:
        for wn in ("I", "B"):
            for w, h, env in _envs(cab_ws, wn):
                ours = ev.eval_formula(phi, w, env)
                theirs = oracle.evaluate(phi, wn, {"x": ind(wn, h.table)})
                if ours != theirs:
                    disagreements.append((print_term(phi), wn, str(h)))
    assert len(corpus) > 10000
    assert disagreements == []
    assert time.perf_counter() - start < 60.0


def test_criterion_3_subset_claim(corpus):
    ws = loads(FIX1 + CAB + B2_EXTENSION)
    ev = ws.evaluator
    into_i = ws.into(ws.world("I"))
    assert {e.name for e in into_i} >= {"f", "f2"}
    at_source = {}
    for phi in corpus:
        for f in into_i:
            key = (phi, f.source)
            if key not in at_source:
                at_source[key] = set(comprehend(ev, phi, "x", INDIVIDUAL, f.source).extension)
            shifted = f_concept(ev, phi, "x", INDIVIDUAL, f).extension
            assert set(shifted) <= at_source[key], (print_term(phi), f.name)
    # strict inclusion along the non-injective evolvent
    f2 = ws.evolvent("f2")
    tautology = parse_formula("x = x")
    shifted = set(f_concept(ev, tautology, "x", INDIVIDUAL, f2).extension)
    full = set(comprehend(ev, tautology, "x", INDIVIDUAL, f2.source).extension)
    assert shifted < full
    assert len(shifted) == 2 and len(full) == 4


def test_criterion_4_kripke_monotonicity(corpus, cab_ws):
    ev = cab_ws.evaluator
    violations = []
    checked = 0
    for phi in corpus:
        for wn in ("I", "B"):
            for w, h, env in _envs(cab_ws, wn):
                if not ev.eval_formula(phi, w, env):
                    continue
                for f in cab_ws.into(w):
                    checked += 1
                    if not ev.eval_shifted(phi, f, env):
                        violations.append((print_term(phi), f.name, str(h)))
    assert checked > 0
    assert violations == []


POOL = [
    "h = h_aa", "h = h_ab", "h = h_ba", "h = h_bb", "h in Cab", "g(h) = h", "false",
]


def _patterns(n=50, seed=5):
    subsets = [c for k in range(1, len(POOL) + 1) for c in itertools.combinations(POOL, k)]
    return [" | ".join(c) for c in random.Random(seed).sample(subsets, n)]


def test_criterion_5_description_coherence(cab_ws):
    ev = cab_ws.evaluator
    I = cab_ws.world("I")
    patterns = _patterns()
    assert len(set(patterns)) == 50
    for body in patterns:
        # h only reads as a variable under its binder
        phi = parse_formula(f"exists h : (I -> T) . {body}").body
        expected = SetVal.of(comprehend(ev, phi, "h", INDIVIDUAL, I).extension)
        d = parse_object(f"the y : [I -> T] . forall h : (I -> T) . ({body} <-> y(h))")
        assert resolve_description(ev, d, I) == expected, body

    no_witness = ["the y : (I -> T) . false",
                  "the y : T . g(y) = a",
                  "the y : [I -> T] . forall h : (I -> T) . ((h = h_aa & h = h_ab) <-> y(h))",
                  "the y : [I -> T] . false"]
    non_unique = ["the y : (I -> T) . y = y",
                  "the y : T . g(y) = b",
                  "the y : [I -> T] . forall h : (I -> T) . h = h"]
    names = ["h_aa", "h_ab", "h_ba", "h_bb"]
    for c1, c2 in itertools.combinations(names, 2):
        no_witness.append(f"the y : (I -> T) . y = {c1} & y = {c2}")
        non_unique.append(f"the y : (I -> T) . y = {c1} | y = {c2}")
    for text in no_witness:
        with pytest.raises(NoWitness):
            resolve_description(ev, parse_object(text), I)
    for text in non_unique:
        with pytest.raises(NonUnique):
            resolve_description(ev, parse_object(text), I)


def test_criterion_6_substitution_lemma(fix1):
    ev = fix1.evaluator
    formulas = element_corpus(depth=3, binders=2)
    assert len(formulas) > 1000
    mismatches = []
    for wn in ("I", "B"):
        w = fix1.world(wn)
        for h in ev.domain(INDIVIDUAL, w):
            for i in w.indexes:
                lit = Const(h(i))
                for phi in formulas:
                    lhs = ev.apply_lambda_subst(phi, "x", h, i, w)
                    rhs = ev.eval_formula(substitute(phi, "x", lit), w)
                    if lhs != rhs:
                        mismatches.append((print_term(phi), str(h), i))
    assert mismatches == []


def test_criterion_7_cardinality_law():
    for nt in range(4):
        for ni in range(4):
            t = DataType("T", [f"t{k}" for k in range(nt)])
            w = World("I", [f"i{k}" for k in range(ni)])
            members = enumerate_domain(t, w).members
            assert len(members) == nt ** ni == domain_size(t, w)
            assert len(set(members)) == len(members)


def test_criterion_8_round_trips():
    rng = random.Random(8)
    for _ in range(1000):
        ast = random_term(rng)
        text = print_term(ast)
        parse = parse_formula if is_formula(ast) else parse_object
        back = parse(text)
        assert alpha_eq(back, freshen(ast)), text
        assert print_term(back) == print_term(parse(print_term(back)))
    ws = loads(FIX1 + CAB)
    saved = dumps(ws)
    again = loads(saved)
    assert again == ws
    assert dumps(again) == saved
    assert saved == FIX1 + CAB


def _corrupt(mutate):
    ws = loads(FIX1 + CAB)
    mutate(ws)
    ws._reset_caches()
    return check_workspace(ws)


def test_criterion_9_typing_table(cab_ws):
    ws = cab_ws
    I, T = BaseSort("I"), BaseSort("T")
    h = ws.individual("h_ab")
    # Type_of(i)=I, Instance_of(i)=I, i in I
    for i in ws.world("I").indexes:
        assert type_of(i, ws) == I
        assert instance_of(i, ws) == I
        assert Element(i, "I") in ws.evaluator.domain(I, ws.world("I"))
        # Type_of(h(i))=T and h(i) in T
        assert type_of(Element(h(i), "T")) == T
        assert h(i) in ws.type("T").elements
        # Type_of([i, h(i)])=I x T, and h = [i, h(i)] via the projections
        pair = PairVal(Element(i, "I"), Element(h(i), "T"))
        assert type_of(pair) == ProductSort(I, T)
        assert project((i, h(i)), "p") == i and project((i, h(i)), "q") == h(i)
    # Type_of(h)=I -> T
    assert type_of("h_ab", ws) == ArrowSort("I", T)
    c = ws.concept("Cab")
    view = variable_concept(c, ws.type("T"))
    # Type_of(Variable_concept)=Power_set(Assignment x Type)
    assert type_of(view) == PowerSort(ProductSort(I, T))
    for i, e in view.pairs():
        # Type_of(individual_concept)=Assignment x Type, and it is a member of the view
        assert type_of(PairVal(Element(i, "I"), Element(e, "T"))) == ProductSort(I, T)
        assert e in view[i].elements
    # Type_of(Concept)=Power_set(Type) for snapshots, Type_of(individual)=Concept as membership
    assert type_of(instantiate(c, "i1", ws.type("T"))) == PowerSort(T)
    assert type_of(c) == PowerSort(ArrowSort("I", T))
    assert all(m in c for m in c.extension)

    report = check_workspace(ws)
    assert report.passed and report.judgments

    def missing_index(w):
        w.individuals["h_ab"] = Individual(w.world("I"), "T", ("a",))

    def outside_carrier(w):
        w.individuals["h_ab"] = Individual(w.world("I"), "T", ("a", "c"))

    def incoherent_concept(w):
        c = w.concepts["Cab"]
        w.concepts["Cab"] = type(c)(c.intension, c.var, c.sort, c.world,
                                    (w.individuals["h_aa"],), c.name)

    for mutate, rule in ((missing_index, RULE_INDIVIDUAL), (outside_carrier, RULE_ELEMENT),
                         (incoherent_concept, RULE_CONCEPT)):
        bad = _corrupt(mutate)
        assert not bad.passed
        assert rule in {j.rule for j in bad.failures}, mutate.__name__
        assert any(f"[{rule}] FAIL" in line for line in bad.lines())
