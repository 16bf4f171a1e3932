"""Abstract syntax of the object language: sorts, object terms and formulas.

Also hosts the printer, free-variable computation, capture-avoiding
substitution and alpha-equivalence. All nodes are immutable.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

# Sorts


@dataclass(frozen=True)
class BaseSort:
    name: str


@dataclass(frozen=True)
class PowerSort:
    inner: "SortExpr"


@dataclass(frozen=True)
class ProductSort:
    left: "SortExpr"
    right: "SortExpr"


@dataclass(frozen=True)
class ArrowSort:
    domain: str
    codomain: "SortExpr"


SortExpr = Union[BaseSort, PowerSort, ProductSort, ArrowSort]

# Object terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class FuncApp:
    func: str
    arg: "ObjectTerm"


@dataclass(frozen=True)
class Pair:
    left: "ObjectTerm"
    right: "ObjectTerm"


@dataclass(frozen=True)
class Apply:
    fun: "ObjectTerm"
    arg: "ObjectTerm"


@dataclass(frozen=True)
class Description:
    var: str
    sort: SortExpr
    body: "Formula"


ObjectTerm = Union[Var, Const, FuncApp, Pair, Apply, Description]

# Formulas


@dataclass(frozen=True)
class Falsum:
    pass


FALSUM = Falsum()


@dataclass(frozen=True)
class Equation:
    left: ObjectTerm
    right: ObjectTerm


@dataclass(frozen=True)
class Membership:
    elem: ObjectTerm
    container: ObjectTerm


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    sort: SortExpr
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    sort: SortExpr
    body: "Formula"


Formula = Union[Falsum, Equation, Membership, And, Or, Implies, Forall, Exists]
Term = Union[Formula, ObjectTerm]

BINDERS = (Forall, Exists, Description)
CONNECTIVES = (And, Or, Implies)

_VARIABLE_LEXEME = re.compile(r"[x-z][0-9]*'*\Z")


def is_variable_name(name: str) -> bool:
    """Free identifiers spelled like ``x``, ``y2`` or ``z'`` are variables."""
    return _VARIABLE_LEXEME.match(name) is not None


def iff(left: Formula, right: Formula) -> Formula:
    return And(Implies(left, right), Implies(right, left))


# Printing

def print_sort(s: SortExpr) -> str:
    if isinstance(s, BaseSort):
        return s.name
    if isinstance(s, PowerSort):
        return f"[{print_sort(s.inner)}]"
    if isinstance(s, ArrowSort):
        return f"({s.domain} -> {print_sort(s.codomain)})"
    if isinstance(s, ProductSort):
        right = print_sort(s.right)
        if isinstance(s.right, ProductSort):
            right = f"({right})"
        return f"{print_sort(s.left)} * {right}"
    raise TypeError(f"not a sort: {s!r}")


def _print_object(t: ObjectTerm, nested: bool = True) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    if isinstance(t, FuncApp):
        return f"{t.func}({_print_object(t.arg, False)})"
    if isinstance(t, Pair):
        return f"[{_print_object(t.left, False)}, {_print_object(t.right, False)}]"
    if isinstance(t, Apply):
        head = _print_object(t.fun)
        # a bare constant head would read back as a function constant
        if isinstance(t.fun, Const):
            head = f"({head})"
        return f"{head}({_print_object(t.arg, False)})"
    if isinstance(t, Description):
        s = f"the {t.var} : {print_sort(t.sort)} . {_print_formula(t.body, 0)}"
        return f"({s})" if nested else s
    raise TypeError(f"not an object term: {t!r}")


# levels: 0 implication, 1 disjunction, 2 conjunction, 3 atoms
def _print_formula(f: Formula, level: int) -> str:
    if isinstance(f, Falsum):
        return "false"
    if isinstance(f, Equation):
        return f"{_print_object(f.left)} = {_print_object(f.right)}"
    if isinstance(f, Membership):
        return f"{_print_object(f.elem)} in {_print_object(f.container)}"
    if isinstance(f, Implies):
        s = f"{_print_formula(f.left, 1)} => {_print_formula(f.right, 0)}"
        return f"({s})" if level > 0 else s
    if isinstance(f, Or):
        s = f"{_print_formula(f.left, 1)} | {_print_formula(f.right, 2)}"
        return f"({s})" if level > 1 else s
    if isinstance(f, And):
        s = f"{_print_formula(f.left, 2)} & {_print_formula(f.right, 3)}"
        return f"({s})" if level > 2 else s
    if isinstance(f, (Forall, Exists)):
        kw = "forall" if isinstance(f, Forall) else "exists"
        s = f"{kw} {f.var} : {print_sort(f.sort)} . {_print_formula(f.body, 0)}"
        return f"({s})" if level > 0 else s
    raise TypeError(f"not a formula: {f!r}")


def is_formula(t) -> bool:
    return isinstance(t, (Falsum, Equation, Membership, And, Or, Implies, Forall, Exists))


def print_term(t: Term) -> str:
    if is_formula(t):
        return _print_formula(t, 0)
    return _print_object(t, nested=False)


# Free variables

def free_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, (Const, Falsum)):
        return frozenset()
    if isinstance(t, FuncApp):
        return free_vars(t.arg)
    if isinstance(t, BINDERS):
        return free_vars(t.body) - {t.var}
    if isinstance(t, Equation):
        return free_vars(t.left) | free_vars(t.right)
    if isinstance(t, Membership):
        return free_vars(t.elem) | free_vars(t.container)
    if isinstance(t, Apply):
        return free_vars(t.fun) | free_vars(t.arg)
    if isinstance(t, (Pair, And, Or, Implies)):
        return free_vars(t.left) | free_vars(t.right)
    raise TypeError(f"not a term: {t!r}")


def all_names(t: Term) -> frozenset:
    """Every identifier used as a variable or constant, bound or free."""
    if isinstance(t, (Var, Const)):
        return frozenset([t.name])
    if isinstance(t, Falsum):
        return frozenset()
    if isinstance(t, FuncApp):
        return all_names(t.arg)
    if isinstance(t, BINDERS):
        return all_names(t.body) | {t.var}
    if isinstance(t, Equation):
        return all_names(t.left) | all_names(t.right)
    if isinstance(t, Membership):
        return all_names(t.elem) | all_names(t.container)
    if isinstance(t, Apply):
        return all_names(t.fun) | all_names(t.arg)
    return all_names(t.left) | all_names(t.right)


def fresh_name(base: str, avoid) -> str:
    name = base + "'"
    while name in avoid:
        name += "'"
    return name


# Substitution

def substitute(t: Term, var: str, replacement: ObjectTerm) -> Term:
    """Capture-avoiding ``[replacement/var] t``.

    Binders are renamed when they would capture a variable of the
    replacement, or would shadow one of its constants in printed form.
    """
    if var not in free_vars(t):
        return t
    return _subst(t, var, replacement, all_names(replacement))


def _subst(t, var, rep, rep_names):
    if isinstance(t, Var):
        return rep if t.name == var else t
    if isinstance(t, (Const, Falsum)):
        return t
    if isinstance(t, FuncApp):
        return FuncApp(t.func, _subst(t.arg, var, rep, rep_names))
    if isinstance(t, BINDERS):
        if t.var == var or var not in free_vars(t.body):
            return t
        bound, body = t.var, t.body
        if bound in rep_names:
            new = fresh_name(bound, all_names(body) | rep_names | {var})
            body = _subst(body, bound, Var(new), frozenset([new]))
            bound = new
        return type(t)(bound, t.sort, _subst(body, var, rep, rep_names))
    if isinstance(t, Equation):
        return Equation(_subst(t.left, var, rep, rep_names), _subst(t.right, var, rep, rep_names))
    if isinstance(t, Membership):
        return Membership(_subst(t.elem, var, rep, rep_names),
                          _subst(t.container, var, rep, rep_names))
    if isinstance(t, Apply):
        return Apply(_subst(t.fun, var, rep, rep_names), _subst(t.arg, var, rep, rep_names))
    return type(t)(_subst(t.left, var, rep, rep_names), _subst(t.right, var, rep, rep_names))


def rename_bound_apart(t: Term, avoid) -> Term:
    """Rename every binder whose variable occurs in ``avoid``."""
    avoid = frozenset(avoid)
    if not avoid:
        return t
    return _apart(t, avoid | all_names(t))


def _apart(t, taken):
    if isinstance(t, (Var, Const, Falsum)):
        return t
    if isinstance(t, FuncApp):
        return FuncApp(t.func, _apart(t.arg, taken))
    if isinstance(t, BINDERS):
        bound, body = t.var, t.body
        if bound in taken:
            new = fresh_name(bound, taken)
            body = _subst(body, bound, Var(new), frozenset([new]))
            bound = new
        return type(t)(bound, t.sort, _apart(body, taken | {bound}))
    if isinstance(t, Equation):
        return Equation(_apart(t.left, taken), _apart(t.right, taken))
    if isinstance(t, Membership):
        return Membership(_apart(t.elem, taken), _apart(t.container, taken))
    if isinstance(t, Apply):
        return Apply(_apart(t.fun, taken), _apart(t.arg, taken))
    return type(t)(_apart(t.left, taken), _apart(t.right, taken))


def freshen(t: Term) -> Term:
    """Make bound names distinct from the free variables of ``t``."""
    fv = free_vars(t)
    if not fv:
        return t
    return _freshen(t, fv, fv | all_names(t))


def _freshen(t, fv, taken):
    if isinstance(t, (Var, Const, Falsum)):
        return t
    if isinstance(t, FuncApp):
        return FuncApp(t.func, _freshen(t.arg, fv, taken))
    if isinstance(t, BINDERS):
        bound, body = t.var, t.body
        if bound in fv:
            new = fresh_name(bound, taken)
            taken = taken | {new}
            body = _subst(body, bound, Var(new), frozenset([new]))
            bound = new
        return type(t)(bound, t.sort, _freshen(body, fv, taken))
    if isinstance(t, Equation):
        return Equation(_freshen(t.left, fv, taken), _freshen(t.right, fv, taken))
    if isinstance(t, Membership):
        return Membership(_freshen(t.elem, fv, taken), _freshen(t.container, fv, taken))
    if isinstance(t, Apply):
        return Apply(_freshen(t.fun, fv, taken), _freshen(t.arg, fv, taken))
    return type(t)(_freshen(t.left, fv, taken), _freshen(t.right, fv, taken))


# Alpha-equivalence

def alpha_eq(a: Term, b: Term) -> bool:
    return _alpha(a, b, {}, {}, 0)


def _alpha(a, b, env_a, env_b, depth):
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        da, db = env_a.get(a.name), env_b.get(b.name)
        if da is None and db is None:
            return a.name == b.name
        return da == db
    if isinstance(a, Const):
        return a.name == b.name
    if isinstance(a, Falsum):
        return True
    if isinstance(a, FuncApp):
        return a.func == b.func and _alpha(a.arg, b.arg, env_a, env_b, depth)
    if isinstance(a, BINDERS):
        if a.sort != b.sort:
            return False
        return _alpha(a.body, b.body, {**env_a, a.var: depth}, {**env_b, b.var: depth}, depth + 1)
    if isinstance(a, Equation):
        return (_alpha(a.left, b.left, env_a, env_b, depth)
                and _alpha(a.right, b.right, env_a, env_b, depth))
    if isinstance(a, Membership):
        return (_alpha(a.elem, b.elem, env_a, env_b, depth)
                and _alpha(a.container, b.container, env_a, env_b, depth))
    if isinstance(a, Apply):
        return (_alpha(a.fun, b.fun, env_a, env_b, depth)
                and _alpha(a.arg, b.arg, env_a, env_b, depth))
    return (_alpha(a.left, b.left, env_a, env_b, depth)
            and _alpha(a.right, b.right, env_a, env_b, depth))
