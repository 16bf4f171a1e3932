"""Recursive-descent parser for formulas, object terms and sorts.

Precedence, loosest first: ``<->``, ``=>`` (right-assoc), ``|``, ``&``;
quantifier and description bodies extend as far right as possible.

Identifier classification, since the grammar alone cannot tell a variable
from a constant: a name bound by an enclosing binder, or spelled like a
variable (``x``, ``y2``, ``z'``), is a ``Var``; any other name is a
``Const``. ``name(t)`` with a non-variable head is a function-constant
application, unless a set of known ``functions`` is supplied and the name is
not among them, in which case it is ``Apply(Const name, t)``.
"""
from __future__ import annotations

import re

from .errors import LogicSyntaxError
from .syntax import (
    FALSUM, And, Apply, ArrowSort, BaseSort, Const, Description, Equation, Exists,
    Forall, FuncApp, Implies, Membership, Or, Pair, PowerSort, ProductSort, Var,
    freshen, iff, is_variable_name,
)

KEYWORDS = {"false", "forall", "exists", "the", "in"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op><->|=>|->|:=|[=&|*\[\](),:.{}])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:'|′)*)
""", re.VERBOSE)


def tokenize(text: str):
    """Return a list of ``(kind, value, position)``; kind is op, ident, kw or eof."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise LogicSyntaxError(pos, {"token"}, text)
        if m.lastgroup == "op":
            tokens.append(("op", m.group(), pos))
        elif m.lastgroup == "ident":
            word = m.group().replace("′", "'")
            tokens.append(("kw" if word in KEYWORDS else "ident", word, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class Parser:
    def __init__(self, text: str, functions=None):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.functions = None if functions is None else frozenset(functions)
        self.bound: list[str] = []
        self._furthest = (0, set())

    # token helpers

    def peek(self, offset=0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def at(self, value, offset=0):
        kind, v, _ = self.peek(offset)
        return kind in ("op", "kw") and v == value

    def fail(self, expected):
        pos = self.peek()[2]
        far_pos, far_exp = self._furthest
        if pos > far_pos:
            self._furthest = (pos, set(expected))
        elif pos == far_pos:
            far_exp.update(expected)
        raise LogicSyntaxError(pos, expected, self.text)

    def expect(self, value):
        if not self.at(value):
            self.fail({repr(value)})
        self.i += 1

    def ident(self):
        kind, v, _ = self.peek()
        if kind != "ident":
            self.fail({"identifier"})
        self.i += 1
        return v

    def finish(self):
        if self.peek()[0] != "eof":
            self.fail({"end of input"})

    # sorts

    def sort(self):
        if self.peek()[0] == "ident" and self.at("->", 1):
            dom = self.ident()
            self.i += 1
            return ArrowSort(dom, self.sort())
        left = self.sort_atom()
        while self.at("*"):
            self.i += 1
            left = ProductSort(left, self.sort_atom())
        return left

    def sort_atom(self):
        if self.at("["):
            self.i += 1
            inner = self.sort()
            self.expect("]")
            return PowerSort(inner)
        if self.at("("):
            self.i += 1
            if self.peek()[0] == "ident" and self.at("->", 1):
                dom = self.ident()
                self.i += 1
                cod = self.sort()
                self.expect(")")
                return ArrowSort(dom, cod)
            inner = self.sort()
            self.expect(")")
            return inner
        if self.peek()[0] == "ident":
            return BaseSort(self.ident())
        self.fail({"sort"})

    # formulas

    def formula(self):
        left = self.implication()
        while self.at("<->"):
            self.i += 1
            left = iff(left, self.implication())
        return left

    def implication(self):
        left = self.disjunction()
        if self.at("=>"):
            self.i += 1
            return Implies(left, self.implication())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.at("|"):
            self.i += 1
            left = Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.unary()
        while self.at("&"):
            self.i += 1
            left = And(left, self.unary())
        return left

    def binder(self):
        self.i += 1
        var = self.ident()
        self.expect(":")
        sort = self.sort()
        self.expect(".")
        self.bound.append(var)
        try:
            body = self.formula()
        finally:
            self.bound.pop()
        return var, sort, body

    def unary(self):
        if self.at("forall"):
            return Forall(*self.binder())
        if self.at("exists"):
            return Exists(*self.binder())
        if self.at("false"):
            self.i += 1
            return FALSUM
        if self.at("("):
            saved = self.i
            try:
                return self.atom()
            except LogicSyntaxError:
                self.i = saved
            self.i += 1
            inner = self.formula()
            self.expect(")")
            return inner
        return self.atom()

    def atom(self):
        left = self.obj()
        if self.at("="):
            self.i += 1
            return Equation(left, self.obj())
        if self.at("in"):
            self.i += 1
            return Membership(left, self.obj())
        if isinstance(left, Apply):
            # y(h) in formula position: h is a member of the set y
            return Membership(left.arg, left.fun)
        self.fail({"'='", "'in'"})

    # objects

    def obj(self):
        term = self.primary()
        while self.at("("):
            self.i += 1
            arg = self.obj()
            self.expect(")")
            term = Apply(term, arg)
        return term

    def name_term(self, name):
        if name in self.bound or is_variable_name(name):
            return Var(name)
        return Const(name)

    def primary(self):
        kind, v, _ = self.peek()
        if kind == "ident":
            self.i += 1
            if self.at("("):
                head = self.name_term(v)
                if isinstance(head, Const) and (self.functions is None or v in self.functions):
                    self.i += 1
                    arg = self.obj()
                    self.expect(")")
                    return FuncApp(v, arg)
                return head
            return self.name_term(v)
        if self.at("["):
            self.i += 1
            left = self.obj()
            self.expect(",")
            right = self.obj()
            self.expect("]")
            return Pair(left, right)
        if self.at("the"):
            return Description(*self.binder())
        if self.at("("):
            self.i += 1
            inner = self.obj()
            self.expect(")")
            return inner
        self.fail({"identifier", "'['", "'('", "'the'"})


def _run(text, functions, rule):
    p = Parser(text, functions)
    try:
        result = rule(p)
        p.finish()
    except LogicSyntaxError:
        pos, expected = p._furthest
        raise LogicSyntaxError(pos, expected, text) from None
    return result


def parse_formula(text: str, functions=None):
    return freshen(_run(text, functions, Parser.formula))


def parse_object(text: str, functions=None):
    return freshen(_run(text, functions, Parser.obj))


def parse_sort(text: str):
    return _run(text, None, Parser.sort)
