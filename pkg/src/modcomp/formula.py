"""Modal formulas in negation normal form.

Formulas are hash-consed: building the same tree twice returns the same
object, so equality is identity and hashing is cheap. Negation only ever
sits on variables; ``~``, ``->`` and ``<->`` exist in the surface syntax
and are eliminated by the parser.
"""

from __future__ import annotations

import re
from typing import Iterable

from .errors import FormulaSyntaxError

TOP = "top"
BOT = "bot"
VAR = "var"
NVAR = "nvar"
AND = "and"
OR = "or"
BOX = "box"
DIA = "dia"

_BINARY = (AND, OR)
_MODAL = (BOX, DIA)


class Formula:
    """An immutable, interned NNF formula node.

    Use the constructor functions (:func:`Var`, :func:`And`, ...) or
    :func:`parse` rather than instantiating this class directly.
    """

    __slots__ = ("kind", "name", "left", "right", "md", "_nodes", "_str",
                 "_neg", "_sub", "_vars", "__weakref__")

    def __init__(self, kind, name, left, right):
        self.kind = kind
        self.name = name
        self.left = left
        self.right = right
        if kind in _MODAL:
            self.md = left.md + 1
            self._nodes = left._nodes + 1
        elif kind in _BINARY:
            self.md = max(left.md, right.md)
            self._nodes = left._nodes + right._nodes + 1
        else:
            self.md = 0
            self._nodes = 1
        self._str = None
        self._neg = None
        self._sub = None
        self._vars = None

    @property
    def child(self):
        """Operand of a modal node."""
        return self.left

    def sort_key(self):
        return (self._nodes, str(self))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if self._str is None:
            self._str = _render(self)
        return self._str

    def __repr__(self):
        return f"Formula({str(self)!r})"

    def __reduce__(self):
        return (_rebuild, (self.kind, self.name, self.left, self.right))

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self


_table: dict = {}


def _make(kind, name=None, left=None, right=None):
    key = (kind, name, left, right)
    node = _table.get(key)
    if node is None:
        node = _table.setdefault(key, Formula(kind, name, left, right))
    return node


def _rebuild(kind, name, left, right):
    return _make(kind, name, left, right)


_IDENT = re.compile(r"[a-z][a-z0-9_]*\Z")


def Top():
    return _make(TOP)


def Bottom():
    return _make(BOT)


def Var(name):
    if not _IDENT.match(name) or name in ("true", "false"):
        raise ValueError(f"invalid variable name {name!r}")
    return _make(VAR, name)


def NegVar(name):
    return negate(Var(name))


def And(left, right):
    return _make(AND, None, left, right)


def Or(left, right):
    return _make(OR, None, left, right)


def Box(child):
    return _make(BOX, None, child)


def Diamond(child):
    return _make(DIA, None, child)


def implies(a, b):
    """NNF of a -> b."""
    return Or(negate(a), b)


def iff(a, b):
    """NNF of a <-> b."""
    return Or(And(a, b), And(negate(a), negate(b)))


def boxes(f, n):
    """``[]`` applied ``n`` times."""
    for _ in range(n):
        f = Box(f)
    return f


def diamonds(f, n):
    for _ in range(n):
        f = Diamond(f)
    return f


_DUAL = {TOP: BOT, BOT: TOP, VAR: NVAR, NVAR: VAR, AND: OR, OR: AND,
         BOX: DIA, DIA: BOX}


def negate(f: Formula) -> Formula:
    """Return the NNF of the negation of ``f``."""
    if f._neg is not None:
        return f._neg
    # explicit stack: formulas built by big_and can be deep
    stack = [f]
    while stack:
        g = stack[-1]
        if g._neg is not None:
            stack.pop()
            continue
        kind = g.kind
        if kind in (TOP, BOT, VAR, NVAR):
            neg = _make(_DUAL[kind], g.name)
        elif kind in _BINARY:
            if g.left._neg is None or g.right._neg is None:
                stack.extend(x for x in (g.left, g.right) if x._neg is None)
                continue
            neg = _make(_DUAL[kind], None, g.left._neg, g.right._neg)
        else:
            if g.left._neg is None:
                stack.append(g.left)
                continue
            neg = _make(_DUAL[kind], None, g.left._neg)
        g._neg = neg
        neg._neg = g
        stack.pop()
    return f._neg


def md(f: Formula) -> int:
    """Modal depth."""
    return f.md


def sub(f: Formula) -> frozenset:
    """The set of distinct subformulas of ``f`` (including ``f``)."""
    if f._sub is None:
        seen = set()
        stack = [f]
        while stack:
            g = stack.pop()
            if g in seen:
                continue
            seen.add(g)
            if g.left is not None:
                stack.append(g.left)
            if g.right is not None:
                stack.append(g.right)
        f._sub = frozenset(seen)
    return f._sub


def closure(f: Formula) -> frozenset:
    """Subformulas of ``f`` together with their negations."""
    s = sub(f)
    return s | {negate(g) for g in s}


def closure_at_depth(f: Formula, d: int) -> frozenset:
    return frozenset(g for g in closure(f) if g.md <= d)


def size(f: Formula) -> int:
    """Number of distinct subformulas."""
    return len(sub(f))


def variables(f: Formula) -> frozenset:
    """Propositional variables occurring in ``f``."""
    if f._vars is None:
        f._vars = frozenset(g.name for g in sub(f) if g.kind in (VAR, NVAR))
    return f._vars


def variables_of(fs: Iterable[Formula]) -> frozenset:
    out = frozenset()
    for f in fs:
        out |= variables(f)
    return out


def canonical(fs: Iterable[Formula]) -> list:
    """Distinct elements of ``fs`` in canonical order."""
    return sorted(set(fs), key=Formula.sort_key)


def big_and(fs: Iterable[Formula]) -> Formula:
    """Right-nested conjunction in canonical order; the empty conjunction is Top."""
    items = canonical(fs)
    if not items:
        return Top()
    out = items[-1]
    for g in reversed(items[:-1]):
        out = And(g, out)
    return out


def big_or(fs: Iterable[Formula]) -> Formula:
    """Right-nested disjunction in canonical order; the empty disjunction is Bottom."""
    items = canonical(fs)
    if not items:
        return Bottom()
    out = items[-1]
    for g in reversed(items[:-1]):
        out = Or(g, out)
    return out


def valuation_formula(true_vars, P) -> Formula:
    """Conjunction fixing exactly ``true_vars`` among ``P``."""
    lits = [Var(p) if p in true_vars else NegVar(p) for p in sorted(P)]
    return big_and(lits)


def known_complete_formula(logic, P) -> Formula | None:
    """A satisfiable formula complete for ``logic`` over exactly ``P``.

    Returns None for D and T when ``P`` is nonempty, where no satisfiable
    complete formula exists.
    """
    all_p = big_and(Var(p) for p in P)
    if logic.has_5:
        return And(all_p, Diamond(Box(all_p)))
    if logic.serial and not logic.has_4:
        return None if P else Top()
    if logic.serial:
        return And(all_p, Box(all_p))
    return And(all_p, Box(Bottom()))


# ---------------------------------------------------------------- printing

_PREC = {AND: 3, OR: 2}


def _prec(f):
    return _PREC.get(f.kind, 4)


def _render(f):
    kind = f.kind
    if kind == TOP:
        return "true"
    if kind == BOT:
        return "false"
    if kind == VAR:
        return f.name
    if kind == NVAR:
        return "~" + f.name
    if kind in _MODAL:
        op = "[]" if kind == BOX else "<>"
        inner = str(f.left)
        if _prec(f.left) < 4:
            inner = f"({inner})"
        return op + inner
    op = " & " if kind == AND else " | "
    p = _PREC[kind]
    left = str(f.left)
    if _prec(f.left) < p:
        left = f"({left})"
    right = str(f.right)
    # binary operators parse left-associatively
    if _prec(f.right) <= p:
        right = f"({right})"
    return left + op + right


# ----------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(<->)|(->)|(\[\])|(<>)|([~&|()])|([a-z][a-z0-9_]*))")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            j = pos
            while j < n and text[j].isspace():
                j += 1
            raise FormulaSyntaxError(f"unexpected character {text[j]!r}",
                                     _byte_offset(text, j))
        tok = m.group(m.lastindex)
        tokens.append((tok, m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("$", len(text)))
    return tokens


def _byte_offset(text, i):
    return len(text[:i].encode("utf-8"))


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def error(self, message):
        pos = self.tokens[self.i][1]
        raise FormulaSyntaxError(message, _byte_offset(self.text, pos))

    def take(self):
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok):
        if self.peek() != tok:
            if tok == ")":
                self.error("unbalanced parentheses: expected ')'")
            self.error(f"expected {tok!r}")
        self.take()

    def parse(self):
        if self.peek() == "$":
            self.error("empty input")
        f = self.equiv()
        if self.peek() != "$":
            if self.peek() == ")":
                self.error("unbalanced parentheses: unexpected ')'")
            self.error(f"unexpected token {self.peek()!r}")
        return f

    def equiv(self):
        f = self.implication()
        while self.peek() == "<->":
            self.take()
            f = iff(f, self.implication())
        return f

    def implication(self):
        f = self.disjunction()
        if self.peek() == "->":
            self.take()
            return implies(f, self.implication())
        return f

    def disjunction(self):
        f = self.conjunction()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self):
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        tok = self.peek()
        if tok == "~":
            self.take()
            return negate(self.unary())
        if tok == "[]":
            self.take()
            return Box(self.unary())
        if tok == "<>":
            self.take()
            return Diamond(self.unary())
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            f = self.equiv()
            self.expect(")")
            return f
        if tok == "true":
            self.take()
            return Top()
        if tok == "false":
            self.take()
            return Bottom()
        if tok == "$":
            self.error("unexpected end of input")
        if _IDENT.match(tok):
            self.take()
            return Var(tok)
        if tok == ")":
            self.error("unbalanced parentheses: unexpected ')'")
        self.error(f"unexpected token {tok!r}")


def parse(text: str) -> Formula:
    """Parse surface syntax into an NNF formula.

    Precedence, tightest first: ``~ [] <>``, ``&``, ``|``, ``->`` (right
    associative), ``<->``.
    """
    return _Parser(text).parse()
