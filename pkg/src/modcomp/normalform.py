"""Normal forms for K.

A normal form of depth 0 fixes a valuation over P. A normal form of depth
``d + 1`` is a valuation together with a set S of depth-``d`` forms and
stands for ``val & /\\ <>s & [] \\/ S``. Every K-formula of modal depth d
over P is equivalent to a disjunction of depth-d forms, and distinct
forms of the same depth exclude each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import ResourceLimitError
from .formula import (AND, BOT, DIA, NVAR, OR, TOP, VAR, And, Bottom, Box,
                      Diamond, Formula, big_and, big_or, boxes, md,
                      valuation_formula, variables)
from .kripke import PointedModel
from .logics import K

#: default cap on |F_P^d|
MAX_FORMS = 4096


def _valkey(v):
    return (len(v), sorted(v))


@dataclass(frozen=True)
class NormalForm:
    valuation: frozenset
    children: frozenset = frozenset()
    depth: int = 0

    def __post_init__(self):
        if self.depth == 0 and self.children:
            raise ValueError("a depth-0 form has no children")
        if any(c.depth != self.depth - 1 for c in self.children):
            raise ValueError("children must have depth one less than their parent")

    def sort_key(self):
        return (self.depth, _valkey(self.valuation),
                len(self.children), sorted(c.sort_key() for c in self.children))

    def formula(self, P) -> Formula:
        """The formula this form stands for, over the variable set ``P``."""
        return _form_formula(self, frozenset(P))

    def ordered_children(self):
        return sorted(self.children, key=NormalForm.sort_key)

    def __str__(self):
        val = "{" + ",".join(sorted(self.valuation)) + "}"
        if self.depth == 0:
            return val
        return val + "[" + " ".join(str(c) for c in self.ordered_children()) + "]"


@lru_cache(maxsize=None)
def _form_formula(nf, P):
    base = valuation_formula(nf.valuation, P)
    if nf.depth == 0:
        return base
    kids = [_form_formula(c, P) for c in nf.ordered_children()]
    parts = [base] + [Diamond(k) for k in kids] + [Box(big_or(kids))]
    return big_and(parts)


def _valuations(P):
    P = sorted(P)
    return [frozenset(c) for r in range(len(P) + 1) for c in combinations(P, r)]


def count_forms(n_vars: int, d: int) -> int:
    """|F_P^d| for |P| = n_vars, by the recurrence |F^{d+1}| = |F^0| * 2^|F^d|."""
    base = 2 ** n_vars
    n = base
    for _ in range(d):
        if n > 64:
            return float("inf")
        n = base * 2 ** n
    return n


def _check_cap(P, d, max_forms):
    n = count_forms(len(P), d)
    if max_forms is not None and n > max_forms:
        shown = "astronomically many" if n == float("inf") else str(n)
        raise ResourceLimitError(
            "normalform", f"{shown} normal forms for |P|={len(P)}, d={d}; cap is {max_forms}")


def _subsets(items):
    for r in range(len(items) + 1):
        yield from combinations(items, r)


def enumerate_forms(P, d: int, max_forms=MAX_FORMS) -> list:
    """All members of F_P^d in canonical order."""
    if d < 0:
        raise ValueError("depth must be nonnegative")
    P = frozenset(P)
    _check_cap(P, d, max_forms)
    return list(_forms(P, d))


@lru_cache(maxsize=None)
def _forms(P, d):
    vals = _valuations(P)
    if d == 0:
        return tuple(NormalForm(v) for v in vals)
    lower = _forms(P, d - 1)
    out = [NormalForm(v, frozenset(S), d) for v in vals for S in _subsets(lower)]
    out.sort(key=NormalForm.sort_key)
    return tuple(out)


def holds(f: Formula, nf: NormalForm) -> bool:
    """Truth of ``f`` at the root of the tree ``nf`` describes.

    Depth-0 nodes of the tree are dead ends.
    """
    memo = {}

    def ev(g, node):
        key = (g, node)
        hit = memo.get(key)
        if hit is not None:
            return hit
        kind = g.kind
        if kind == TOP:
            r = True
        elif kind == BOT:
            r = False
        elif kind == VAR:
            r = g.name in node.valuation
        elif kind == NVAR:
            r = g.name not in node.valuation
        elif kind == AND:
            r = ev(g.left, node) and ev(g.right, node)
        elif kind == OR:
            r = ev(g.left, node) or ev(g.right, node)
        elif kind == DIA:
            r = any(ev(g.left, c) for c in node.children)
        else:
            r = all(ev(g.left, c) for c in node.children)
        memo[key] = r
        return r

    return ev(f, nf)


def tree_model(nf: NormalForm) -> PointedModel:
    """The canonical tree a form describes, as a pointed model."""
    states, edges, val = [], [], {}

    def build(node):
        name = f"n{len(states)}"
        states.append(name)
        val[name] = node.valuation
        for c in node.ordered_children():
            edges.append((name, build(c)))
        return name

    root = build(nf)
    return PointedModel(states, edges, val, root)


def form_of(m: PointedModel, P, d: int, state=None) -> NormalForm:
    """The depth-``d`` form satisfied at ``state`` (default: the point)."""
    P = frozenset(P)
    memo = {}

    def go(s, k):
        key = (s, k)
        if key not in memo:
            v = m.val(s, P)
            if k == 0:
                memo[key] = NormalForm(v)
            else:
                memo[key] = NormalForm(v, frozenset(go(t, k - 1) for t in m.successors(s)), k)
        return memo[key]

    return go(m.point if state is None else state, d)


def normal_forms_of(f: Formula, max_forms=MAX_FORMS) -> list:
    """The forms of depth md(f) over vars(f) whose disjunction is equivalent to ``f``."""
    return [nf for nf in enumerate_forms(variables(f), md(f), max_forms) if holds(f, nf)]


def grounded(nf: NormalForm) -> bool:
    """Every branch of the tree ends in an empty child set above depth 0."""
    if nf.depth == 0:
        return False
    return all(grounded(c) for c in nf.children)


def complete_by_forms(f: Formula, max_forms=MAX_FORMS) -> bool:
    """K-completeness via normal forms: unsatisfiable, or one grounded form."""
    forms = normal_forms_of(f, max_forms)
    return not forms or (len(forms) == 1 and grounded(forms[0]))


def up_to_depth_by_forms(f: Formula, max_forms=MAX_FORMS) -> bool:
    return len(normal_forms_of(f, max_forms)) <= 1


def up_to_depth_by_cc(f: Formula) -> bool:
    from .cc import cc_decide
    capped = And(f, boxes(Bottom(), md(f) + 1))
    return cc_decide(K, capped, witnesses=False).complete


def complete_up_to_depth(f: Formula, method="auto", max_forms=MAX_FORMS) -> bool:
    """Whether ``f`` decides every formula over vars(f) of depth at most md(f) in K.

    ``method`` is "forms", "cc", or "auto" (forms when within the cap).
    """
    if method == "forms":
        return up_to_depth_by_forms(f, max_forms)
    if method == "cc":
        return up_to_depth_by_cc(f)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    try:
        return up_to_depth_by_forms(f, max_forms)
    except ResourceLimitError:
        return up_to_depth_by_cc(f)
