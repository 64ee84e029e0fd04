"""Completeness checking by search over maximal states (K, K4, D4, S4).

A formula ``f`` is complete exactly when it has a single maximal state
``a0`` over its closure and, from ``a0``, every reachable maximal state
proves the diamond of every legitimate child state. The search below is a
deterministic breadth-first traversal of that reachability graph; an
accepting state (a child whose diamond is not provable) certifies
incompleteness and yields a distinguishing formula along the path.

For K, states carry a depth budget: the root works over the whole closure
with budget ``md(f)``, children of a budget ``d`` parent live over the
closure formulas of depth at most ``d - 1``, and children of a budget 0
parent only fix the variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import InternalError, PreconditionError, ResourceLimitError
from .formula import (AND, BOT, BOX, DIA, NVAR, OR, TOP, VAR, Box, Diamond,
                      Formula, NegVar, Var, And, big_and, closure,
                      closure_at_depth, md, negate, size, variables)
from .logics import Logic
from .prover import consistent, find_model
from .verdict import Verdict, complete_verdict, incomplete_verdict

#: default cap on the number of closure members
MAX_CLOSURE = 24

_DEFAULT = object()


@dataclass(frozen=True)
class MaximalState:
    """A maximal consistent subset of a closure.

    ``budget`` is the remaining modal depth for K and None for the
    transitive logics.
    """

    members: frozenset
    budget: int | None = None

    @property
    def boxes(self) -> frozenset:
        return frozenset(g for g in self.members if g.kind == BOX)

    @property
    def diamonds(self) -> frozenset:
        return frozenset(g for g in self.members if g.kind == DIA)

    def atoms(self) -> frozenset:
        """Literal and modal members; they determine the rest."""
        return frozenset(g for g in self.members if g.kind in (VAR, NVAR, BOX, DIA))

    def theory(self) -> Formula:
        return big_and(self.atoms())

    def __contains__(self, g):
        return g in self.members

    def __str__(self):
        body = ", ".join(str(g) for g in sorted(self.atoms(), key=Formula.sort_key))
        tag = "" if self.budget is None else f"@{self.budget}"
        return "{" + body + "}" + tag


def _check_logic(logic):
    if logic.has_5 or (logic.serial and not logic.has_4):
        raise PreconditionError(f"the maximal-state search does not handle {logic}")


def _universe(f, budget):
    if budget is None:
        return closure(f)
    if budget < 0:
        return frozenset(g for p in variables(f) for g in (Var(p), NegVar(p)))
    return closure_at_depth(f, budget)


def _assignments(universe):
    """Yield truth maps over ``universe`` that are boolean-coherent."""
    order = sorted(universe, key=Formula.sort_key)
    free = [g for g in order if g.kind in (VAR, BOX)]
    derived = [g for g in order if g.kind in (TOP, BOT, NVAR, DIA)]
    compound = [g for g in order if g.kind in (AND, OR)]
    for choice in product((True, False), repeat=len(free)):
        truth = dict(zip(free, choice))
        for g in derived:
            truth[g] = g.kind == TOP or (g.kind != BOT and not truth[negate(g)])
        for g in compound:
            if g.kind == AND:
                truth[g] = truth[g.left] and truth[g.right]
            else:
                truth[g] = truth[g.left] or truth[g.right]
        yield truth


def _states_over(logic, universe, must_contain, budget):
    must_contain = frozenset(must_contain)
    if not must_contain <= universe:
        return
    for truth in _assignments(universe):
        members = frozenset(g for g, v in truth.items() if v)
        if not must_contain <= members:
            continue
        if logic.has_T and any(g.left not in members for g in members if g.kind == BOX):
            continue
        st = MaximalState(members, budget)
        if consistent(logic, st.atoms()):
            yield st


def maximal_states(logic: Logic, f: Formula, must_contain=(), depth_budget=None):
    """Consistent maximal states over the closure of ``f``.

    For K pass ``depth_budget`` to restrict to closure formulas of at most
    that modal depth; the enumeration order is deterministic.
    """
    return _states_over(logic, _universe(f, depth_budget), must_contain, depth_budget)


def candidate_children(logic: Logic, parent: MaximalState, f: Formula):
    """Maximal states that may sit below ``parent`` in a view."""
    need = set()
    for g in parent.boxes:
        need.add(g.left)
        if logic.has_4:
            need.add(g)
    budget = None if logic.has_4 else parent.budget - 1
    universe = _universe(f, budget)
    if not need <= universe:
        # a box whose content lies outside the child universe cannot occur
        raise InternalError(f"box contents of {parent} fall outside the child closure")
    return _states_over(logic, universe, need, budget)


def diamond_provable(logic: Logic, a: MaximalState, c: MaximalState) -> bool:
    """Whether th(a) -> <>th(c) is a theorem of ``logic``."""
    return not consistent(logic, a.atoms() | {Box(negate(c.theory()))})


@dataclass
class SearchResult:
    """Outcome of the breadth-first search, kept for witness extraction."""

    initial: list
    path: list = field(default_factory=list)
    child: MaximalState | None = None
    layers: int = 0
    explored: int = 0

    @property
    def accepted(self) -> bool:
        return len(self.initial) >= 2 or self.child is not None


def search(logic: Logic, f: Formula, max_steps=_DEFAULT) -> SearchResult:
    """Run the search; ``max_steps=None`` removes the layer bound."""
    _check_logic(logic)
    n = len(closure(f))
    if n > MAX_CLOSURE:
        raise ResourceLimitError("cc", f"closure has {n} members, cap is {MAX_CLOSURE}")
    if max_steps is _DEFAULT:
        max_steps = size(f) + 2
    budget = None if logic.has_4 else md(f)
    initial = []
    for st in maximal_states(logic, f, {f}, budget):
        initial.append(st)
        if len(initial) == 2:
            break
    res = SearchResult(initial)
    if len(initial) != 1:
        return res
    root = initial[0]
    parent = {root: None}
    layer = [root]
    while layer and (max_steps is None or res.layers < max_steps):
        res.layers += 1
        nxt = []
        for a in layer:
            for c in candidate_children(logic, a, f):
                res.explored += 1
                if not diamond_provable(logic, a, c):
                    path = []
                    x = a
                    while x is not None:
                        path.append(x)
                        x = parent[x]
                    res.path = path[::-1]
                    res.child = c
                    return res
                if logic.has_4 and not (a.boxes <= c.boxes and c.diamonds <= a.diamonds):
                    raise InternalError(f"monotonicity fails on {a} -> {c}")
                if c not in parent:
                    parent[c] = a
                    nxt.append(c)
        layer = nxt
    return res


def incompleteness_witness(logic: Logic, f: Formula, trace: SearchResult) -> Formula:
    """A formula psi with both f & psi and f & ~psi consistent."""
    if len(trace.initial) >= 2:
        a, b = trace.initial[:2]
        psi = min(a.members - b.members, key=Formula.sort_key)
    elif trace.child is not None:
        psi = Diamond(trace.child.theory())
        for x in reversed(trace.path[1:]):
            psi = Diamond(And(x.theory(), psi))
    else:
        raise PreconditionError("the search did not accept")
    if not (consistent(logic, [f, psi]) and consistent(logic, [f, negate(psi)])):
        raise InternalError(f"witness {psi} failed verification for {f}")
    return psi


def cc_decide(logic: Logic, f: Formula, max_steps=_DEFAULT, witnesses=True) -> Verdict:
    """Decide completeness of ``f`` for K, K4, D4 or S4."""
    res = search(logic, f, max_steps)
    if not res.initial:
        return complete_verdict("unsat")
    if not res.accepted:
        return complete_verdict("cc")
    psi = incompleteness_witness(logic, f, res)
    models = None
    if witnesses:
        m1 = find_model(logic, [f, psi])
        m2 = find_model(logic, [f, negate(psi)])
        if m1 is not None and m2 is not None:
            models = (m1, m2)
    return incomplete_verdict("cc", psi, models)
