"""Canonical flat models for logics with axiom 5.

Up to bisimulation modulo P, a pointed model of a logic with axiom 5 is
determined by three valuation sets: the root's valuation, the valuations
occurring in the single reachable cluster, and the valuations of the
root's direct successors. A :class:`FlatShape` stores exactly these, so
distinct shapes are never bisimilar and enumerating shapes enumerates the
satisfying models of a formula up to bisimulation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import InternalError, PreconditionError, ResourceLimitError
from .formula import (AND, BOT, DIA, NVAR, OR, TOP, VAR, Diamond, Formula, Var,
                      negate, sub, valuation_formula, variables_of)
from .kripke import PointedModel, restrict_to_reachable
from .logics import Logic, is_frame_for
from .verdict import Verdict, complete_verdict, incomplete_verdict

#: default upper bound on the number of shapes a single call may enumerate
MAX_SHAPES = 200_000


@dataclass(frozen=True)
class FlatShape:
    root: frozenset
    cluster: frozenset
    successors: frozenset

    def __str__(self):
        def show(v):
            return "{" + ",".join(sorted(v)) + "}"
        cl = " ".join(show(v) for v in _ordered(self.cluster))
        su = " ".join(show(v) for v in _ordered(self.successors))
        return f"root={show(self.root)} cluster=[{cl}] succ=[{su}]"


def make_shape(root, cluster, successors) -> FlatShape:
    return FlatShape(frozenset(root), frozenset(frozenset(v) for v in cluster),
                     frozenset(frozenset(v) for v in successors))


def _valkey(v):
    return (len(v), sorted(v))


def _ordered(vals):
    return sorted(vals, key=_valkey)


def _require_5(logic):
    if not logic.has_5:
        raise PreconditionError(f"{logic} does not have axiom 5")


def shape_violations(sh: FlatShape, logic: Logic) -> list:
    out = []
    if not sh.successors <= sh.cluster:
        out.append("successor valuations must lie in the cluster")
    if bool(sh.successors) != bool(sh.cluster):
        out.append("successors are empty exactly when the cluster is empty")
    if logic.serial and not sh.cluster:
        out.append("serial logics need a nonempty cluster")
    if logic.has_T and (sh.root not in sh.cluster or sh.successors != sh.cluster):
        out.append("reflexive logics put the root inside the cluster")
    if logic.has_4 and sh.successors != sh.cluster:
        out.append("transitive logics make the root see the whole cluster")
    return out


def realize(sh: FlatShape, logic: Logic) -> PointedModel:
    """Build the flat pointed model a shape stands for."""
    problems = shape_violations(sh, logic)
    if problems:
        raise PreconditionError(f"shape {sh} is invalid for {logic}: " + "; ".join(problems))
    cluster = _ordered(sh.cluster)
    names = {v: f"c{i}" for i, v in enumerate(cluster)}
    states = [names[v] for v in cluster]
    edges = [(a, b) for a in states for b in states]
    val = {names[v]: v for v in cluster}
    if logic.has_T:
        point = names[sh.root]
    else:
        point = "r"
        states.insert(0, point)
        val[point] = sh.root
        edges += [(point, names[v]) for v in _ordered(sh.successors)]
    m = PointedModel(states, edges, val, point)
    if not is_frame_for(m.states, m.edges, logic):
        raise InternalError(f"realized shape {sh} is not a {logic} frame")
    return m


def shape_of(m: PointedModel, P, logic: Logic) -> FlatShape:
    """Read the canonical shape off a model of a logic with axiom 5."""
    _require_5(logic)
    P = frozenset(P)
    m = restrict_to_reachable(m)
    has_pred = {b for _, b in m.edges}
    cluster = {m.val(s, P) for s in m.states if s in has_pred}
    succ = {m.val(s, P) for s in m.successors(m.point)}
    return make_shape(m.val(m.point, P), cluster, succ)


def all_valuations(P) -> list:
    P = sorted(P)
    out = []
    for r in range(len(P) + 1):
        out.extend(frozenset(c) for c in combinations(P, r))
    return out


def _count(logic, n_vals, max_cluster):
    top = n_vals if max_cluster is None else min(n_vals, max_cluster)
    total = 0
    for i in range(top + 1):
        if i == 0:
            total += 0 if logic.serial else n_vals
        elif logic.has_T:
            total += comb(n_vals, i) * i
        elif logic.has_4:
            total += comb(n_vals, i) * n_vals
        else:
            total += comb(n_vals, i) * (2 ** i - 1) * n_vals
    return total


def iter_shapes(logic: Logic, P, max_cluster=None, max_shapes=MAX_SHAPES):
    """All shapes over ``P`` valid for ``logic``, smallest clusters first."""
    _require_5(logic)
    vals = all_valuations(P)
    total = _count(logic, len(vals), max_cluster)
    if max_shapes is not None and total > max_shapes:
        raise ResourceLimitError(
            "flatfive", f"{total} shapes over {len(P)} variables exceed the cap of {max_shapes}")
    top = len(vals) if max_cluster is None else min(len(vals), max_cluster)
    for i in range(top + 1):
        if i == 0:
            if not logic.serial:
                for r in vals:
                    yield FlatShape(r, frozenset(), frozenset())
            continue
        for cl in combinations(vals, i):
            C = frozenset(cl)
            if logic.has_T:
                for r in cl:
                    yield FlatShape(r, C, C)
                continue
            if logic.has_4:
                succ_options = [C]
            else:
                succ_options = [frozenset(s) for k in range(i, 0, -1)
                                for s in combinations(cl, k)]
            for S in succ_options:
                for r in vals:
                    yield FlatShape(r, C, S)


def _cluster_truth(formulas, C, memo):
    """For every subformula, the cluster valuations where it holds."""
    for g in sorted({h for f in formulas for h in sub(f)}, key=Formula.sort_key):
        if g in memo:
            continue
        kind = g.kind
        if kind == TOP:
            r = C
        elif kind == BOT:
            r = frozenset()
        elif kind == VAR:
            r = frozenset(v for v in C if g.name in v)
        elif kind == NVAR:
            r = frozenset(v for v in C if g.name not in v)
        elif kind == AND:
            r = memo[g.left] & memo[g.right]
        elif kind == OR:
            r = memo[g.left] | memo[g.right]
        elif kind == DIA:
            r = C if memo[g.left] else frozenset()
        else:
            r = C if memo[g.left] == C else frozenset()
        memo[g] = r
    return memo


def _root_truth(g, sh, cmemo, rmemo):
    hit = rmemo.get(g)
    if hit is not None:
        return hit
    kind = g.kind
    if kind == TOP:
        r = True
    elif kind == BOT:
        r = False
    elif kind == VAR:
        r = g.name in sh.root
    elif kind == NVAR:
        r = g.name not in sh.root
    elif kind == AND:
        r = _root_truth(g.left, sh, cmemo, rmemo) and _root_truth(g.right, sh, cmemo, rmemo)
    elif kind == OR:
        r = _root_truth(g.left, sh, cmemo, rmemo) or _root_truth(g.right, sh, cmemo, rmemo)
    elif kind == DIA:
        r = bool(sh.successors & cmemo[g.left])
    else:
        r = sh.successors <= cmemo[g.left]
    rmemo[g] = r
    return r


def shape_satisfies(sh: FlatShape, logic: Logic, formulas) -> bool:
    """Model-check formulas at the root of a shape without building the model."""
    formulas = list(formulas)
    cmemo = _cluster_truth(formulas, sh.cluster, {})
    if logic.has_T:
        return all(sh.root in cmemo[f] for f in formulas)
    rmemo = {}
    return all(_root_truth(f, sh, cmemo, rmemo) for f in formulas)


def _diamond_count(formulas):
    return len({g for f in formulas for g in sub(f) if g.kind == DIA})


def sat_shapes(logic: Logic, f: Formula, max_shapes=MAX_SHAPES) -> list:
    """Every shape over vars(f) whose realization satisfies ``f``."""
    P = variables_of([f])
    return [sh for sh in iter_shapes(logic, P, max_shapes=max_shapes)
            if shape_satisfies(sh, logic, [f])]


def find_shapes(logic: Logic, formulas, limit, extra_diamonds=0, max_shapes=MAX_SHAPES):
    """Up to ``limit`` satisfying shapes, searching only small clusters.

    A satisfying flat model can be filtered down to one witness per diamond
    subformula at the root and one per diamond subformula in the cluster, so
    clusters of ``2k + 1`` valuations suffice, where ``k`` counts the diamond
    subformulas (plus ``extra_diamonds`` for formulas a caller will conjoin
    later).
    """
    formulas = list(formulas)
    P = variables_of(formulas)
    bound = 2 * (_diamond_count(formulas) + extra_diamonds) + 1
    found = []
    for sh in iter_shapes(logic, P, max_cluster=bound, max_shapes=max_shapes):
        if shape_satisfies(sh, logic, formulas):
            found.append(sh)
            if len(found) >= limit:
                break
    return found


def find_shape(logic: Logic, formulas) -> FlatShape | None:
    _require_5(logic)
    hit = find_shapes(logic, formulas, 1)
    return hit[0] if hit else None


def _state_formula(v, P):
    return valuation_formula(v, P)


def distinguishing_formula(sh1: FlatShape, sh2: FlatShape, P):
    """A formula over P telling two distinct shapes apart, or None if equal."""
    P = frozenset(P)
    diff = sh1.root ^ sh2.root
    if diff:
        return Var(min(diff))
    diff = sh1.successors ^ sh2.successors
    if diff:
        return Diamond(_state_formula(_ordered(diff)[0], P))
    diff = sh1.cluster ^ sh2.cluster
    if diff:
        return Diamond(Diamond(_state_formula(_ordered(diff)[0], P)))
    return None


def flat_complete(logic: Logic, f: Formula, max_shapes=MAX_SHAPES) -> Verdict:
    """Decide completeness of ``f`` for a logic with axiom 5."""
    _require_5(logic)
    P = variables_of([f])
    # a distinguishing formula adds at most two diamonds
    shapes = find_shapes(logic, [f], 2, extra_diamonds=2, max_shapes=max_shapes)
    if not shapes:
        return complete_verdict("unsat")
    if len(shapes) == 1:
        return complete_verdict("flat")
    sh1, sh2 = shapes
    psi = distinguishing_formula(sh1, sh2, P)
    if not (shape_satisfies(sh1, logic, [f, psi]) ^ shape_satisfies(sh2, logic, [f, psi])):
        raise InternalError(f"{psi} does not separate {sh1} and {sh2}")
    if find_shape(logic, [f, psi]) is None or find_shape(logic, [f, negate(psi)]) is None:
        raise InternalError(f"distinguishing formula {psi} failed verification")
    if not shape_satisfies(sh1, logic, [psi]):
        sh1, sh2 = sh2, sh1
    return incomplete_verdict("flat", psi, (realize(sh1, logic), realize(sh2, logic)))
