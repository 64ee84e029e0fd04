"""Deciding completeness for every supported logic, plus reductions."""

from __future__ import annotations

from .bisim import bisimilar, distinguishing_formula
from .cc import cc_decide
from .errors import InternalError, PreconditionError
from .flatfive import flat_complete
from .formula import (And, Formula, Or, Top, Var, big_and, boxes,
                      known_complete_formula, md, negate, variables)
from .kripke import PointedModel, check
from .logics import Logic
from .prover import consistent, find_model, satisfiable
from .verdict import Verdict, complete_verdict, incomplete_verdict


def _trivial_logic(logic: Logic) -> bool:
    """D and T: no satisfiable formula with variables is complete."""
    return logic.serial and not logic.has_4 and not logic.has_5


def _unravel_with_sink(m: PointedModel, depth: int, sink_val, reflexive: bool):
    """Unravel ``m`` to ``depth`` and hang a looping sink below the frontier.

    Truth of formulas of modal depth at most ``depth`` at the point is kept.
    """
    states, edges, val = [], [], {}

    def build(s, k):
        name = f"u{len(states)}"
        states.append(name)
        val[name] = m.valuation[s]
        if reflexive:
            edges.append((name, name))
        if k == depth:
            edges.append((name, "sink"))
        else:
            for t in sorted(m.successors(s)):
                edges.append((name, build(t, k + 1)))
        return name

    root = build(m.point, 0)
    states.append("sink")
    val["sink"] = sink_val
    edges.append(("sink", "sink"))
    return PointedModel(states, edges, val, root)


def _serial_witness(logic: Logic, f: Formula) -> Verdict:
    """Two models of ``f`` that differ only beyond its modal depth."""
    P = variables(f)
    m = find_model(logic, [f])
    d = md(f)
    m1 = _unravel_with_sink(m, d, P, logic.has_T)
    m2 = _unravel_with_sink(m, d, frozenset(), logic.has_T)
    if not (m1.is_model_for(logic) and m2.is_model_for(logic)):
        raise InternalError("unravelled witnesses violate the frame conditions")
    if not (check(m1, f) and check(m2, f)):
        raise InternalError("unravelling changed the truth of the formula")
    psi = distinguishing_formula(m1, m2, P)
    if psi is None:
        raise InternalError("unravelled witnesses are bisimilar")
    if not (consistent(logic, [f, psi]) and consistent(logic, [f, negate(psi)])):
        raise InternalError(f"witness {psi} failed verification")
    return incomplete_verdict("triviality", psi, (m1, m2))


def complete(logic: Logic, f: Formula, witnesses=True) -> Verdict:
    """Decide whether ``f`` is complete for ``logic``."""
    if not satisfiable(logic, f):
        return complete_verdict("unsat")
    if logic.has_5:
        return flat_complete(logic, f)
    if _trivial_logic(logic):
        if not variables(f):
            return complete_verdict("triviality")
        return _serial_witness(logic, f)
    if logic.serial and not variables(f):
        return complete_verdict("triviality")
    return cc_decide(logic, f, witnesses=witnesses)


def satisfiable_and_complete(logic: Logic, f: Formula) -> bool:
    return satisfiable(logic, f) and complete(logic, f, witnesses=False).complete


def complete_wrt_model(logic: Logic, m: PointedModel, f: Formula) -> Verdict:
    """Completeness of ``f`` given a model of it; the model becomes a witness."""
    if not m.is_model_for(logic):
        raise PreconditionError(f"the model is not based on a {logic} frame")
    if not check(m, f):
        raise PreconditionError("the model does not satisfy the formula")
    v = complete(logic, f)
    if v.complete:
        return v
    P = variables(f)
    if m.satisfies(v.psi):
        other = find_model(logic, [f, negate(v.psi)])
        pair = (m, other)
    else:
        other = find_model(logic, [f, v.psi])
        pair = (other, m)
    if bisimilar(pair[0], pair[1], P):
        raise InternalError("witness models are bisimilar")
    return incomplete_verdict(v.provenance, v.psi, pair)


def _single_state(P, loop: bool) -> PointedModel:
    return PointedModel(["a"], [("a", "a")] if loop else [], {"a": P}, "a")


def _reduction_model(logic: Logic, P) -> PointedModel:
    return _single_state(frozenset(P), logic.serial or logic.has_5)


def hardness_reduction(logic: Logic, f: Formula) -> Formula:
    """A formula that is complete for ``logic`` exactly when ``f`` is provable."""
    if _trivial_logic(logic):
        raise PreconditionError(f"completeness is trivial for {logic}")
    P = variables(f)
    if not P:
        raise PreconditionError("the formula must contain a variable")
    target = known_complete_formula(logic, P)
    m = _reduction_model(logic, P)
    if not check(m, target):
        raise InternalError(f"reduction model does not satisfy {target}")
    if not check(m, f):
        return big_and(Var(p) for p in sorted(P))
    return Or(negate(f), target)


def depth_target(logic: Logic, P, d: int) -> Formula:
    """The formula the up-to-depth reduction aims at."""
    all_p = big_and(Var(p) for p in sorted(P))
    if _trivial_logic(logic):
        return big_and(boxes(all_p, i) for i in range(d + 1))
    return known_complete_formula(logic, P)


def reduction_up_to_depth(logic: Logic, f: Formula, d: int | None = None) -> Formula:
    """A formula complete up to its depth exactly when ``f`` is provable.

    The contract is only checked for K; for other logics the formula is
    produced for inspection.
    """
    P = variables(f)
    if not P:
        raise PreconditionError("the formula must contain a variable")
    if d is None:
        d = md(f)
    target = depth_target(logic, P, d)
    m = _reduction_model(logic, P)
    if not check(m, f):
        return And(big_and(Var(p) for p in sorted(P)), boxes(Top(), 1))
    return Or(negate(f), target)
