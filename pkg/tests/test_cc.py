import pytest

from modcomp.bisim import bisimilar
from modcomp.cc import (MAX_CLOSURE, candidate_children, cc_decide, diamond_provable,
                        incompleteness_witness, maximal_states, search)
from modcomp.errors import PreconditionError, ResourceLimitError
from modcomp.formula import Var, big_and, closure, md, negate, parse, size, variables
from modcomp.kripke import check
from modcomp.logics import D, D4, K, K4, S4, S5, T
from modcomp.oracle import brute_incomplete
from modcomp.prover import consistent

import suite


def states(logic, text, budget="md"):
    f = parse(text)
    if budget == "md":
        budget = None if logic.has_4 else md(f)
    return f, list(maximal_states(logic, f, {f}, budget))


def test_maximal_states_examples():
    f, sts = states(K, "p & []false")
    assert len(sts) == 1
    assert {parse("p"), parse("[]false"), f} <= sts[0].members
    assert len(states(K, "true")[1]) == 1
    f, sts = states(K, "<>p")
    assert len(sts) == 2
    assert {parse("p") in st for st in sts} == {True, False}


def test_maximal_states_are_maximal_and_coherent():
    f = parse("<>p & [](p | []~p)")
    for st in maximal_states(S4, f):
        for g in st.members:
            assert negate(g) not in st.members
        for g in closure(f):
            assert (g in st) != (negate(g) in st)
            if g.kind == "box" and g in st:
                assert g.left in st


def test_enumeration_is_deterministic():
    f = parse("<>p & <>~p | []p")
    a = [st.members for st in maximal_states(K4, f)]
    b = [st.members for st in maximal_states(K4, f)]
    assert a == b


def test_no_children_under_box_false():
    f, (root,) = states(K, "p & []false")
    assert list(candidate_children(K, root, f)) == []


def test_children_of_a_depth_zero_parent_are_literal_states():
    f, (root,) = states(K, "true")
    kids = list(candidate_children(K, root, f))
    assert len(kids) == 1 and kids[0].members == frozenset()
    assert not diamond_provable(K, root, kids[0])
    f, (root,) = states(K, "p")
    kids = list(candidate_children(K, root, f))
    assert sorted(str(k) for k in kids) == ["{p}@-1", "{~p}@-1"]


def test_transitive_children_inherit_boxes():
    f = parse("p & []p & <>q")
    for root in maximal_states(S4, f, {f}):
        for c in candidate_children(S4, root, f):
            assert parse("p") in c and parse("[]p") in c


@pytest.mark.parametrize("logic, text, complete", [
    (K, "p & []false", True),
    (K4, "p & []false", True),
    (K, "true", False),
    (K4, "true", False),
    (S4, "p & []p", True),
    (D4, "p & []p", True),
    (K, "p & <>p & []p", False),
    (K, "false", True),
    (K, "p & <>(p & []false) & [](p & []false)", True),
])
def test_cc_decide_examples(logic, text, complete):
    assert cc_decide(logic, parse(text)).complete is complete


@pytest.mark.parametrize("logic, text, psi", [
    (K, "true", "<>true"),
    (K, "p", "<>p"),
])
def test_witness_examples(logic, text, psi):
    assert cc_decide(logic, parse(text)).psi is parse(psi)


def test_witness_at_depth_two():
    f = parse("p & <>p & []p")
    v = cc_decide(K, f)
    assert md(v.psi) == 2
    m1, m2 = v.witnesses
    assert check(m1, f) and check(m2, f)
    assert check(m1, v.psi) and not check(m2, v.psi)
    assert not bisimilar(m1, m2, {"p"})


def test_two_initial_states_give_a_closure_formula():
    f = parse("<>p")
    res = search(K, f)
    assert len(res.initial) == 2
    psi = incompleteness_witness(K, f, res)
    assert psi in res.initial[0].members


def test_preconditions():
    for logic in (D, T, S5):
        with pytest.raises(PreconditionError):
            cc_decide(logic, parse("p"))
    res = search(K, parse("p & []false"))
    with pytest.raises(PreconditionError):
        incompleteness_witness(K, parse("p & []false"), res)


def test_closure_cap():
    f = big_and(Var(f"v{i}") for i in range(MAX_CLOSURE))
    with pytest.raises(ResourceLimitError) as err:
        cc_decide(K, f)
    assert err.value.module == "cc"


@pytest.mark.parametrize("logic", suite.CC_LOGICS)
def test_bounded_and_unbounded_search_agree(logic):
    for f in suite.suite():
        bounded = search(logic, f)
        free = search(logic, f, max_steps=None)
        assert bounded.accepted == free.accepted, str(f)
        if free.child is not None:
            assert len(free.path) <= size(f) + 2


@pytest.mark.parametrize("logic", suite.CC_LOGICS)
def test_every_incomplete_verdict_is_certified(logic):
    for f in suite.suite():
        v = cc_decide(logic, f)
        if v.complete:
            continue
        assert variables(v.psi) <= variables(f)
        assert consistent(logic, [f, v.psi]) and consistent(logic, [f, negate(v.psi)])
        m1, m2 = v.witnesses
        assert m1.is_model_for(logic) and m2.is_model_for(logic)
        assert not bisimilar(m1, m2, variables(f))


@pytest.mark.parametrize("logic", suite.CC_LOGICS)
def test_complete_verdicts_have_no_brute_force_witness(logic):
    for f in suite.suite():
        if cc_decide(logic, f, witnesses=False).complete:
            assert brute_incomplete(logic, f, 3) is None, str(f)


def test_richer_formulas_against_brute_force():
    texts = [
        "p & [](p & []false)", "p & []p & [][]false", "p & <>~p & [](~p & []false)",
        "~p & <>p & <>~p & [](p & []false | ~p & []false)", "p & []<>p & []p",
        "[]false | p & <>true & [][]false", "p & [](p & <>p) & [][]p",
    ]
    for logic in suite.CC_LOGICS:
        for t in texts:
            f = parse(t)
            assert cc_decide(logic, f).complete == (brute_incomplete(logic, f, 3) is None), (
                logic, t)
