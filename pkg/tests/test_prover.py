import threading

import pytest
from hypothesis import given, settings

from modcomp.formula import Box, Diamond, Top, Bottom, Var, negate, parse, variables
from modcomp.kripke import check
from modcomp.logics import D, D4, K, K4, K5, K45, KD5, KD45, LOGICS, S4, S5, T
from modcomp.oracle import brute_sat, default_budget
from modcomp.prover import clear_caches, consistent, find_model, provable, satisfiable

import suite
from strategies import formulas


@pytest.mark.parametrize("logic, text, expected", [
    (K, "[]false", True),
    (D, "[]false", False),
    (T, "p & []~p", False),
    (K, "p & []~p", True),
    (S4, "<>p & [](~p | []~p) & p", False),
    (K4, "<>p & [](~p | []~p) & p", True),
    (D4, "[]<>p & []<>~p", True),
    (S5, "<>p & []~p", False),
    (K45, "<>true & []false", False),
    (KD5, "[]false", False),
])
def test_satisfiable_examples(logic, text, expected):
    assert satisfiable(logic, parse(text)) is expected


@pytest.mark.parametrize("logic, text, expected", [
    (T, "[]p -> p", True),
    (K4, "[]p -> [][]p", True),
    (K, "[]p -> [][]p", False),
    (K5, "<>p -> []<>p", True),
    (KD45, "<>p -> []<>p", True),
    (S5, "<>p -> []<>p", True),
    (K, "[](p -> q) -> []p -> []q", True),
    (D, "<>true", True),
    (K, "<>true", False),
])
def test_provable_examples(logic, text, expected):
    assert provable(logic, parse(text)) is expected


def test_consistent_examples():
    for logic in LOGICS.values():
        assert consistent(logic, [])
        assert not consistent(logic, [Var("p"), negate(Var("p"))])
        assert not consistent(logic, [Box(Bottom()), Diamond(Top())])


@pytest.mark.parametrize("logic", suite.ALL_LOGICS)
def test_find_model_is_a_model(logic):
    for f in suite.suite():
        m = find_model(logic, f)
        if m is None:
            assert not satisfiable(logic, f)
            continue
        assert m.is_model_for(logic), (logic, f)
        assert check(m, f), (logic, f)


@pytest.mark.parametrize("logic", suite.ALL_LOGICS)
def test_agrees_with_brute_force(logic):
    for f in suite.suite():
        n = default_budget(logic, variables(f))
        assert satisfiable(logic, f) == brute_sat(logic, f, n), (logic, str(f))


def test_lattice_monotone_on_validities():
    for f in suite.suite():
        if provable(K, f):
            for logic in LOGICS.values():
                assert provable(logic, f)


@settings(max_examples=80, deadline=None)
@given(formulas(names=["p", "q"], max_leaves=10))
def test_exactly_one_of_provable_and_refutable(f):
    for logic in (K, S4, KD45):
        assert provable(logic, f) != satisfiable(logic, negate(f))
        assert satisfiable(logic, f) or satisfiable(logic, negate(f))


@settings(max_examples=60, deadline=None)
@given(formulas(names=["p", "q"], max_leaves=10))
def test_extracted_models_satisfy_random_formulas(f):
    for logic in (K, D, T, K4, D4, S4):
        m = find_model(logic, f)
        if m is not None:
            assert m.is_model_for(logic)
            assert check(m, f)


def test_s4_needs_loop_blocking():
    f = parse("[]<>p & []<>~p")
    m = find_model(S4, f)
    assert m is not None and check(m, f)


def test_concurrent_queries_agree():
    clear_caches()
    fs = list(suite.suite())[:120]
    expected = {f: satisfiable(S4, f) for f in fs}
    clear_caches()
    results = {}

    def work(chunk):
        for f in chunk:
            results[f] = satisfiable(S4, f)

    threads = [threading.Thread(target=work, args=(fs[i::4],)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert results == expected
