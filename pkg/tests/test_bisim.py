import random

from hypothesis import given, settings

from modcomp.bisim import (bisimilar, bisimulation_classes, distinguishing_formula,
                           naive_bisimilar)
from modcomp.formula import variables
from modcomp.kripke import PointedModel, check, restrict_to_reachable
from modcomp.logics import D

from strategies import models, random_model


def lemma_pair(P=("p",)):
    """Two serial paths that differ only at their last, looping state."""
    def build(last):
        states = ["a", "b", "x"]
        edges = [("a", "b"), ("b", "x"), ("x", "x")]
        return PointedModel(states, edges, {"a": set(P), "b": set(P), "x": last}, "a")
    return build(set()), build(set(P))


def test_identical_models():
    m = PointedModel(["a"], [], {"a": {"p"}}, "a")
    assert bisimilar(m, m, {"p"})
    assert naive_bisimilar(m, m, {"p"})


def test_constructed_pair_is_not_bisimilar():
    m1, m2 = lemma_pair()
    assert not bisimilar(m1, m2, {"p"})
    assert not naive_bisimilar(m1, m2, {"p"})
    psi = distinguishing_formula(m1, m2, {"p"})
    assert check(m1, psi) and not check(m2, psi)


def test_serial_models_bisimilar_without_variables():
    rng = random.Random(3)
    done = 0
    while done < 50:
        m1 = random_model(rng, rng.randint(1, 6), density=0.4)
        m2 = random_model(rng, rng.randint(1, 6), density=0.4)
        if not (m1.is_model_for(D) and m2.is_model_for(D)):
            continue
        assert bisimilar(m1, m2, set())
        assert naive_bisimilar(m1, m2, set())
        done += 1


def test_dead_end_versus_loop():
    dead = PointedModel(["a"], [], {}, "a")
    loop = PointedModel(["a"], [("a", "a")], {}, "a")
    assert not bisimilar(dead, loop, set())
    assert not naive_bisimilar(dead, loop, set())


def test_loop_versus_chain_into_loop():
    loop = PointedModel(["a"], [("a", "a")], {"a": {"p"}}, "a")
    chain = PointedModel(["b0", "b1", "b2"], [("b0", "b1"), ("b1", "b2"), ("b2", "b2")],
                         {s: {"p"} for s in ("b0", "b1", "b2")}, "b0")
    assert bisimilar(loop, chain, {"p"})
    assert naive_bisimilar(loop, chain, {"p"})


def test_refinement_matches_fixpoint_on_random_pairs():
    rng = random.Random(11)
    for _ in range(150):
        names = ("p", "q", "r")[: rng.randint(0, 3)]
        m1 = random_model(rng, rng.randint(1, 12), names, density=rng.choice([0.1, 0.2, 0.4]))
        m2 = random_model(rng, rng.randint(1, 12), names, density=rng.choice([0.1, 0.2, 0.4]))
        P = set(names)
        expected = naive_bisimilar(m1, m2, P)
        assert bisimilar(m1, m2, P) == expected
        psi = distinguishing_formula(m1, m2, P)
        if expected:
            assert psi is None
        else:
            assert check(m1, psi) and not check(m2, psi)
            assert variables(psi) <= P


@settings(max_examples=60)
@given(models(), models())
def test_symmetry_and_monotonicity(m1, m2):
    both = bisimilar(m1, m2, {"p", "q"})
    assert both == bisimilar(m2, m1, {"p", "q"})
    if both:
        assert bisimilar(m1, m2, {"p"})
        assert bisimilar(m1, m2, set())


@settings(max_examples=60)
@given(models())
def test_reflexive_and_reachable(m):
    assert bisimilar(m, m, {"p", "q"})
    assert bisimilar(m, restrict_to_reachable(m), {"p", "q"})


def test_classes_agree_with_pairwise():
    rng = random.Random(5)
    ms = [random_model(rng, rng.randint(1, 3), ("p",)) for _ in range(30)]
    ids = bisimulation_classes(ms, {"p"})
    for i in range(len(ms)):
        for j in range(len(ms)):
            assert (ids[i] == ids[j]) == bisimilar(ms[i], ms[j], {"p"})
