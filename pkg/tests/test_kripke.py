import random

import pytest
from hypothesis import given, settings

from modcomp.bisim import bisimilar
from modcomp.errors import ModelFormatError
from modcomp.formula import negate, parse, variables
from modcomp.kripke import (PointedModel, check, format_model, model_from_dict,
                            model_to_dict, parse_model, reach, restrict_to_reachable)

from strategies import formulas, models, random_model

SAMPLE = """\
# three states
states: a b c
edges: a->b b->c
val: a p q
val: b p
point: a
"""


def test_check_examples():
    dead = PointedModel(["a"], [], {}, "a")
    assert check(dead, parse("[]false"))
    ab = PointedModel(["a", "b"], [("a", "b")], {"b": {"p"}}, "a")
    assert check(ab, parse("<>p"))
    loop = PointedModel(["a"], [("a", "a")], {"a": {"p"}}, "a")
    assert check(loop, parse("p & <>[]p"))


def test_missing_variables_are_false():
    m = PointedModel(["a"], [], {}, "a")
    assert check(m, parse("~zz"))


def test_reach_examples():
    iso = PointedModel(["x", "y"], [], {}, "x")
    assert reach(iso, "x") == {"x"}
    chain = PointedModel(["a", "b", "c"], [("a", "b"), ("b", "c")], {}, "a")
    assert reach(chain, "a") == {"a", "b", "c"}
    cyc = PointedModel(["a", "b", "c"], [("a", "b"), ("b", "a")], {}, "a")
    assert reach(cyc, "a") == {"a", "b"}


def test_restrict_to_reachable():
    chain = PointedModel(["a", "b"], [("a", "b")], {}, "a")
    assert restrict_to_reachable(chain) is chain
    island = PointedModel(["a", "b", "z"], [("a", "b"), ("z", "z")], {"z": {"p"}}, "a")
    r = restrict_to_reachable(island)
    assert r.states == ("a", "b")
    assert len(r) <= len(island)
    assert restrict_to_reachable(r) is r


def test_size_is_states_plus_edges():
    m = parse_model(SAMPLE)
    assert len(m) == 5


def test_parse_model_and_format_roundtrip():
    m = parse_model(SAMPLE)
    assert m.states == ("a", "b", "c")
    assert m.valuation["a"] == {"p", "q"}
    assert m.valuation["c"] == frozenset()
    assert m.point == "a"
    assert parse_model(format_model(m)) == m
    assert model_from_dict(model_to_dict(m)) == m


def test_missing_edges_means_no_edges():
    m = parse_model("states: a\npoint: a\n")
    assert not m.edges


@pytest.mark.parametrize("text, line", [
    ("states: a\nstates: b\npoint: a\n", 2),
    ("states: a\npoint: a\npoint: a\n", 3),
    ("states: a b\nval: a p\nval: a q\npoint: a\n", 3),
    ("states: a\nedges: a-b\npoint: a\n", 2),
    ("states: a\nfoo: bar\npoint: a\n", 2),
    ("states: a\nval: a P\npoint: a\n", 2),
    ("states: a\nval: b p\npoint: a\n", 2),
    ("nonsense\n", 1),
])
def test_model_format_errors(text, line):
    with pytest.raises(ModelFormatError) as err:
        parse_model(text)
    assert err.value.line == line


@pytest.mark.parametrize("text", [
    "point: a\n",
    "states: a\n",
    "states: a\nedges: a->b\npoint: a\n",
    "states: a\npoint: b\n",
])
def test_model_format_errors_without_line(text):
    with pytest.raises(ModelFormatError):
        parse_model(text)


def test_constructor_validation():
    with pytest.raises(ValueError):
        PointedModel([], [], {}, "a")
    with pytest.raises(ValueError):
        PointedModel(["a"], [("a", "b")], {}, "a")
    with pytest.raises(ValueError):
        PointedModel(["a"], [], {}, "b")


@settings(max_examples=60)
@given(models(), formulas(names=["p", "q"], max_leaves=8))
def test_check_xor_negation(m, f):
    assert check(m, f) != check(m, negate(f))


@settings(max_examples=60)
@given(models(), formulas(names=["p", "q"], max_leaves=8))
def test_renaming_states_changes_nothing(m, f):
    renamed = m.rename({s: "x" + s for s in m.states})
    assert check(renamed, f) == check(m, f)
    assert bisimilar(m, renamed, {"p", "q"})


def test_check_respects_bisimulation():
    rng = random.Random(7)
    fs = [parse(t) for t in ("<>p", "[]<>p", "<>(p & []~p)", "[]p | <><>~p", "<>[]false")]
    hits = 0
    for _ in range(300):
        m1 = random_model(rng, rng.randint(1, 4))
        m2 = random_model(rng, rng.randint(1, 4))
        if bisimilar(m1, m2, {"p"}):
            hits += 1
            for f in fs:
                assert check(m1, f) == check(m2, f)
    assert hits > 0


@settings(max_examples=40)
@given(models())
def test_restriction_is_bisimilar_and_idempotent(m):
    r = restrict_to_reachable(m)
    assert bisimilar(m, r, {"p", "q"})
    assert restrict_to_reachable(r) is r
