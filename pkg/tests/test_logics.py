import pytest

from modcomp.logics import (ALIASES, D, D4, EUCLIDEAN, K, K4, K5, K45, KD5, KD45, LOGICS,
                            REFLEXIVE, S4, S5, SERIAL, T, TRANSITIVE, frame_conditions,
                            get_logic, is_frame_for)


def test_frame_conditions_examples():
    assert frame_conditions(K) == set()
    assert frame_conditions(S4) == {REFLEXIVE, TRANSITIVE}
    assert frame_conditions(KD45) == {SERIAL, TRANSITIVE, EUCLIDEAN}


def test_is_frame_for_examples():
    assert is_frame_for(["a"], [], K)
    assert not is_frame_for(["a"], [], D)
    assert is_frame_for(["a"], [("a", "a")], S5)


def test_euclidean_check_is_literal():
    # a->b, a->c without b->c is not euclidean, and nothing is repaired
    states = ["a", "b", "c"]
    assert not is_frame_for(states, [("a", "b"), ("a", "c")], K5)
    edges = [("a", "b"), ("a", "c"), ("b", "b"), ("b", "c"), ("c", "b"), ("c", "c")]
    assert is_frame_for(states, edges, K5)


def test_names_and_aliases():
    assert get_logic("S5") is S5
    assert get_logic("kt5") == S5
    assert get_logic(" KD45 ") == KD45
    for name, logic in LOGICS.items():
        assert logic.name == name
    assert set(ALIASES.values()) <= set(LOGICS.values())
    with pytest.raises(ValueError):
        get_logic("kb")


def test_t_implies_seriality():
    assert T.serial and S4.serial and S5.serial
    assert not K4.serial


@pytest.mark.parametrize("weak", list(LOGICS.values()))
@pytest.mark.parametrize("strong", list(LOGICS.values()))
def test_frame_conditions_monotone(weak, strong):
    if weak.axioms() <= strong.axioms():
        assert frame_conditions(weak) <= frame_conditions(strong)


def test_s5_models_fit_every_weaker_logic():
    from modcomp.oracle import ModelBudget, enumerate_models
    for m in enumerate_models(S5, ModelBudget(3)):
        for logic in LOGICS.values():
            if S5.extends(logic):
                assert m.is_model_for(logic)


def test_extends():
    assert S5.extends(KD45) and S5.extends(D) and S4.extends(D4)
    assert not K45.extends(D)
    assert KD5.extends(K5)
