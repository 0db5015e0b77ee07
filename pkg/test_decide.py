import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vassinc import zoo
from vassinc.config import Settings
from vassinc.corpus import random_deterministic, random_forked, random_holes, random_seed, random_vass
from vassinc.decide import (
    check_k_ambiguous,
    equivalent,
    include,
    include_in_unambiguous_decorated,
    minimal_ambiguity,
)
from vassinc.errors import ModelError, NotDeterministic
from vassinc.model import hardness_pair
from vassinc.monoid import Hom, separator_monoid, trivial_monoid
from vassinc.oracle import accepts, bounded_ambiguity, bounded_inclusion, bounded_language, count_accepting_runs
from vassinc.reachability import SearchBudget


def _counterexample(verdict, v1, v2):
    return verdict.is_no and accepts(v1, verdict.witness) and not accepts(v2, verdict.witness)


def test_include_det():
    assert include(zoo.countdown(), zoo.counting_loop(1)).is_yes
    verdict = include(zoo.counting_loop(1), zoo.countdown())
    assert _counterexample(verdict, zoo.counting_loop(1), zoo.countdown())
    assert equivalent(zoo.counting_loop(1), zoo.counting_loop(1)).is_yes


def test_include_aligns_alphabets():
    verdict = include(zoo.pq_automaton(), zoo.countdown())
    assert _counterexample(verdict, zoo.pq_automaton(), zoo.countdown())


def test_include_hvass():
    assert not include(zoo.hole_guard(), zoo.hole_guard(), "hvass").is_no
    verdict = include(zoo.universal(), zoo.hole_guard(), "hvass")
    assert _counterexample(verdict, zoo.universal(), zoo.hole_guard())


def test_include_kdet():
    assert not include(zoo.forked(), zoo.forked(), "kdet", k=2).is_no
    verdict = include(zoo.universal(("a", "b", "c")), zoo.forked(), "kdet", k=2)
    assert _counterexample(verdict, zoo.universal(("a", "b", "c")), zoo.forked())


def test_include_kamb_is_sound():
    v = zoo.counter_resolved()
    assert not include(v, v, "kamb", k=1).is_no
    verdict = include(zoo.universal(), v, "kamb", k=1)
    assert not verdict.is_yes
    if verdict.is_no:
        assert _counterexample(verdict, zoo.universal(), v)


def test_include_kamb_unknown_when_the_threshold_search_fails():
    verdict = include(zoo.pq_automaton(), zoo.doubled_edge(), "kamb", k=1, settings=Settings(abstraction_cap=2))
    assert verdict.is_unknown
    assert verdict.budget_report["cutoff"] == "abstraction_cap"


def test_unknown_class():
    with pytest.raises(ModelError):
        include(zoo.countdown(), zoo.countdown(), "nfa")


def test_include_with_a_separating_monoid():
    hom = separator_monoid("b", "abc")
    assert not include_in_unambiguous_decorated(zoo.separated(), zoo.separated(), hom).is_no
    verdict = include_in_unambiguous_decorated(zoo.a_star_c_star(), zoo.separated(), hom)
    assert _counterexample(verdict, zoo.a_star_c_star(), zoo.separated())
    trivial = Hom(trivial_monoid(), {"a": 0, "b": 0, "c": 0})
    with pytest.raises(NotDeterministic):
        include_in_unambiguous_decorated(zoo.separated(), zoo.separated(), trivial)


def test_hardness_pairs():
    first, second = hardness_pair(zoo.reachable_seed())
    verdict = equivalent(first, second)
    assert verdict.is_no
    assert accepts(first, verdict.witness) != accepts(second, verdict.witness)
    first, second = hardness_pair(zoo.unreachable_seed())
    assert equivalent(first, second).is_yes


def test_ambiguity():
    verdict = check_k_ambiguous(zoo.doubled_edge(), 1)
    assert verdict.is_no
    assert verdict.witness == ("a",)
    assert check_k_ambiguous(zoo.doubled_edge(), 2).is_yes
    assert check_k_ambiguous(zoo.separated(), 1).is_yes
    assert minimal_ambiguity(zoo.doubled_edge(), 3) == 2
    assert minimal_ambiguity(zoo.pq_automaton(), 3) == 1
    assert minimal_ambiguity(zoo.doubled_edge(), 1) is None


@settings(deadline=None, max_examples=20)
@given(st.integers(0, 10**6))
def test_random_det_inclusion_agrees_with_the_oracle(seed):
    rng = random.Random(seed)
    v1 = random_deterministic(rng, dim=1)
    v2 = random_deterministic(rng, dim=1)
    verdict = include(v1, v2, budget=SearchBudget(3000, 16))
    if verdict.is_no:
        assert _counterexample(verdict, v1, v2)
    elif verdict.is_yes:
        assert bounded_inclusion(v1, v2, 3) is None


def test_include_kdet_unknown_when_the_complement_is_too_large():
    verdict = include(zoo.universal(("a", "b", "c")), zoo.forked(), "kdet", k=2, settings=Settings(abstraction_nodes=1))
    assert verdict.is_unknown
    assert verdict.budget_report["cutoff"] == "abstraction_nodes"


@settings(deadline=None, max_examples=50)
@given(st.integers(0, 10**6))
def test_random_hardness_pairs(seed):
    v = random_seed(random.Random(seed))
    first, second = hardness_pair(v)
    verdict = equivalent(first, second, budget=SearchBudget(5000, 24))
    if verdict.is_no:
        assert accepts(first, verdict.witness) != accepts(second, verdict.witness)
    elif verdict.is_yes:
        assert bounded_language(v, 5) == []


@settings(deadline=None, max_examples=20)
@given(st.integers(0, 10**6))
def test_random_hvass_inclusion_agrees_with_the_oracle(seed):
    rng = random.Random(seed)
    v1 = random_holes(rng, random_vass(rng, dim=1))
    v2 = random_holes(rng, random_deterministic(rng, dim=1))
    verdict = include(v1, v2, "hvass", budget=SearchBudget(3000, 16))
    if verdict.is_no:
        assert _counterexample(verdict, v1, v2)
    elif verdict.is_yes:
        assert bounded_inclusion(v1, v2, 3) is None


@settings(deadline=None, max_examples=15)
@given(st.integers(0, 10**6))
def test_random_kdet_inclusion_agrees_with_the_oracle(seed):
    rng = random.Random(seed)
    v1 = random_deterministic(rng, dim=1)
    v2 = random_forked(rng, dim=1)
    verdict = include(v1, v2, "kdet", k=2, budget=SearchBudget(3000, 16))
    if verdict.is_no:
        assert _counterexample(verdict, v1, v2)
    elif verdict.is_yes:
        assert bounded_inclusion(v1, v2, 3) is None


@settings(deadline=None, max_examples=10)
@given(st.integers(0, 10**6))
def test_random_kamb_inclusion_agrees_with_the_oracle(seed):
    rng = random.Random(seed)
    v1 = random_deterministic(rng, dim=1, n_states=2)
    v2 = random_deterministic(rng, dim=1, n_states=2)
    small = Settings(abstraction_cap=4, abstraction_nodes=2000)
    verdict = include(v1, v2, "kamb", k=1, budget=SearchBudget(3000, 16), settings=small)
    if verdict.is_no:
        assert _counterexample(verdict, v1, v2)
    elif verdict.is_yes:
        assert bounded_inclusion(v1, v2, 3) is None


@settings(deadline=None, max_examples=30)
@given(st.integers(0, 10**6), st.integers(1, 2))
def test_random_ambiguity_agrees_with_the_oracle(seed, k):
    v = random_vass(random.Random(seed), dim=1)
    verdict = check_k_ambiguous(v, k)
    if verdict.is_yes:
        assert bounded_ambiguity(v, 6) <= k
    else:
        assert count_accepting_runs(v, verdict.witness) > k
