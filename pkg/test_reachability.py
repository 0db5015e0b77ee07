import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vassinc import zoo
from vassinc.constructions import complement_det
from vassinc.corpus import random_deterministic, random_seed
from vassinc.errors import ModelError
from vassinc.ideals import OMEGA, Configuration, UpAtom, UpSet
from vassinc.model import UpDownAtom, Upward, replay
from vassinc.oracle import accepts, bounded_language
from vassinc.reachability import (
    CLOVER_EXCLUDED,
    EXHAUSTED,
    Answer,
    SearchBudget,
    Verdict,
    empty_updown,
    reach,
    updown_gadget,
)


def q(*counters):
    return Configuration("q", counters)


def test_verdict_needs_evidence():
    with pytest.raises(ValueError):
        Verdict(Answer.YES)
    with pytest.raises(ValueError):
        Verdict(Answer.NO)
    assert Verdict.unknown({"cutoff": "max_nodes"}).is_unknown
    assert Verdict.yes(("a",)).witness == ("a",)


def test_search_budget_must_be_positive():
    with pytest.raises(ValueError):
        SearchBudget(0)
    with pytest.raises(ValueError):
        SearchBudget(max_counter_sum=0)
    with pytest.raises(ValueError):
        SearchBudget(max_atoms=0)


def test_reach_finds_a_run():
    verdict = reach(zoo.counting_loop(1), q(5))
    assert verdict.is_yes
    assert verdict.witness == ("a",) * 5
    assert replay(zoo.counting_loop(1), verdict.run).end == q(5)


def test_reach_exhausts_a_finite_space():
    verdict = reach(zoo.counting_loop(2), q(5))
    assert verdict.is_no
    assert verdict.certificate == EXHAUSTED


def test_reach_excluded_by_the_clover():
    verdict = reach(zoo.countdown(), q(2))
    assert verdict.is_no
    assert verdict.certificate == CLOVER_EXCLUDED


def test_reach_reports_the_budget():
    verdict = reach(zoo.counting_loop(2), q(5), SearchBudget(max_counter_sum=3))
    assert verdict.is_unknown
    assert verdict.budget_report["cutoff"] == "max_counter_sum"


def test_reach_rejects_bad_targets():
    with pytest.raises(ModelError):
        reach(zoo.countdown(), Configuration("q", (1, 1)))
    with pytest.raises(ModelError):
        reach(zoo.hole_guard(), Configuration("q", (1,)))


def test_singleton_seeds():
    verdict = empty_updown(zoo.reachable_seed())
    assert verdict.is_yes
    assert verdict.witness == ("t", "u")
    assert empty_updown(zoo.unreachable_seed()).is_no


def test_updown_gadget_orders_coordinates():
    v = zoo.at_most_one_b()
    gadget = updown_gadget(v, UpDownAtom("q", (), (), (OMEGA, 1)))
    assert gadget.roles == ("omega", "bounded")
    assert gadget.order == (0, 1)
    assert gadget.target.counters == (0, 1)
    assert gadget.original_transitions == 2
    mixed = updown_gadget(v, UpDownAtom("q", (1,), (2,), (OMEGA,)))
    assert mixed.roles == ("omega", "up")
    assert mixed.order == (1, 0)
    assert mixed.target.counters == (0, 2)


def test_empty_updown_with_bounded_coordinates():
    for v in (zoo.bounded_loop(), zoo.at_most_one_b()):
        verdict = empty_updown(v)
        assert verdict.is_yes
        assert accepts(v, verdict.witness)


def test_empty_updown_on_holes_and_complements():
    verdict = empty_updown(zoo.hole_guard())
    assert verdict.is_yes
    assert accepts(zoo.hole_guard(), verdict.witness)
    complemented = complement_det(zoo.countdown())
    verdict = empty_updown(complemented)
    assert verdict.is_yes
    assert not accepts(zoo.countdown(), verdict.witness)


@settings(deadline=None, max_examples=40)
@given(st.integers(0, 10**6))
def test_seed_reachability_agrees_with_the_oracle(seed):
    v = random_seed(random.Random(seed))
    verdict = empty_updown(v, SearchBudget(2000, 16))
    if verdict.is_yes:
        assert accepts(v, verdict.witness)
    elif verdict.is_no:
        assert bounded_language(v, 5) == []


@settings(deadline=None, max_examples=30)
@given(st.integers(0, 10**6))
def test_complement_emptiness_agrees_with_the_oracle(seed):
    rng = random.Random(seed)
    v = random_deterministic(rng, dim=1)
    verdict = empty_updown(complement_det(v), SearchBudget(2000, 16))
    if verdict.is_yes:
        assert not accepts(v, verdict.witness)
    elif verdict.is_no:
        assert len(bounded_language(v, 3)) == sum(2**n for n in range(4))


def test_empty_updown_stops_after_max_atoms():
    states = frozenset(["q", "r"])
    v = replace(
        zoo.countdown(),
        states=states,
        acceptance=Upward(UpSet([UpAtom("q", (5,)), UpAtom("r", (0,))], 1, states)),
    )
    assert empty_updown(v).is_no
    verdict = empty_updown(v, SearchBudget(max_atoms=1))
    assert verdict.is_unknown
    assert verdict.budget_report == {"cutoff": "max_atoms", "atoms": 2, "checked": 1}


@settings(deadline=None, max_examples=50)
@given(st.integers(0, 10**6))
def test_reach_runs_replay_to_the_target(seed):
    v = random_seed(random.Random(seed))
    target = v.acceptance.target
    verdict = reach(v, target, SearchBudget(5000, 24))
    if verdict.is_yes:
        assert replay(v, verdict.run).end == target
        assert accepts(v, verdict.witness)
    elif verdict.is_no:
        assert bounded_language(v, 5) == []
