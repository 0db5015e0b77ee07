import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vassinc import zoo
from vassinc.constructions import (
    Abstraction,
    Thresholds,
    abstraction_is_empty,
    ba_control,
    complement_det,
    complement_det_hvass,
    complement_kambiguous,
    complement_kdet,
    m_abstraction,
    materialize_abstraction,
    rackoff_thresholds,
    threshold_exceeds,
)
from vassinc.corpus import random_deterministic, random_forked, random_holes
from vassinc.decide import check_k_ambiguous
from vassinc.errors import ModelError, NotDeterministic, NotKDeterministic, Undetermined
from vassinc.ideals import OMEGA, Configuration
from vassinc.model import control_automaton
from vassinc.oracle import accepts, bounded_equivalence, bounded_language, words


def _complements(v, co, maxlen):
    return all(accepts(co, w) != accepts(v, w) for w in words(v.letters, maxlen))


def test_complement_det():
    co = complement_det(zoo.countdown())
    assert co.acceptance.kind == "downward"
    assert bounded_language(co, 4) == [("a",) * 2, ("a",) * 3, ("a",) * 4]
    assert _complements(zoo.missing_letter(), complement_det(zoo.missing_letter()), 4)
    with pytest.raises(NotDeterministic):
        complement_det(zoo.counter_resolved())
    with pytest.raises(ModelError):
        complement_det(zoo.hole_guard())


def test_complement_det_hvass():
    v = zoo.hole_guard()
    co = complement_det_hvass(v)
    assert not co.has_holes
    assert _complements(v, co, 5)
    assert accepts(co, ("b",))


def test_complement_kdet():
    v = zoo.forked()
    co = complement_kdet(v, 2)
    assert co.dim == 2
    assert _complements(v, co, 4)
    with pytest.raises(NotKDeterministic) as e:
        complement_kdet(zoo.pq_automaton(), 1, check_len=3)
    assert e.value.found == 4
    with pytest.raises(ModelError):
        complement_kdet(v, 0)


def test_abstraction():
    abstraction = m_abstraction(zoo.counting_loop(1), 2)
    assert isinstance(abstraction, Abstraction)
    assert abstraction.initial.vector == (0,)
    assert abstraction.cap((5,)) == (OMEGA,)
    loop = materialize_abstraction(zoo.counting_loop(1), 2)
    assert len(loop.states) == 3
    assert bounded_language(loop, 3) == [("a",) * n for n in range(4)]
    assert abstraction_is_empty(zoo.countdown(), 1) is False
    blocked = replace(zoo.counter_resolved(), initial=Configuration("p", (0, 0)))
    assert abstraction_is_empty(blocked, 1) is True
    with pytest.raises(ModelError):
        Abstraction(zoo.countdown(), 0)


def test_thresholds():
    v = zoo.pq_vass()
    assert rackoff_thresholds(v, 1).f == 4096
    assert rackoff_thresholds(v, 0) == Thresholds(8, 9, 4098)
    assert threshold_exceeds(v, 16)
    assert not threshold_exceeds(v, 5000)


def test_ba_control_finds_a_threshold():
    v = zoo.counter_resolved()
    controlled = ba_control(v, 1)
    assert controlled.name == "counter-resolved-M2"
    assert len(controlled.states) == 4
    assert bounded_equivalence(controlled, v, 4) is None
    assert check_k_ambiguous(control_automaton(controlled), 1).is_yes
    assert check_k_ambiguous(control_automaton(v), 1).is_no


def test_ba_control_gives_up():
    with pytest.raises(Undetermined) as e:
        ba_control(zoo.doubled_edge(), 1, cap=4)
    assert e.value.report["cutoff"] == "abstraction_cap"
    assert [step["threshold"] for step in e.value.report["tried"]] == [1, 2, 4]


def test_complement_kambiguous():
    v = zoo.counter_resolved()
    co = complement_kambiguous(v, 1)
    assert co.acceptance.kind == "downward"
    assert _complements(v, co, 3)


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10**6))
def test_random_deterministic_complements(seed):
    v = random_deterministic(random.Random(seed), dim=1)
    assert _complements(v, complement_det(v), 3)


@settings(deadline=None, max_examples=15)
@given(st.integers(0, 10**6))
def test_random_forked_complements(seed):
    v = random_forked(random.Random(seed), dim=1)
    assert _complements(v, complement_kdet(v, 2), 3)


def test_complement_kdet_respects_max_states():
    with pytest.raises(Undetermined) as e:
        complement_kdet(zoo.forked(), 2, max_states=1)
    assert e.value.report["cutoff"] == "abstraction_nodes"
    assert e.value.report["max_states"] == 1


def test_complement_kambiguous_gives_up_on_small_caps():
    with pytest.raises(Undetermined) as e:
        complement_kambiguous(zoo.counter_resolved(), 1, max_nodes=4)
    assert e.value.report["cutoff"] in ("abstraction_cap", "abstraction_nodes")


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10**6))
def test_random_hvass_complements(seed):
    rng = random.Random(seed)
    v = random_holes(rng, random_deterministic(rng, dim=1))
    assert _complements(v, complement_det_hvass(v), 3)


@settings(deadline=None, max_examples=10)
@given(st.integers(0, 10**6))
def test_random_unambiguous_complements(seed):
    v = random_deterministic(random.Random(seed), dim=1, n_states=2)
    try:
        co = complement_kambiguous(v, 1, cap=4, max_nodes=2000)
    except Undetermined:
        return
    assert _complements(v, co, 3)
