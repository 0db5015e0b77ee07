import random
from collections import deque
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vassinc import zoo
from vassinc.corpus import random_holes, random_vass
from vassinc.coverability import (
    coverable,
    empty_language_configs,
    empty_upward,
    km_clover,
    pre_star,
    pre_star_basis,
)
from vassinc.errors import BudgetExhausted, ModelError, UnsupportedAcceptance
from vassinc.ideals import OMEGA, Configuration, DownAtom, DownSet, UpAtom, UpSet, member
from vassinc.model import replay, successors
from vassinc.oracle import accepts, bounded_language


def test_pre_star_respects_holes_and_gives_runs():
    v = zoo.hole_guard()
    saturated = pre_star(v, UpSet([UpAtom("q", (0,))], 1, v.states))
    assert Configuration("p", (0,)) in saturated
    assert Configuration("q", (0,)) not in saturated
    assert saturated.witness_from(Configuration("p", (0,))) == (0, 1)
    with pytest.raises(ValueError):
        saturated.witness_from(Configuration("q", (0,)))


def test_pre_star_basis_is_the_minimal_predecessors():
    v = zoo.counting_loop(1)
    assert pre_star_basis(v, UpSet([UpAtom("q", (3,))], 1, v.states)) == UpSet([UpAtom("q", (0,))], 1, v.states)


def test_coverable():
    assert coverable(zoo.counting_loop(2), UpAtom("q", (5,)))
    assert not coverable(zoo.countdown(), UpAtom("q", (2,)))
    assert coverable(zoo.forked(), UpAtom("q", (7,)))


def test_empty_upward_gives_an_accepted_word():
    result = empty_upward(zoo.pq_automaton())
    assert not result.empty
    assert accepts(zoo.pq_automaton(), result.witness)
    assert replay(zoo.pq_automaton(), result.run).end.state == "q"
    assert empty_upward(zoo.countdown()).witness == ()


def test_empty_upward_on_empty_language():
    v = zoo.counter_resolved()
    blocked = replace(v, initial=Configuration("p", (0, 0)), name="blocked")
    assert empty_upward(blocked).empty
    with pytest.raises(UnsupportedAcceptance):
        empty_upward(zoo.at_most_one_b())


def test_empty_language_configs():
    v = zoo.counter_resolved()
    assert empty_language_configs(v) == DownSet([DownAtom("p", (0, 0))], 2, v.states)
    assert not empty_language_configs(zoo.forked())


def test_clover():
    loop = zoo.counting_loop(1)
    assert km_clover(loop) == DownSet([DownAtom("q", (OMEGA,))], 1, {"q"})
    assert km_clover(zoo.countdown()) == DownSet([DownAtom("q", (1,))], 1, {"q"})
    clover = km_clover(zoo.forked())
    assert member(clover, Configuration("q", (9,)))
    assert not member(clover, Configuration("p", (3,)))
    with pytest.raises(BudgetExhausted):
        km_clover(loop, max_nodes=1)
    with pytest.raises(ModelError):
        km_clover(zoo.hole_guard())


@settings(deadline=None, max_examples=60)
@given(st.integers(0, 10**6), st.booleans())
def test_emptiness_agrees_with_the_oracle(seed, holes):
    rng = random.Random(seed)
    v = random_vass(rng)
    if holes:
        v = random_holes(rng, v)
    result = empty_upward(v)
    if result.empty:
        assert bounded_language(v, 4) == []
    else:
        assert accepts(v, result.witness)


def _covers_by_search(v, start, target, ceiling=12):
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        if member(target, c):
            return True
        for _, nxt in successors(v, c):
            if nxt not in seen and max(nxt.counters, default=0) <= ceiling:
                seen.add(nxt)
                queue.append(nxt)
    return False


@settings(deadline=None, max_examples=40)
@given(st.integers(0, 10**6))
def test_pre_star_on_a_box_agrees_with_search(seed):
    v = random_vass(random.Random(seed), dim=1)
    target = v.acceptance.atoms
    saturated = pre_star(v, target)
    basis = pre_star_basis(v, target)
    for state in sorted(v.states):
        for n in range(5):
            c = Configuration(state, (n,))
            assert (c in saturated) == member(basis, c)
            if c in saturated:
                assert member(target, replay(v, saturated.witness_from(c), start=c).end)
            else:
                assert not _covers_by_search(v, c, target)
