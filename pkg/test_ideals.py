import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vassinc.errors import DimensionMismatch, ModelError, StateUniverseMismatch
from vassinc.ideals import (
    OMEGA,
    Configuration,
    DownAtom,
    DownSet,
    UpAtom,
    UpSet,
    complement,
    complement_down,
    complement_up,
    covering_atom,
    down_set,
    intersect,
    is_subset,
    iter_box,
    max_constant,
    member,
    minimize,
    union,
    up_set,
)

STATES = ("p", "q")


def test_omega_order_and_arithmetic():
    assert 5 < OMEGA
    assert OMEGA >= 10**9
    assert not OMEGA < 3
    assert OMEGA + 3 is OMEGA
    assert 3 + OMEGA is OMEGA
    assert repr(OMEGA) == "w"
    with pytest.raises(ArithmeticError):
        OMEGA - OMEGA


def test_complement_of_single_up_atom():
    up = UpSet([UpAtom("q", (1, 1))], dim=2)
    assert repr(complement_up(up)) == "DownSet{q(0,w)↓, q(w,0)↓}"


def test_canonical_form_drops_subsumed_atoms():
    up = UpSet([UpAtom("q", (1, 1)), UpAtom("q", (2, 1)), UpAtom("q", (1, 1))], 2)
    assert up.atoms == (UpAtom("q", (1, 1)),)
    down = DownSet([DownAtom("q", (OMEGA, 1)), DownAtom("q", (3, 0))], 2)
    assert down.atoms == (DownAtom("q", (OMEGA, 1)),)
    assert up_set(up.atoms, 2) == up
    assert minimize(down) == down_set([DownAtom("q", (OMEGA, 1))], 2)


def test_canonical_form_is_per_state():
    states = frozenset(f"q{i}" for i in range(400))
    up = UpSet([UpAtom(q, (j, 2 - j)) for q in states for j in range(3)] + [UpAtom("q0", (2, 2))], 2, states)
    assert len(up) == 1200
    minimal = UpSet([UpAtom(q, (j,)) for q in states for j in range(3)], 1, states)
    assert set(minimal.atoms) == {UpAtom(q, (0,)) for q in states}


def test_member_and_covering_atom():
    up = UpSet([UpAtom("p", (2,)), UpAtom("q", (0,))], 1)
    assert member(up, Configuration("p", (3,)))
    assert not member(up, Configuration("p", (1,)))
    assert Configuration("q", (0,)) in up
    assert covering_atom(up, Configuration("p", (5,))) == UpAtom("p", (2,))
    assert covering_atom(up, Configuration("p", (0,))) is None


def test_member_checks_dimension_and_states():
    up = UpSet([UpAtom("p", (2,))], 1)
    with pytest.raises(DimensionMismatch):
        member(up, Configuration("p", (1, 1)))
    with pytest.raises(StateUniverseMismatch):
        member(up, Configuration("r", (1,)))


def test_atoms_reject_bad_vectors():
    with pytest.raises(ModelError):
        UpAtom("q", (OMEGA,))
    with pytest.raises(ModelError):
        DownAtom("q", (-1,))
    with pytest.raises(ModelError):
        Configuration("q", (OMEGA,))
    with pytest.raises(DimensionMismatch):
        UpSet([UpAtom("q", (1,)), UpAtom("q", (1, 2))])


def test_intersect_union_subset():
    a = UpSet([UpAtom("q", (1, 0))], 2, STATES)
    b = UpSet([UpAtom("q", (0, 2)), UpAtom("p", (0, 0))], 2, STATES)
    assert intersect(a, b) == UpSet([UpAtom("q", (1, 2))], 2, STATES)
    both = union(a, b)
    assert is_subset(a, both)
    assert is_subset(b, both)
    assert not is_subset(both, a)
    down = DownSet([DownAtom("q", (OMEGA, 1))], 2, STATES)
    assert intersect(down, DownSet([DownAtom("q", (2, OMEGA))], 2, STATES)) == DownSet(
        [DownAtom("q", (2, 1))], 2, STATES
    )


def test_set_operations_need_the_same_universe():
    with pytest.raises(StateUniverseMismatch):
        union(UpSet([UpAtom("q", (1,))], 1, ["q"]), UpSet([UpAtom("q", (1,))], 1, STATES))
    with pytest.raises(TypeError):
        union(UpSet([UpAtom("q", (1,))], 1), DownSet([DownAtom("q", (1,))], 1))


def test_complement_of_empty_sets_is_everything():
    assert complement_up(UpSet([], 1, STATES)) == DownSet([DownAtom(q, (OMEGA,)) for q in STATES], 1, STATES)
    assert complement_down(DownSet([], 1, STATES)) == UpSet([UpAtom(q, (0,)) for q in STATES], 1, STATES)


def test_max_constant_ignores_omega():
    assert max_constant(DownSet([DownAtom("q", (OMEGA, 4))], 2)) == 4
    assert max_constant(UpSet([], 2, ["q"])) == 0


up_atoms = st.builds(
    UpAtom,
    st.sampled_from(STATES),
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
)
down_atoms = st.builds(
    DownAtom,
    st.sampled_from(STATES),
    st.tuples(st.one_of(st.integers(0, 3), st.just(OMEGA)), st.one_of(st.integers(0, 3), st.just(OMEGA))),
)


@settings(deadline=None, max_examples=200)
@given(st.lists(up_atoms, max_size=4))
def test_up_complement_partitions_the_box(atoms):
    up = UpSet(atoms, 2, STATES)
    down = complement_up(up)
    for q in STATES:
        for vector in iter_box(2, 5):
            c = Configuration(q, vector)
            assert member(up, c) != member(down, c)
    assert complement_down(down) == up


@settings(deadline=None, max_examples=200)
@given(st.lists(down_atoms, max_size=4))
def test_down_complement_partitions_the_box(atoms):
    down = DownSet(atoms, 2, STATES)
    up = complement(down)
    for q in STATES:
        for vector in iter_box(2, 5):
            c = Configuration(q, vector)
            assert member(up, c) != member(down, c)
    assert complement(up) == down


@settings(deadline=None, max_examples=100)
@given(st.lists(up_atoms, max_size=3), st.lists(up_atoms, max_size=3))
def test_intersection_is_pointwise(first, second):
    a, b = UpSet(first, 2, STATES), UpSet(second, 2, STATES)
    meet = intersect(a, b)
    for q in STATES:
        for vector in iter_box(2, 4):
            c = Configuration(q, vector)
            assert member(meet, c) == (member(a, c) and member(b, c))
