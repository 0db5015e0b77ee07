"""
Small named models.

They are the worked examples of the documentation and the fixed points of the test-suite; corpus/ holds the same
models as files.
"""

from vassinc.ideals import OMEGA, Configuration, DownAtom, DownSet, UpAtom, UpSet
from vassinc.model import Downward, Singleton, Transition, UpDown, UpDownAtom, Upward, Vass


def _upward(states, dim, atoms):
    return Upward(UpSet([UpAtom(q, basis) for q, basis in atoms], dim, states))


def _vass(name, dim, transitions, initial, accept, states=None, alphabet=None, acceptance=None, holes=None):
    transitions = tuple(Transition(*t) for t in transitions)
    if states is None:
        states = {initial[0]} | {t.source for t in transitions} | {t.target for t in transitions}
    states = frozenset(states)
    if alphabet is None:
        alphabet = {t.label for t in transitions}
    return Vass(
        alphabet=alphabet,
        dim=dim,
        states=states,
        transitions=transitions,
        initial=Configuration(*initial),
        acceptance=acceptance or _upward(states, dim, accept),
        holes=None if holes is None else DownSet([DownAtom(q, bound) for q, bound in holes], dim, states),
        name=name,
    )


def counting_loop(step=1):
    """q(0) with an a-loop adding `step`; accepts everywhere."""
    return _vass(f"loop{step}", 1, [("q", "a", (step,), "q")], ("q", (0,)), [("q", (0,))])


def countdown():
    """q(1) with an a-loop subtracting 1; L = {eps, a}."""
    return _vass("countdown", 1, [("q", "a", (-1,), "q")], ("q", (1,)), [("q", (0,))])


def universal(letters=("a", "b")):
    """Dimension 0, one accepting state with a loop on every letter."""
    return _vass("universal", 0, [("q", a, (), "q") for a in letters], ("q", ()), [("q", ())])


def missing_letter():
    """p reads a to q; q has no b, so the complement accepts every word continuing with b there."""
    return _vass(
        "missing-letter",
        0,
        [("p", "a", (), "q"), ("p", "b", (), "p"), ("q", "a", (), "q")],
        ("p", ()),
        [("p", ()), ("q", ())],
    )


def pq_automaton():
    """(p,a,p), (p,a,q), (q,b,q), accepting in q: a^n has n+1 maximal runs."""
    return _vass("pq", 0, [("p", "a", (), "p"), ("p", "a", (), "q"), ("q", "b", (), "q")], ("p", ()), [("q", ())])


def pq_vass():
    """The pq automaton with one zero counter."""
    return _vass(
        "pq-vass",
        1,
        [("p", "a", (0,), "p"), ("p", "a", (0,), "q"), ("q", "b", (0,), "q")],
        ("p", (0,)),
        [("q", (0,))],
    )


def counter_resolved():
    """
    L = {b, ab}. Both b-edges leave p, but the first counter is positive only after an a and the second only
    before it, so exactly one of them can fire. Unambiguous, while its control automaton has two runs on b; the
    2-abstraction already tells the branches apart.
    """
    return _vass(
        "counter-resolved",
        2,
        [
            ("p", "a", (1, -1), "p"),
            ("p", "b", (-1, 0), "q"),
            ("p", "b", (0, -1), "r"),
        ],
        ("p", (0, 1)),
        [("q", (0, 0)), ("r", (0, 0))],
    )


def forked():
    """An initial a-fork into two deterministic branches: at most two maximal runs per word."""
    return _vass(
        "forked",
        1,
        [
            ("i", "a", (0,), "p"),
            ("i", "a", (0,), "q"),
            ("p", "b", (-1,), "p"),
            ("q", "c", (1,), "q"),
        ],
        ("i", (2,)),
        [("p", (0,)), ("q", (3,))],
    )


def doubled_edge():
    """Two parallel a-edges into the accepting state: the word a has two accepting runs."""
    return _vass("doubled", 0, [("p", "a", (), "q"), ("p", "a", (), "q")], ("p", ()), [("q", ())])


def separated():
    """
    (a*b)* a^n c^m with n >= m: unambiguous but not deterministic. After an a the run either waits for a b (state
    t) or counts towards the c-block (state q); the "contains b" separator monoid tells them apart.
    """
    return _vass(
        "separated",
        1,
        [
            ("s", "a", (0,), "t"),
            ("t", "a", (0,), "t"),
            ("t", "b", (0,), "s"),
            ("s", "b", (0,), "s"),
            ("s", "a", (1,), "q"),
            ("q", "a", (1,), "q"),
            ("q", "c", (-1,), "r"),
            ("r", "c", (-1,), "r"),
        ],
        ("s", (0,)),
        [("s", (0,)), ("q", (0,)), ("r", (0,))],
    )


def a_star_c_star():
    """a^n c^m with any n, m."""
    return _vass(
        "astar-cstar",
        0,
        [("x", "a", (), "x"), ("x", "c", (), "y"), ("y", "c", (), "y")],
        ("x", ()),
        [("x", ()), ("y", ())],
    )


def reachable_seed():
    """Singleton seed whose target f(0) is reachable by t0 t1."""
    states = frozenset(["q", "f"])
    return _vass(
        "seed-yes",
        1,
        [("q", "t", (1,), "q"), ("q", "u", (-1,), "f")],
        ("q", (0,)),
        None,
        states=states,
        acceptance=Singleton(Configuration("f", (0,))),
    )


def unreachable_seed():
    """Singleton seed whose target state f is never entered."""
    states = frozenset(["q", "f"])
    return _vass(
        "seed-no",
        1,
        [("q", "t", (1,), "q")],
        ("q", (0,)),
        None,
        states=states,
        acceptance=Singleton(Configuration("f", (0,))),
    )


def hole_guard():
    """a^n b^m with 1 <= m <= n: the hole q(0) keeps the counter positive in q. Deterministic with holes."""
    return _vass(
        "hole-guard",
        1,
        [("p", "a", (1,), "p"), ("p", "b", (0,), "q"), ("q", "b", (-1,), "q")],
        ("p", (0,)),
        [("q", (0,))],
        holes=[("q", (0,))],
    )


def bounded_loop():
    """loop1 accepting only while the counter is at most 3: L = {a^n : n <= 3}."""
    return _vass(
        "bounded-loop",
        1,
        [("q", "a", (1,), "q")],
        ("q", (0,)),
        None,
        acceptance=UpDown((UpDownAtom("q", (), (), (3,)),), 1),
    )


def at_most_one_b():
    """Counts a and b separately; downward acceptance q(w,1) keeps the words with at most one b."""
    return _vass(
        "at-most-one-b",
        2,
        [("q", "a", (1, 0), "q"), ("q", "b", (0, 1), "q")],
        ("q", (0, 0)),
        None,
        acceptance=Downward(DownSet([DownAtom("q", (OMEGA, 1))], 2, ["q"])),
    )


MODELS = {
    "loop1": lambda: counting_loop(1),
    "loop2": lambda: counting_loop(2),
    "countdown": countdown,
    "universal": universal,
    "missing-letter": missing_letter,
    "pq": pq_automaton,
    "pq-vass": pq_vass,
    "counter-resolved": counter_resolved,
    "forked": forked,
    "doubled": doubled_edge,
    "separated": separated,
    "astar-cstar": a_star_c_star,
    "seed-yes": reachable_seed,
    "seed-no": unreachable_seed,
    "hole-guard": hole_guard,
    "bounded-loop": bounded_loop,
    "at-most-one-b": at_most_one_b,
}
