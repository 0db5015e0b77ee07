"""
Seeded random models for sweeps.

Every generator takes a random.Random so a seed reproduces the same model. The defaults match the sweep sizes:
dimension at most 2, at most 3 states, effects in {-1, 0, 1} and constants at most 2.
"""

import logging
import random

from vassinc.ideals import Configuration, DownAtom, DownSet, UpAtom, UpSet, state_key
from vassinc.model import Singleton, Transition, Upward, Vass

logger = logging.getLogger(__name__)

LETTERS = ("a", "b")
EFFECTS = (-1, 0, 1)


def _states(count):
    return [f"q{i}" for i in range(count)]


def _vector(rng, dim, values):
    return tuple(rng.choice(values) for _ in range(dim))


def _acceptance(rng, states, dim, max_constant):
    # states must be an ordered list for rng.sample
    chosen = rng.sample(states, rng.randint(1, len(states)))
    atoms = [UpAtom(q, _vector(rng, dim, range(max_constant + 1))) for q in chosen]
    return Upward(UpSet(atoms, dim, frozenset(states)))


def random_vass(rng, dim=None, n_states=None, letters=LETTERS, density=0.5, max_constant=2, name=None):
    """A random upward-accepting model without ε-transitions or holes."""
    dim = rng.randint(0, 2) if dim is None else dim
    states = _states(rng.randint(1, 3) if n_states is None else n_states)
    transitions = []
    for p in states:
        for letter in letters:
            for q in states:
                if rng.random() < density / len(states) * 2:
                    transitions.append(Transition(p, letter, _vector(rng, dim, EFFECTS), q))
    return Vass(
        alphabet=frozenset(letters),
        dim=dim,
        states=frozenset(states),
        transitions=tuple(transitions),
        initial=Configuration(states[0], _vector(rng, dim, range(max_constant + 1))),
        acceptance=_acceptance(rng, states, dim, max_constant),
        name=name or "random",
    )


def random_deterministic(rng, dim=None, n_states=None, letters=LETTERS, density=0.7, max_constant=2, name=None):
    """At most one transition per state and letter."""
    dim = rng.randint(0, 2) if dim is None else dim
    states = _states(rng.randint(1, 3) if n_states is None else n_states)
    transitions = []
    for p in states:
        for letter in letters:
            if rng.random() < density:
                transitions.append(Transition(p, letter, _vector(rng, dim, EFFECTS), rng.choice(states)))
    return Vass(
        alphabet=frozenset(letters),
        dim=dim,
        states=frozenset(states),
        transitions=tuple(transitions),
        initial=Configuration(states[0], _vector(rng, dim, range(max_constant + 1))),
        acceptance=_acceptance(rng, states, dim, max_constant),
        name=name or "random-det",
    )


def random_forked(rng, dim=None, n_states=2, letters=LETTERS, max_constant=2, name=None):
    """
    Two deterministic copies behind an initial fork on the first letter: at most two maximal runs per word.
    """
    left = random_deterministic(rng, dim, n_states, letters, max_constant=max_constant)
    right = random_deterministic(rng, left.dim, n_states, letters, max_constant=max_constant)
    fork = "i"
    states = {fork} | {("l", q) for q in left.states} | {("r", q) for q in right.states}
    first = letters[0]
    zero = (0,) * left.dim
    transitions = [
        Transition(fork, first, zero, ("l", left.initial.state)),
        Transition(fork, first, zero, ("r", right.initial.state)),
    ]
    for side, v in (("l", left), ("r", right)):
        transitions.extend(Transition((side, t.source), t.label, t.effect, (side, t.target)) for t in v.transitions)
    atoms = [UpAtom(("l", a.state), a.basis) for a in left.acceptance.atoms]
    atoms += [UpAtom(("r", a.state), a.basis) for a in right.acceptance.atoms]
    states = frozenset(states)
    return Vass(
        alphabet=frozenset(letters),
        dim=left.dim,
        states=states,
        transitions=tuple(transitions),
        initial=Configuration(fork, left.initial.counters),
        acceptance=Upward(UpSet(atoms, left.dim, states)),
        name=name or "random-forked",
    )


def random_holes(rng, v, max_constant=2):
    """v with one or two random hole atoms that avoid the initial configuration; v itself when that fails."""
    for _ in range(10):
        atoms = [
            DownAtom(rng.choice(sorted(v.states, key=state_key)), _vector(rng, v.dim, list(range(max_constant + 1))))
            for _ in range(rng.randint(1, 2))
        ]
        holes = DownSet(atoms, v.dim, v.states)
        if not any(a.contains(v.initial.state, v.initial.counters) for a in holes.atoms):
            return Vass(
                alphabet=v.alphabet,
                dim=v.dim,
                states=v.states,
                transitions=v.transitions,
                initial=v.initial,
                acceptance=v.acceptance,
                holes=holes,
                name=f"{v.name}-holes",
            )
    return v


def random_seed(rng, dim=1, n_states=2, n_transitions=3, name=None):
    """A singleton-accepting model with target counters all zero, the input of hardness_pair."""
    states = _states(n_states)
    transitions = tuple(
        Transition(rng.choice(states), "x", _vector(rng, dim, EFFECTS), rng.choice(states))
        for _ in range(n_transitions)
    )
    return Vass(
        alphabet=frozenset(["x"]),
        dim=dim,
        states=frozenset(states),
        transitions=transitions,
        initial=Configuration(states[0], _vector(rng, dim, (0, 1))),
        acceptance=Singleton(Configuration(rng.choice(states), (0,) * dim)),
        name=name or "seed",
    )


def generate(seed, count, generator=random_vass, **kwargs):
    """count models from generator, reproducible from seed."""
    rng = random.Random(seed)
    models = [generator(rng, name=f"{generator.__name__}-{seed}-{i}", **kwargs) for i in range(count)]
    logger.debug(f"generated {count} models with {generator.__name__} from seed {seed}")
    return models
