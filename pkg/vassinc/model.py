"""
The VASS data model.

A Vass is immutable: alphabet, dimension, states, transitions (indexed by position), initial configuration,
acceptance condition, holes and the ε flag. Acceptance is one of

    Upward(UpSet)        a finite union of up-atoms
    Downward(DownSet)    a finite union of down-atoms
    UpDown(atoms)        per-state products of an up part on coordinates J and a down part on the rest
    Singleton(c)         a single configuration

Holes are a DownSet of configurations a run may never enter. Coordinates are 0-based inside the library; the
user-facing helpers that take coordinate numbers (j_restriction, error messages) count from 1.

This module also holds the generator constructions that only rearrange models: products, restrictions, the
ambiguity witness, the hardness pair and the hole elimination gadget.
"""

from __future__ import annotations

import functools
import itertools
import logging
from collections import deque
from dataclasses import dataclass, replace
from typing import FrozenSet, Hashable, Tuple

from vassinc.errors import (
    AlphabetMismatch,
    HoleViolation,
    ModelError,
    StepError,
    Underflow,
    Undetermined,
    UnsupportedAcceptance,
    WrongState,
)
from vassinc.ideals import (
    OMEGA,
    Configuration,
    DownAtom,
    DownSet,
    UpAtom,
    UpSet,
    column_states,
    complement_down,
    format_vector,
    is_omega,
    member,
    state_key,
    state_label,
)

logger = logging.getLogger(__name__)

EPS = None


def label_text(label):
    return "eps" if label is EPS else str(label)


def letter_key(letter):
    return label_text(letter), type(letter).__name__


@dataclass(frozen=True)
class Transition:
    source: Hashable
    label: Hashable
    effect: Tuple[int, ...]
    target: Hashable

    def __post_init__(self):
        object.__setattr__(self, "effect", tuple(self.effect))

    @property
    def is_eps(self):
        return self.label is EPS

    def __str__(self):
        arrow = f"-{label_text(self.label)},{format_vector(self.effect)}->"
        return f"{state_label(self.source)} {arrow} {state_label(self.target)}"


@dataclass(frozen=True)
class Upward:
    atoms: UpSet

    kind = "upward"

    def contains(self, c):
        return member(self.atoms, c)

    @property
    def states(self):
        return frozenset(a.state for a in self.atoms)


@dataclass(frozen=True)
class Downward:
    atoms: DownSet

    kind = "downward"

    def contains(self, c):
        return member(self.atoms, c)

    @property
    def states(self):
        return frozenset(a.state for a in self.atoms)


@dataclass(frozen=True)
class UpDownAtom:
    """
    state(U x_J D): counters on the coordinates in up_coords must dominate `up`, the remaining coordinates (in
    increasing order) must lie below `down`, which may contain OMEGA.
    """

    state: Hashable
    up_coords: Tuple[int, ...]
    up: Tuple[int, ...]
    down: Tuple[object, ...]

    def __post_init__(self):
        object.__setattr__(self, "up_coords", tuple(self.up_coords))
        object.__setattr__(self, "up", tuple(self.up))
        object.__setattr__(self, "down", tuple(self.down))
        if len(self.up) != len(self.up_coords):
            raise ModelError(
                f"updown atom at {state_label(self.state)}: {len(self.up_coords)} up coordinates, {len(self.up)} values"
            )
        if list(self.up_coords) != sorted(set(self.up_coords)):
            raise ModelError("updown up coordinates must be strictly increasing")
        if any(is_omega(x) for x in self.up):
            raise ModelError("updown up part may not contain w")

    @property
    def dim(self):
        return len(self.up) + len(self.down)

    def roles(self):
        """Per coordinate: ("up", value) or ("down", value)."""
        ups = dict(zip(self.up_coords, self.up))
        downs = iter(self.down)
        return [("up", ups[j]) if j in ups else ("down", next(downs)) for j in range(self.dim)]

    @classmethod
    def from_roles(cls, state, roles):
        up_coords = tuple(j for j, (role, _) in enumerate(roles) if role == "up")
        up = tuple(value for role, value in roles if role == "up")
        down = tuple(value for role, value in roles if role == "down")
        return cls(state, up_coords, up, down)

    def contains(self, c):
        if c.state != self.state:
            return False
        for (role, value), x in zip(self.roles(), c.counters):
            if role == "up" and x < value:
                return False
            if role == "down" and x > value:
                return False
        return True

    def __str__(self):
        roles = self.roles()
        up = [j + 1 for j, (role, _) in enumerate(roles) if role == "up"]
        return (
            f"{state_label(self.state)} up{up}={format_vector(self.up)} down={format_vector(self.down)}"
        )


@dataclass(frozen=True)
class UpDown:
    atoms: Tuple[UpDownAtom, ...]
    dim: int

    kind = "updown"

    def __post_init__(self):
        atoms = tuple(sorted(set(self.atoms), key=lambda a: (state_key(a.state), a.up_coords, a.up, a.down)))
        for atom in atoms:
            if atom.dim != self.dim:
                raise ModelError(f"updown atom {atom} does not have dimension {self.dim}")
        object.__setattr__(self, "atoms", atoms)

    def contains(self, c):
        return any(a.contains(c) for a in self.atoms)

    @property
    def states(self):
        return frozenset(a.state for a in self.atoms)


@dataclass(frozen=True)
class Singleton:
    target: Configuration

    kind = "singleton"

    def contains(self, c):
        return c == self.target

    @property
    def states(self):
        return frozenset([self.target.state])


def _empty_holes(dim, states):
    return DownSet((), dim, states)


def _rebase(closed_set, states, what):
    if closed_set.states == states:
        return closed_set
    stray = frozenset(a.state for a in closed_set.atoms) - states
    if stray:
        raise ModelError(f"{what} uses undeclared states: {sorted(map(state_label, stray))}")
    return type(closed_set)(closed_set.atoms, closed_set.dim, states)


@dataclass(frozen=True)
class Vass:
    alphabet: FrozenSet[Hashable]
    dim: int
    states: FrozenSet[Hashable]
    transitions: Tuple[Transition, ...]
    initial: Configuration
    acceptance: object
    holes: DownSet = None
    eps_allowed: bool = False
    name: str = "vass"

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        if self.holes is None:
            object.__setattr__(self, "holes", _empty_holes(self.dim, self.states))
        else:
            object.__setattr__(self, "holes", _rebase(self.holes, self.states, "holes"))
        acceptance = self.acceptance
        if isinstance(acceptance, Upward):
            object.__setattr__(self, "acceptance", Upward(_rebase(acceptance.atoms, self.states, "acceptance")))
        elif isinstance(acceptance, Downward):
            object.__setattr__(self, "acceptance", Downward(_rebase(acceptance.atoms, self.states, "acceptance")))
        self._validate()

    def _validate(self):
        if self.dim < 0:
            raise ModelError("dimension must be nonnegative")
        if EPS in self.alphabet:
            raise ModelError("the alphabet may not contain the empty label")
        for tid, t in enumerate(self.transitions):
            for endpoint in (t.source, t.target):
                if endpoint not in self.states:
                    raise ModelError(f"transition {tid} uses undeclared state {state_label(endpoint)}")
            if len(t.effect) != self.dim:
                raise ModelError(f"transition {tid} has effect of length {len(t.effect)}, dimension is {self.dim}")
            if t.is_eps and not self.eps_allowed:
                raise ModelError(f"transition {tid} is labelled eps but eps is not enabled")
            if not t.is_eps and t.label not in self.alphabet:
                raise ModelError(f"transition {tid} uses letter {label_text(t.label)} outside the alphabet")
        if self.initial.state not in self.states:
            raise ModelError(f"initial state {state_label(self.initial.state)} is not declared")
        if self.initial.dim != self.dim:
            raise ModelError(f"initial configuration {self.initial} does not have dimension {self.dim}")
        if self.holes.dim != self.dim:
            raise ModelError(f"holes have dimension {self.holes.dim}, model has {self.dim}")
        if member(self.holes, self.initial):
            raise ModelError(f"initial configuration {self.initial} lies inside the holes")
        acceptance = self.acceptance
        if isinstance(acceptance, (Upward, Downward)):
            if acceptance.atoms.dim != self.dim:
                raise ModelError(f"acceptance has dimension {acceptance.atoms.dim}, model has {self.dim}")
        elif isinstance(acceptance, UpDown):
            if acceptance.dim != self.dim:
                raise ModelError(f"acceptance has dimension {acceptance.dim}, model has {self.dim}")
        elif isinstance(acceptance, Singleton):
            if acceptance.target.dim != self.dim:
                raise ModelError(f"target {acceptance.target} does not have dimension {self.dim}")
        else:
            raise ModelError(f"unknown acceptance {acceptance!r}")
        stray = acceptance.states - self.states
        if stray:
            raise ModelError(f"acceptance uses undeclared states: {sorted(map(state_label, stray))}")

    @functools.cached_property
    def outgoing(self):
        index = {q: [] for q in self.states}
        for tid, t in enumerate(self.transitions):
            index[t.source].append(tid)
        return index

    @functools.cached_property
    def by_label(self):
        index = {}
        for tid, t in enumerate(self.transitions):
            index.setdefault((t.source, t.label), []).append(tid)
        return index

    @functools.cached_property
    def letters(self):
        """The alphabet in a fixed order (length-lex order of words uses it)."""
        return tuple(sorted(self.alphabet, key=letter_key))

    @functools.cached_property
    def hole_columns(self):
        return column_states(self.holes)

    @property
    def has_holes(self):
        return bool(self.holes.atoms)

    @property
    def has_eps(self):
        return any(t.is_eps for t in self.transitions)

    def transitions_on(self, state, label):
        return self.by_label.get((state, label), ())

    def __str__(self):
        size = f"{len(self.states)} states, {len(self.transitions)} transitions"
        return f"Vass({self.name}: dim={self.dim}, {size}, {self.acceptance.kind})"


@dataclass(frozen=True)
class Run:
    steps: Tuple[Tuple[Configuration, int, Configuration], ...] = ()
    start: Configuration = None

    @property
    def transitions(self):
        return tuple(tid for _, tid, _ in self.steps)

    @property
    def end(self):
        return self.steps[-1][2] if self.steps else self.start

    def word(self, v):
        return tuple(v.transitions[tid].label for tid in self.transitions if not v.transitions[tid].is_eps)

    def __len__(self):
        return len(self.steps)


def accepts_config(v, c):
    return v.acceptance.contains(c)


def in_holes(v, c):
    return bool(v.holes.atoms) and member(v.holes, c)


def step(v, c, tid):
    """
    Fire transition tid in configuration c.
    :param v: Vass
    :param c: Configuration
    :param tid: transition index
    :return: the successor Configuration
    :raises WrongState, Underflow, HoleViolation:
    """
    if not 0 <= tid < len(v.transitions):
        raise StepError(f"transition {tid} does not exist")
    t = v.transitions[tid]
    if t.source != c.state:
        raise WrongState(f"transition {tid} leaves {state_label(t.source)}, configuration is at {state_label(c.state)}")
    counters = []
    for j, (x, e) in enumerate(zip(c.counters, t.effect)):
        if x + e < 0:
            raise Underflow(j + 1)
        counters.append(x + e)
    successor = Configuration(t.target, tuple(counters))
    if in_holes(v, successor):
        raise HoleViolation(f"{successor} lies inside the holes")
    return successor


def successors(v, c, eps=None):
    """
    Every (tid, configuration) reachable from c in one step.
    :param eps: None for all transitions, True for ε-transitions only, False for lettered ones only
    """
    for tid in v.outgoing.get(c.state, ()):
        t = v.transitions[tid]
        if eps is not None and t.is_eps != eps:
            continue
        counters = tuple(x + e for x, e in zip(c.counters, t.effect))
        if any(x < 0 for x in counters):
            continue
        successor = Configuration(t.target, counters)
        if in_holes(v, successor):
            continue
        yield tid, successor


def replay(v, run, start=None):
    """Re-fire a sequence of transition ids from the initial configuration and return the Run."""
    current = v.initial if start is None else start
    steps = []
    for tid in run:
        nxt = step(v, current, tid)
        steps.append((current, tid, nxt))
        current = nxt
    return Run(tuple(steps), v.initial if start is None else start)


def fresh_state(states, base):
    candidate = base
    while candidate in states:
        candidate = f"{state_label(candidate)}'"
    return candidate


def norm(v):
    """n(V): the largest absolute value of a number written in v (at least 1)."""
    values = [abs(e) for t in v.transitions for e in t.effect]
    values.extend(v.initial.counters)
    acceptance = v.acceptance
    if isinstance(acceptance, (Upward, Downward)):
        values.extend(x for a in acceptance.atoms for x in a.vector if not is_omega(x))
    elif isinstance(acceptance, UpDown):
        values.extend(x for a in acceptance.atoms for x in a.up + a.down if not is_omega(x))
    else:
        values.extend(acceptance.target.counters)
    return max(values + [1])


def map_acceptance(acceptance, rename, states, dim):
    """Apply a state renaming to an acceptance condition; states is the new state universe."""
    if isinstance(acceptance, Upward):
        return Upward(UpSet([UpAtom(rename(a.state), a.basis) for a in acceptance.atoms], dim, states))
    if isinstance(acceptance, Downward):
        return Downward(DownSet([DownAtom(rename(a.state), a.bound) for a in acceptance.atoms], dim, states))
    if isinstance(acceptance, UpDown):
        return UpDown(tuple(replace(a, state=rename(a.state)) for a in acceptance.atoms), dim)
    return Singleton(Configuration(rename(acceptance.target.state), acceptance.target.counters))


def rename_states(v, mapping):
    """Rename states with a dict or a callable; the mapping must be injective on v.states."""
    rename = mapping if callable(mapping) else mapping.__getitem__
    states = frozenset(rename(q) for q in v.states)
    if len(states) != len(v.states):
        raise ModelError("state renaming is not injective")
    return Vass(
        alphabet=v.alphabet,
        dim=v.dim,
        states=states,
        transitions=tuple(Transition(rename(t.source), t.label, t.effect, rename(t.target)) for t in v.transitions),
        initial=Configuration(rename(v.initial.state), v.initial.counters),
        acceptance=map_acceptance(v.acceptance, rename, states, v.dim),
        holes=DownSet([DownAtom(rename(a.state), a.bound) for a in v.holes], v.dim, states),
        eps_allowed=v.eps_allowed,
        name=v.name,
    )


def with_alphabet(v, alphabet):
    alphabet = frozenset(alphabet)
    if not v.alphabet <= alphabet:
        raise AlphabetMismatch("the new alphabet must contain the old one")
    return replace(v, alphabet=alphabet)


def control_automaton(v):
    """
    Erase the counters. Accepting states are the states that occur in the acceptance condition; holes are dropped.
    """
    if v.dim == 0:
        return v
    accepting = sorted(v.acceptance.states, key=state_key)
    return Vass(
        alphabet=v.alphabet,
        dim=0,
        states=v.states,
        transitions=tuple(Transition(t.source, t.label, (), t.target) for t in v.transitions),
        initial=Configuration(v.initial.state, ()),
        acceptance=Upward(UpSet([UpAtom(q, ()) for q in accepting], 0, v.states)),
        eps_allowed=v.eps_allowed,
        name=f"{v.name}-control",
    )


def _updown_atoms(acceptance, dim):
    if isinstance(acceptance, Upward):
        return [UpDownAtom(a.state, tuple(range(dim)), a.basis, ()) for a in acceptance.atoms]
    if isinstance(acceptance, Downward):
        return [UpDownAtom(a.state, (), (), a.bound) for a in acceptance.atoms]
    if isinstance(acceptance, UpDown):
        return list(acceptance.atoms)
    raise UnsupportedAcceptance("singleton acceptance does not combine in products")


def _flip_dim0(acceptance, dim, states):
    """A dim-0 Upward set is also a Downward one (and back): both are sets of states."""
    if dim != 0:
        return acceptance
    if isinstance(acceptance, Upward):
        return Downward(DownSet([DownAtom(a.state, ()) for a in acceptance.atoms], 0, states))
    if isinstance(acceptance, Downward):
        return Upward(UpSet([UpAtom(a.state, ()) for a in acceptance.atoms], 0, states))
    return acceptance


def _product_acceptance(v1, v2, states):
    a1, a2 = v1.acceptance, v2.acceptance
    if {type(a1), type(a2)} == {Upward, Downward}:
        if v1.dim == 0:
            a1 = _flip_dim0(a1, 0, v1.states)
        elif v2.dim == 0:
            a2 = _flip_dim0(a2, 0, v2.states)
    dim = v1.dim + v2.dim
    if isinstance(a1, Upward) and isinstance(a2, Upward):
        atoms = [
            UpAtom((x.state, y.state), x.basis + y.basis)
            for x in a1.atoms
            for y in a2.atoms
            if (x.state, y.state) in states
        ]
        return Upward(UpSet(atoms, dim, states))
    if isinstance(a1, Downward) and isinstance(a2, Downward):
        atoms = [
            DownAtom((x.state, y.state), x.bound + y.bound)
            for x in a1.atoms
            for y in a2.atoms
            if (x.state, y.state) in states
        ]
        return Downward(DownSet(atoms, dim, states))
    atoms = []
    for x in _updown_atoms(a1, v1.dim):
        for y in _updown_atoms(a2, v2.dim):
            if (x.state, y.state) in states:
                atoms.append(UpDownAtom.from_roles((x.state, y.state), x.roles() + y.roles()))
    return UpDown(tuple(atoms), dim)


def product(v1, v2, max_states=None, logger=logger):
    """
    Synchronous product: lettered transitions move both components, ε-transitions move one component while the
    other stays. Only pairs reachable in the control graph are built.
    :raises Undetermined: when more than max_states pairs are reachable
    """
    if v1.alphabet != v2.alphabet:
        raise AlphabetMismatch(
            f"alphabets differ: {sorted(map(label_text, v1.alphabet))} and {sorted(map(label_text, v2.alphabet))}"
        )
    zero1, zero2 = (0,) * v1.dim, (0,) * v2.dim
    start = (v1.initial.state, v2.initial.state)
    seen = {start}
    queue = deque([start])
    transitions = []
    while queue:
        p, q = queue.popleft()
        moves = []
        for tid1 in v1.outgoing[p]:
            t1 = v1.transitions[tid1]
            if t1.is_eps:
                moves.append(Transition((p, q), EPS, t1.effect + zero2, (t1.target, q)))
                continue
            for tid2 in v2.transitions_on(q, t1.label):
                t2 = v2.transitions[tid2]
                moves.append(Transition((p, q), t1.label, t1.effect + t2.effect, (t1.target, t2.target)))
        for tid2 in v2.outgoing[q]:
            t2 = v2.transitions[tid2]
            if t2.is_eps:
                moves.append(Transition((p, q), EPS, zero1 + t2.effect, (p, t2.target)))
        for t in moves:
            transitions.append(t)
            if t.target not in seen:
                seen.add(t.target)
                queue.append(t.target)
                if max_states is not None and len(seen) > max_states:
                    raise Undetermined(
                        f"product {v1.name} x {v2.name} exceeds {max_states} states",
                        {"cutoff": "abstraction_nodes", "states": len(seen), "max_states": max_states},
                    )
    states = frozenset(seen)
    holes = [
        DownAtom((a.state, q), a.bound + (OMEGA,) * v2.dim)
        for a in v1.holes
        for q in v2.states
        if (a.state, q) in states
    ]
    holes += [
        DownAtom((p, a.state), (OMEGA,) * v1.dim + a.bound)
        for a in v2.holes
        for p in v1.states
        if (p, a.state) in states
    ]
    result = Vass(
        alphabet=v1.alphabet,
        dim=v1.dim + v2.dim,
        states=states,
        transitions=tuple(transitions),
        initial=Configuration(start, v1.initial.counters + v2.initial.counters),
        acceptance=_product_acceptance(v1, v2, states),
        holes=DownSet(holes, v1.dim + v2.dim, states),
        eps_allowed=v1.eps_allowed or v2.eps_allowed,
        name=f"{v1.name}x{v2.name}",
    )
    logger.debug(f"product {v1.name} x {v2.name}: {len(states)} states, {len(transitions)} transitions")
    return result


def j_restriction(v, coordinates):
    """
    Keep only the coordinates in J (1-based) in effects, the initial configuration and the acceptance condition.
    """
    keep = sorted(set(coordinates))
    for j in keep:
        if not isinstance(j, int) or not 1 <= j <= v.dim:
            raise ModelError(f"coordinate {j} is outside [1,{v.dim}]")
    if v.has_holes:
        raise ModelError("J-restriction is defined for models without holes")
    index = [j - 1 for j in keep]
    dim = len(index)

    def cut(vector):
        return tuple(vector[j] for j in index)

    acceptance = v.acceptance
    if isinstance(acceptance, Upward):
        acceptance = Upward(UpSet([UpAtom(a.state, cut(a.basis)) for a in acceptance.atoms], dim, v.states))
    elif isinstance(acceptance, Downward):
        acceptance = Downward(DownSet([DownAtom(a.state, cut(a.bound)) for a in acceptance.atoms], dim, v.states))
    elif isinstance(acceptance, UpDown):
        acceptance = UpDown(
            tuple(UpDownAtom.from_roles(a.state, cut(a.roles())) for a in acceptance.atoms),
            dim,
        )
    else:
        acceptance = Singleton(Configuration(acceptance.target.state, cut(acceptance.target.counters)))
    return Vass(
        alphabet=v.alphabet,
        dim=dim,
        states=v.states,
        transitions=tuple(Transition(t.source, t.label, cut(t.effect), t.target) for t in v.transitions),
        initial=Configuration(v.initial.state, cut(v.initial.counters)),
        acceptance=acceptance,
        eps_allowed=v.eps_allowed,
        name=f"{v.name}|{','.join(map(str, keep))}",
    )


def restricted_growth(labels):
    """Renumber block labels by first occurrence: ("x","y","x") -> (0,1,0)."""
    numbering = {}
    return tuple(numbering.setdefault(label, len(numbering)) for label in labels)


def _require_upward(v, what):
    if not isinstance(v.acceptance, Upward):
        raise UnsupportedAcceptance(f"{what} needs upward acceptance, got {v.acceptance.kind}")


def ambiguity_witness(v, k, logger=logger):
    """
    Simulate k+1 copies of v that accept only when all copies took pairwise different accepting runs.

    A state is (component states, partition of the copies) where the partition, in restricted-growth form, groups
    the copies that have fired identical transition sequences so far. The result has dimension d*(k+1).
    """
    _require_upward(v, "ambiguity_witness")
    if v.has_eps:
        raise ModelError("ambiguity_witness needs a model without eps-transitions")
    if k < 0:
        raise ModelError("k must be nonnegative")
    copies = k + 1
    d = v.dim
    start = ((v.initial.state,) * copies, (0,) * copies)
    seen = {start}
    queue = deque([start])
    transitions = []
    while queue:
        state = queue.popleft()
        components, blocks = state
        for letter in v.letters:
            options = [v.transitions_on(q, letter) for q in components]
            if not all(options):
                continue
            for choice in itertools.product(*options):
                moved = tuple(v.transitions[tid] for tid in choice)
                target = (
                    tuple(t.target for t in moved),
                    restricted_growth(list(zip(blocks, choice))),
                )
                effect = tuple(e for t in moved for e in t.effect)
                transitions.append(Transition(state, letter, effect, target))
                if target not in seen:
                    seen.add(target)
                    queue.append(target)
    states = frozenset(seen)
    discrete = tuple(range(copies))
    accepting = []
    holes = []
    for components, blocks in states:
        state = (components, blocks)
        if blocks == discrete:
            per_copy = [v.acceptance.atoms.atoms_at(q) for q in components]
            for pick in itertools.product(*per_copy):
                accepting.append(UpAtom(state, tuple(x for atom in pick for x in atom.basis)))
        for i, q in enumerate(components):
            for hole in v.holes.atoms_at(q):
                holes.append(DownAtom(state, (OMEGA,) * (d * i) + hole.bound + (OMEGA,) * (d * (copies - i - 1))))
    result = Vass(
        alphabet=v.alphabet,
        dim=d * copies,
        states=states,
        transitions=tuple(transitions),
        initial=Configuration(start, v.initial.counters * copies),
        acceptance=Upward(UpSet(accepting, d * copies, states)),
        holes=DownSet(holes, d * copies, states),
        name=f"{v.name}-amb{k}",
    )
    logger.debug(f"ambiguity witness for k={k}: {len(states)} states, {len(transitions)} transitions")
    return result


def hardness_pair(v):
    """
    Two deterministic (d+1)-dimensional upward models over T ∪ {a} that are equivalent iff v accepts nothing.

    Letter t<i> fires transition i of v; the extra coordinate tracks the sum of the others. After reaching the
    target state both models read a; the second one additionally needs a nonzero sum.
    """
    acceptance = v.acceptance
    if not isinstance(acceptance, Singleton) or any(acceptance.target.counters):
        raise UnsupportedAcceptance("hardness_pair needs singleton acceptance with all counters zero")
    if v.has_holes:
        raise ModelError("hardness_pair needs a model without holes")
    final = acceptance.target.state
    closing = fresh_state(v.states, f"{state_label(final)}'")
    states = v.states | {closing}
    letters = [f"t{tid}" for tid in range(len(v.transitions))]
    base = tuple(
        Transition(t.source, letters[tid], t.effect + (sum(t.effect),), t.target) for tid, t in enumerate(v.transitions)
    )
    d = v.dim
    accept = Upward(UpSet([UpAtom(closing, (0,) * (d + 1))], d + 1, states))
    initial = Configuration(v.initial.state, v.initial.counters + (sum(v.initial.counters),))
    alphabet = frozenset(letters) | {"a"}
    pair = []
    for suffix, last in (("1", (0,) * (d + 1)), ("2", (0,) * d + (-1,))):
        pair.append(
            Vass(
                alphabet=alphabet,
                dim=d + 1,
                states=states,
                transitions=base + (Transition(final, "a", last, closing),),
                initial=initial,
                acceptance=accept,
                name=f"{v.name}-hard{suffix}",
            )
        )
    return tuple(pair)


def hvass_to_epsvass(v, logger=logger):
    """
    Replace the holes by ε-tests.

    Every state q is split into (q,0), before the test, and (q,1), after it. The test subtracts a basis vector u of
    the complement of the holes at q and adds it back, which succeeds exactly when the configuration is outside
    the holes. Lettered and ε-transitions leave from (p,1) and enter (q,0).
    """
    allowed = complement_down(v.holes)
    transitions = []
    tests = []
    for t in v.transitions:
        transitions.append(Transition((t.source, 1), t.label, t.effect, (t.target, 0)))
    for i, atom in enumerate(allowed.atoms):
        gate = ("test", atom.state, i)
        tests.append(gate)
        transitions.append(Transition((atom.state, 0), EPS, tuple(-x for x in atom.basis), gate))
        transitions.append(Transition(gate, EPS, atom.basis, (atom.state, 1)))
    states = frozenset((q, bit) for q in v.states for bit in (0, 1)) | frozenset(tests)
    result = Vass(
        alphabet=v.alphabet,
        dim=v.dim,
        states=states,
        transitions=tuple(transitions),
        initial=Configuration((v.initial.state, 0), v.initial.counters),
        acceptance=map_acceptance(v.acceptance, lambda q: (q, 1), states, v.dim),
        eps_allowed=True,
        name=f"{v.name}-eps",
    )
    logger.debug(f"hole elimination: {len(allowed)} test atoms, {len(states)} states")
    return result


def syntactic_deterministic(v):
    """
    At most one transition per (state, letter) and no ε-transitions. Transitions touching a state whose whole
    column is a hole can never fire and are ignored.
    """
    dead = v.hole_columns
    counts = {}
    for t in v.transitions:
        if t.source in dead or t.target in dead:
            continue
        if t.is_eps:
            return False
        key = (t.source, t.label)
        counts[key] = counts.get(key, 0) + 1
        if counts[key] > 1:
            return False
    return True


def bounded_semantic_deterministic(v, length):
    """
    Explore the configurations reachable by words of length <= length and check that no configuration has two
    different successors on the same letter.
    """
    if v.has_eps:
        logger.debug("bounded determinism check refused: model has eps-transitions")
        return False
    frontier = {v.initial}
    seen = set(frontier)
    for _ in range(length + 1):
        following = set()
        for c in frontier:
            by_letter = {}
            for tid, nxt in successors(v, c):
                by_letter.setdefault(v.transitions[tid].label, set()).add(nxt)
            for letter, targets in by_letter.items():
                if len(targets) > 1:
                    logger.debug(f"{c} has {len(targets)} successors on {label_text(letter)}")
                    return False
                following |= targets
        frontier = following - seen
        seen |= following
    return True


