"""
Upward- and downward-closed sets of configurations.

A configuration is a state together with a vector of naturals. An upward-closed set is kept as a finite union of
up-atoms q(u)↑ and a downward-closed set as a finite union of down-atoms q(b)↓ where b may contain OMEGA. Sets are
always stored in canonical form: no atom is subsumed by another one and atoms are sorted by (state, vector), so two
sets are equal exactly when their canonical forms are equal.

    >>> up = UpSet([UpAtom("q", (1, 1))], dim=2)
    >>> complement_up(up)
    DownSet{q(0,w)↓, q(w,0)↓}
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import FrozenSet, Hashable, Tuple

from vassinc.errors import DimensionMismatch, ModelError, StateUniverseMismatch


class _Omega:
    """The value ω: above every natural, absorbing for addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "w"

    def __reduce__(self):
        return "OMEGA"

    def __hash__(self):
        return hash("vassinc.omega")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("w - w is undefined")
        return self

    def __neg__(self):
        raise ArithmeticError("-w is undefined")


OMEGA = _Omega()

NatVec = Tuple[int, ...]
OmegaVec = Tuple[object, ...]


def is_omega(value):
    return value is OMEGA


def state_label(state):
    """Render a state id as a single token: strings as-is, tuples as <a,b>."""
    if isinstance(state, str):
        return state
    if isinstance(state, tuple):
        return "<" + ",".join(state_label(part) for part in state) + ">"
    if state is None:
        return "_"
    return str(state)


def state_key(state):
    return state_label(state), type(state).__name__


def format_vector(vector):
    return "(" + ",".join(repr(x) if x is OMEGA else str(x) for x in vector) + ")"


def leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def vmax(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def vmin(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class Configuration:
    state: Hashable
    counters: NatVec

    def __post_init__(self):
        counters = tuple(self.counters)
        if any(is_omega(x) or x < 0 for x in counters):
            raise ModelError(f"configuration counters must be naturals: {format_vector(counters)}")
        object.__setattr__(self, "counters", counters)

    @property
    def dim(self):
        return len(self.counters)

    def __str__(self):
        return f"{state_label(self.state)}{format_vector(self.counters)}"


@dataclass(frozen=True)
class UpAtom:
    state: Hashable
    basis: NatVec

    def __post_init__(self):
        basis = tuple(self.basis)
        if any(is_omega(x) for x in basis):
            raise ModelError(f"up-atom {state_label(self.state)}{format_vector(basis)} contains w")
        if any(x < 0 for x in basis):
            raise ModelError(f"up-atom {state_label(self.state)}{format_vector(basis)} has a negative entry")
        object.__setattr__(self, "basis", basis)

    @property
    def vector(self):
        return self.basis

    def contains(self, state, counters):
        return state == self.state and leq(self.basis, counters)

    def covers(self, other):
        return other.state == self.state and leq(self.basis, other.basis)

    def __str__(self):
        return f"{state_label(self.state)}{format_vector(self.basis)}↑"


@dataclass(frozen=True)
class DownAtom:
    state: Hashable
    bound: OmegaVec

    def __post_init__(self):
        bound = tuple(self.bound)
        if any(not is_omega(x) and x < 0 for x in bound):
            raise ModelError(f"down-atom {state_label(self.state)}{format_vector(bound)} has a negative entry")
        object.__setattr__(self, "bound", bound)

    @property
    def vector(self):
        return self.bound

    def contains(self, state, counters):
        return state == self.state and leq(counters, self.bound)

    def covers(self, other):
        return other.state == self.state and leq(other.bound, self.bound)

    @property
    def is_column(self):
        """True when the atom is a whole state column q(w,...,w)↓."""
        return all(is_omega(x) for x in self.bound)

    def __str__(self):
        return f"{state_label(self.state)}{format_vector(self.bound)}↓"


def _atom_key(atom):
    return state_key(atom.state), atom.vector


def _canonical(atoms):
    by_state = {}
    for atom in set(atoms):
        by_state.setdefault(atom.state, []).append(atom)
    kept = []
    for group in by_state.values():
        antichain = []
        for atom in group:
            if any(b.covers(atom) for b in antichain):
                continue
            antichain = [b for b in antichain if not atom.covers(b)]
            antichain.append(atom)
        kept.extend(antichain)
    return tuple(sorted(kept, key=_atom_key))


@dataclass(frozen=True)
class _ClosedSet:
    atoms: tuple
    dim: int
    states: FrozenSet[Hashable] = field(default=None)

    atom_type = None

    def __init__(self, atoms=(), dim=None, states=None):
        atoms = tuple(atoms)
        for atom in atoms:
            if not isinstance(atom, self.atom_type):
                raise TypeError(f"{type(self).__name__} expects {self.atom_type.__name__}, got {atom!r}")
        if dim is None:
            if not atoms:
                raise DimensionMismatch(f"{type(self).__name__} without atoms needs an explicit dimension")
            dim = len(atoms[0].vector)
        for atom in atoms:
            if len(atom.vector) != dim:
                raise DimensionMismatch(f"atom {atom} does not have dimension {dim}")
        universe = frozenset(a.state for a in atoms)
        if states is not None:
            states = frozenset(states)
            stray = universe - states
            if stray:
                raise StateUniverseMismatch(f"atoms use undeclared states: {sorted(map(state_label, stray))}")
            universe = states
        object.__setattr__(self, "atoms", _canonical(atoms))
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "states", universe)

    def __iter__(self):
        return iter(self.atoms)

    def __len__(self):
        return len(self.atoms)

    def __bool__(self):
        return bool(self.atoms)

    def __repr__(self):
        return f"{type(self).__name__}{{{', '.join(map(str, self.atoms))}}}"

    @functools.cached_property
    def _by_state(self):
        index = {}
        for atom in self.atoms:
            index.setdefault(atom.state, []).append(atom)
        return index

    def atoms_at(self, state):
        return tuple(self._by_state.get(state, ()))

    def with_states(self, states):
        """The same set over a larger state universe."""
        return type(self)(self.atoms, self.dim, self.states | frozenset(states))

    def restrict(self, states):
        states = frozenset(states)
        return type(self)([a for a in self.atoms if a.state in states], self.dim, states)

    def __contains__(self, configuration):
        return member(self, configuration)


class UpSet(_ClosedSet):
    atom_type = UpAtom


class DownSet(_ClosedSet):
    atom_type = DownAtom


def up_set(atoms=(), dim=None, states=None):
    return UpSet(atoms, dim, states)


def down_set(atoms=(), dim=None, states=None):
    return DownSet(atoms, dim, states)


def max_constant(closed_set):
    """Largest finite entry of any atom, 0 for the empty set."""
    values = [x for atom in closed_set.atoms for x in atom.vector if not is_omega(x)]
    return max(values, default=0)


def _check_config(closed_set, configuration):
    if len(configuration.counters) != closed_set.dim:
        raise DimensionMismatch(
            f"configuration {configuration} has dimension {len(configuration.counters)}, set has {closed_set.dim}"
        )
    if configuration.state not in closed_set.states:
        raise StateUniverseMismatch(f"state {state_label(configuration.state)} is outside the set's state universe")


def member(closed_set, configuration):
    _check_config(closed_set, configuration)
    state, counters = configuration.state, configuration.counters
    return any(a.contains(state, counters) for a in closed_set.atoms_at(state))


def _check_pair(a, b):
    if type(a) is not type(b):
        raise TypeError(f"cannot combine {type(a).__name__} with {type(b).__name__}")
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} and {b.dim}")
    if a.states != b.states:
        raise StateUniverseMismatch("state universes differ")


def intersect(a, b):
    _check_pair(a, b)
    meet = vmax if isinstance(a, UpSet) else vmin
    atom_type = a.atom_type
    atoms = [atom_type(x.state, meet(x.vector, y.vector)) for x in a.atoms for y in b.atoms_at(x.state)]
    return type(a)(atoms, a.dim, a.states)


def union(a, b):
    _check_pair(a, b)
    return type(a)(a.atoms + b.atoms, a.dim, a.states)


def is_subset(a, b):
    """
    Inclusion of closed sets.
    For up-sets every atom of a must be covered by a single atom of b; for down-sets the same holds because
    ideals are prime: an ideal inside a finite union of ideals lies inside one of them.
    """
    _check_pair(a, b)
    return all(any(y.covers(x) for y in b.atoms_at(x.state)) for x in a.atoms)


def minimize(closed_set):
    return type(closed_set)(closed_set.atoms, closed_set.dim, closed_set.states)


def _maximal_avoiding(bases, dim):
    """Maximal vectors of ([0,m] ∪ {w})^d whose downward closure misses every up-atom basis."""
    values = [[OMEGA] + list(range(max(b[j] for b in bases) - 1, -1, -1)) for j in range(dim)]

    def disjoint(vector):
        return not any(leq(b, vector) for b in bases)

    found = []

    def walk(prefix):
        j = len(prefix)
        if j == dim:
            return
        for x in values[j]:
            candidate = prefix + (x,)
            optimistic = candidate + (OMEGA,) * (dim - j - 1)
            if disjoint(optimistic):
                # smaller values at j with the same prefix are dominated
                found.append(optimistic)
                break
            walk(candidate)

    walk(())
    return found


def _minimal_escaping(bounds, dim):
    """Minimal naturals vectors lying in no down-atom bound."""
    values = []
    for j in range(dim):
        finite = [b[j] for b in bounds if not is_omega(b[j])]
        values.append(list(range(0, max(finite) + 2)) if finite else [0])

    def outside(vector):
        return not any(leq(vector, b) for b in bounds)

    found = []

    def walk(prefix):
        j = len(prefix)
        if j == dim:
            return
        for x in values[j]:
            candidate = prefix + (x,)
            optimistic = candidate + (0,) * (dim - j - 1)
            if outside(optimistic):
                found.append(optimistic)
                break
            walk(candidate)

    walk(())
    return found


def complement_up(up):
    """Complement of an UpSet inside (state universe) x N^d, as a canonical DownSet."""
    atoms = []
    for state in up.states:
        bases = [a.basis for a in up.atoms_at(state)]
        if not bases:
            atoms.append(DownAtom(state, (OMEGA,) * up.dim))
            continue
        atoms.extend(DownAtom(state, v) for v in _maximal_avoiding(bases, up.dim))
    return DownSet(atoms, up.dim, up.states)


def complement_down(down):
    """Complement of a DownSet inside (state universe) x N^d, as a canonical UpSet."""
    atoms = []
    for state in down.states:
        bounds = [a.bound for a in down.atoms_at(state)]
        if not bounds:
            atoms.append(UpAtom(state, (0,) * down.dim))
            continue
        atoms.extend(UpAtom(state, v) for v in _minimal_escaping(bounds, down.dim))
    return UpSet(atoms, down.dim, down.states)


def complement(closed_set):
    if isinstance(closed_set, UpSet):
        return complement_up(closed_set)
    return complement_down(closed_set)


def column_states(down):
    """States whose whole column lies in the down-set."""
    return frozenset(a.state for a in down.atoms if a.is_column)


def iter_box(dim, bound):
    """Every vector of [0, bound]^dim, in lexicographic order."""
    return itertools.product(range(bound + 1), repeat=dim)


def covering_atom(closed_set, configuration):
    """First atom that contains the configuration, or None."""
    for atom in closed_set.atoms_at(configuration.state):
        if atom.contains(configuration.state, configuration.counters):
            return atom
    return None
