"""
Finite monoids, homomorphisms and decorations.

Monoid elements are the indices 0..n-1 of a multiplication table. A homomorphism is fixed by the images of the
letters. The decoration of a word w = a1...an under (M, h) is the word

    (eps, h(w)) (a1, h(a2...an)) (a2, h(a3...an)) ... (an, h(eps))

over the letters DecoratedLetter(base, mark). Decorating a VASS reads decorated words; the states that can no longer
accept are turned into holes, which is what makes decorations of unambiguous models deterministic once the monoid
separates the relevant configuration languages.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Hashable, NamedTuple, Tuple

from vassinc.coverability import empty_language_configs
from vassinc.errors import AlphabetMismatch, BudgetExhausted, ModelError, UnsupportedAcceptance
from vassinc.ideals import Configuration, DownAtom, DownSet, UpAtom, UpSet, column_states, state_label
from vassinc.model import (
    EPS,
    Downward,
    Transition,
    UpDown,
    Upward,
    Vass,
    fresh_state,
    label_text,
)

logger = logging.getLogger(__name__)

BOTTOM = "bot"


@dataclass(frozen=True)
class FiniteMonoid:
    table: Tuple[Tuple[int, ...], ...]
    identity: int = 0
    check: bool = True

    def __post_init__(self):
        table = tuple(tuple(row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n == 0:
            raise ModelError("a monoid has at least one element")
        if any(len(row) != n for row in table):
            raise ModelError("the multiplication table must be square")
        if any(not 0 <= x < n for row in table for x in row):
            raise ModelError("multiplication table entries must be element indices")
        if not 0 <= self.identity < n:
            raise ModelError(f"identity {self.identity} is not an element")
        for x in range(n):
            if table[self.identity][x] != x or table[x][self.identity] != x:
                raise ModelError(f"{self.identity} is not an identity for element {x}")
        if self.check:
            for x, y, z in itertools.product(range(n), repeat=3):
                if table[table[x][y]][z] != table[x][table[y][z]]:
                    raise ModelError(f"multiplication is not associative on ({x}, {y}, {z})")

    def __len__(self):
        return len(self.table)

    @property
    def size(self):
        return len(self.table)

    @property
    def elements(self):
        return range(len(self.table))

    def multiply(self, x, y):
        return self.table[x][y]

    def product(self, elements):
        result = self.identity
        for x in elements:
            result = self.table[result][x]
        return result


@dataclass(frozen=True)
class Hom:
    monoid: FiniteMonoid
    images: Dict[Hashable, int]

    def __post_init__(self):
        object.__setattr__(self, "images", dict(self.images))
        if EPS in self.images:
            raise ModelError("the empty word always maps to the identity")
        for letter, x in self.images.items():
            if not 0 <= x < self.monoid.size:
                raise ModelError(f"h({label_text(letter)}) = {x} is not an element")

    def __hash__(self):
        return hash((self.monoid, tuple(sorted(self.images.items(), key=lambda kv: label_text(kv[0])))))

    @property
    def alphabet(self):
        return frozenset(self.images)

    def __call__(self, letter):
        if letter is EPS:
            return self.monoid.identity
        try:
            return self.images[letter]
        except KeyError:
            raise AlphabetMismatch(f"h is not defined on {label_text(letter)}") from None

    def apply(self, word):
        return self.monoid.product(self(letter) for letter in word)


@dataclass(frozen=True)
class DecoratedLetter:
    base: Hashable
    mark: int

    def __str__(self):
        return f"{label_text(self.base)}@{self.mark}"


class TransitionMonoid(NamedTuple):
    monoid: FiniteMonoid
    hom: Hom
    accepting: Dict[Hashable, frozenset]
    order: Tuple[Hashable, ...]
    matrices: Tuple[Tuple[int, ...], ...]


def compose(a, b):
    """Product of two relations stored as bit rows: row p of the result is the union of the rows of b picked by a."""
    rows = []
    for row in a:
        acc = 0
        q = 0
        while row:
            if row & 1:
                acc |= b[q]
            row >>= 1
            q += 1
        rows.append(acc)
    return tuple(rows)


def transition_monoid(a, max_elements=None, logger=logger):
    """
    The monoid of step relations of a dimension-0 automaton.
    :param a: Vass of dimension 0 without ε-transitions
    :param max_elements: optional cap on the monoid size
    :return: TransitionMonoid; element 0 is the identity relation
    """
    if a.dim != 0:
        raise ModelError("transition_monoid needs a dimension-0 automaton")
    if a.has_eps:
        raise ModelError("transition_monoid needs an automaton without eps-transitions")
    order = tuple(sorted(a.states, key=lambda q: (state_label(q), repr(q))))
    index = {q: i for i, q in enumerate(order)}
    generators = {}
    for letter in a.letters:
        rows = [0] * len(order)
        for t in a.transitions:
            if t.label == letter:
                rows[index[t.source]] |= 1 << index[t.target]
        generators[letter] = tuple(rows)
    identity = tuple(1 << i for i in range(len(order)))
    matrices = [identity]
    position = {identity: 0}
    queue = deque([identity])
    while queue:
        m = queue.popleft()
        for letter in a.letters:
            nxt = compose(m, generators[letter])
            if nxt not in position:
                position[nxt] = len(matrices)
                matrices.append(nxt)
                queue.append(nxt)
                if max_elements is not None and len(matrices) > max_elements:
                    raise BudgetExhausted(
                        f"transition monoid exceeds {max_elements} elements", {"cutoff": "max_elements"}
                    )
    table = tuple(tuple(position[compose(x, y)] for y in matrices) for x in matrices)
    monoid = FiniteMonoid(table, 0, check=False)
    hom = Hom(monoid, {letter: position[generators[letter]] for letter in a.letters})
    final = 0
    for q in a.acceptance.states:
        final |= 1 << index[q]
    accepting = {q: frozenset(i for i, m in enumerate(matrices) if m[index[q]] & final) for q in order}
    logger.debug(f"transition monoid of {a.name}: {len(matrices)} elements")
    return TransitionMonoid(monoid, hom, accepting, order, tuple(matrices))


def trivial_monoid():
    return FiniteMonoid(((0,),))


def parity_monoid(letter, alphabet):
    """Z2 counting occurrences of letter: 0 even (identity), 1 odd."""
    monoid = FiniteMonoid(((0, 1), (1, 0)))
    return Hom(monoid, {a: 1 if a == letter else 0 for a in alphabet})


def separator_monoid(marker, alphabet):
    """Two elements: 0 "marker absent" (identity) and 1 "marker present" (zero)."""
    monoid = FiniteMonoid(((0, 1), (1, 1)))
    return Hom(monoid, {a: 1 if a == marker else 0 for a in alphabet})


def decorate_word(word, hom):
    """
    :param word: sequence of letters
    :param hom: Hom
    :return: tuple of DecoratedLetter of length len(word) + 1
    """
    word = tuple(word)
    marks = [hom.monoid.identity]
    for letter in reversed(word):
        marks.append(hom.monoid.multiply(hom(letter), marks[-1]))
    marks.reverse()
    return (DecoratedLetter(EPS, marks[0]),) + tuple(DecoratedLetter(a, m) for a, m in zip(word, marks[1:]))


def decorated_alphabet(alphabet, monoid):
    bases = [EPS] + sorted(alphabet, key=label_text)
    return frozenset(DecoratedLetter(base, m) for base in bases for m in monoid.elements)


def project_word(word):
    return tuple(letter.base for letter in word if letter.base is not EPS)


def _suffix_consistent(letters, hom):
    """m_{i-1} = h(a_i) m_i along the letters and the last mark is the identity."""
    monoid = hom.monoid
    following = monoid.identity
    for letter in reversed(letters):
        if letter.base is EPS or letter.mark != following:
            return False
        following = monoid.multiply(hom(letter.base), letter.mark)
    return True


def is_well_formed(word, hom):
    word = tuple(word)
    if not word or word[0].base is not EPS:
        return False
    rest = word[1:]
    if not _suffix_consistent(rest, hom):
        return False
    expected = decorate_word(project_word(rest), hom)[0].mark
    return word[0].mark == expected


def is_almost_well_formed(word, hom):
    """A well-formed word with its (eps, m) head removed."""
    return _suffix_consistent(tuple(word), hom)


def well_formed_automaton(alphabet, hom):
    """
    Total deterministic automaton over the decorated alphabet accepting exactly the well-formed words. States are
    "init", the monoid elements and "sink".
    """
    monoid = hom.monoid
    letters = decorated_alphabet(alphabet, monoid)
    states = frozenset(["init", "sink"]) | frozenset(monoid.elements)
    transitions = []
    for letter in sorted(letters, key=str):
        if letter.base is EPS:
            transitions.append(Transition("init", letter, (), letter.mark))
        else:
            transitions.append(Transition("init", letter, (), "sink"))
        transitions.append(Transition("sink", letter, (), "sink"))
        for m in monoid.elements:
            if letter.base is not EPS and m == monoid.multiply(hom(letter.base), letter.mark):
                transitions.append(Transition(m, letter, (), letter.mark))
            else:
                transitions.append(Transition(m, letter, (), "sink"))
    return Vass(
        alphabet=letters,
        dim=0,
        states=states,
        transitions=tuple(transitions),
        initial=Configuration("init", ()),
        acceptance=Upward(UpSet([UpAtom(monoid.identity, ())], 0, states)),
        name="well-formed",
    )


def _decorate(v, hom):
    """Hole-free decoration plus, per decorated transition, the index of the transition it copies (None for eps)."""
    monoid = hom.monoid
    missing = v.alphabet - hom.alphabet
    if missing:
        raise AlphabetMismatch(f"h is not defined on {sorted(map(label_text, missing))}")
    if v.has_eps:
        raise ModelError("decoration needs a model without eps-transitions")
    states = frozenset((q, m) for q in v.states for m in list(monoid.elements) + [BOTTOM])
    start = (v.initial.state, BOTTOM)
    zero = (0,) * v.dim
    transitions = []
    origins = []
    for m in monoid.elements:
        transitions.append(Transition(start, DecoratedLetter(EPS, m), zero, (v.initial.state, m)))
        origins.append(None)
    for tid, t in enumerate(v.transitions):
        image = hom(t.label)
        for m in monoid.elements:
            transitions.append(
                Transition((t.source, monoid.multiply(image, m)), DecoratedLetter(t.label, m), t.effect, (t.target, m))
            )
            origins.append(tid)
    acceptance = Upward(
        UpSet([UpAtom((a.state, monoid.identity), a.basis) for a in v.acceptance.atoms], v.dim, states)
    )
    decorated = Vass(
        alphabet=decorated_alphabet(v.alphabet, monoid),
        dim=v.dim,
        states=states,
        transitions=tuple(transitions),
        initial=Configuration(start, v.initial.counters),
        acceptance=acceptance,
        name=f"{v.name}-dec",
    )
    return decorated, tuple(origins)


def _require_plain_upward(v, what):
    if not isinstance(v.acceptance, Upward):
        raise UnsupportedAcceptance(f"{what} needs upward acceptance, got {v.acceptance.kind}")
    if v.has_holes:
        raise ModelError(f"{what} needs a model without holes")


def decorate_vass(v, hom, logger=logger):
    """
    The (M, h)-decoration of an upward-accepting VASS: an HVASS over decorated letters whose language is the set of
    decorations of L(v). The holes are the configurations with an empty language, except at the initial state.
    """
    _require_plain_upward(v, "decorate_vass")
    decorated, _ = _decorate(v, hom)
    empty = empty_language_configs(decorated, logger=logger)
    start = decorated.initial.state
    holes = DownSet([a for a in empty.atoms if a.state != start], v.dim, decorated.states)
    logger.debug(f"decoration of {v.name}: {len(decorated.states)} states, {len(holes)} hole atoms")
    return Vass(
        alphabet=decorated.alphabet,
        dim=decorated.dim,
        states=decorated.states,
        transitions=decorated.transitions,
        initial=decorated.initial,
        acceptance=decorated.acceptance,
        holes=holes,
        name=decorated.name,
    )


def decorate_automaton_with_origins(a, hom, logger=logger):
    """
    Decorate a dimension-0 automaton and trim the states with an empty language (the initial state stays).
    :return: (automaton, origins) where origins[i] is the index in a of the transition that decorated transition i
             copies, or None for the initial (eps, m) transitions
    """
    if a.dim != 0:
        raise ModelError("decorate_automaton needs a dimension-0 automaton")
    _require_plain_upward(a, "decorate_automaton")
    decorated, origins = _decorate(a, hom)
    start = decorated.initial.state
    dead = column_states(empty_language_configs(decorated, logger=logger)) - {start}
    states = decorated.states - dead
    kept = [
        (t, origin)
        for t, origin in zip(decorated.transitions, origins)
        if t.source not in dead and t.target not in dead
    ]
    trimmed = Vass(
        alphabet=decorated.alphabet,
        dim=0,
        states=states,
        transitions=tuple(t for t, _ in kept),
        initial=decorated.initial,
        acceptance=Upward(UpSet([x for x in decorated.acceptance.atoms if x.state in states], 0, states)),
        name=decorated.name,
    )
    logger.debug(f"decorated automaton {a.name}: {len(states)} of {len(decorated.states)} states kept")
    return trimmed, tuple(origin for _, origin in kept)


def decorate_automaton(a, hom, logger=logger):
    return decorate_automaton_with_origins(a, hom, logger=logger)[0]


def _copy_atoms(acceptance, sources, fresh, states, dim):
    """Give the fresh state every acceptance atom of the source states."""
    if isinstance(acceptance, Upward):
        extra = [UpAtom(fresh, a.basis) for a in acceptance.atoms if a.state in sources]
        return Upward(UpSet(list(acceptance.atoms) + extra, dim, states))
    if isinstance(acceptance, Downward):
        extra = [DownAtom(fresh, a.bound) for a in acceptance.atoms if a.state in sources]
        return Downward(DownSet(list(acceptance.atoms) + extra, dim, states))
    if isinstance(acceptance, UpDown):
        extra = [
            type(a)(fresh, a.up_coords, a.up, a.down) for a in acceptance.atoms if a.state in sources
        ]
        return UpDown(acceptance.atoms + tuple(extra), dim)
    raise UnsupportedAcceptance("singleton acceptance is not supported by eps elimination")


def eliminate_initial_eps(v):
    """
    Remove zero-effect ε-transitions leaving the initial state. A fresh initial state copies the lettered
    transitions and the acceptance atoms of the initial state and of its ε-successors. Models with other
    ε-transitions, or with holes, are returned unchanged.
    """
    if not v.has_eps or v.has_holes:
        return v
    start = v.initial.state
    eps = [t for t in v.transitions if t.is_eps]
    if any(t.source != start or any(t.effect) for t in eps):
        return v
    sources = {start} | {t.target for t in eps}
    fresh = fresh_state(v.states, ("init", state_label(start)))
    states = v.states | {fresh}
    lettered = [t for t in v.transitions if not t.is_eps]
    copied = [Transition(fresh, t.label, t.effect, t.target) for t in lettered if t.source in sources]
    return Vass(
        alphabet=v.alphabet,
        dim=v.dim,
        states=states,
        transitions=tuple(lettered + copied),
        initial=Configuration(fresh, v.initial.counters),
        acceptance=_copy_atoms(v.acceptance, sources, fresh, states, v.dim),
        name=v.name,
    )


def project_decorated(v, eliminate=True):
    """
    Forget the monoid marks: (a, m) becomes a and (eps, m) becomes an ε-transition. With eliminate, initial
    zero-effect ε-transitions are then removed.
    """
    for letter in v.alphabet:
        if not isinstance(letter, DecoratedLetter):
            raise AlphabetMismatch(f"{label_text(letter)} is not a decorated letter")
    alphabet = frozenset(letter.base for letter in v.alphabet if letter.base is not EPS)
    transitions = tuple(Transition(t.source, t.label.base, t.effect, t.target) for t in v.transitions)
    projected = Vass(
        alphabet=alphabet,
        dim=v.dim,
        states=v.states,
        transitions=transitions,
        initial=v.initial,
        acceptance=v.acceptance,
        holes=v.holes,
        eps_allowed=any(t.is_eps for t in transitions),
        name=f"{v.name}-proj",
    )
    return eliminate_initial_eps(projected) if eliminate else projected
