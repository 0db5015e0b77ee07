"""
Complements and abstractions.

complement_det, complement_det_hvass and complement_kdet build downward-accepting models for the complement of a
deterministic, deterministic-with-holes or k-deterministic model. The complement follows the run(s) of the input
and accepts when every run failed in one of three ways:

    run         the run read the whole word and ended outside the acceptance set
    underflow   the next transition would have dropped a counter below zero (or into a hole); the counters freeze
    noletter    no transition existed for the next letter

complement_kambiguous reduces a k-ambiguous model to the k-deterministic case: the control automaton is refined by
an M-abstraction of the counters until it is k-ambiguous itself, decorated with its transition monoid (which makes it
k-deterministic), complemented, intersected with the well-formed words and projected back to the plain alphabet.
"""

import itertools
import logging
import math
from collections import deque
from typing import Hashable, NamedTuple

from vassinc.config import Settings
from vassinc.errors import (
    BudgetExhausted,
    ModelError,
    NotDeterministic,
    NotKDeterministic,
    Undetermined,
    UnsupportedAcceptance,
)
from vassinc.ideals import (
    OMEGA,
    Configuration,
    DownAtom,
    DownSet,
    UpAtom,
    UpSet,
    complement_down,
    complement_up,
    is_omega,
)
from vassinc.model import (
    EPS,
    Downward,
    Transition,
    Upward,
    Vass,
    ambiguity_witness,
    control_automaton,
    norm,
    product,
    syntactic_deterministic,
)
from vassinc.monoid import (
    decorate_automaton_with_origins,
    project_decorated,
    transition_monoid,
    well_formed_automaton,
)
from vassinc.oracle import max_maximal_runs

logger = logging.getLogger(__name__)

DEFAULTS = Settings()

MAX_THRESHOLD_BITS = 1 << 24


class CopyMode(NamedTuple):
    kind: str
    detail: Hashable = None


RUN = CopyMode("run")


def underflow(tid):
    return CopyMode("underflow", tid)


def noletter(letter):
    return CopyMode("noletter", letter)


def _require(v, what, holes=False):
    if not isinstance(v.acceptance, Upward):
        raise UnsupportedAcceptance(f"{what} needs upward acceptance, got {v.acceptance.kind}")
    if v.has_eps:
        raise ModelError(f"{what} needs a model without eps-transitions")
    if v.has_holes and not holes:
        raise ModelError(f"{what} needs a model without holes")


def _underflow_bounds(effect):
    """Down-atom bounds of the vectors w with w + effect outside N^d, one per decreasing coordinate."""
    bounds = []
    for j, e in enumerate(effect):
        if e < 0:
            bounds.append(tuple(-e - 1 if i == j else OMEGA for i in range(len(effect))))
    return bounds


def _rejecting_bounds(v):
    """Per state q, the bounds of the down-atoms of the complement of the acceptance set at q."""
    rejecting = complement_up(v.acceptance.atoms)
    return {q: [a.bound for a in rejecting.atoms_at(q)] for q in v.states}


def _sink_loops(state, letters, dim):
    return [Transition(state, letter, (0,) * dim, state) for letter in letters]


def complement_det(v, logger=logger):
    """
    Downward-accepting model of the complement of a deterministic upward-accepting model.
    :param v: Vass, syntactically deterministic, no holes, no ε
    :return: Vass with Downward acceptance
    :raises NotDeterministic:
    """
    _require(v, "complement_det")
    if not syntactic_deterministic(v):
        raise NotDeterministic(f"{v.name} has two transitions on the same letter from the same state")
    zero = (0,) * v.dim
    letters = v.letters
    states = set()
    transitions = []
    accepting = []
    omega = (OMEGA,) * v.dim
    rejecting = _rejecting_bounds(v)
    for q in v.states:
        states.add((q, RUN))
        accepting.extend(DownAtom((q, RUN), bound) for bound in rejecting[q])
    for tid, t in enumerate(v.transitions):
        transitions.append(Transition((t.source, RUN), t.label, t.effect, (t.target, RUN)))
        bounds = _underflow_bounds(t.effect)
        if bounds:
            frozen = (t.source, underflow(tid))
            states.add(frozen)
            transitions.append(Transition((t.source, RUN), t.label, zero, frozen))
            transitions.extend(_sink_loops(frozen, letters, v.dim))
            accepting.extend(DownAtom(frozen, bound) for bound in bounds)
    for q in v.states:
        for letter in letters:
            if not v.transitions_on(q, letter):
                dead = (q, noletter(letter))
                states.add(dead)
                transitions.append(Transition((q, RUN), letter, zero, dead))
                transitions.extend(_sink_loops(dead, letters, v.dim))
                accepting.append(DownAtom(dead, omega))
    states = frozenset(states)
    result = Vass(
        alphabet=v.alphabet,
        dim=v.dim,
        states=states,
        transitions=tuple(transitions),
        initial=Configuration((v.initial.state, RUN), v.initial.counters),
        acceptance=Downward(DownSet(accepting, v.dim, states)),
        name=f"co-{v.name}",
    )
    logger.debug(f"complement_det of {v.name}: {len(states)} states, {len(transitions)} transitions")
    return result


def _live_transitions(v):
    dead = v.hole_columns
    return [(tid, t) for tid, t in enumerate(v.transitions) if t.source not in dead and t.target not in dead]


def complement_det_hvass(v, logger=logger):
    """
    Complement of a deterministic model with holes, as a downward-accepting ε-model without holes.

    Before every letter the run passes an ε-test that subtracts and re-adds a basis vector of the complement of
    the holes, so only configurations outside the holes continue. A frozen copy also accepts when the blocked
    transition would have entered a hole. Transitions into or out of whole hole columns never fire and are ignored.
    """
    _require(v, "complement_det_hvass", holes=True)
    live = _live_transitions(v)
    seen = set()
    for _, t in live:
        if (t.source, t.label) in seen:
            raise NotDeterministic(f"{v.name} has two live transitions on the same letter from the same state")
        seen.add((t.source, t.label))
    zero = (0,) * v.dim
    omega = (OMEGA,) * v.dim
    letters = v.letters
    before, after = ("run", 0), ("run", 1)
    states = set()
    transitions = []
    accepting = []
    rejecting = _rejecting_bounds(v)
    for q in v.states:
        for phase in (before, after):
            states.add((q, phase))
            accepting.extend(DownAtom((q, phase), bound) for bound in rejecting[q])
    allowed = complement_down(v.holes)
    for i, atom in enumerate(allowed.atoms):
        gate = ("test", atom.state, i)
        states.add(gate)
        transitions.append(Transition((atom.state, before), EPS, tuple(-x for x in atom.basis), gate))
        transitions.append(Transition(gate, EPS, atom.basis, (atom.state, after)))
    for tid, t in live:
        transitions.append(Transition((t.source, after), t.label, t.effect, (t.target, before)))
        bounds = _underflow_bounds(t.effect)
        for hole in v.holes.atoms_at(t.target):
            shifted = tuple(h if is_omega(h) else h - e for h, e in zip(hole.bound, t.effect))
            if all(is_omega(x) or x >= 0 for x in shifted):
                bounds.append(shifted)
        if bounds:
            frozen = (t.source, underflow(tid))
            states.add(frozen)
            transitions.append(Transition((t.source, after), t.label, zero, frozen))
            transitions.extend(_sink_loops(frozen, letters, v.dim))
            accepting.extend(DownAtom(frozen, bound) for bound in bounds)
    for q in v.states:
        for letter in letters:
            if (q, letter) not in seen:
                dead = (q, noletter(letter))
                states.add(dead)
                transitions.append(Transition((q, after), letter, zero, dead))
                transitions.extend(_sink_loops(dead, letters, v.dim))
                accepting.append(DownAtom(dead, omega))
    states = frozenset(states)
    result = Vass(
        alphabet=v.alphabet,
        dim=v.dim,
        states=states,
        transitions=tuple(transitions),
        initial=Configuration((v.initial.state, after), v.initial.counters),
        acceptance=Downward(DownSet(accepting, v.dim, states)),
        eps_allowed=True,
        name=f"co-{v.name}",
    )
    logger.debug(f"complement_det_hvass of {v.name}: {len(states)} states, {len(allowed)} test atoms")
    return result


def _compositions(size, parts):
    """Non-decreasing surjections from `size` ordered copies onto `parts` branches, as branch index per copy."""
    for cuts in itertools.combinations(range(1, size), parts - 1):
        bounds = (0,) + cuts + (size,)
        yield tuple(i for i in range(parts) for _ in range(bounds[i + 1] - bounds[i]))


def _group_moves(v, copies, members, letter):
    """
    Every way one block of identical copies can read letter.
    :return: list of moves, each a dict copy -> (new (state, mode), effect, branch label)
    """
    q, mode = copies[members[0]]
    zero = (0,) * v.dim
    if mode.kind != "run":
        return [{c: ((q, mode), zero, "stay") for c in members}]
    options = v.transitions_on(q, letter)
    if not options:
        return [{c: ((q, noletter(letter)), zero, "stay") for c in members}]
    if len(members) < len(options):
        return []
    moves = []
    for assignment in _compositions(len(members), len(options)):
        per_branch = []
        for tid in options:
            t = v.transitions[tid]
            choices = [((t.target, RUN), t.effect)]
            if any(e < 0 for e in t.effect):
                choices.append(((q, underflow(tid)), zero))
            per_branch.append(choices)
        for picks in itertools.product(*per_branch):
            moves.append({c: picks[b] + (b,) for c, b in zip(members, assignment)})
    return moves


def _blocks(partition):
    grouped = {}
    for copy, block in enumerate(partition):
        grouped.setdefault(block, []).append(copy)
    return grouped


def _kdet_accepting(v, state, rejecting):
    copies, partition = state
    d = v.dim
    omega = (OMEGA,) * d
    per_copy = [[omega] for _ in copies]
    for block, members in _blocks(partition).items():
        q, mode = copies[members[0]]
        if mode.kind == "noletter":
            options = [omega]
        elif mode.kind == "underflow":
            options = _underflow_bounds(v.transitions[mode.detail].effect)
        else:
            options = rejecting[q]
        per_copy[members[0]] = options
    atoms = []
    for pick in itertools.product(*per_copy):
        atoms.append(DownAtom(state, tuple(x for bound in pick for x in bound)))
    return atoms


def complement_kdet(
    v,
    k,
    check_len=DEFAULTS.kdet_check_len,
    certified=False,
    max_states=DEFAULTS.abstraction_nodes,
    logger=logger,
):
    """
    Downward-accepting (k*d)-dimensional model of the complement of a k-deterministic model.

    k copies of v run side by side. Copies that took the same transitions so far form a block of the partition in
    the state. On a letter, a running block at state p with r transitions on it splits into r nonempty sub-blocks,
    one per transition; a block smaller than r has no move. Each sub-block fires its transition or freezes because
    the transition would underflow. A block without any transition freezes as noletter. The state accepts when every
    block failed, checked on the first copy of the block.

    :param check_len: word length of the maximal-runs precondition check
    :param certified: skip the check when the caller already knows the bound
    :param max_states: cap on the explored states and on the accepting atoms
    :raises NotKDeterministic: when the check finds a word with more than k maximal runs
    :raises Undetermined: when a cap is exceeded
    """
    _require(v, "complement_kdet")
    if k < 1:
        raise ModelError("k must be at least 1")
    if not certified:
        found = max_maximal_runs(control_automaton(v), check_len)
        if found > k:
            raise NotKDeterministic(k, found, check_len)
    rejecting = _rejecting_bounds(v)
    start = (((v.initial.state, RUN),) * k, (0,) * k)
    seen = {start}
    queue = deque([start])
    transitions = []
    while queue:
        state = queue.popleft()
        copies, partition = state
        blocks = _blocks(partition)
        for letter in v.letters:
            per_block = [_group_moves(v, copies, members, letter) for members in blocks.values()]
            for combination in itertools.product(*per_block):
                moved = {}
                for move in combination:
                    moved.update(move)
                new_copies = tuple(moved[c][0] for c in range(k))
                effect = tuple(e for c in range(k) for e in moved[c][1])
                labels = [(partition[c], moved[c][2]) for c in range(k)]
                numbering = {}
                new_partition = tuple(numbering.setdefault(label, len(numbering)) for label in labels)
                target = (new_copies, new_partition)
                transitions.append(Transition(state, letter, effect, target))
                if target not in seen:
                    seen.add(target)
                    queue.append(target)
                    if len(seen) > max_states:
                        raise Undetermined(
                            f"complement_kdet of {v.name} exceeds {max_states} states",
                            {"cutoff": "abstraction_nodes", "states": len(seen), "max_states": max_states},
                        )
    states = frozenset(seen)
    accepting = []
    for state in states:
        accepting.extend(_kdet_accepting(v, state, rejecting))
        if len(accepting) > max_states:
            raise Undetermined(
                f"complement_kdet of {v.name} exceeds {max_states} accepting atoms",
                {"cutoff": "abstraction_nodes", "atoms": len(accepting), "max_states": max_states},
            )
    dim = v.dim * k
    result = Vass(
        alphabet=v.alphabet,
        dim=dim,
        states=states,
        transitions=tuple(transitions),
        initial=Configuration(start, v.initial.counters * k),
        acceptance=Downward(DownSet(accepting, dim, states)),
        name=f"co{k}-{v.name}",
    )
    logger.debug(f"complement_kdet of {v.name}, k={k}: {len(states)} states, {len(transitions)} transitions")
    return result


class AbstractionState(NamedTuple):
    state: Hashable
    vector: tuple


class Abstraction:
    """
    The M-abstraction of v, explored lazily: counters below M are exact, everything from M on is OMEGA, and OMEGA
    stays OMEGA. Holes are ignored, so every run of v has a run here.
    """

    def __init__(self, v, threshold):
        if threshold < 1:
            raise ModelError("the abstraction threshold must be at least 1")
        if not isinstance(v.acceptance, Upward):
            raise UnsupportedAcceptance(f"m_abstraction needs upward acceptance, got {v.acceptance.kind}")
        self.model = v
        self.threshold = threshold

    def cap(self, vector):
        return tuple(OMEGA if is_omega(x) or x >= self.threshold else x for x in vector)

    @property
    def initial(self):
        return AbstractionState(self.model.initial.state, self.cap(self.model.initial.counters))

    def successors(self, node):
        """(transition id, successor) pairs; the successor keeps the transition's label."""
        for tid in self.model.outgoing[node.state]:
            t = self.model.transitions[tid]
            moved = tuple(x + e for x, e in zip(node.vector, t.effect))
            if any(not is_omega(x) and x < 0 for x in moved):
                continue
            yield tid, AbstractionState(t.target, self.cap(moved))

    def accepts_with(self, node, basis):
        return all(is_omega(x) or x >= b for x, b in zip(node.vector, basis))

    def is_accepting(self, node):
        return any(self.accepts_with(node, atom.basis) for atom in self.model.acceptance.atoms.atoms_at(node.state))


def m_abstraction(v, threshold):
    return Abstraction(v, threshold)


def _explore(abstraction, max_nodes):
    start = abstraction.initial
    seen = {start}
    queue = deque([start])
    edges = []
    while queue:
        node = queue.popleft()
        for tid, nxt in abstraction.successors(node):
            edges.append((node, tid, nxt))
            if nxt not in seen:
                seen.add(nxt)
                if max_nodes is not None and len(seen) > max_nodes:
                    raise BudgetExhausted(
                        f"abstraction at M={abstraction.threshold} exceeds {max_nodes} states",
                        {"cutoff": "abstraction_nodes", "threshold": abstraction.threshold},
                    )
                queue.append(nxt)
    return seen, edges


def abstraction_is_empty(v, threshold, max_nodes=DEFAULTS.abstraction_nodes):
    """True when no accepting abstract state is reachable, False when one is, None when max_nodes was hit."""
    abstraction = Abstraction(v, threshold)
    start = abstraction.initial
    seen = {start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if abstraction.is_accepting(node):
            return False
        for _, nxt in abstraction.successors(node):
            if nxt not in seen:
                seen.add(nxt)
                if max_nodes is not None and len(seen) > max_nodes:
                    return None
                queue.append(nxt)
    return True


def materialize_abstraction(v, threshold, max_nodes=DEFAULTS.abstraction_nodes):
    """The reachable part of the M-abstraction as a dimension-0 automaton."""
    abstraction = Abstraction(v, threshold)
    nodes, edges = _explore(abstraction, max_nodes)
    states = frozenset(nodes)
    accepting = [UpAtom(node, ()) for node in nodes if abstraction.is_accepting(node)]
    return Vass(
        alphabet=v.alphabet,
        dim=0,
        states=states,
        transitions=tuple(Transition(src, v.transitions[tid].label, (), dst) for src, tid, dst in edges),
        initial=Configuration(abstraction.initial, ()),
        acceptance=Upward(UpSet(accepting, 0, states)),
        eps_allowed=v.eps_allowed,
        name=f"{v.name}-abs{threshold}",
    )


class Thresholds(NamedTuple):
    f: int
    g: int
    m_bar: int


def _f_bits(v, k):
    """Lower bound on the bit length of F(V, k)."""
    base = 4 * len(v.states) * norm(v)
    return (4 * v.dim) ** k * (base.bit_length() - 1)


def _f(v, k):
    if _f_bits(v, k) > MAX_THRESHOLD_BITS:
        raise BudgetExhausted(f"F(V,{k}) has more than {MAX_THRESHOLD_BITS} bits", {"cutoff": "threshold_bits"})
    return (4 * len(v.states) * norm(v)) ** ((4 * v.dim) ** k)


def rackoff_thresholds(v, k):
    """
    F(V,k) = (4|Q|n)^((4d)^k), G(V,k) = n(F(V,k)+1) and the abstraction threshold M = n(F(V,d)+1)+1, where n is
    norm(v). All three are exact integers.
    """
    n = norm(v)
    f = _f(v, k)
    return Thresholds(f, n * (f + 1), n * (_f(v, v.dim) + 1) + 1)


def threshold_exceeds(v, cap):
    """Is the guaranteed abstraction threshold larger than cap? Decided from bit lengths when it is huge."""
    if _f_bits(v, v.dim) > cap.bit_length() + 1:
        return True
    return rackoff_thresholds(v, v.dim).m_bar > cap


def ba_control(v, k, cap=DEFAULTS.abstraction_cap, max_nodes=DEFAULTS.abstraction_nodes, logger=logger):
    """
    The same language as v with a k-ambiguous control automaton.

    The thresholds M = 1, 2, 4, ... up to cap are tried until the M-abstraction of ambiguity_witness(v, k) is empty.
    Since the abstraction only adds runs, emptiness at any M shows that the abstracted control of v has at most k
    accepting runs per word. The control is then replaced by the reachable part of the M-abstraction; the counters
    keep their real effects, so the language does not change.
    :raises Undetermined: when no threshold up to cap works
    """
    _require(v, "ba_control")
    witness = ambiguity_witness(v, k, logger=logger)
    tried = []
    threshold = 1
    found = None
    while threshold <= cap:
        empty = abstraction_is_empty(witness, threshold, max_nodes)
        tried.append({"threshold": threshold, "empty": empty})
        logger.debug(f"ambiguity abstraction at M={threshold}: {empty}")
        if empty:
            found = threshold
            break
        threshold *= 2
    if found is None:
        raise Undetermined(
            f"no abstraction threshold up to {cap} makes the control of {v.name} {k}-ambiguous",
            {"cutoff": "abstraction_cap", "cap": cap, "tried": tried, "cap_below_threshold": threshold_exceeds(v, cap)},
        )
    abstraction = Abstraction(v, found)
    try:
        nodes, edges = _explore(abstraction, max_nodes)
    except BudgetExhausted as e:
        raise Undetermined(str(e), e.report) from e
    states = frozenset(nodes)
    accepting = [
        UpAtom(node, atom.basis)
        for node in nodes
        for atom in v.acceptance.atoms.atoms_at(node.state)
        if abstraction.accepts_with(node, atom.basis)
    ]
    result = Vass(
        alphabet=v.alphabet,
        dim=v.dim,
        states=states,
        transitions=tuple(
            Transition(src, v.transitions[tid].label, v.transitions[tid].effect, dst) for src, tid, dst in edges
        ),
        initial=Configuration(abstraction.initial, v.initial.counters),
        acceptance=Upward(UpSet(accepting, v.dim, states)),
        name=f"{v.name}-M{found}",
    )
    logger.debug(f"ba_control of {v.name}: M={found}, {len(states)} control states")
    return result


def _lift_effects(w, decorated, origins):
    """Put the counters of w back on its decorated control automaton."""
    zero = (0,) * w.dim
    transitions = tuple(
        Transition(t.source, t.label, zero if origin is None else w.transitions[origin].effect, t.target)
        for t, origin in zip(decorated.transitions, origins)
    )
    accepting = [
        UpAtom(atom.state, basis.basis)
        for atom in decorated.acceptance.atoms
        for basis in w.acceptance.atoms.atoms_at(atom.state[0])
    ]
    return Vass(
        alphabet=decorated.alphabet,
        dim=w.dim,
        states=decorated.states,
        transitions=transitions,
        initial=Configuration(decorated.initial.state, w.initial.counters),
        acceptance=Upward(UpSet(accepting, w.dim, decorated.states)),
        name=f"{w.name}-dec",
    )


def _drop_sink(v, sink="sink"):
    """Remove product states whose second component is the sink of the well-formedness automaton."""
    states = frozenset(q for q in v.states if q[1] != sink)
    return Vass(
        alphabet=v.alphabet,
        dim=v.dim,
        states=states,
        transitions=tuple(t for t in v.transitions if t.source in states and t.target in states),
        initial=v.initial,
        acceptance=type(v.acceptance)(v.acceptance.atoms.restrict(states)),
        eps_allowed=v.eps_allowed,
        name=v.name,
    )


def complement_kambiguous(
    v,
    k,
    cap=DEFAULTS.abstraction_cap,
    max_nodes=DEFAULTS.abstraction_nodes,
    logger=logger,
):
    """
    Downward-accepting ε-model of the complement of a k-ambiguous upward-accepting model.
    :raises Undetermined: when ba_control gives up or a construction exceeds max_nodes states
    """
    _require(v, "complement_kambiguous")
    if k < 1:
        raise ModelError("k must be at least 1")
    controlled = ba_control(v, k, cap, max_nodes, logger=logger)
    control = control_automaton(controlled)
    # the multiplication table is quadratic in the monoid size
    try:
        monoid = transition_monoid(control, max_elements=math.isqrt(max_nodes), logger=logger)
    except BudgetExhausted as e:
        raise Undetermined(str(e), dict(e.report, cutoff="abstraction_nodes")) from e
    decorated, origins = decorate_automaton_with_origins(control, monoid.hom, logger=logger)
    lifted = _lift_effects(controlled, decorated, origins)
    complemented = complement_kdet(lifted, k, certified=True, max_states=max_nodes, logger=logger)
    well_formed = well_formed_automaton(v.alphabet, monoid.hom)
    restricted = _drop_sink(product(complemented, well_formed, max_states=max_nodes, logger=logger))
    result = project_decorated(restricted)
    logger.debug(
        f"complement_kambiguous of {v.name}: |M|={monoid.monoid.size}, {len(result.states)} states, dim {result.dim}"
    )
    return result
