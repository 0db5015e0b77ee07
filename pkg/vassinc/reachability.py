"""
Three-valued reachability.

reach answers whether a single target configuration is reachable. A Yes always carries a run that replays under
model.step; a No carries the tag of the argument that excluded the target; everything else is Unknown with a
report of how far the search got. The checks run cheapest first:

    clover-excluded          the target is not below any Karp-Miller label
    coverability-pruned      the initial configuration cannot even cover the target
    exhausted-finite-space   the pruned forward search ran out of configurations without hitting a cap

The forward search is breadth-first over configurations with three sound prunings:

  * configurations outside Pre*(target↑) are dropped;
  * a coordinate that no transition reachable from the current state can decrease is dropped once it exceeds the
    target (and, symmetrically, one that can never increase once it is below the target);
  * a coordinate j is "drainable" when the target state has a self-loop with effect -e_j. Configurations that
    agree with an explored one everywhere except on drainable coordinates, where they are smaller, are dropped,
    and a loop that only increases drainable coordinates is accelerated to OMEGA on those coordinates. A path
    through OMEGA is turned into a concrete run by repeating the accelerated loops and draining at the end.

The counter-sum and node caps of SearchBudget are the only unsound cutoffs; hitting one of them turns a would-be No
into Unknown, never into Yes. empty_updown runs one search per acceptance atom and stops with Unknown after max_atoms
of them.
"""

import enum
import logging
from collections import deque
from dataclasses import dataclass, field

from vassinc.config import Settings
from vassinc.coverability import km_clover, pre_star
from vassinc.errors import BudgetExhausted, ModelError, StepError
from vassinc.ideals import OMEGA, Configuration, UpAtom, UpSet, is_omega, leq, max_constant, member
from vassinc.model import (
    EPS,
    Downward,
    Singleton,
    Transition,
    UpDown,
    UpDownAtom,
    Upward,
    Vass,
    fresh_state,
    hvass_to_epsvass,
    replay,
)

logger = logging.getLogger(__name__)


class Answer(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


MAX_PUMP_REPEATS = 1 << 10

CLOVER_EXCLUDED = "clover-excluded"
COVERABILITY_PRUNED = "coverability-pruned"
EXHAUSTED = "exhausted-finite-space"


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 20000
    max_counter_sum: int = 64
    max_atoms: int = 1000

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_counter_sum <= 0 or self.max_atoms <= 0:
            raise ValueError("search budgets must be positive")

    @classmethod
    def from_settings(cls, settings: Settings):
        return cls(settings.max_nodes, settings.max_counter_sum, settings.max_atoms)


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    witness: tuple = None
    run: tuple = None
    certificate: str = None
    budget_report: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.answer is Answer.YES and self.witness is None and self.certificate is None:
            raise ValueError("a Yes verdict needs a witness or a certificate tag")
        if self.answer is Answer.NO and self.certificate is None and self.witness is None:
            raise ValueError("a No verdict needs a certificate tag or a counterexample")

    @property
    def is_yes(self):
        return self.answer is Answer.YES

    @property
    def is_no(self):
        return self.answer is Answer.NO

    @property
    def is_unknown(self):
        return self.answer is Answer.UNKNOWN

    @classmethod
    def yes(cls, witness=None, run=None, certificate=None, report=None):
        return cls(
            Answer.YES,
            None if witness is None else tuple(witness),
            None if run is None else tuple(run),
            certificate,
            dict(report or {}),
        )

    @classmethod
    def no(cls, certificate=None, witness=None, run=None, report=None):
        return cls(
            Answer.NO,
            None if witness is None else tuple(witness),
            None if run is None else tuple(run),
            certificate,
            dict(report or {}),
        )

    @classmethod
    def unknown(cls, report=None):
        return cls(Answer.UNKNOWN, budget_report=dict(report or {}))


@dataclass(frozen=True)
class Gadget:
    """The singleton reduction of one updown atom."""

    model: Vass
    target: Configuration
    roles: tuple
    order: tuple
    original_transitions: int


def _decrementable(v):
    """Per state: coordinates some transition reachable from it can decrease / increase."""
    succ = {q: set() for q in v.states}
    for t in v.transitions:
        succ[t.source].add(t.target)
    down_here = {q: set() for q in v.states}
    up_here = {q: set() for q in v.states}
    for t in v.transitions:
        for j, e in enumerate(t.effect):
            if e < 0:
                down_here[t.source].add(j)
            elif e > 0:
                up_here[t.source].add(j)
    can_down, can_up = {}, {}
    for q in v.states:
        seen = {q}
        stack = [q]
        while stack:
            p = stack.pop()
            for r in succ[p]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        can_down[q] = frozenset().union(*(down_here[p] for p in seen))
        can_up[q] = frozenset().union(*(up_here[p] for p in seen))
    return can_down, can_up


def _drain_loops(v, target_state):
    loops = {}
    for tid, t in enumerate(v.transitions):
        if t.source == t.target == target_state:
            nonzero = [(j, e) for j, e in enumerate(t.effect) if e != 0]
            if len(nonzero) == 1 and nonzero[0][1] == -1:
                loops.setdefault(nonzero[0][0], tid)
    return loops


def _report(nodes, frontier, cutoff, **extra):
    report = {"nodes_expanded": nodes, "frontier": frontier, "cutoff": cutoff}
    report.update(extra)
    return report


def _fire(vector, effect):
    nxt = tuple(x + e for x, e in zip(vector, effect))
    if any(not is_omega(x) and x < 0 for x in nxt):
        return None
    return nxt


def _concretize(v, path, pumps, drains, target, logger=logger):
    """Turn an abstract path into a replayable run by repeating pumped loops and draining at the target."""
    repeats = 1
    while repeats <= MAX_PUMP_REPEATS:
        run = []
        for tid, loop in zip(path, pumps):
            run.append(tid)
            if loop:
                run.extend(loop * repeats)
        try:
            end = replay(v, run).end
        except StepError:
            repeats *= 2
            continue
        extra = [x - y for x, y in zip(end.counters, target.counters)]
        if end.state == target.state and all(x >= 0 for x in extra) and all(
            x == 0 or j in drains for j, x in enumerate(extra)
        ):
            for j, x in enumerate(extra):
                if x:
                    run.extend([drains[j]] * x)
            try:
                if replay(v, run).end == target:
                    return tuple(run)
            except StepError:
                pass
        repeats *= 2
    logger.debug("could not concretize an accelerated witness")
    return None


def reach(v, target, budget=None, logger=logger):
    """
    Is target reachable from the initial configuration?
    :param v: Vass without holes
    :param target: Configuration
    :param budget: SearchBudget
    :return: Verdict
    """
    budget = budget or SearchBudget()
    if v.has_holes:
        raise ModelError("reach needs a model without holes; eliminate them with hvass_to_epsvass first")
    if target.dim != v.dim or target.state not in v.states:
        raise ModelError(f"target {target} does not fit the model")

    try:
        clover = km_clover(v, max_nodes=budget.max_nodes, logger=logger)
    except BudgetExhausted:
        logger.debug("clover skipped: node cap")
    else:
        if not member(clover, target):
            return Verdict.no(CLOVER_EXCLUDED, report=_report(0, 0, None))

    upward = pre_star(v, UpSet([UpAtom(target.state, target.counters)], v.dim, v.states), logger=logger)
    if v.initial not in upward:
        return Verdict.no(COVERABILITY_PRUNED, report=_report(0, 0, None))

    drains = _drain_loops(v, target.state)
    can_down, can_up = _decrementable(v)
    fixed = [j for j in range(v.dim) if j not in drains]
    ceiling = max_constant(upward.basis)

    def pruned(state, vector):
        for j, x in enumerate(vector):
            if is_omega(x):
                continue
            if x > target.counters[j] and j not in can_down[state]:
                return True
            if x < target.counters[j] and j not in can_up[state]:
                return True
        return not member(upward.basis, _floor(state, vector, ceiling))

    def hits(state, vector):
        if state != target.state:
            return False
        for j, (x, y) in enumerate(zip(vector, target.counters)):
            if j in drains:
                if not is_omega(x) and x < y:
                    return False
            elif x != y:
                return False
        return True

    # nodes: (state, vector, parent, tid, pump)
    nodes = [(v.initial.state, v.initial.counters, None, None, None)]
    explored = {}
    queue = deque([0])
    truncated = None
    expanded = 0

    def subsumed(state, vector):
        key = (state, tuple(vector[j] for j in fixed))
        return any(leq(vector, other) for other in explored.get(key, ()))

    def remember(state, vector):
        key = (state, tuple(vector[j] for j in fixed))
        kept = [other for other in explored.get(key, []) if not leq(other, vector)]
        explored[key] = kept + [vector]

    remember(v.initial.state, v.initial.counters)
    while queue:
        node = queue.popleft()
        state, vector, *_ = nodes[node]
        if hits(state, vector):
            return _witness(v, nodes, node, drains, target, expanded, len(queue), logger)
        expanded += 1
        if expanded > budget.max_nodes:
            truncated = "max_nodes"
            break
        for tid in v.outgoing[state]:
            t = v.transitions[tid]
            nxt = _fire(vector, t.effect)
            if nxt is None:
                continue
            pump = None
            ancestor = node
            while ancestor is not None:
                a_state, a_vector, a_parent, *_ = nodes[ancestor]
                if a_state == t.target and leq(a_vector, nxt) and a_vector != nxt:
                    grown = [j for j, (a, x) in enumerate(zip(a_vector, nxt)) if a != x]
                    if all(j in drains for j in grown):
                        nxt = tuple(OMEGA if j in grown else x for j, x in enumerate(nxt))
                        pump = _loop(nodes, ancestor, node) + (tid,)
                        break
                ancestor = a_parent
            if pruned(t.target, nxt) or subsumed(t.target, nxt):
                continue
            if sum(x for x in nxt if not is_omega(x)) > budget.max_counter_sum:
                truncated = truncated or "max_counter_sum"
                continue
            remember(t.target, nxt)
            nodes.append((t.target, nxt, node, tid, pump))
            queue.append(len(nodes) - 1)
    report = _report(expanded, len(queue), truncated)
    if truncated is None:
        return Verdict.no(EXHAUSTED, report=report)
    logger.debug(f"reach cut off by {truncated} after {expanded} nodes")
    return Verdict.unknown(report)


def _floor(state, vector, ceiling):
    """A concrete stand-in for an OMEGA vector when testing membership in an up-set."""
    big = ceiling + 1
    return Configuration(state, tuple(big if is_omega(x) else x for x in vector))


def _loop(nodes, ancestor, node):
    tids = []
    while node != ancestor:
        _, _, parent, tid, _ = nodes[node]
        tids.append(tid)
        node = parent
    return tuple(reversed(tids))


def _witness(v, nodes, node, drains, target, expanded, frontier, logger):
    path, pumps = [], []
    while nodes[node][2] is not None:
        _, _, parent, tid, pump = nodes[node]
        path.append(tid)
        pumps.append(pump)
        node = parent
    path.reverse()
    pumps.reverse()
    report = _report(expanded, frontier, None)
    run = _concretize(v, path, pumps, drains, target, logger)
    if run is None:
        return Verdict.unknown(dict(report, cutoff="concretization"))
    word = tuple(v.transitions[tid].label for tid in run if not v.transitions[tid].is_eps)
    return Verdict.yes(word, run, report=report)


def updown_gadget(v, atom):
    """
    Reduce one updown atom q_F(U x_J D) to a singleton target.

    A fresh state q'_F is entered from q_F by a zero ε-step. There, every up coordinate and every OMEGA coordinate
    of D gets a -1 self-loop, and every bounded coordinate of D a +1 self-loop. The target is q'_F with the up
    values on J, 0 on the OMEGA coordinates and the bounds on the bounded coordinates. Gadget.order lists the
    coordinates grouped as (up, omega, bounded).
    """
    roles = []
    target = []
    for role, value in atom.roles():
        if role == "up":
            roles.append("up")
            target.append(value)
        elif is_omega(value):
            roles.append("omega")
            target.append(0)
        else:
            roles.append("bounded")
            target.append(value)
    order = tuple(j for kind in ("up", "omega", "bounded") for j, role in enumerate(roles) if role == kind)
    final = fresh_state(v.states, ("sink", atom.state))
    unit = [tuple(1 if i == j else 0 for i in range(v.dim)) for j in range(v.dim)]
    extra = [Transition(atom.state, EPS, (0,) * v.dim, final)]
    for j, role in enumerate(roles):
        if role == "bounded":
            extra.append(Transition(final, EPS, unit[j], final))
        else:
            extra.append(Transition(final, EPS, tuple(-x for x in unit[j]), final))
    states = v.states | {final}
    goal = Configuration(final, tuple(target))
    model = Vass(
        alphabet=v.alphabet,
        dim=v.dim,
        states=states,
        transitions=v.transitions + tuple(extra),
        initial=v.initial,
        acceptance=Singleton(goal),
        holes=v.holes.with_states(states),
        eps_allowed=True,
        name=f"{v.name}-gadget",
    )
    return Gadget(model, goal, tuple(roles), order, len(v.transitions))


def _atoms(v):
    acceptance = v.acceptance
    if isinstance(acceptance, UpDown):
        return list(acceptance.atoms)
    if isinstance(acceptance, Upward):
        return [UpDownAtom(a.state, tuple(range(v.dim)), a.basis, ()) for a in acceptance.atoms]
    if isinstance(acceptance, Downward):
        return [UpDownAtom(a.state, (), (), a.bound) for a in acceptance.atoms]
    return None


def empty_updown(v, budget=None, logger=logger):
    """
    Nonemptiness of a model with updown (or upward, downward, singleton) acceptance.

    Answer YES means the language is NOT empty; the witness is an accepted word. Atoms whose down part is all
    OMEGA are decided exactly by backward coverability. Holes are eliminated first.
    """
    budget = budget or SearchBudget()
    if v.has_holes:
        v = hvass_to_epsvass(v, logger=logger)
    if isinstance(v.acceptance, Singleton):
        return reach(v, v.acceptance.target, budget, logger)
    verdicts = []
    atoms = _atoms(v)
    for checked, atom in enumerate(atoms):
        if checked >= budget.max_atoms:
            logger.info(f"emptiness of {v.name}: stopped after {checked} of {len(atoms)} acceptance atoms")
            return Verdict.unknown({"cutoff": "max_atoms", "atoms": len(atoms), "checked": checked})
        if all(role == "up" or is_omega(value) for role, value in atom.roles()):
            basis = tuple(value if role == "up" else 0 for role, value in atom.roles())
            saturated = pre_star(v, UpSet([UpAtom(atom.state, basis)], v.dim, v.states), logger=logger)
            if v.initial in saturated:
                run = saturated.witness_from(v.initial)
                word = tuple(v.transitions[tid].label for tid in run if not v.transitions[tid].is_eps)
                return Verdict.yes(word, run)
            verdicts.append(Verdict.no(COVERABILITY_PRUNED))
            continue
        gadget = updown_gadget(v, atom)
        verdict = reach(gadget.model, gadget.target, budget, logger)
        logger.debug(f"atom {atom}: {verdict.answer.value}")
        if verdict.is_yes:
            run = tuple(tid for tid in verdict.run if tid < gadget.original_transitions)
            return Verdict.yes(verdict.witness, run, report=verdict.budget_report)
        verdicts.append(verdict)
    if all(verdict.is_no for verdict in verdicts):
        tags = sorted({verdict.certificate for verdict in verdicts})
        return Verdict.no("+".join(tags) if tags else COVERABILITY_PRUNED)
    report = {}
    for verdict in verdicts:
        if verdict.is_unknown:
            report = verdict.budget_report
            break
    return Verdict.unknown(report)
