"""
Backward coverability and the Karp-Miller clover.

pre_star saturates the predecessor operator on up-atoms. The predecessor of q(u)↑ under a transition t = (p, e, q)
is p(max(u - e, 0))↑, cut down to the configurations outside the holes, so the computed set only contains
configurations from which a hole-free run reaches the target. Labels play no role. Each atom remembers the
transition and the successor atom that produced it, which is enough to replay a witness run forward.
"""

import heapq
import itertools
import logging
from dataclasses import dataclass, field

from vassinc.errors import BudgetExhausted, ModelError, UnsupportedAcceptance
from vassinc.ideals import (
    OMEGA,
    DownAtom,
    DownSet,
    UpAtom,
    UpSet,
    complement_down,
    complement_up,
    covering_atom,
    intersect,
    leq,
    member,
    state_key,
    vmax,
)
from vassinc.model import Upward, step

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PreStar:
    model: object
    basis: UpSet
    certificates: dict = field(compare=False, repr=False)

    def __contains__(self, configuration):
        return member(self.basis, configuration)

    def witness_from(self, configuration):
        """
        Transition ids of a run from configuration into the target, following the saturation certificates.
        :raises ValueError: when the configuration is not in the basis
        """
        atom = covering_atom(self.basis, configuration)
        if atom is None:
            raise ValueError(f"{configuration} cannot reach the target")
        run = []
        current = configuration
        while self.certificates[atom] is not None:
            tid, atom = self.certificates[atom]
            current = step(self.model, current, tid)
            run.append(tid)
        return tuple(run)


@dataclass(frozen=True)
class EmptinessResult:
    empty: bool
    witness: tuple = None
    run: tuple = None


def _rebased(target, v):
    if target.dim != v.dim:
        raise ModelError(f"target has dimension {target.dim}, model has {v.dim}")
    if target.states == v.states:
        return target
    return UpSet([a for a in target.atoms if a.state in v.states], v.dim, v.states)


def pre_star(v, target, logger=logger):
    """
    Saturate the predecessor-basis operator from target.
    :param v: Vass (holes and ε allowed, labels ignored)
    :param target: UpSet of target configurations
    :return: PreStar with a canonical basis and per-atom certificates
    """
    allowed = complement_down(v.holes)
    start = intersect(_rebased(target, v), allowed)
    incoming = {q: [] for q in v.states}
    for tid, t in enumerate(v.transitions):
        incoming[t.target].append(tid)

    tie = itertools.count()
    heap = []
    basis = {q: [] for q in v.states}
    certificates = {}

    def push(atom, certificate):
        heapq.heappush(heap, (sum(atom.basis), state_key(atom.state), atom.basis, next(tie), atom, certificate))

    def subsumed(atom):
        return any(b.covers(atom) for b in basis[atom.state])

    for atom in start.atoms:
        push(atom, None)
    processed = 0
    while heap:
        *_, atom, certificate = heapq.heappop(heap)
        if subsumed(atom):
            continue
        processed += 1
        basis[atom.state] = [b for b in basis[atom.state] if not atom.covers(b)] + [atom]
        certificates.setdefault(atom, certificate)
        for tid in incoming[atom.state]:
            t = v.transitions[tid]
            needed = tuple(max(u - e, 0) for u, e in zip(atom.basis, t.effect))
            for gate in allowed.atoms_at(t.source):
                candidate = UpAtom(t.source, vmax(needed, gate.basis))
                if not subsumed(candidate):
                    push(candidate, (tid, atom))
    result = UpSet([a for atoms in basis.values() for a in atoms], v.dim, v.states)
    logger.debug(f"pre* of {v.name}: {processed} atoms processed, basis size {len(result)}")
    return PreStar(v, result, certificates)


def pre_star_basis(v, target, logger=logger):
    return pre_star(v, target, logger=logger).basis


def _require_upward(v):
    if not isinstance(v.acceptance, Upward):
        raise UnsupportedAcceptance(f"needs upward acceptance, got {v.acceptance.kind}")


def empty_upward(v, logger=logger):
    """
    Emptiness of an upward-accepting model. When the language is not empty the result carries a witness word
    (ε labels dropped) and the transition ids of its run.
    """
    _require_upward(v)
    saturated = pre_star(v, v.acceptance.atoms, logger=logger)
    if v.initial not in saturated:
        return EmptinessResult(True)
    run = saturated.witness_from(v.initial)
    word = tuple(v.transitions[tid].label for tid in run if not v.transitions[tid].is_eps)
    return EmptinessResult(False, word, run)


def coverable(v, atom, logger=logger):
    """Can the initial configuration reach some configuration of atom↑?"""
    saturated = pre_star(v, UpSet([atom], v.dim, v.states), logger=logger)
    return v.initial in saturated


def empty_language_configs(v, logger=logger):
    """The down-set {c : L(c) is empty}; configurations inside holes count as having an empty language."""
    _require_upward(v)
    return complement_up(pre_star_basis(v, v.acceptance.atoms, logger=logger))


def km_clover(v, max_nodes=None, logger=logger):
    """
    Karp-Miller tree with acceleration; returns the maximal labels as a DownSet, whose downward closure equals
    the downward closure of the reachability set.
    :raises ModelError: for models with holes
    :raises BudgetExhausted: when more than max_nodes tree nodes are created
    """
    if v.has_holes:
        raise ModelError("the clover is not computed for models with holes")
    labels = [(v.initial.state, tuple(v.initial.counters))]
    parents = [None]
    queue = [0]
    while queue:
        node = queue.pop()
        state, vector = labels[node]
        ancestor = parents[node]
        repeated = False
        while ancestor is not None:
            if labels[ancestor] == (state, vector):
                repeated = True
                break
            ancestor = parents[ancestor]
        if repeated:
            continue
        for tid in v.outgoing[state]:
            t = v.transitions[tid]
            nxt = tuple(x + e for x, e in zip(vector, t.effect))
            if any(x < 0 for x in nxt):
                continue
            ancestor = node
            while ancestor is not None:
                a_state, a_vector = labels[ancestor]
                if a_state == t.target and leq(a_vector, nxt):
                    nxt = tuple(OMEGA if a < x else x for a, x in zip(a_vector, nxt))
                ancestor = parents[ancestor]
            labels.append((t.target, nxt))
            parents.append(node)
            queue.append(len(labels) - 1)
            if max_nodes is not None and len(labels) > max_nodes:
                raise BudgetExhausted(
                    "Karp-Miller tree exceeded the node cap", {"cutoff": "max_nodes", "nodes": len(labels)}
                )
    clover = DownSet([DownAtom(q, vector) for q, vector in set(labels)], v.dim, v.states)
    logger.debug(f"clover of {v.name}: {len(labels)} tree nodes, {len(clover)} maximal labels")
    return clover
