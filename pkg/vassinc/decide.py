"""
Inclusion, equivalence and ambiguity deciders.

Every inclusion check has the same shape: complement the right-hand model with the construction its class allows,
take the product with the left-hand model and ask empty_updown whether the product accepts anything. An accepted
word of the product is a counterexample. Constructions that give up (Undetermined) and emptiness checks that run
out of budget both end as Unknown; nothing is ever guessed.

    class    right-hand model                          complement
    det      deterministic, no holes                   complement_det
    hvass    deterministic, holes allowed              complement_det_hvass
    kdet:K   at most K maximal runs per word           complement_kdet
    kamb:K   at most K accepting runs per word         complement_kambiguous
"""

import logging

from vassinc.config import Settings
from vassinc.constructions import (
    complement_det,
    complement_det_hvass,
    complement_kambiguous,
    complement_kdet,
)
from vassinc.coverability import empty_upward
from vassinc.errors import ModelError, NotDeterministic, Undetermined
from vassinc.model import ambiguity_witness, hvass_to_epsvass, product, syntactic_deterministic, with_alphabet
from vassinc.monoid import decorate_vass, project_word
from vassinc.reachability import SearchBudget, Verdict, empty_updown

logger = logging.getLogger(__name__)

DEFAULTS = Settings()

CLASSES = ("det", "hvass", "kdet", "kamb")


def _aligned(v1, v2):
    alphabet = v1.alphabet | v2.alphabet
    return with_alphabet(v1, alphabet), with_alphabet(v2, alphabet)


def _product_emptiness(v1, complemented, budget, logger):
    """Inclusion verdict from the emptiness of v1 x complement."""
    if v1.has_holes:
        v1 = hvass_to_epsvass(v1, logger=logger)
    joint = product(v1, complemented, logger=logger)
    emptiness = empty_updown(joint, budget, logger=logger)
    if emptiness.is_yes:
        return Verdict.no(witness=emptiness.witness, run=emptiness.run, report=emptiness.budget_report)
    if emptiness.is_no:
        return Verdict.yes(certificate=emptiness.certificate, report=emptiness.budget_report)
    return Verdict.unknown(emptiness.budget_report)


def include_in_det(v1, v2, budget=None, logger=logger):
    """
    L(v1) ⊆ L(v2) for a deterministic v2 without holes.
    :return: Verdict; No carries the counterexample word
    :raises NotDeterministic:
    """
    v1, v2 = _aligned(v1, v2)
    return _product_emptiness(v1, complement_det(v2, logger=logger), budget or SearchBudget(), logger)


def include_in_det_hvass(v1, v2, budget=None, logger=logger):
    """L(v1) ⊆ L(v2) for a deterministic v2 that may have holes; v1 may have holes too."""
    v1, v2 = _aligned(v1, v2)
    return _product_emptiness(v1, complement_det_hvass(v2, logger=logger), budget or SearchBudget(), logger)


def include_in_kdet(
    v1,
    v2,
    k,
    budget=None,
    check_len=DEFAULTS.kdet_check_len,
    max_states=DEFAULTS.abstraction_nodes,
    logger=logger,
):
    v1, v2 = _aligned(v1, v2)
    try:
        complemented = complement_kdet(v2, k, check_len=check_len, max_states=max_states, logger=logger)
    except Undetermined as e:
        logger.info(f"inclusion undetermined: {e}")
        return Verdict.unknown(e.report)
    return _product_emptiness(v1, complemented, budget or SearchBudget(), logger)


def include_in_kambiguous(
    v1,
    v2,
    k,
    budget=None,
    cap=DEFAULTS.abstraction_cap,
    max_nodes=DEFAULTS.abstraction_nodes,
    logger=logger,
):
    """L(v1) ⊆ L(v2) for a k-ambiguous upward-accepting v2. Unknown when the abstraction threshold search gives up."""
    v1, v2 = _aligned(v1, v2)
    try:
        complemented = complement_kambiguous(v2, k, cap, max_nodes, logger=logger)
    except Undetermined as e:
        logger.info(f"inclusion undetermined: {e}")
        return Verdict.unknown(e.report)
    return _product_emptiness(v1, complemented, budget or SearchBudget(), logger)


def include_in_unambiguous_decorated(v1, v2, hom, budget=None, logger=logger):
    """
    L(v1) ⊆ L(v2) through decorations with a user-supplied monoid.

    Both models are decorated with hom. When the monoid separates the configuration languages of an unambiguous v2
    its decoration is deterministic up to holes, and inclusion of the decorations is inclusion of the languages.
    :raises NotDeterministic: when the decorated v2 is not deterministic, i.e. hom does not separate enough
    """
    v1, v2 = _aligned(v1, v2)
    d1 = decorate_vass(v1, hom, logger=logger)
    d2 = decorate_vass(v2, hom, logger=logger)
    if not syntactic_deterministic(d2):
        raise NotDeterministic(f"the decoration of {v2.name} is not deterministic; the monoid does not separate it")
    verdict = include_in_det_hvass(d1, d2, budget, logger=logger)
    if verdict.is_no:
        return Verdict.no(witness=project_word(verdict.witness), report=verdict.budget_report)
    return verdict


def include(v1, v2, cls="det", k=1, budget=None, settings=DEFAULTS, logger=logger):
    """Dispatch on the class of v2."""
    if cls == "det":
        return include_in_det(v1, v2, budget, logger=logger)
    if cls == "hvass":
        return include_in_det_hvass(v1, v2, budget, logger=logger)
    if cls == "kdet":
        return include_in_kdet(v1, v2, k, budget, settings.kdet_check_len, settings.abstraction_nodes, logger=logger)
    if cls == "kamb":
        return include_in_kambiguous(
            v1, v2, k, budget, settings.abstraction_cap, settings.abstraction_nodes, logger=logger
        )
    raise ModelError(f"unknown class '{cls}', expected one of {', '.join(CLASSES)}")


def equivalent(v1, v2, cls="det", k=1, budget=None, settings=DEFAULTS, logger=logger):
    """
    Two inclusions. No as soon as one direction has a counterexample, Yes when both hold, Unknown otherwise.
    """
    forward = include(v1, v2, cls, k, budget, settings, logger=logger)
    if forward.is_no:
        return forward
    backward = include(v2, v1, cls, k, budget, settings, logger=logger)
    if backward.is_no:
        return backward
    if forward.is_yes and backward.is_yes:
        return Verdict.yes(certificate=f"{forward.certificate}/{backward.certificate}")
    report = forward.budget_report if forward.is_unknown else backward.budget_report
    return Verdict.unknown(report)


def check_k_ambiguous(v, k, logger=logger):
    """
    Yes when every word has at most k accepting runs; No carries a word with more. Exact: the ambiguity witness has
    upward acceptance, so backward coverability decides its emptiness.
    """
    result = empty_upward(ambiguity_witness(v, k, logger=logger), logger=logger)
    if result.empty:
        return Verdict.yes(certificate="ambiguity-witness-empty")
    return Verdict.no(witness=result.witness)


def minimal_ambiguity(v, k_max, logger=logger):
    """Smallest k <= k_max for which v is k-ambiguous, or None."""
    for k in range(k_max + 1):
        if check_k_ambiguous(v, k, logger=logger).is_yes:
            return k
    return None
