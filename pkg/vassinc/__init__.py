"""
vassinc: emptiness, inclusion and equivalence of VASS languages.

The deciders live in vassinc.decide, the constructions they are built from in vassinc.constructions and
vassinc.monoid, and the three-valued emptiness checks in vassinc.coverability and vassinc.reachability.
vassinc.oracle cross-checks all of them by brute force on short words.
"""

from vassinc.config import Settings
from vassinc.decide import check_k_ambiguous, equivalent, include, minimal_ambiguity
from vassinc.errors import VassError
from vassinc.model import Transition, Vass
from vassinc.modelfile import parse, parse_model, print_model
from vassinc.reachability import Answer, SearchBudget, Verdict, empty_updown, reach

__version__ = "0.3.0"

__all__ = [
    "Answer",
    "SearchBudget",
    "Settings",
    "Transition",
    "Vass",
    "VassError",
    "Verdict",
    "check_k_ambiguous",
    "empty_updown",
    "equivalent",
    "include",
    "minimal_ambiguity",
    "parse",
    "parse_model",
    "print_model",
    "reach",
]
