"""
Budget defaults.

Every cap used by the engines can be set with an environment variable and overridden again on the command line:

    VASSINC_MAX_NODES          forward search nodes per reachability query (default 20000)
    VASSINC_MAX_COUNTER_SUM    forward search drops configurations above this counter sum (default 64)
    VASSINC_MAX_ATOMS          acceptance atoms searched per emptiness check (default 1000)
    VASSINC_ABSTRACTION_CAP    largest threshold M tried by the adaptive abstraction (default 16)
    VASSINC_ABSTRACTION_NODES  states explored per abstraction emptiness check (default 200000)
    VASSINC_ORACLE_LEN         word length used by the oracle commands (default 5)
    VASSINC_KDET_CHECK_LEN     word length of the k-determinism precondition check (default 5)
    VASSINC_MAX_CONFIGS        configurations visited by the oracle per word (default 50000)
    VASSINC_MAX_RUNS           runs listed by the oracle per word (default 100000)
"""

import logging
import os
from dataclasses import dataclass, fields, replace

logger = logging.getLogger(__name__)

ENV_PREFIX = "VASSINC_"
ENV_NAMES = {
    "max_nodes": "MAX_NODES",
    "max_counter_sum": "MAX_COUNTER_SUM",
    "max_atoms": "MAX_ATOMS",
    "abstraction_cap": "ABSTRACTION_CAP",
    "abstraction_nodes": "ABSTRACTION_NODES",
    "oracle_len": "ORACLE_LEN",
    "kdet_check_len": "KDET_CHECK_LEN",
    "max_configs": "MAX_CONFIGS",
    "max_runs_per_word": "MAX_RUNS",
}

# search caps where zero would make every check Unknown
POSITIVE = ("max_nodes", "max_counter_sum", "max_atoms")


@dataclass(frozen=True)
class Settings:
    max_nodes: int = 20000
    max_counter_sum: int = 64
    max_atoms: int = 1000
    abstraction_cap: int = 16
    abstraction_nodes: int = 200000
    oracle_len: int = 5
    kdet_check_len: int = 5
    max_configs: int = 50000
    max_runs_per_word: int = 100000

    def __post_init__(self):
        for field in fields(self):
            value = getattr(self, field.name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{field.name} must be a nonnegative integer, got {value!r}")
            if field.name in POSITIVE and value == 0:
                raise ValueError(f"{field.name} must be positive")

    @classmethod
    def from_env(cls, environ=None):
        """
        Build the settings from VASSINC_* environment variables.
        :param environ: mapping to read instead of os.environ
        :return: Settings
        """
        environ = os.environ if environ is None else environ
        values = {}
        for name, suffix in ENV_NAMES.items():
            variable = ENV_PREFIX + suffix
            raw = environ.get(variable)
            if raw is None:
                logger.debug(f"{variable} was not provided. Using '{getattr(cls, name)}'")
                continue
            raw = raw.strip()
            if not raw.isdigit():
                raise ValueError(f"{variable} is not an integer: '{raw}'")
            values[name] = int(raw)
        return cls(**values)

    def override(self, **kwargs):
        """Return a copy with every non-None keyword applied."""
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})
