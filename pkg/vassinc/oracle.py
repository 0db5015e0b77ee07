"""
Brute-force ground truth.

Everything here enumerates words up to a length bound and simulates the model on explicit configurations. Words are
tuples of letters; they are produced in length-lex order (shorter first, then lexicographic in the order of
Vass.letters), so "the first counterexample" is well defined.

The configuration sets are closed under ε-steps after every letter. ε-cycles with nonnegative effects could make a
closure infinite, so every closure and every run count is capped by OracleBudget.max_configs and fails with
BudgetExhausted instead of looping.
"""

import itertools
import logging
from dataclasses import dataclass

from vassinc.config import Settings
from vassinc.errors import BudgetExhausted, ModelError
from vassinc.model import accepts_config, letter_key, successors

logger = logging.getLogger(__name__)

MAX_DEPTH = 400


@dataclass(frozen=True)
class OracleBudget:
    max_word_len: int = 5
    max_runs_per_word: int = 100000
    max_configs: int = 50000

    def __post_init__(self):
        if self.max_word_len < 0:
            raise ValueError("max_word_len must be nonnegative")
        if self.max_runs_per_word <= 0 or self.max_configs <= 0:
            raise ValueError("oracle caps must be positive")

    @classmethod
    def from_settings(cls, settings: Settings):
        return cls(settings.oracle_len, settings.max_runs_per_word, settings.max_configs)


DEFAULT_BUDGET = OracleBudget()


def words(letters, maxlen):
    """All words over letters of length <= maxlen in length-lex order."""
    for n in range(maxlen + 1):
        yield from itertools.product(letters, repeat=n)


def _closure(v, configs, budget):
    closed = set(configs)
    stack = list(configs)
    while stack:
        c = stack.pop()
        for _, nxt in successors(v, c, eps=True):
            if nxt not in closed:
                closed.add(nxt)
                if len(closed) > budget.max_configs:
                    raise BudgetExhausted(
                        "eps-closure exceeded the configuration cap",
                        {"cutoff": "max_configs", "max_configs": budget.max_configs},
                    )
                stack.append(nxt)
    return frozenset(closed)


def initial_configs(v, budget=DEFAULT_BUDGET):
    return _closure(v, {v.initial}, budget)


def read(v, configs, letter, budget=DEFAULT_BUDGET):
    """Configurations reachable from configs by one letter followed by ε-steps."""
    moved = set()
    for c in configs:
        for tid, nxt in successors(v, c, eps=False):
            if v.transitions[tid].label == letter:
                moved.add(nxt)
    return _closure(v, moved, budget)


def _accepting(v, configs):
    return any(accepts_config(v, c) for c in configs)


def accepts(v, w, budget=DEFAULT_BUDGET):
    current = initial_configs(v, budget)
    for letter in w:
        if not current:
            return False
        current = read(v, current, letter, budget)
    return _accepting(v, current)


def _letters(*models):
    alphabet = set()
    for v in models:
        alphabet |= v.alphabet
    return tuple(sorted(alphabet, key=letter_key))


def bounded_language(v, maxlen, budget=DEFAULT_BUDGET):
    """Accepted words of length <= maxlen, in length-lex order."""
    accepted = []
    level = [((), initial_configs(v, budget))]
    for n in range(maxlen + 1):
        following = []
        for w, configs in level:
            if _accepting(v, configs):
                accepted.append(w)
            if n == maxlen:
                continue
            for letter in v.letters:
                nxt = read(v, configs, letter, budget)
                if nxt:
                    following.append((w + (letter,), nxt))
        level = following
    return accepted


def _joint_search(v1, v2, maxlen, budget, keep, hit):
    letters = _letters(v1, v2)
    level = [((), initial_configs(v1, budget), initial_configs(v2, budget))]
    for n in range(maxlen + 1):
        following = []
        for w, s1, s2 in level:
            if hit(_accepting(v1, s1), _accepting(v2, s2)):
                return w
            if n == maxlen:
                continue
            for letter in letters:
                n1 = read(v1, s1, letter, budget)
                n2 = read(v2, s2, letter, budget)
                if keep(n1, n2):
                    following.append((w + (letter,), n1, n2))
        level = following
    return None


def bounded_inclusion(v1, v2, maxlen, budget=DEFAULT_BUDGET):
    """The length-lex least word of length <= maxlen in L(v1) but not in L(v2), or None."""
    return _joint_search(v1, v2, maxlen, budget, keep=lambda n1, n2: bool(n1), hit=lambda a1, a2: a1 and not a2)


def bounded_equivalence(v1, v2, maxlen, budget=DEFAULT_BUDGET):
    """The length-lex least word of length <= maxlen accepted by exactly one of the models, or None."""
    return _joint_search(v1, v2, maxlen, budget, keep=lambda n1, n2: bool(n1 or n2), hit=lambda a1, a2: a1 != a2)


def count_accepting_runs(v, w, budget=DEFAULT_BUDGET):
    """
    Number of distinct accepting runs over w (runs are transition sequences, ε-steps included).
    :raises BudgetExhausted: on an ε-cycle or when more than max_configs (configuration, position) pairs are visited
    """
    memo = {}
    on_path = set()
    w = tuple(w)

    def count(c, i, depth):
        key = (c, i)
        if key in memo:
            return memo[key]
        if key in on_path:
            raise BudgetExhausted(f"eps-cycle through {c} gives infinitely many runs", {"cutoff": "eps-cycle"})
        if len(memo) >= budget.max_configs or depth > MAX_DEPTH:
            raise BudgetExhausted(
                "run count exceeded the configuration cap", {"cutoff": "max_configs", "max_configs": budget.max_configs}
            )
        on_path.add(key)
        total = 1 if i == len(w) and accepts_config(v, c) else 0
        for tid, nxt in successors(v, c):
            t = v.transitions[tid]
            if t.is_eps:
                total += count(nxt, i, depth + 1)
            elif i < len(w) and t.label == w[i]:
                total += count(nxt, i + 1, depth + 1)
        on_path.discard(key)
        memo[key] = total
        return total

    return count(v.initial, 0, 0)


def accepting_runs(v, w, budget=DEFAULT_BUDGET):
    """Every accepting run over w as a tuple of transition ids, in lexicographic order of the ids."""
    w = tuple(w)
    runs = []
    visits = 0

    def walk(c, i, path, on_path):
        nonlocal visits
        visits += 1
        if visits > budget.max_configs or len(path) > MAX_DEPTH:
            raise BudgetExhausted("run enumeration exceeded the configuration cap", {"cutoff": "max_configs"})
        if i == len(w) and accepts_config(v, c):
            runs.append(tuple(path))
            if len(runs) > budget.max_runs_per_word:
                raise BudgetExhausted("too many runs", {"cutoff": "max_runs_per_word"})
        for tid, nxt in successors(v, c):
            t = v.transitions[tid]
            if t.is_eps:
                if (nxt, i) in on_path:
                    raise BudgetExhausted(
                        f"eps-cycle through {nxt} gives infinitely many runs", {"cutoff": "eps-cycle"}
                    )
                walk(nxt, i, path + [tid], on_path | {(nxt, i)})
            elif i < len(w) and t.label == w[i]:
                walk(nxt, i + 1, path + [tid], {(nxt, i + 1)})

    walk(v.initial, 0, [], {(v.initial, 0)})
    return sorted(runs)


def max_maximal_runs(a, maxlen):
    """
    Largest number of maximal runs of a finite automaton over a word of length <= maxlen.

    A maximal run either reads the whole word or stops on a prefix after which the next letter has no transition.
    Instead of listing words we track, for every reachable vector of run counts per state, the largest number of
    runs that already died.
    """
    if a.dim != 0:
        raise ModelError("max_maximal_runs needs a dimension-0 automaton")
    if a.has_eps:
        raise ModelError("max_maximal_runs needs an automaton without eps-transitions")
    order = sorted(a.states, key=lambda q: repr(q))
    index = {q: i for i, q in enumerate(order)}
    moves = {
        letter: [[index[a.transitions[tid].target] for tid in a.transitions_on(q, letter)] for q in order]
        for letter in a.letters
    }
    start = [0] * len(order)
    start[index[a.initial.state]] = 1
    level = {tuple(start): 0}
    best = 1
    for _ in range(maxlen):
        following = {}
        for counts, dead in level.items():
            for letter in a.letters:
                nxt = [0] * len(order)
                died = dead
                for i, n in enumerate(counts):
                    if not n:
                        continue
                    targets = moves[letter][i]
                    if not targets:
                        died += n
                    for j in targets:
                        nxt[j] += n
                nxt = tuple(nxt)
                if following.get(nxt, -1) < died:
                    following[nxt] = died
                best = max(best, sum(nxt) + died)
        level = following
    return best


def bounded_ambiguity(v, maxlen, budget=DEFAULT_BUDGET):
    """Largest number of accepting runs over an accepted word of length <= maxlen (0 when none is accepted)."""
    return max((count_accepting_runs(v, w, budget) for w in bounded_language(v, maxlen, budget)), default=0)
