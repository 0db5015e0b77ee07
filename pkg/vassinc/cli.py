#!/usr/bin/env python3

__version__ = "0.3.0"
__license__ = "MIT"
__authors__ = "vassinc contributors"

"""
Command line front end of vassinc. Every command reads one or two model files (see vassinc.modelfile for the
format), runs one library operation and prints the result.

Exit codes:
  - 0: yes, or the command succeeded
  - 1: no; the counterexample is printed when there is one
  - 2: unknown; a budget was exhausted or a construction gave up. Raise the budget flags and try again.
  - 3: usage error, unreadable file or a model that does not fit the command

Budgets:
  Every cap defaults to the VASSINC_* environment variable of the same name (see vassinc.config) and can be
  overridden per command with --max-nodes, --max-counter-sum, --max-atoms, --abstraction-cap and --oracle-len.

Words:
  A word on the command line is either a list of letters separated by spaces or commas ("a b a", "a,b,a") or, when
  it contains neither, one letter per character ("aba"). "" and "eps" are the empty word.
"""

"""
Commands
--------

** Is the language empty?

    python -m vassinc empty corpus/countdown.vass

"yes" means the model accepts nothing. "no" comes with an accepted word.

--------

** Membership and runs

    python -m vassinc member corpus/countdown.vass a
    python -m vassinc runs corpus/pq.vass "a a"

runs prints one accepting run per line as transition indices (0-based, in file order).

--------

** Inclusion and equivalence

    python -m vassinc include A.vass B.vass --class det
    python -m vassinc equiv A.vass B.vass --class kdet:2
    python -m vassinc include A.vass B.vass --monoid corpus/contains-b.monoid

--class names the class of the right-hand model: det, hvass, kdet:K or kamb:K. With --monoid both models are
decorated with the given monoid and the decorations are compared as deterministic models with holes.

--------

** Constructions

    python -m vassinc complement A.vass --class det
    python -m vassinc decorate A.vass --monoid corpus/parity-a.monoid
    python -m vassinc decorate A.vass
    python -m vassinc abstract A.vass --threshold 2
    python -m vassinc abstract A.vass --adaptive --k 1

Each of them prints a model file. --format json wraps it in the "detail" field.

--------

** Ambiguity

    python -m vassinc ambiguity A.vass --k 1
    python -m vassinc ambiguity A.vass --k 4 --minimal

--------

** Hardness pairs

    python -m vassinc gen-hard 7 --output-dir /tmp/hard

Draws a random singleton-accepting seed from SEED and writes the seed and its two deterministic models. The two
models are equivalent iff the seed accepts nothing.

--------

** Brute-force oracle

    python -m vassinc oracle language A.vass
    python -m vassinc oracle include A.vass B.vass
    python -m vassinc oracle ambiguity A.vass
    python -m vassinc oracle maximal-runs A.vass

Every oracle action is bounded by --oracle-len; a "yes" from the oracle only holds up to that length.

--------

$ python -m vassinc --help
usage: vassinc [-h] [--log-level {debug,info,warning,error,critical}]
               {help,empty,member,runs,include,equiv,complement,decorate,abstract,ambiguity,gen-hard,oracle} ...

Decide emptiness, inclusion and equivalence of VASS languages.

positional arguments:
  {help,empty,member,runs,include,equiv,complement,decorate,abstract,ambiguity,gen-hard,oracle}
    help                Show this help
    empty               Check whether the language is empty
    member              Check whether a word is accepted
    runs                List the accepting runs over a word
    include             Check L(A) ⊆ L(B)
    equiv               Check L(A) = L(B)
    complement          Print a model of the complement
    decorate            Print the decoration with a monoid
    abstract            Print an M-abstraction
    ambiguity           Check that every word has at most K accepting runs
    gen-hard            Write a hardness pair for a random seed
    oracle              Bounded brute-force checks

options:
  -h, --help            show this help message and exit
  --log-level {debug,info,warning,error,critical}
                        set log level
"""

import argparse
import json
import logging
import os
import random
import sys
import traceback

from vassinc.config import Settings
from vassinc.constructions import (
    ba_control,
    complement_det,
    complement_det_hvass,
    complement_kambiguous,
    complement_kdet,
    materialize_abstraction,
)
from vassinc.corpus import random_seed
from vassinc.decide import CLASSES, check_k_ambiguous, equivalent, include, include_in_unambiguous_decorated
from vassinc.errors import Undetermined, VassError
from vassinc.model import control_automaton, hardness_pair, label_text
from vassinc.modelfile import parse, parse_label, parse_monoid, print_model, write_model
from vassinc.monoid import decorate_vass, transition_monoid
from vassinc.oracle import (
    OracleBudget,
    accepting_runs,
    accepts,
    bounded_ambiguity,
    bounded_inclusion,
    bounded_language,
    max_maximal_runs,
)
from vassinc.reachability import SearchBudget, empty_updown

EXIT_YES = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3

EXIT_CODES = {"yes": EXIT_YES, "no": EXIT_NO, "unknown": EXIT_UNKNOWN}

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; 2 means unknown here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_word(text):
    """
    :param text: command line word
    :return: tuple of letters
    """
    text = text.strip()
    if text in ("", "eps"):
        return ()
    if " " in text or "," in text:
        return tuple(parse_label(token) for token in text.replace(",", " ").split())
    return tuple(text)


def format_word(word):
    if word is None:
        return None
    return " ".join(label_text(letter) for letter in word) if word else "eps"


def parse_class(text):
    """det, hvass, kdet:K or kamb:K -> (class, k)"""
    name, _, k = text.partition(":")
    if name not in CLASSES:
        raise argparse.ArgumentTypeError(f"unknown class '{name}', expected one of {', '.join(CLASSES)}")
    if name in ("kdet", "kamb"):
        if not k.isdigit() or int(k) < 1:
            raise argparse.ArgumentTypeError(f"class {name} needs a positive K, e.g. {name}:2")
        return name, int(k)
    if k:
        raise argparse.ArgumentTypeError(f"class {name} takes no K")
    return name, 1


def _outcome(answer, counterexample=None, certificate=None, report=None, text=None, **detail):
    return {
        "verdict": answer,
        "counterexample": counterexample,
        "certificate": certificate,
        "report": dict(report or {}),
        "text": text,
        "detail": detail,
    }


def _from_verdict(verdict):
    return _outcome(
        verdict.answer.value,
        counterexample=format_word(verdict.witness) if verdict.is_no else None,
        certificate=verdict.certificate,
        report=verdict.budget_report,
    )


def _model_outcome(model):
    return _outcome("yes", text=print_model(model), model=model.name)


def cmd_empty(args, settings, logger=logger):
    v = parse(args.model)
    emptiness = empty_updown(v, SearchBudget.from_settings(settings), logger=logger)
    # YES from empty_updown means an accepted word was found
    if emptiness.is_yes:
        return _outcome("no", counterexample=format_word(emptiness.witness), report=emptiness.budget_report)
    if emptiness.is_no:
        return _outcome("yes", certificate=emptiness.certificate, report=emptiness.budget_report)
    return _outcome("unknown", report=emptiness.budget_report)


def cmd_member(args, settings, logger=logger):
    v = parse(args.model)
    word = parse_word(args.word)
    logger.debug(f"member: {format_word(word)}")
    accepted = accepts(v, word, OracleBudget.from_settings(settings))
    return _outcome("yes" if accepted else "no")


def cmd_runs(args, settings, logger=logger):
    v = parse(args.model)
    runs = accepting_runs(v, parse_word(args.word), OracleBudget.from_settings(settings))
    lines = [" ".join(str(tid) for tid in run) for run in runs]
    logger.info(f"{len(runs)} accepting runs")
    return _outcome(
        "yes" if runs else "no", text="\n".join(lines) + "\n" if lines else "", runs=[list(run) for run in runs]
    )


def _decide(operation, args, settings, logger):
    v1, v2 = parse(args.left), parse(args.right)
    budget = SearchBudget.from_settings(settings)
    if args.monoid:
        hom = parse_monoid(args.monoid)
        forward = include_in_unambiguous_decorated(v1, v2, hom, budget, logger=logger)
        if operation is include or forward.is_no:
            return _from_verdict(forward)
        backward = include_in_unambiguous_decorated(v2, v1, hom, budget, logger=logger)
        if backward.is_no or forward.is_yes:
            return _from_verdict(backward)
        return _from_verdict(forward)
    cls, k = args.cls
    return _from_verdict(operation(v1, v2, cls, k, budget, settings, logger=logger))


def cmd_include(args, settings, logger=logger):
    return _decide(include, args, settings, logger)


def cmd_equiv(args, settings, logger=logger):
    return _decide(equivalent, args, settings, logger)


def cmd_complement(args, settings, logger=logger):
    v = parse(args.model)
    cls, k = args.cls
    try:
        if cls == "det":
            result = complement_det(v, logger=logger)
        elif cls == "hvass":
            result = complement_det_hvass(v, logger=logger)
        elif cls == "kdet":
            result = complement_kdet(
                v, k, check_len=settings.kdet_check_len, max_states=settings.abstraction_nodes, logger=logger
            )
        else:
            result = complement_kambiguous(v, k, settings.abstraction_cap, settings.abstraction_nodes, logger=logger)
    except Undetermined as e:
        logger.info(str(e))
        return _outcome("unknown", report=e.report)
    return _model_outcome(result)


def cmd_decorate(args, settings, logger=logger):
    v = parse(args.model)
    if args.monoid:
        hom = parse_monoid(args.monoid)
    else:
        hom = transition_monoid(control_automaton(v), logger=logger).hom
        logger.info(f"transition monoid of {v.name} has {hom.monoid.size} elements")
    return _model_outcome(decorate_vass(v, hom, logger=logger))


def cmd_abstract(args, settings, logger=logger):
    v = parse(args.model)
    if args.threshold is not None:
        return _model_outcome(materialize_abstraction(v, args.threshold, settings.abstraction_nodes))
    try:
        result = ba_control(v, args.k, settings.abstraction_cap, settings.abstraction_nodes, logger=logger)
    except Undetermined as e:
        logger.info(str(e))
        return _outcome("unknown", report=e.report)
    return _model_outcome(result)


def cmd_ambiguity(args, settings, logger=logger):
    v = parse(args.model)
    if args.minimal:
        for k in range(args.k + 1):
            verdict = check_k_ambiguous(v, k, logger=logger)
            if verdict.is_yes:
                return _outcome("yes", certificate=verdict.certificate, text=f"{k}\n", k=k)
        return _from_verdict(verdict)
    return _from_verdict(check_k_ambiguous(v, args.k, logger=logger))


def cmd_gen_hard(args, settings, logger=logger):
    rng = random.Random(args.seed)
    seed = random_seed(
        rng, dim=args.dim, n_states=args.states, n_transitions=args.transitions, name=f"seed-{args.seed}"
    )
    models = (seed,) + hardness_pair(seed)
    if args.output_dir:
        os.makedirs(args.output_dir, exist_ok=True)
        paths = []
        for model in models:
            path = os.path.join(args.output_dir, f"{model.name}.vass")
            write_model(model, path)
            paths.append(path)
        logger.info(f"wrote {', '.join(paths)}")
        return _outcome("yes", text="\n".join(paths) + "\n", files=paths)
    return _outcome("yes", text="\n".join(print_model(model) for model in models), models=[m.name for m in models])


def cmd_oracle(args, settings, logger=logger):
    budget = OracleBudget.from_settings(settings)
    maxlen = settings.oracle_len
    v = parse(args.model)
    if args.action == "language":
        language = [format_word(w) for w in bounded_language(v, maxlen, budget)]
        return _outcome("yes" if language else "no", text="".join(f"{w}\n" for w in language), words=language)
    if args.action == "include":
        witness = bounded_inclusion(v, parse(args.other), maxlen, budget)
        if witness is None:
            return _outcome("yes", certificate=f"no counterexample up to length {maxlen}")
        return _outcome("no", counterexample=format_word(witness))
    if args.action == "ambiguity":
        value = bounded_ambiguity(v, maxlen, budget)
        return _outcome("yes", text=f"{value}\n", value=value)
    value = max_maximal_runs(control_automaton(v), maxlen)
    return _outcome("yes", text=f"{value}\n", value=value)


def render(outcome, output_format, settings):
    """
    Print the outcome and return the exit code.
    :param outcome: dict built by a command
    :param output_format: "text" or "json"
    :param settings: Settings in effect, echoed in the budget field
    """
    answer = outcome["verdict"]
    if output_format == "json":
        budget = {
            "max_nodes": settings.max_nodes,
            "max_counter_sum": settings.max_counter_sum,
            "max_atoms": settings.max_atoms,
            "abstraction_cap": settings.abstraction_cap,
            "oracle_len": settings.oracle_len,
            "report": outcome["report"],
        }
        document = {"verdict": answer, "counterexample": outcome["counterexample"], "budget": budget}
        detail = dict(outcome["detail"])
        if outcome["certificate"] is not None:
            detail["certificate"] = outcome["certificate"]
        if outcome["text"] is not None:
            detail["text"] = outcome["text"]
        if detail:
            document["detail"] = detail
        print(json.dumps(document, default=str, sort_keys=True))
        return EXIT_CODES[answer]
    if outcome["text"] is not None and answer != "unknown":
        sys.stdout.write(outcome["text"])
        return EXIT_CODES[answer]
    print(answer)
    if outcome["counterexample"] is not None:
        print(f"counterexample: {outcome['counterexample']}")
    if outcome["certificate"] is not None:
        print(f"certificate: {outcome['certificate']}")
    if answer == "unknown" and outcome["report"]:
        print(f"budget: {json.dumps(outcome['report'], default=str, sort_keys=True)}")
    return EXIT_CODES[answer]


def build_parser():
    parser = _Parser(prog="vassinc", description="Decide emptiness, inclusion and equivalence of VASS languages.")
    parser.add_argument(
        "--log-level",
        default="info",
        dest="log_level",
        choices=["debug", "info", "warning", "error", "critical"],
        help="set log level",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = _Parser(add_help=False)
    common.add_argument("--format", default="text", choices=["text", "json"], help="output format")
    common.add_argument("--max-nodes", type=int, help="forward search nodes per reachability query")
    common.add_argument("--max-counter-sum", type=int, help="forward search drops larger counter sums")
    common.add_argument("--max-atoms", type=int, help="acceptance atoms searched per emptiness check")
    common.add_argument("--abstraction-cap", type=int, help="largest abstraction threshold tried")
    common.add_argument("--oracle-len", type=int, help="word length of the oracle checks")

    subparsers = parser.add_subparsers(dest="command")
    help_parser = subparsers.add_parser("help", help="Show this help")
    help_parser.set_defaults(func=None)

    empty_parser = subparsers.add_parser("empty", parents=[common], help="Check whether the language is empty")
    empty_parser.add_argument("model", help="model file")
    empty_parser.set_defaults(func=cmd_empty)

    member_parser = subparsers.add_parser("member", parents=[common], help="Check whether a word is accepted")
    member_parser.add_argument("model", help="model file")
    member_parser.add_argument("word", help='the word, e.g. "aab", "a a b" or "eps"')
    member_parser.set_defaults(func=cmd_member)

    runs_parser = subparsers.add_parser("runs", parents=[common], help="List the accepting runs over a word")
    runs_parser.add_argument("model", help="model file")
    runs_parser.add_argument("word", help='the word, e.g. "aab", "a a b" or "eps"')
    runs_parser.set_defaults(func=cmd_runs)

    deciders = (("include", cmd_include, "Check L(A) ⊆ L(B)"), ("equiv", cmd_equiv, "Check L(A) = L(B)"))
    for name, func, text in deciders:
        decide_parser = subparsers.add_parser(name, parents=[common], help=text)
        decide_parser.add_argument("left", help="model file A")
        decide_parser.add_argument("right", help="model file B")
        decide_parser.add_argument(
            "--class", dest="cls", type=parse_class, default=("det", 1), help="class of B: det, hvass, kdet:K, kamb:K"
        )
        decide_parser.add_argument("--monoid", help="decorate both models with this monoid file and compare those")
        decide_parser.set_defaults(func=func)

    complement_parser = subparsers.add_parser("complement", parents=[common], help="Print a model of the complement")
    complement_parser.add_argument("model", help="model file")
    complement_parser.add_argument(
        "--class", dest="cls", type=parse_class, default=("det", 1), help="det, hvass, kdet:K, kamb:K"
    )
    complement_parser.set_defaults(func=cmd_complement)

    decorate_parser = subparsers.add_parser("decorate", parents=[common], help="Print the decoration with a monoid")
    decorate_parser.add_argument("model", help="model file")
    decorate_parser.add_argument(
        "--monoid", help="monoid file; without it the transition monoid of the control automaton is used"
    )
    decorate_parser.set_defaults(func=cmd_decorate)

    abstract_parser = subparsers.add_parser("abstract", parents=[common], help="Print an M-abstraction")
    abstract_parser.add_argument("model", help="model file")
    mode = abstract_parser.add_mutually_exclusive_group(required=True)
    mode.add_argument("--threshold", type=int, help="the threshold M")
    mode.add_argument(
        "--adaptive", action="store_true", help="smallest M = 1, 2, 4, ... making the control K-ambiguous"
    )
    abstract_parser.add_argument("--k", type=int, default=1, help="ambiguity bound for --adaptive (default 1)")
    abstract_parser.set_defaults(func=cmd_abstract)

    ambiguity_parser = subparsers.add_parser(
        "ambiguity", parents=[common], help="Check that every word has at most K accepting runs"
    )
    ambiguity_parser.add_argument("model", help="model file")
    ambiguity_parser.add_argument("--k", type=int, required=True, help="ambiguity bound")
    ambiguity_parser.add_argument(
        "--minimal", action="store_true", help="print the smallest k <= K that holds instead"
    )
    ambiguity_parser.set_defaults(func=cmd_ambiguity)

    hard_parser = subparsers.add_parser("gen-hard", parents=[common], help="Write a hardness pair for a random seed")
    hard_parser.add_argument("seed", type=int, help="random seed")
    hard_parser.add_argument("--output-dir", help="write the three models here instead of printing them")
    hard_parser.add_argument("--dim", type=int, default=1, help="seed dimension (default 1)")
    hard_parser.add_argument("--states", type=int, default=2, help="seed states (default 2)")
    hard_parser.add_argument("--transitions", type=int, default=3, help="seed transitions (default 3)")
    hard_parser.set_defaults(func=cmd_gen_hard)

    oracle_parser = subparsers.add_parser("oracle", help="Bounded brute-force checks")
    actions = oracle_parser.add_subparsers(dest="action", required=True)
    for action, text in (
        ("language", "List the accepted words up to --oracle-len"),
        ("include", "Search a counterexample to L(A) ⊆ L(B) up to --oracle-len"),
        ("ambiguity", "Largest number of accepting runs over a word up to --oracle-len"),
        ("maximal-runs", "Largest number of maximal control runs over a word up to --oracle-len"),
    ):
        action_parser = actions.add_parser(action, parents=[common], help=text)
        action_parser.add_argument("model", help="model file")
        if action == "include":
            action_parser.add_argument("other", help="model file B")
        action_parser.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    # Set up logging
    log_format = "%(asctime)s %(levelname)s %(funcName)s(%(lineno)d): %(message)s"
    default_log_level = args.log_level.upper()
    logging.basicConfig(format=log_format, level=default_log_level)
    top_logger = logging.getLogger()
    top_logger.setLevel(default_log_level)

    logger.debug(f"Args list: {args}")
    logger.debug(f"command: {args.command}")

    if args.command is None or args.command == "help":
        parser.print_help()
        return EXIT_YES if args.command == "help" else EXIT_USAGE

    try:
        settings = Settings.from_env().override(
            **{
                "max_nodes": args.max_nodes,
                "max_counter_sum": args.max_counter_sum,
                "max_atoms": args.max_atoms,
                "abstraction_cap": args.abstraction_cap,
                "oracle_len": args.oracle_len,
            }
        )
        outcome = args.func(args, settings, logger=top_logger)
    except (VassError, ValueError, OSError) as err:
        logger.error(err)
        logger.debug(traceback.format_exc())
        return EXIT_USAGE
    return render(outcome, args.format, settings)


if __name__ == "__main__":
    sys.exit(main())
