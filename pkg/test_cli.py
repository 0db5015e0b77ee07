import json
import os

import pytest

from vassinc import zoo
from vassinc.cli import format_word, main, parse_class, parse_word
from vassinc.model import hardness_pair
from vassinc.modelfile import parse, parse_model, write_model
from vassinc.monoid import DecoratedLetter

CORPUS = os.path.join(os.path.dirname(os.path.abspath(__file__)), "corpus")


def corpus(name):
    return os.path.join(CORPUS, name)


def test_words():
    assert parse_word("aab") == ("a", "a", "b")
    assert parse_word("a a b") == ("a", "a", "b")
    assert parse_word("a,b") == ("a", "b")
    assert parse_word("eps") == ()
    assert parse_word("") == ()
    assert parse_word("a@1 b@0") == (DecoratedLetter("a", 1), DecoratedLetter("b", 0))
    assert format_word(("a", "b")) == "a b"
    assert format_word(()) == "eps"
    assert format_word(None) is None


def test_classes():
    assert parse_class("det") == ("det", 1)
    assert parse_class("kdet:2") == ("kdet", 2)
    assert parse_class("kamb:1") == ("kamb", 1)


def test_empty(capsys):
    assert main(["empty", corpus("seed-no.vass")]) == 0
    assert capsys.readouterr().out.startswith("yes")
    assert main(["empty", corpus("countdown.vass")]) == 1
    out = capsys.readouterr().out
    assert out.startswith("no")
    assert "counterexample:" in out


def test_member(capsys):
    assert main(["member", corpus("countdown.vass"), "a"]) == 0
    assert main(["member", corpus("countdown.vass"), "aa"]) == 1
    assert main(["member", corpus("pq.vass"), "a a b"]) == 0


def test_runs(capsys):
    assert main(["runs", corpus("pq.vass"), "a a"]) == 0
    assert capsys.readouterr().out == "0 1\n"
    assert main(["runs", corpus("countdown.vass"), "aa"]) == 1


def test_include(capsys):
    assert main(["include", corpus("countdown.vass"), corpus("loop1.vass")]) == 0
    assert capsys.readouterr().out.startswith("yes")
    assert main(["include", corpus("loop1.vass"), corpus("countdown.vass"), "--format", "json"]) == 1
    document = json.loads(capsys.readouterr().out)
    assert document["verdict"] == "no"
    assert document["counterexample"] is not None
    assert document["budget"]["max_nodes"] == 20000


def test_equiv_of_hardness_pairs(tmp_path):
    for seed, expected in ((zoo.reachable_seed(), 1), (zoo.unreachable_seed(), 0)):
        paths = []
        for model in hardness_pair(seed):
            path = str(tmp_path / f"{model.name}.vass")
            write_model(model, path)
            paths.append(path)
        assert main(["equiv"] + paths) == expected


def test_complement(capsys):
    assert main(["complement", corpus("countdown.vass")]) == 0
    co = parse_model(capsys.readouterr().out)
    assert co.acceptance.kind == "downward"


def test_decorate(capsys):
    assert main(["decorate", corpus("separated.vass"), "--monoid", corpus("contains-b.monoid")]) == 0
    decorated = parse_model(capsys.readouterr().out)
    assert decorated.has_holes
    assert main(["decorate", corpus("pq.vass")]) == 0
    assert parse_model(capsys.readouterr().out).dim == 0


def test_abstract(capsys):
    assert main(["abstract", corpus("loop1.vass"), "--threshold", "2"]) == 0
    assert len(parse_model(capsys.readouterr().out).states) == 3
    assert main(["abstract", corpus("counter-resolved.vass"), "--adaptive", "--k", "1"]) == 0
    assert parse_model(capsys.readouterr().out).name == "counter-resolved-M2"


def test_ambiguity(capsys):
    assert main(["ambiguity", corpus("doubled.vass"), "--k", "1"]) == 1
    assert main(["ambiguity", corpus("doubled.vass"), "--k", "2"]) == 0
    capsys.readouterr()
    assert main(["ambiguity", corpus("doubled.vass"), "--k", "3", "--minimal"]) == 0
    assert capsys.readouterr().out == "2\n"


def test_oracle(capsys):
    assert main(["oracle", "maximal-runs", corpus("pq.vass"), "--oracle-len", "4"]) == 0
    assert capsys.readouterr().out == "5\n"
    assert main(["oracle", "language", corpus("countdown.vass"), "--oracle-len", "3"]) == 0
    assert capsys.readouterr().out == "eps\na\n"
    assert main(["oracle", "include", corpus("loop1.vass"), corpus("countdown.vass")]) == 1
    assert main(["oracle", "ambiguity", corpus("doubled.vass")]) == 0
    assert capsys.readouterr().out.endswith("2\n")


def test_gen_hard(tmp_path, capsys):
    out = tmp_path / "hard"
    assert main(["gen-hard", "7", "--output-dir", str(out)]) == 0
    written = sorted(os.listdir(out))
    assert len(written) == 3
    for name in written:
        parse(str(out / name))


def test_usage_errors(tmp_path, monkeypatch):
    with pytest.raises(SystemExit) as e:
        main(["empty"])
    assert e.value.code == 3
    with pytest.raises(SystemExit) as e:
        main(["include", corpus("loop1.vass"), corpus("loop1.vass"), "--class", "nfa"])
    assert e.value.code == 3
    assert main([]) == 3
    assert main(["help"]) == 0
    assert main(["empty", str(tmp_path / "missing.vass")]) == 3
    broken = tmp_path / "broken.vass"
    broken.write_text("init q (0)\n")
    assert main(["empty", str(broken)]) == 3
    monkeypatch.setenv("VASSINC_MAX_NODES", "lots")
    assert main(["empty", corpus("countdown.vass")]) == 3


def test_zero_search_caps_are_usage_errors(monkeypatch):
    monkeypatch.setenv("VASSINC_MAX_NODES", "0")
    assert main(["empty", corpus("countdown.vass")]) == 3
    monkeypatch.delenv("VASSINC_MAX_NODES")
    assert main(["empty", corpus("countdown.vass"), "--max-counter-sum", "0"]) == 3
    assert main(["empty", corpus("countdown.vass"), "--max-atoms", "0"]) == 3
    with pytest.raises(SystemExit) as e:
        main(["decorate", corpus("pq.vass"), "--transition-monoid"])
    assert e.value.code == 3
