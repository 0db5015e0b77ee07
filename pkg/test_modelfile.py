import os

import pytest

from vassinc import zoo
from vassinc.errors import ParseError
from vassinc.model import EPS
from vassinc.modelfile import (
    parse,
    parse_label,
    parse_model,
    parse_monoid,
    parse_monoid_text,
    parse_name,
    print_model,
    print_monoid,
)
from vassinc.monoid import DecoratedLetter, parity_monoid, separator_monoid

CORPUS = os.path.join(os.path.dirname(os.path.abspath(__file__)), "corpus")

LOOP = """
# one counter, one letter
vass loop1
dim 1
alphabet a
init q (0)
trans q a (1) q
accept upward q (0)
"""


def test_parse_model():
    assert parse_model(LOOP) == zoo.counting_loop(1)


@pytest.mark.parametrize("name", sorted(zoo.MODELS))
def test_corpus_files_match_the_zoo(name):
    assert parse(os.path.join(CORPUS, f"{name}.vass")) == zoo.MODELS[name]()


@pytest.mark.parametrize("name", sorted(zoo.MODELS))
def test_print_model_parses_back(name):
    v = zoo.MODELS[name]()
    assert parse_model(print_model(v)) == v


@pytest.mark.parametrize(
    "text, line",
    [
        ("init q (0)\n", 1),
        ("dim 1\ninit q (0)\ntrans q a (1,2) q\n", 3),
        ("dim 1\ninit q (0)\naccept upward q (w)\n", 3),
        ("dim 1\ninit q (0)\ntrans q eps (1) q\n", 3),
        ("dim 1\nstates q\ninit q (0)\ntrans q a (1) r\n", 4),
        ("dim 1\ninit q (0)\nhole q (3)\n", 2),
        ("dim 1\ninit q (0)\nfrobnicate\n", 3),
        ("dim 1\ninit q (0)\ninit q (1)\n", 3),
        ("dim 1\nalphabet a\ninit q (0)\ntrans q b (1) q\n", 4),
        ("dim 1\ninit q (0)\naccept upward q (0)\naccept downward q (1)\n", 4),
        ("dim 2\ninit q (0,0)\naccept updown q up[3]=(1) down=(w)\n", 3),
    ],
)
def test_parse_errors_point_at_the_line(text, line):
    with pytest.raises(ParseError) as e:
        parse_model(text)
    assert e.value.line == line


def test_parse_error_carries_the_path():
    with pytest.raises(ParseError) as e:
        parse_model("vass broken\n", path="broken.vass")
    assert str(e.value).startswith("broken.vass:1:1:")


def test_eps_transitions_need_eps_on():
    v = parse_model("dim 1\neps on\ninit q (0)\ntrans q eps (1) q\naccept upward q (3)\n")
    assert v.has_eps
    assert v.transitions[0].label is EPS


def test_labels_and_names():
    assert parse_label("eps") is EPS
    assert parse_label("a@2") == DecoratedLetter("a", 2)
    assert parse_label("eps@0") == DecoratedLetter(EPS, 0)
    assert parse_name("<a,b>") == ("a", "b")
    assert parse_name("<a,<b,c>>") == ("a", ("b", "c"))
    assert parse_name("q") == "q"


def test_monoid_files():
    assert parse_monoid(os.path.join(CORPUS, "parity-a.monoid")) == parity_monoid("a", "ab")
    assert parse_monoid(os.path.join(CORPUS, "contains-b.monoid")) == separator_monoid("b", "abc")
    hom = separator_monoid("b", "abc")
    assert parse_monoid_text(print_monoid(hom)) == hom


@pytest.mark.parametrize(
    "text",
    [
        "",
        "monoid 2 0\n0 1\n",
        "monoid 2 0\n0 1\n1\n",
        "monoid 2 1\n0 1\n1 0\nhom a 1\n",
        "monoid 1 0\n0\nhom a 0\nhom a 0\n",
        "monoid 1 0\n0\nhom eps 0\n",
        "monoid 1 0\n0\nhom a 1\n",
    ],
)
def test_monoid_errors(text):
    with pytest.raises(ParseError):
        parse_monoid_text(text)
