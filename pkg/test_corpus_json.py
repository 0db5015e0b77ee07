import json
import os

import pytest

from vassinc import zoo
from vassinc.cli import parse_word
from vassinc.decide import minimal_ambiguity
from vassinc.model import syntactic_deterministic
from vassinc.modelfile import parse, parse_monoid
from vassinc.oracle import accepts
from vassinc.reachability import empty_updown

CORPUS = os.path.join(os.path.dirname(os.path.abspath(__file__)), "corpus")
VALID_KINDS = ["model", "monoid"]
VALID_CATEGORIES = ["det", "hvass", "kdet", "kamb", "seed", "monoid"]


def _check_for_duplicate_keys(items):
    tmp = {}
    for k, v in items:
        if k in tmp:
            raise ValueError(f"Duplicated key detected: {k}")
        else:
            tmp[k] = v
    return tmp


def _entries():
    with open(os.path.join(CORPUS, "corpus.json")) as f:
        return json.load(f, object_pairs_hook=_check_for_duplicate_keys)


MODELS = [entry for entry in _entries() if entry["kind"] == "model"]


def test_corpus_json_file():
    guids = []
    for entry in _entries():
        fn: str = entry["filename"]
        assert os.path.exists(os.path.join(CORPUS, fn))
        assert entry["name"]
        assert entry["description"]
        assert entry["kind"] in VALID_KINDS
        assert entry["category"] in VALID_CATEGORIES

        if fn.endswith(".vass"):
            assert entry["kind"] == "model"
        elif fn.endswith(".monoid"):
            assert entry["kind"] == "monoid"

        for key in ("accepts", "rejects"):
            if key in entry:
                assert isinstance(entry[key], list)

        assert "guid" in entry
        guids.append(entry["guid"])

    # check guids are unique
    assert len(guids) == len(set(guids))


def test_corpus_file_has_json_entry():
    filenames = [i["filename"] for i in _entries()]
    with os.scandir(CORPUS) as it:
        for f in it:
            if not f.name.startswith(".") and f.is_file() and f.name.endswith((".vass", ".monoid")):
                assert f.name in filenames


def test_corpus_filenames_do_not_contain_spaces():
    for entry in _entries():
        assert " " not in entry["filename"]


@pytest.mark.parametrize("entry", MODELS, ids=lambda entry: entry["name"])
def test_model_entry(entry):
    v = parse(os.path.join(CORPUS, entry["filename"]))
    assert v.name == entry["name"]
    assert v == zoo.MODELS[entry["name"]]()
    for word in entry.get("accepts", []):
        assert accepts(v, parse_word(word)), word
    for word in entry.get("rejects", []):
        assert not accepts(v, parse_word(word)), word
    if "deterministic" in entry:
        assert syntactic_deterministic(v) == entry["deterministic"]
    if "empty" in entry:
        verdict = empty_updown(v)
        assert verdict.is_no if entry["empty"] else verdict.is_yes
    if "ambiguity" in entry:
        assert minimal_ambiguity(v, entry["ambiguity"]) == entry["ambiguity"]


def test_monoid_entries_parse():
    for entry in _entries():
        if entry["kind"] == "monoid":
            hom = parse_monoid(os.path.join(CORPUS, entry["filename"]))
            assert hom.monoid.size >= 1
