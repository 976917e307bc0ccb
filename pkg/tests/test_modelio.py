"""Model text format round-trips and validation."""
import pytest

from masks import Atom, KripkeModel
from masks.errors import ModelFormatError
from masks.modelio import format_model, parse_model

SAMPLE = """\
# the four-candidate model
worlds: w0 w6 w8 w9
agent A0: {w0 w6 w8 w9}
agent A1: {w0 w6 w8}   # w9 is an implicit singleton
val w0: c0
val w6: c6 1:c3
val w8: c8
val w9: c9
"""


def test_parse_sample():
    m = parse_model(SAMPLE)
    assert m.worlds == ("w0", "w6", "w8", "w9")
    assert frozenset(["w0", "w6", "w8"]) in m.relations["A1"]
    assert frozenset(["w9"]) in m.relations["A1"]
    assert m.valuation["w6"] == frozenset([Atom("c6"), Atom("c3", 1)])


def test_roundtrip():
    m = parse_model(SAMPLE)
    assert parse_model(format_model(m)) == m


def test_empty_model():
    m = parse_model("worlds:\n")
    assert m.worlds == ()
    assert parse_model(format_model(m)) == m


def test_agent_with_identity_partition():
    m = parse_model("worlds: a b\nagent A:\n")
    assert set(m.relations["A"]) == {frozenset(["a"]), frozenset(["b"])}


@pytest.mark.parametrize("text", [
    "agent A: {a}\n",                      # missing worlds line
    "worlds: a\nagent A: {a b}\n",         # unknown world in block
    "worlds: a\nval b: c0\n",              # unknown world in valuation
    "worlds: a\nagent A: a\n",             # bare (unbraced) block
    "worlds: a a\n",                       # duplicate world
    "worlds: a\nagent A: {a} {a}\n",       # overlapping blocks
    "worlds: a\nfoo: bar\n",               # unknown directive
])
def test_malformed_models(text):
    with pytest.raises(ModelFormatError):
        parse_model(text)


def test_format_is_parseable_for_random_models():
    import random

    from oracles import random_model
    rng = random.Random(3)
    for _ in range(50):
        m = random_model(rng, max_worlds=5)
        assert parse_model(format_model(m)) == m
