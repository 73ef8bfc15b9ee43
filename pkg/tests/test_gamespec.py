import json
from fractions import Fraction

import pytest

from coalform.fixtures import FIXTURES, FixtureError, fixture
from coalform.game import GameSpecError
from coalform.gamespec import (
    GameSpecDocument,
    SpecSyntaxError,
    document_from_data,
    document_to_data,
    parse_gamespec,
    serialize_gamespec,
)
from coalform.partitions import parse_partition

VARIANTS = [
    ("dinner", {}),
    ("lunch", {}),
    ("lunch", {"completion": "zero"}),
    ("bos", {"epsilon": Fraction(0)}),
    ("bos", {"epsilon": Fraction(1, 10)}),
    ("bos", {"epsilon": Fraction(1), "miscoordination": "zero"}),
    ("staghare", {}),
]


@pytest.mark.parametrize("name,kw", VARIANTS)
def test_fixture_round_trip(name, kw):
    doc = fixture(name, **kw)
    text = serialize_gamespec(doc)
    again = parse_gamespec(text)
    assert again == doc
    assert serialize_gamespec(again) == text


def test_minimal_document():
    doc = document_from_data({"format_version": 1, "players": ["x", "y"],
                              "payoffs": [{"partition": "x,y", "payoff": [1, "1/2"]}]})
    assert doc.spec.lookup(parse_partition("x,y", doc.spec.players), ("_", "_")) == (1, Fraction(1, 2))
    assert doc.spec.lookup(parse_partition("x|y", doc.spec.players), ("_", "_")) == (0, 0)


def test_all_errors_collected_with_locations():
    bad = {"format_version": 2, "players": ["A", "B"], "extra": 1,
           "payoffs": [{"partition": "A|C", "payoff": [1, 2]},
                       {"partition": "A,B", "payoff": [1.5, 2]},
                       {"partition": "A,B", "payoff": [1]}]}
    with pytest.raises(GameSpecError) as exc:
        document_from_data(bad)
    msgs = exc.value.errors
    assert any(m.startswith("$.extra") for m in msgs)
    assert any(m.startswith("$.format_version") for m in msgs)
    assert any(m.startswith("$.payoffs[0].partition") and "'C'" in m for m in msgs)
    assert any(m.startswith("$.payoffs[1].payoff[0]") for m in msgs)
    assert any(m.startswith("$.payoffs[2].payoff") and "length" in m for m in msgs)


def test_overlapping_rows_rejected():
    data = {"format_version": 1, "players": ["A", "B"],
            "payoffs": [{"partition": "A,B", "payoff": [1, 1]}, {"partition": "A,B", "payoff": [2, 2]}]}
    with pytest.raises(GameSpecError, match="overlap"):
        document_from_data(data)


def test_explicit_row_beats_wildcard():
    doc = fixture("dinner")
    ps = doc.spec.players
    acts = ("_",) * 4
    assert doc.spec.lookup(parse_partition("A,B|C1,C2", ps), acts) == (8, 8, 5, 5)
    assert doc.spec.lookup(parse_partition("A|B|C1|C2", ps), acts) == (1, 1, 1, 1)


def test_syntax_error_has_position():
    with pytest.raises(SpecSyntaxError) as exc:
        parse_gamespec('{"format_version": 1,\n "players": [}')
    assert exc.value.line == 2


def test_unknown_action_in_pattern():
    data = document_to_data(fixture("staghare"))
    data["payoffs"][0]["actions"] = ["hare", "wolf"]
    with pytest.raises(GameSpecError, match="wolf"):
        document_from_data(data)


def test_action_wildcards_round_trip():
    data = {"format_version": 1, "players": ["1", "2"], "actions": [["a", "b"], ["a", "b"]],
            "payoffs": [{"partition": "*", "actions": ["a", "*"], "payoff": [1, 0]}]}
    doc = document_from_data(data)
    assert document_to_data(doc) == data
    assert isinstance(doc, GameSpecDocument)


def test_fixture_errors():
    with pytest.raises(FixtureError):
        fixture("picnic")
    with pytest.raises(FixtureError):
        fixture("bos", epsilon=Fraction(-1))
    assert set(FIXTURES) == {"dinner", "lunch", "bos", "staghare"}


def test_serialized_numbers_are_exact():
    data = json.loads(serialize_gamespec(fixture("bos", epsilon=Fraction(1, 10))))
    joint = [r for r in data["payoffs"] if r["partition"] == "1,2" and r["actions"] == ["B", "B"]][0]
    assert joint["payoff"] == ["21/10", "11/10"]
