import json
from fractions import Fraction

import jsonschema
import pytest

from coalform.analysis import cooperation_check, simulate, stability_k_star
from coalform.cooperative import core_empty, extract_characteristic, shapley_value
from coalform.equilibrium import solve
from coalform.fixtures import documented_equilibrium, fixture
from coalform.game import build_game
from coalform.partitions import enumerate_partitions
from coalform.reports import (
    CoopTheoryReport,
    PartitionListing,
    parse_report,
    render_report,
    simulation_report,
)
from coalform.schemas import schema_for


def dinner_report():
    g = build_game(fixture("dinner").spec, 2)
    return g, solve(g, eliminate=True, candidates=[documented_equilibrium("dinner", g)])


def check_json(text):
    data = json.loads(text)
    jsonschema.validate(data, schema_for(data))
    return data


def test_dinner_text_has_table_row():
    _, rep = dinner_report()
    text = render_report(rep, "text")
    row = next(line for line in text.splitlines() if line.strip().startswith("A,B|C1,C2 "))
    assert "(8,8,5,5)" in row and "yes" in row


def test_equilibrium_json_round_trip():
    _, rep = dinner_report()
    text = render_report(rep, "json")
    check_json(text)
    back = parse_report(text)
    assert back == rep
    assert render_report(back, "json") == text


def test_bos_report_round_trip_with_rejected_candidate():
    from coalform.fixtures import printed_bos_profile
    g = build_game(fixture("bos", Fraction(1, 10)).spec, 2)
    rep = solve(g, candidates=[printed_bos_profile(g, Fraction(1, 10))])
    assert rep.rejected_candidates
    assert parse_report(render_report(rep, "json")) == rep


def test_cooperation_round_trip():
    g = build_game(fixture("dinner").spec, 2)
    m = documented_equilibrium("dinner", g)
    rep = cooperation_check(g, m, (0, 2))
    text = render_report(rep, "json", game=g, profile=m)
    check_json(text)
    assert parse_report(text) == rep


def test_stability_text_one_row_per_k_and_round_trip():
    spec = fixture("dinner").spec
    g0 = build_game(spec, 2)
    base = documented_equilibrium("dinner", g0)
    rep = stability_k_star(spec, 2, base)
    text = render_report(rep, "text", game=g0, profile=base)
    rows = [line.split() for line in text.splitlines() if line.strip()[:1].isdigit()]
    assert [r[0] for r in rows] == ["2", "3", "4"]
    assert all(r[1] == "pass" for r in rows)
    js = render_report(rep, "json", game=g0, profile=base)
    check_json(js)
    assert parse_report(js) == rep


def test_simulation_and_listing_round_trip():
    g = build_game(fixture("lunch").spec, 2)
    m = documented_equilibrium("lunch", g)
    rep = simulation_report(simulate(g, m, 200, seed=5))
    back = parse_report(render_report(rep, "json"))
    assert back.sample.states == rep.sample.states and back.expected == rep.expected
    listing = PartitionListing(g.players, 2, enumerate_partitions(4, 2))
    text = render_report(listing, "json")
    check_json(text)
    assert parse_report(text) == listing


def test_coop_theory_round_trip():
    cf = extract_characteristic(fixture("dinner").spec)
    rep = CoopTheoryReport(cf, core_empty(cf), shapley_value(cf))
    text = render_report(rep, "json")
    data = check_json(text)
    assert data["core"]["empty"] and data["core"]["verified"]
    assert parse_report(text) == rep


def test_unknown_schema_rejected():
    with pytest.raises(ValueError):
        parse_report('{"schema": "other/9", "kind": "partitions"}')
    with pytest.raises(ValueError):
        render_report(PartitionListing(None, 1, []), "yaml")
