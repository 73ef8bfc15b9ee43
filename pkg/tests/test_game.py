from fractions import Fraction

import numpy as np
import pytest
from oracles import formed, lunch_uniform_oracle, quotient_invariance

from coalform.fixtures import FIXTURES, documented_equilibrium, fixture
from coalform.game import (
    GameSpecError,
    MixedProfile,
    Strategy,
    build_game,
    expected_payoff,
    formation_rule,
    nested_family,
    quotient_strategies,
    realized_distribution,
    unanimity_rule,
)
from coalform.partitions import parse_partition


def as_sets(p):
    return frozenset(frozenset(b) for b in p.blocks)


def test_unanimity_needs_everyone():
    assert unanimity_rule([(0, 1), (0, 1), (2,)], 3).blocks == ((0, 1), (2,))
    assert unanimity_rule([(0, 1), (1, 2), (1, 2)], 3).blocks == ((0,), (1, 2))
    assert unanimity_rule([(0, 1, 2), (0, 1, 2), (2,)], 3).blocks == ((0,), (1,), (2,))


def test_dinner_strategy_counts():
    g = build_game(fixture("dinner").spec, 2)
    assert [len(s) for s in g.strategy_sets] == [10] * 4
    assert [len(quotient_strategies(g, i)) for i in range(4)] == [4] * 4


def test_k_out_of_range():
    with pytest.raises(GameSpecError):
        build_game(fixture("dinner").spec, 5)
    assert [g.k for g in nested_family(fixture("bos").spec)] == [1, 2]


def test_lunch_uniform_matches_81_profile_oracle():
    g = build_game(fixture("lunch").spec, 2)
    m = documented_equilibrium("lunch", g)
    count, eu, dist = lunch_uniform_oracle()
    assert count == 81
    assert expected_payoff(g, m) == eu == (Fraction(137, 27),) * 4
    labels = g.players.labels
    ours = {frozenset(frozenset(labels[i] for i in b) for b in p.blocks): w
            for p, w in realized_distribution(g, m).items()}
    theirs = {frozenset(frozenset(b) for b in p): w for p, w in dist.items()}
    assert ours == theirs
    assert sum(realized_distribution(g, m).values()) == 1


def test_mixed_profile_validation():
    g = build_game(fixture("staghare").spec, 2)
    s = g.parse_strategy("1,2@stag", 0)
    with pytest.raises(ValueError):
        MixedProfile([{s: Fraction(1, 2)}, {s: 1}])
    with pytest.raises(ValueError):
        MixedProfile([{s: Fraction(3, 2), g.parse_strategy("1|2@hare", 0): Fraction(-1, 2)}, {s: 1}])
    m = MixedProfile([{s: 1, g.parse_strategy("1|2@hare", 0): 0}, {s: 1}])
    assert m.is_pure and m.support(0) == (s,)


def test_parse_strategy_checks_k_and_actions():
    g = build_game(fixture("staghare").spec, 1)
    with pytest.raises(ValueError):
        g.parse_strategy("1,2@stag", 0)
    with pytest.raises(ValueError):
        g.parse_strategy("1|2@wolf", 0)
    assert g.strategy_str(g.parse_strategy("1|2@hare", 1)) == "1|2@hare"


def test_formation_matches_set_oracle_on_random_profiles():
    rng = np.random.default_rng(7)
    for name in FIXTURES:
        g = build_game(fixture(name).spec, fixture(name).spec.n)
        for _ in range(300):
            prof = [g.strategy_sets[i][rng.integers(len(g.strategy_sets[i]))] for i in range(g.n)]
            desired = {i: s.partition.block_of(i) for i, s in enumerate(prof)}
            assert as_sets(formation_rule(g, prof)) == formed(desired)


@pytest.mark.parametrize("name", FIXTURES)
def test_quotient_invariance_10k(name):
    assert quotient_invariance(name, 10_000, seed=11) == 10_000


def test_strategy_is_partition_and_action():
    p = parse_partition("1|2", fixture("bos").spec.players)
    assert Strategy(p, "B").action == "B"
