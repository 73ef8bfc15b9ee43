import math
from fractions import Fraction

import pytest

from coalform.analysis import (
    PreconditionError,
    cooperation_check,
    equilibrium_partitions,
    is_stochastic,
    simulate,
    stability_k_star,
)
from coalform.fixtures import documented_equilibrium, fixture
from coalform.game import MixedProfile, build_game, realized_distribution


def dinner(k=2):
    g = build_game(fixture("dinner").spec, k)
    return g, documented_equilibrium("dinner", g)


def test_cooperation_c1_c2_complete():
    g, m = dinner()
    rep = cooperation_check(g, m, g.players.coalition("C1,C2"))
    assert rep.complete and rep.witnesses == {}


def test_cooperation_a_c1_fails_ex_ante():
    g, m = dinner()
    rep = cooperation_check(g, m, g.players.coalition("A,C1"))
    assert not rep.complete and not rep.ex_ante
    i, s = rep.witnesses["ex_ante"]
    assert g.players.labels[i] == "A" and not s.partition.contains((0, 2))


def test_cooperation_a_b_complete_despite_mixing():
    g, m = dinner()
    rep = cooperation_check(g, m, (0, 1))
    assert rep.ex_ante and rep.ex_post_1 and rep.ex_post_2


def test_cooperation_reports_non_equilibrium():
    g, _ = dinner()
    s = g.parse_strategy("A|B|C1|C2", 0)
    m = MixedProfile.pure([s] * 4)
    # C2 stays alone although joining C1 pays 5 > 3
    texts = ["A,B|C1|C2", "A,B|C1|C2", "A,B|C1,C2", "A,B|C1|C2"]
    m2 = MixedProfile.pure([g.parse_strategy(t, i) for i, t in enumerate(texts)])
    rep = cooperation_check(g, m2, (0, 1))
    assert rep.ex_post_2 is False and rep.max_regret > 0
    assert "ex_post_2" in rep.witnesses
    with pytest.raises(ValueError):
        cooperation_check(g, m, (0, 0))


def test_lunch_is_stochastic():
    g = build_game(fixture("lunch").spec, 2)
    m = documented_equilibrium("lunch", g)
    assert is_stochastic(g, [m])
    assert len(equilibrium_partitions(g, [m])) == 10


def test_dinner_documented_is_not_stochastic():
    g, m = dinner()
    assert not is_stochastic(g, [m])


def test_simulation_deterministic_and_consistent():
    g = build_game(fixture("lunch").spec, 2)
    m = documented_equilibrium("lunch", g)
    a = simulate(g, m, 20_000, seed=3)
    b = simulate(g, m, 20_000, seed=3)
    assert a.states == b.states
    dist = realized_distribution(g, m)
    for p, c in a.frequencies().items():
        prob = float(dist[p])
        se = math.sqrt(prob * (1 - prob) / 20_000)
        assert abs(c / 20_000 - prob) <= 5 * se


def test_simulation_degenerate_profile():
    g = build_game(fixture("staghare").spec, 2)
    m = documented_equilibrium("staghare", g)
    s = simulate(g, m, 100, seed=0)
    assert list(s.frequencies().values()) == [100]
    with pytest.raises(ValueError):
        simulate(g, m, 0, seed=0)


@pytest.mark.parametrize("name,k0,expected", [
    ("dinner", 2, 4), ("lunch", 2, 4), ("staghare", 1, 1), ("bos", 1, 1),
])
def test_k_star_forall(name, k0, expected):
    spec = fixture(name).spec
    base = documented_equilibrium(name, build_game(spec, k0))
    rep = stability_k_star(spec, k0, base, "forall")
    assert rep.k_star == expected
    assert rep.per_k[0].k == k0 and rep.per_k[0].passed


def test_k_star_exists_is_at_least_forall():
    for name, k0 in (("staghare", 1), ("bos", 1), ("dinner", 2)):
        spec = fixture(name).spec
        base = documented_equilibrium(name, build_game(spec, k0))
        fa = stability_k_star(spec, k0, base, "forall").k_star
        ex = stability_k_star(spec, k0, base, "exists").k_star
        assert ex >= fa


def test_staghare_violator_is_the_stag_hunt():
    spec = fixture("staghare").spec
    base = documented_equilibrium("staghare", build_game(spec, 1))
    rep = stability_k_star(spec, 1, base)
    assert any(u == (100, 100) for _, u in rep.per_k[1].violators)


def test_stability_rejects_non_equilibrium_base():
    spec = fixture("staghare").spec
    g = build_game(spec, 2)
    bad = MixedProfile.pure([g.parse_strategy("1,2@stag", 0), g.parse_strategy("1|2@hare", 1)])
    with pytest.raises(PreconditionError):
        stability_k_star(spec, 2, bad)
    with pytest.raises(ValueError):
        stability_k_star(spec, 2, documented_equilibrium("staghare", g), policy="sometimes")


@pytest.mark.parametrize("eps", [Fraction(0), Fraction(1, 10), Fraction(1)])
def test_bos_k_star_independent_of_epsilon(eps):
    spec = fixture("bos", eps).spec
    base = documented_equilibrium("bos", build_game(spec, 1), eps)
    assert stability_k_star(spec, 1, base).k_star == 1
