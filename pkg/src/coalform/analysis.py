"""Analyses over equilibria: cooperation, stochastic play and the K* stability bound."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .equilibrium import (
    eliminate_weakly_dominated,
    mixed_support_2p,
    pure_nash,
    verify_candidate,
)
from .game import (
    Game,
    GameSpec,
    MixedProfile,
    Partition,
    build_game,
    expected_payoff,
    realized_distribution,
)

POLICIES = ("forall", "exists")


class PreconditionError(ValueError):
    """An analysis was asked to start from something that is not an equilibrium."""

    def __init__(self, msg: str, max_regret=None):
        self.max_regret = max_regret
        super().__init__(msg)


@dataclass
class CooperationReport:
    coalition: tuple[int, ...]
    ex_ante: bool
    ex_post_1: bool
    ex_post_2: bool
    max_regret: Fraction | float
    witnesses: dict[str, object] = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return self.ex_ante and self.ex_post_1 and self.ex_post_2


def cooperation_check(g: Game, m: MixedProfile, coalition: Sequence[int], tol=None) -> CooperationReport:
    """Check whether ``coalition`` cooperates completely under the profile ``m``.

    ex ante: every support strategy of every member desires the coalition as
    a block.  ex post 1: it is a block of every realizable partition.
    ex post 2: ``m`` is an equilibrium.
    """
    g_coal = tuple(sorted(set(coalition)))
    if not g_coal or any(not 0 <= i < g.n for i in g_coal) or len(g_coal) != len(list(coalition)):
        raise ValueError(f"coalition {coalition!r} is not a set of players of the game")
    witnesses: dict[str, object] = {}
    ex_ante = True
    for i in g_coal:
        bad = next((s for s in m.support(i) if not s.partition.contains(g_coal)), None)
        if bad is not None:
            ex_ante = False
            witnesses["ex_ante"] = (i, bad)
            break
    dist = realized_distribution(g, m)
    missing = next((p for p in dist if not p.contains(g_coal)), None)
    ex_post_1 = missing is None
    if missing is not None:
        witnesses["ex_post_1"] = missing
    ok, worst = verify_candidate(g, m, tol)
    if not ok:
        witnesses["ex_post_2"] = worst
    return CooperationReport(g_coal, ex_ante, ex_post_1, ok, worst, witnesses)


def equilibrium_partitions(g: Game, equilibria: Sequence[MixedProfile]) -> list[Partition]:
    parts: set[Partition] = set()
    for m in equilibria:
        parts.update(realized_distribution(g, m))
    return sorted(parts)


def is_stochastic(g: Game, equilibria: Sequence[MixedProfile]) -> bool:
    """At least two partitions are realizable in equilibrium."""
    return len(equilibrium_partitions(g, equilibria)) >= 2


@dataclass
class TrajectorySample:
    states: list[Partition]
    seed: int
    game: Game
    profile: MixedProfile

    def frequencies(self) -> dict[Partition, int]:
        out: dict[Partition, int] = {}
        for p in self.states:
            out[p] = out.get(p, 0) + 1
        return dict(sorted(out.items()))


def simulate(g: Game, m: MixedProfile, steps: int, seed: int) -> TrajectorySample:
    """Sample ``steps`` independent plays of ``m`` and record the realized partitions."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    m.check_for(g)
    rng = np.random.default_rng(seed)
    draws = []
    for i in range(g.n):
        support = m.support(i)
        probs = np.array([float(m[i][s]) for s in support])
        draws.append(rng.choice(len(support), size=steps, p=probs / probs.sum()))
    cache: dict[tuple[int, ...], Partition] = {}
    states = []
    for idx in zip(*(d.tolist() for d in draws)):
        p = cache.get(idx)
        if p is None:
            p = cache[idx] = g.realized([m.support(i)[j] for i, j in enumerate(idx)])
        states.append(p)
    return TrajectorySample(states, seed, g, m)


def embed(m: MixedProfile, g: Game) -> MixedProfile:
    """Re-home a profile in a larger game of the same family (strategies carry over as-is)."""
    m.check_for(g)
    return MixedProfile([dict(d) for d in m.distributions])


def support_classes(g: Game, m: MixedProfile) -> tuple[frozenset, ...]:
    return tuple(frozenset(g.strategy_class(s, i) for s in m.support(i)) for i in range(g.n))


@dataclass
class StabilityRow:
    k: int
    passed: bool
    base_is_equilibrium: bool
    base_regret: Fraction | float
    domain_equal: bool
    payoff_ok: list[bool]  # per player, over the examined equilibria
    examined: list[MixedProfile]
    carried_over: int  # equilibria already available at k0, not compared
    violators: list[tuple[MixedProfile, tuple]]  # equilibria beating the base, with their payoffs


@dataclass
class StabilityReport:
    k0: int
    k_star: int
    policy: str
    base_payoff: tuple
    per_k: list[StabilityRow]
    refine: bool


def _equilibria_of(g: Game, refine: bool) -> list[MixedProfile]:
    sub = eliminate_weakly_dominated(g)[0] if refine else g
    eqs = [MixedProfile.pure(p) for p in pure_nash(sub)]
    if g.n == 2:
        eqs += [m for m, _ in mixed_support_2p(sub) if not m.is_pure]
    return [m for m in eqs if verify_candidate(g, m)[0]]


def stability_k_star(
    spec: GameSpec,
    k0: int,
    base_eq: MixedProfile,
    policy: str = "forall",
    refine: bool = True,
) -> StabilityReport:
    """Largest K such that the base equilibrium of the K0 game survives up to K.

    For every k from k0 upward, the equilibria of the k game are gathered
    (pure sweep, plus support enumeration for two players, on the weakly
    undominated subgame when ``refine``).  Only equilibria that use a
    strategy class unavailable at k0 are compared with the base; those are
    the ones raising the bound introduced.  A k passes when:

    * forall: no such equilibrium pays any player more than the base does,
      and the base, embedded, is still an equilibrium (same support);
    * exists: some equilibrium with the base's support pays nobody more
      than the base.

    K* is the end of the unbroken run of passing k starting at k0.
    """
    if policy not in POLICIES:
        raise ValueError(f"policy must be one of {POLICIES}")
    g0 = build_game(spec, k0)
    ok, worst = verify_candidate(g0, base_eq)
    if not ok:
        raise PreconditionError(f"base profile is not an equilibrium of the k={k0} game", worst)
    base_pay = expected_payoff(g0, base_eq)
    base_dom = support_classes(g0, base_eq)
    rows = []
    k_star = None
    for k in range(k0, spec.n + 1):
        g = build_game(spec, k)
        emb = embed(base_eq, g)
        b_ok, b_regret = verify_candidate(g, emb)
        if k == k0:
            row = StabilityRow(k, True, b_ok, b_regret, True, [True] * g.n, [emb], 0, [])
        else:
            found = _equilibria_of(g, refine)
            new = [m for m in found
                   if any(max(s.partition.max_block for s in m.support(i)) > k0 for i in range(g.n))]
            payoffs = [expected_payoff(g, m) for m in new]
            violators = [(m, u) for m, u in zip(new, payoffs)
                         if any(u[i] > base_pay[i] for i in range(g.n))]
            per_player = [all(u[i] <= base_pay[i] for u in payoffs) for i in range(g.n)]
            if policy == "forall":
                passed = not violators and b_ok
                domain_equal = b_ok
            else:
                same_dom = [m for m in found + [emb] if support_classes(g, m) == base_dom
                            and verify_candidate(g, m)[0]]
                good = [m for m in same_dom
                        if all(x <= y for x, y in zip(expected_payoff(g, m), base_pay))]
                passed = bool(good)
                domain_equal = bool(same_dom)
            row = StabilityRow(k, passed, b_ok, b_regret, domain_equal, per_player, new,
                               len(found) - len(new), violators)
        rows.append(row)
        if k_star is None and not row.passed:
            k_star = k - 1
        if k_star is not None and k > k_star + 1:
            break
    if k_star is None:
        k_star = spec.n
    rows = [r for r in rows if r.k <= min(k_star + 1, spec.n)]
    return StabilityReport(k0, k_star, policy, base_pay, rows, refine)
