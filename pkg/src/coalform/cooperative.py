"""Cooperative-theory cross-checks: characteristic functions, the core, Shapley value."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exact import maximize_standard
from .game import GameSpec
from .partitions import Coalition, PlayerSet, enumerate_partitions

MAX_CORE_PLAYERS = 6
CONVENTIONS = ("optimistic", "pessimistic")


class CoreSizeError(RuntimeError):
    pass


@dataclass(frozen=True)
class CharacteristicFunction:
    players: PlayerSet
    values: dict[Coalition, Fraction]
    convention: str = "optimistic"

    def __call__(self, coalition) -> Fraction:
        c = tuple(sorted(coalition))
        return Fraction(0) if not c else self.values[c]

    @property
    def n(self) -> int:
        return self.players.n

    def coalitions(self) -> list[Coalition]:
        return sorted(self.values, key=lambda c: (len(c), c))


def all_coalitions(n: int) -> list[Coalition]:
    return [c for r in range(1, n + 1) for c in itertools.combinations(range(n), r)]


def extract_characteristic(spec: GameSpec, convention: str = "optimistic") -> CharacteristicFunction:
    """Coalition values from a partition-function game.

    v(S) is the best (optimistic) or worst (pessimistic) total payoff of S's
    members over every partition having S as a block and every action profile.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    pick = max if convention == "optimistic" else min
    n = spec.n
    action_profiles = list(itertools.product(*spec.actions))
    best: dict[Coalition, Fraction] = {}
    for p in enumerate_partitions(n, n):
        for acts in action_profiles:
            u = spec.lookup(p, acts)
            for b in p.blocks:
                val = sum(u[i] for i in b)
                best[b] = val if b not in best else pick(best[b], val)
    return CharacteristicFunction(spec.players, best, convention)


@dataclass
class CoreResult:
    empty: bool
    core_point: tuple[Fraction, ...] | None = None
    # balanced collection with weights: sum_S w_S v(S) > v(N), sum_{S ni i} w_S = 1
    certificate: dict[Coalition, Fraction] | None = None

    def verify(self, cf: CharacteristicFunction) -> bool:
        n = cf.n
        grand = tuple(range(n))
        if not self.empty:
            x = self.core_point
            return sum(x) == cf(grand) and all(sum(x[i] for i in c) >= cf(c) for c in all_coalitions(n))
        w = self.certificate
        if any(v < 0 for v in w.values()):
            return False
        if any(sum(v for c, v in w.items() if i in c) != 1 for i in range(n)):
            return False
        return sum(v * cf(c) for c, v in w.items()) > cf(grand)


def core_empty(cf: CharacteristicFunction) -> CoreResult:
    """Decide core emptiness exactly via the balanced-collections LP.

    Maximizes sum w_S v(S) over balanced weights.  If the optimum exceeds
    v(N) the optimal weights are the certificate; otherwise the LP
    multipliers form a core allocation.
    """
    n = cf.n
    if n > MAX_CORE_PLAYERS:
        raise CoreSizeError(f"exact core check supports at most {MAX_CORE_PLAYERS} players, got {n}")
    cols = all_coalitions(n)
    a = [[1 if i in c else 0 for c in cols] for i in range(n)]
    res = maximize_standard([cf(c) for c in cols], a, [1] * n)
    grand = tuple(range(n))
    if res.status != "optimal":
        raise RuntimeError(f"balanced-collection LP ended {res.status}")
    if res.value > cf(grand):
        cert = {c: w for c, w in zip(cols, res.x) if w != 0}
        return CoreResult(True, certificate=cert)
    return CoreResult(False, core_point=tuple(res.y))


def shapley_value(cf: CharacteristicFunction) -> tuple[Fraction, ...]:
    n = cf.n
    nf = factorial(n)
    out = []
    for i in range(n):
        rest = [j for j in range(n) if j != i]
        total = Fraction(0)
        for r in range(n):
            weight = Fraction(factorial(r) * factorial(n - r - 1), nf)
            for s in itertools.combinations(rest, r):
                total += weight * (cf(tuple(sorted(s + (i,)))) - cf(s))
        out.append(total)
    return tuple(out)


def characteristic_from_values(players: PlayerSet, values: dict, convention: str = "optimistic"):
    """Build a characteristic function from ``{"A,B": value}`` style text keys."""
    vals = {players.coalition(k) if isinstance(k, str) else tuple(sorted(k)): Fraction(v)
            for k, v in values.items()}
    missing = [c for c in all_coalitions(players.n) if c not in vals]
    if missing:
        raise ValueError(f"no value for coalition {players.coalition_str(missing[0])}")
    return CharacteristicFunction(players, vals, convention)
