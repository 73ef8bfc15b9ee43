"""Strategic-form games over coalition structures.

A player's strategy is a desired partition paired with an action.  The
formation rule turns the announced partitions into a realized partition,
and payoffs are looked up on (realized partition, action profile) only.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from .partitions import (
    Coalition,
    Partition,
    PartitionError,
    PlayerSet,
    canonical_string,
    enumerate_partitions,
    parse_partition,
)

DUMMY_ACTION = "_"

Number = Fraction | float
Payoff = tuple[Fraction, ...]


class GameSpecError(ValueError):
    """A game specification failed validation; ``errors`` lists every problem."""

    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def to_fraction(x) -> Fraction:
    """Exact conversion of ints, Fractions and ``"p/q"`` text; floats go through repr."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as a rational number")


@dataclass(frozen=True)
class PayoffEntry:
    partition: Partition | None  # None is the "all other partitions" wildcard
    payoff: Payoff
    actions: tuple[str | None, ...] | None = None  # None entries are per-player wildcards
    note: str = ""

    def matches(self, realized: Partition, acts: tuple[str, ...]) -> bool:
        if self.partition is not None and self.partition != realized:
            return False
        if self.actions is None:
            return True
        return all(p is None or p == a for p, a in zip(self.actions, acts))


def _actions_overlap(a, b) -> bool:
    if a is None or b is None:
        return True
    return all(x is None or y is None or x == y for x, y in zip(a, b))


@dataclass(frozen=True)
class GameSpec:
    players: PlayerSet
    entries: tuple[PayoffEntry, ...]
    actions: tuple[tuple[str, ...], ...] | None = None
    default_payoff: Payoff | None = None

    def __post_init__(self):
        n = self.players.n
        if self.actions is None:
            object.__setattr__(self, "actions", tuple((DUMMY_ACTION,) for _ in range(n)))
        else:
            object.__setattr__(self, "actions", tuple(tuple(a) for a in self.actions))
        if self.default_payoff is None:
            object.__setattr__(self, "default_payoff", tuple(Fraction(0) for _ in range(n)))
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def n(self) -> int:
        return self.players.n

    @property
    def has_actions(self) -> bool:
        return any(a != (DUMMY_ACTION,) for a in self.actions)

    def validation_errors(self) -> list[str]:
        errs = []
        n = self.n
        if len(self.actions) != n:
            errs.append(f"actions given for {len(self.actions)} players, expected {n}")
        for i, acts in enumerate(self.actions):
            if not acts:
                errs.append(f"player {self.players.labels[i]} has no actions")
            if len(set(acts)) != len(acts):
                errs.append(f"player {self.players.labels[i]} has duplicate actions")
        if len(self.default_payoff) != n:
            errs.append(f"default payoff has length {len(self.default_payoff)}, expected {n}")
        for j, e in enumerate(self.entries):
            if len(e.payoff) != n:
                errs.append(f"entry {j}: payoff has length {len(e.payoff)}, expected {n}")
            if e.partition is not None and e.partition.n != n:
                errs.append(f"entry {j}: partition is not over {n} players")
            if e.actions is not None:
                if len(e.actions) != n:
                    errs.append(f"entry {j}: action pattern has length {len(e.actions)}, expected {n}")
                else:
                    for i, a in enumerate(e.actions):
                        if a is not None and i < len(self.actions) and a not in self.actions[i]:
                            errs.append(
                                f"entry {j}: unknown action {a!r} for player {self.players.labels[i]}"
                            )
        for (j1, e1), (j2, e2) in itertools.combinations(enumerate(self.entries), 2):
            same_tier = (e1.partition is None) == (e2.partition is None)
            if same_tier and e1.partition == e2.partition and _actions_overlap(e1.actions, e2.actions):
                errs.append(f"entries {j1} and {j2} overlap")
        return errs

    def validate(self) -> "GameSpec":
        errs = self.validation_errors()
        if errs:
            raise GameSpecError(errs)
        return self

    def lookup(self, realized: Partition, acts: tuple[str, ...]) -> Payoff:
        """Payoff of a realized outcome: explicit-partition rows beat wildcard rows."""
        for e in self.entries:
            if e.partition is not None and e.matches(realized, acts):
                return e.payoff
        for e in self.entries:
            if e.partition is None and e.matches(realized, acts):
                return e.payoff
        return self.default_payoff


class Strategy(NamedTuple):
    partition: Partition
    action: str = DUMMY_ACTION


PureProfile = tuple[Strategy, ...]
FormationRule = Callable[[Sequence[Coalition], int], Partition]


def unanimity_rule(desired: Sequence[Coalition], n: int) -> Partition:
    """A block forms iff every member desires exactly that block; everyone else is alone."""
    blocks = []
    placed = set()
    for i, b in enumerate(desired):
        if i in placed:
            continue
        if len(b) > 1 and all(desired[j] == b for j in b):
            blocks.append(b)
            placed.update(b)
        else:
            blocks.append((i,))
            placed.add(i)
    return Partition(tuple(sorted(blocks)))


class Game:
    """The game with maximum coalition size ``k`` built from a validated spec.

    ``strategy_sets`` defaults to every bounded partition crossed with each
    player's actions; subgames (e.g. after dominance elimination) pass
    explicit subsets.
    """

    def __init__(
        self,
        spec: GameSpec,
        k: int,
        strategy_sets: Sequence[Sequence[Strategy]] | None = None,
        rule: FormationRule = unanimity_rule,
    ):
        self.spec = spec
        self.k = k
        self.rule = rule
        self.partitions = enumerate_partitions(spec.n, k)
        if strategy_sets is None:
            strategy_sets = [
                [Strategy(p, a) for p in self.partitions for a in spec.actions[i]]
                for i in range(spec.n)
            ]
        self.strategy_sets: tuple[tuple[Strategy, ...], ...] = tuple(tuple(s) for s in strategy_sets)
        self._payoff_cache: dict = {}

    def __eq__(self, other):
        return (isinstance(other, Game) and self.spec == other.spec and self.k == other.k
                and self.strategy_sets == other.strategy_sets)

    __hash__ = None

    def __repr__(self):
        sizes = ",".join(str(len(s)) for s in self.strategy_sets)
        return f"Game(players={list(self.players.labels)}, k={self.k}, strategies=[{sizes}])"

    @property
    def players(self) -> PlayerSet:
        return self.spec.players

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def is_full(self) -> bool:
        return all(
            len(s) == len(self.partitions) * len(self.spec.actions[i])
            for i, s in enumerate(self.strategy_sets)
        )

    def restrict(self, strategy_sets: Sequence[Sequence[Strategy]]) -> "Game":
        return Game(self.spec, self.k, strategy_sets, self.rule)

    def own_block(self, s: Strategy, i: int) -> Coalition:
        return s.partition.block_of(i)

    def realized(self, profile: Sequence[Strategy]) -> Partition:
        desired = [self.own_block(s, i) for i, s in enumerate(profile)]
        return self.rule(desired, self.n)

    def payoff(self, profile: Sequence[Strategy]) -> Payoff:
        key = (tuple(self.own_block(s, i) for i, s in enumerate(profile)),
               tuple(s.action for s in profile))
        try:
            return self._payoff_cache[key]
        except KeyError:
            pass
        realized = self.rule(key[0], self.n)
        out = self.spec.lookup(realized, key[1])
        self._payoff_cache[key] = out
        return out

    def strategy_class(self, s: Strategy, i: int) -> tuple[Coalition, str]:
        return (self.own_block(s, i), s.action)

    @cached_property
    def representatives(self) -> tuple[tuple[Strategy, ...], ...]:
        """First strategy of each outcome-equivalence class, per player."""
        return tuple(tuple(cls[0] for cls in quotient_strategies(self, i)) for i in range(self.n))

    def strategy_str(self, s: Strategy) -> str:
        text = canonical_string(s.partition, self.players)
        return text if s.action == DUMMY_ACTION else f"{text}@{s.action}"

    def parse_strategy(self, text: str, i: int) -> Strategy:
        part, _, act = text.partition("@")
        p = parse_partition(part, self.players)
        action = act.strip() if act else DUMMY_ACTION
        s = Strategy(p, action)
        if p.max_block > self.k:
            raise PartitionError(f"strategy {text!r} has a block larger than k={self.k}")
        if action not in self.spec.actions[i]:
            raise PartitionError(f"unknown action {action!r} for player {self.players.labels[i]}")
        return s


def build_game(spec: GameSpec, k: int) -> Game:
    spec.validate()
    if not 1 <= k <= spec.n:
        raise GameSpecError([f"max coalition size k={k} outside 1..{spec.n}"])
    return Game(spec, k)


def nested_family(spec: GameSpec) -> list[Game]:
    return [build_game(spec, k) for k in range(1, spec.n + 1)]


def formation_rule(g: Game, profile: Sequence[Strategy]) -> Partition:
    return g.realized(profile)


def outcome_payoff(g: Game, profile: Sequence[Strategy]) -> Payoff:
    return g.payoff(profile)


def quotient_strategies(g: Game, i: int) -> list[list[Strategy]]:
    """Group player i's strategies by (own block, action), in first-seen order."""
    classes: dict[tuple, list[Strategy]] = {}
    for s in g.strategy_sets[i]:
        classes.setdefault(g.strategy_class(s, i), []).append(s)
    return list(classes.values())


class MixedProfile:
    """Per-player distributions over strategies; zero-probability entries are dropped."""

    def __init__(self, distributions: Sequence[Mapping[Strategy, Number]]):
        dists = []
        for d in distributions:
            dists.append({s: p for s, p in d.items() if p != 0})
        self.distributions: tuple[dict[Strategy, Number], ...] = tuple(dists)
        for i, d in enumerate(self.distributions):
            if not d:
                raise ValueError(f"player {i} has empty support")
            if any(p < 0 for p in d.values()):
                raise ValueError(f"player {i} has a negative probability")
            total = sum(d.values())
            if abs(total - 1) > 1e-9:
                raise ValueError(f"player {i} probabilities sum to {total}")

    @classmethod
    def pure(cls, profile: Sequence[Strategy]) -> "MixedProfile":
        return cls([{s: Fraction(1)} for s in profile])

    @classmethod
    def uniform(cls, supports: Sequence[Sequence[Strategy]]) -> "MixedProfile":
        return cls([{s: Fraction(1, len(sup)) for s in sup} for sup in supports])

    def __len__(self):
        return len(self.distributions)

    def __getitem__(self, i):
        return self.distributions[i]

    def __eq__(self, other):
        return isinstance(other, MixedProfile) and self.distributions == other.distributions

    def __hash__(self):
        return hash(tuple(frozenset(d.items()) for d in self.distributions))

    def __repr__(self):
        return f"MixedProfile({list(self.distributions)!r})"

    @property
    def is_exact(self) -> bool:
        return all(isinstance(p, (int, Fraction)) for d in self.distributions for p in d.values())

    @property
    def is_pure(self) -> bool:
        return all(len(d) == 1 for d in self.distributions)

    def support(self, i: int) -> tuple[Strategy, ...]:
        return tuple(self.distributions[i])

    def pure_profile(self) -> PureProfile:
        if not self.is_pure:
            raise ValueError("profile is not pure")
        return tuple(next(iter(d)) for d in self.distributions)

    def check_for(self, g: Game) -> None:
        if len(self) != g.n:
            raise ValueError(f"profile has {len(self)} players, game has {g.n}")
        for i, d in enumerate(self.distributions):
            for s in d:
                if s.partition.n != g.n or s.partition.max_block > g.k or s.action not in g.spec.actions[i]:
                    raise ValueError(f"strategy {s} is not available to player {i} in {g!r}")

    def weighted_profiles(self) -> Iterable[tuple[Number, PureProfile]]:
        items = [list(d.items()) for d in self.distributions]
        for combo in itertools.product(*items):
            w = Fraction(1) if self.is_exact else 1.0
            for _, p in combo:
                w *= p
            yield w, tuple(s for s, _ in combo)


def expected_payoff(g: Game, m: MixedProfile) -> tuple[Number, ...]:
    m.check_for(g)
    total = [Fraction(0)] * g.n
    for w, prof in m.weighted_profiles():
        u = g.payoff(prof)
        for i in range(g.n):
            total[i] += w * u[i]
    return tuple(total)


def realized_distribution(g: Game, m: MixedProfile) -> dict[Partition, Number]:
    m.check_for(g)
    out: dict[Partition, Number] = {}
    for w, prof in m.weighted_profiles():
        p = g.realized(prof)
        out[p] = out.get(p, 0) + w
    return dict(sorted(out.items()))
