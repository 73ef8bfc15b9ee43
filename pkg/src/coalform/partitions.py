"""Set partitions (coalition structures) over a finite, labelled player set.

Partitions are enumerated through restricted-growth strings, which gives a
deterministic lexicographic order and makes a bound on block size cheap to
enforce while the string is being built.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

Coalition = tuple[int, ...]


class PartitionError(ValueError):
    """Raised for malformed partition text or out-of-range bounds."""


@dataclass(frozen=True)
class PlayerSet:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise PartitionError("player set is empty")
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise PartitionError(f"invalid player label {lab!r}")
            if any(ch in lab for ch in ",|*@ \t\n"):
                raise PartitionError(f"player label {lab!r} contains a reserved character")
        if len(set(labels)) != len(labels):
            dup = next(x for x in labels if labels.count(x) > 1)
            raise PartitionError(f"duplicate player label {dup!r}")

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise PartitionError(f"unknown player {label!r}") from None

    def coalition(self, text: str) -> Coalition:
        """Parse ``"A,B"`` into a sorted index tuple."""
        names = [s.strip() for s in text.split(",")]
        if not text.strip() or any(not s for s in names):
            raise PartitionError(f"malformed coalition {text!r}")
        idx = [self.index(s) for s in names]
        if len(set(idx)) != len(idx):
            dup = next(s for s in names if names.count(s) > 1)
            raise PartitionError(f"duplicate player {dup!r} in coalition")
        return tuple(sorted(idx))

    def coalition_str(self, c: Coalition) -> str:
        return ",".join(self.labels[i] for i in c)


@dataclass(frozen=True, order=True)
class Partition:
    """A coalition structure in canonical form.

    Blocks are sorted by their smallest member and members are ascending,
    so two partitions are equal iff their ``blocks`` tuples are equal.
    """

    blocks: tuple[Coalition, ...]

    @classmethod
    def from_blocks(cls, blocks, n: int | None = None) -> "Partition":
        bl = [tuple(sorted(b)) for b in blocks]
        if any(not b for b in bl):
            raise PartitionError("empty block")
        members = [i for b in bl for i in b]
        if len(set(members)) != len(members):
            raise PartitionError("blocks are not disjoint")
        if n is not None and sorted(members) != list(range(n)):
            raise PartitionError(f"blocks do not cover players 0..{n - 1}")
        return cls(tuple(sorted(bl)))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple((i,) for i in range(n)))

    @classmethod
    def grand(cls, n: int) -> "Partition":
        return cls((tuple(range(n)),))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def max_block(self) -> int:
        return max(len(b) for b in self.blocks)

    def block_of(self, i: int) -> Coalition:
        for b in self.blocks:
            if i in b:
                return b
        raise IndexError(f"player {i} not in partition")

    def contains(self, g: Sequence[int]) -> bool:
        return tuple(sorted(g)) in self.blocks

    def rgs(self) -> tuple[int, ...]:
        """Restricted-growth string: entry i is the block number of player i."""
        out = [0] * self.n
        for j, b in enumerate(self.blocks):
            for i in b:
                out[i] = j
        return tuple(out)


def _rgs_strings(n: int, k: int) -> Iterator[list[int]]:
    a = [0] * n
    sizes = [0] * n

    def rec(i: int, nblocks: int):
        if i == n:
            yield list(a)
            return
        for j in range(nblocks + 1):
            if sizes[j] >= k:
                continue
            a[i] = j
            sizes[j] += 1
            yield from rec(i + 1, max(nblocks, j + 1))
            sizes[j] -= 1

    yield from rec(0, 0)


def enumerate_partitions(n: int, k: int) -> list[Partition]:
    """All partitions of ``range(n)`` with every block of size at most ``k``.

    Order is lexicographic in the restricted-growth encoding, so the
    all-singletons partition is last and the grand coalition (when allowed)
    first.
    """
    if n < 1:
        raise PartitionError(f"player count must be positive, got {n}")
    if not 1 <= k <= n:
        raise PartitionError(f"max block size k={k} outside 1..{n}")
    out = []
    for s in _rgs_strings(n, k):
        blocks: dict[int, list[int]] = {}
        for i, j in enumerate(s):
            blocks.setdefault(j, []).append(i)
        out.append(Partition(tuple(tuple(b) for b in blocks.values())))
    return out


def canonical_string(p: Partition, ps: PlayerSet) -> str:
    return "|".join(ps.coalition_str(b) for b in p.blocks)


def parse_partition(s: str, ps: PlayerSet) -> Partition:
    if not isinstance(s, str) or not s.strip():
        raise PartitionError("empty partition text")
    seen: dict[int, str] = {}
    blocks = []
    for chunk in s.split("|"):
        names = [t.strip() for t in chunk.split(",")]
        if any(not t for t in names):
            raise PartitionError(f"malformed block {chunk!r} in {s!r}")
        block = []
        for name in names:
            i = ps.index(name)
            if i in seen:
                raise PartitionError(f"duplicate player {name!r} in {s!r}")
            seen[i] = name
            block.append(i)
        blocks.append(block)
    missing = [ps.labels[i] for i in range(ps.n) if i not in seen]
    if missing:
        raise PartitionError(f"missing player {missing[0]!r} in {s!r}")
    return Partition.from_blocks(blocks, ps.n)


def block_of(p: Partition, i: int) -> Coalition:
    return p.block_of(i)


def contains_coalition(p: Partition, g: Sequence[int]) -> bool:
    return p.contains(g)
