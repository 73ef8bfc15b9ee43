import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import bounded_partition_count, partitions_by_insertion

from coalform.partitions import (
    Partition,
    PartitionError,
    PlayerSet,
    block_of,
    canonical_string,
    contains_coalition,
    enumerate_partitions,
    parse_partition,
)

DINNER = PlayerSet(("A", "B", "C1", "C2"))


@pytest.mark.parametrize("n", range(1, 9))
def test_counts_match_oracle_for_every_k(n):
    for k in range(1, n + 1):
        assert len(enumerate_partitions(n, k)) == bounded_partition_count(n, k)


@pytest.mark.parametrize("n", range(1, 7))
def test_same_partitions_as_insertion_oracle(n):
    ours = {frozenset(frozenset(b) for b in p.blocks) for p in enumerate_partitions(n, n)}
    assert ours == set(partitions_by_insertion(range(n)))


def test_known_counts():
    assert len(enumerate_partitions(4, 4)) == 15
    assert len(enumerate_partitions(4, 2)) == 10
    assert len(enumerate_partitions(4, 1)) == 1


def test_enumeration_has_no_duplicates_and_respects_bound():
    parts = enumerate_partitions(6, 3)
    assert len(set(parts)) == len(parts)
    assert all(p.max_block <= 3 for p in parts)


@pytest.mark.parametrize("n,k", [(0, 1), (3, 0), (3, 4)])
def test_bad_bounds_rejected(n, k):
    with pytest.raises(PartitionError):
        enumerate_partitions(n, k)


def test_canonical_round_trip_on_dinner_players():
    for p in enumerate_partitions(4, 4):
        text = canonical_string(p, DINNER)
        assert parse_partition(text, DINNER) == p


def test_parse_normalizes_order():
    assert canonical_string(parse_partition("C2,C1|B,A", DINNER), DINNER) == "A,B|C1,C2"


@pytest.mark.parametrize("text,needle", [
    ("A,B|C1", "C2"),
    ("A,B|B,C1|C2", "B"),
    ("A,B|C1|C2|Z", "Z"),
    ("A,,B|C1|C2", ""),
])
def test_parse_errors_name_the_problem(text, needle):
    with pytest.raises(PartitionError) as exc:
        parse_partition(text, DINNER)
    assert needle in str(exc.value)


def test_block_queries():
    p = parse_partition("A,B|C1|C2", DINNER)
    assert block_of(p, 1) == (0, 1)
    assert block_of(p, 2) == (2,)
    assert contains_coalition(p, (0, 1))
    assert not contains_coalition(p, (2, 3))


def test_singletons_and_grand():
    assert Partition.singletons(3).max_block == 1
    assert Partition.grand(3).blocks == ((0, 1, 2),)


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))))
def test_every_partition_covers_players_once(nk):
    n, k = nk
    for p in enumerate_partitions(n, k):
        members = sorted(i for b in p.blocks for i in b)
        assert members == list(range(n))
        assert p == Partition.from_blocks(reversed(p.blocks), n)
