import numpy as np
import pytest

from oracles import BELL, all_partitions
from partpack.core import MONOTONE_INCR, alternating, classify_layering, parse_word, validate_canonical
from partpack.enumeration import (
    TwoBlockShape,
    integer_partitions,
    layered_from_structure,
    layered_partitions,
    partitions,
    rgs_array,
    space_size,
    two_block_candidates,
    two_block_shapes,
    words,
    words_array,
    zero_padding_shape,
)

# number of integer partitions p(n)
P_OF_N = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def W(*texts):
    return [parse_word(t) for t in texts]


def test_partition_stream_examples():
    assert list(partitions(3, 3)) == W("111", "112", "121", "122", "123")
    assert len(list(partitions(4, 4))) == 15
    assert len(list(partitions(4, 2))) == 8
    assert list(partitions(0, 3)) == [()]


@pytest.mark.parametrize("n", range(0, 9))
def test_partitions_match_set_partition_oracle(n):
    for k in range(1, n + 2):
        got = list(partitions(n, k))
        assert got == all_partitions(n, k)
        assert all(validate_canonical(w) and max(w, default=0) <= k for w in got)
        if n:
            assert len(got) == space_size(n, k)
    if n:
        assert list(partitions(n, n)) == list(partitions(n, n + 1))


def test_space_size():
    assert space_size(4, 4) == 15
    assert space_size(11, 11) == 678570
    assert space_size(3, 1) == 1
    assert [space_size(n, n) for n in range(1, 12)] == BELL[1:12]
    with pytest.raises(ValueError):
        space_size(21, 3)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 8) for k in range(1, 5)])
def test_rgs_array_matches_stream(n, k):
    assert [tuple(r) for r in rgs_array(n, k).tolist()] == list(partitions(n, k))


def test_prefix_split_covers_space_once():
    n, k = 8, 5
    prefixes = list(partitions(3, k))
    rows = [tuple(r) for p in prefixes for r in rgs_array(n, k, p).tolist()]
    assert rows == list(partitions(n, k))
    assert list(partitions(6, 3, prefix=(1, 2, 2))) == [w for w in partitions(6, 3) if w[:3] == (1, 2, 2)]
    assert len(rgs_array(5, 3, (2,))) == 0


def test_words():
    assert len(list(words(3, 2))) == 8
    assert list(words(1, 4)) == [(1,), (2,), (3,), (4,)]
    assert list(words(0, 3)) == [()]
    assert [tuple(r) for r in words_array(3, 3).tolist()] == list(words(3, 3))
    assert words_array(2, 2).dtype == np.int8


def test_integer_partitions_counts():
    for n in range(1, 11):
        parts = list(integer_partitions(n))
        assert len(parts) == P_OF_N[n]
        assert len(set(parts)) == len(parts)
        assert all(sum(p) == n and list(p) == sorted(p) for p in parts)
    assert list(integer_partitions(4, 2)) == [(1, 3), (2, 2), (4,)]


def test_layered_examples():
    assert layered_from_structure([1, 2, 3], "incr") == parse_word("122333")
    assert layered_from_structure([3, 3, 1], "decr") == parse_word("1112223")
    assert layered_from_structure([4]) == (1, 1, 1, 1)
    assert sorted(layered_partitions(4, 2)) == sorted(W("1111", "1222", "1122"))
    assert sorted(layered_partitions(3, 3)) == sorted(W("111", "122", "123"))
    assert list(layered_partitions(1, 1)) == [(1,)]


@pytest.mark.parametrize("n", range(1, 9))
def test_layered_partitions_are_increasing_layered_partitions(n):
    for k in range(1, n + 1):
        lay = list(layered_partitions(n, k))
        space = set(partitions(n, k))
        assert len(lay) == len(set(lay))
        assert all(w in space and classify_layering(w) == MONOTONE_INCR for w in lay)


def test_two_block_examples():
    assert {(1, 2, 1), (1, 1, 1)} <= set(two_block_candidates(3))
    assert set(W("1212", "1121", "1211")) <= set(two_block_candidates(4))
    assert TwoBlockShape(0, 4, False, 0).word() == alternating(9)
    with pytest.raises(ValueError):
        TwoBlockShape(0, 1, True, 2)


@pytest.mark.parametrize("n", range(1, 13))
def test_two_block_shapes(n):
    shapes = list(two_block_shapes(n))
    assert all(len(s) == n and len(s.word()) == n for s in shapes)
    cands = two_block_candidates(n)
    space = set(partitions(n, 2))
    assert all(w in space for w in cands)
    assert zero_padding_shape(n).word() == alternating(n)
    if n % 2:
        assert alternating(n) in cands


def test_streams_restartable():
    assert list(partitions(6, 3)) == list(partitions(6, 3))
    assert list(two_block_shapes(7)) == list(two_block_shapes(7))
