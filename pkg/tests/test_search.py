from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import partpack.search as search
from oracles import all_partitions, brute_mu, brute_mu_words, ncopies
from partpack.core import RESTRICTED, UNRESTRICTED, PatternSet, alternating, block_structure, parse_word, validate_canonical
from partpack.count import batch_counts, count, count_restricted, count_unrestricted
from partpack.enumeration import layered_from_structure, partitions, two_block_candidates, words_array
from partpack.search import (
    CapExceeded,
    density_sequence,
    max_layered,
    max_over_partitions,
    max_over_words,
    max_two_block,
    mu_by_blocks,
    swap_adjacent_delta,
    word_to_partition,
)

# frozen from the definitional oracle (tests/oracles.py) at n <= 8 and the
# exhaustive engine beyond; odd entries also equal (n^3 - n)/24
MU_121 = {3: 1, 4: 2, 5: 5, 6: 8, 7: 14, 8: 20, 9: 30, 10: 40}
PI3 = ["111", "112", "121", "122", "123"]


def test_oracle_freezes_small_mu_121():
    for n in range(3, 9):
        assert brute_mu([(1, 2, 1)], n, n) == MU_121[n]


def test_max_over_partitions_examples():
    res = max_over_partitions("121", 5, 5)
    assert res.mu == 5 and (1, 2, 1, 2, 1) in res.witnesses
    assert max_over_partitions("121", 4, 4).mu == 2
    for mode in (RESTRICTED, UNRESTRICTED):
        res = max_over_partitions(PatternSet.of("111", mode=mode), 6, 3)
        assert res.mu == comb(6, 3) and res.primary_witness == (1,) * 6


@pytest.mark.parametrize("n", range(3, 11))
def test_mu_121(n):
    res = max_over_partitions("121", n, n)
    assert res.mu == MU_121[n]
    assert res.density == Fraction(MU_121[n], comb(n, 3))
    assert alternating(n) in res.witnesses or res.witness_count > len(res.witnesses)


def test_witnesses_are_exact_argmax_sorted():
    S = PatternSet.of("121")
    res = max_over_partitions(S, 6, 6, witness_limit=1000)
    best = [w for w in all_partitions(6) if count(S, w) == res.mu]
    assert res.witnesses == best and res.witness_count == len(best)
    assert res.examined == 203


@pytest.mark.parametrize("mode", [RESTRICTED, UNRESTRICTED])
@pytest.mark.parametrize("pats", [("112",), ("121",), ("112", "121"), ("1212",)])
def test_partition_search_matches_oracle(mode, pats):
    S = PatternSet.of(*pats, mode=mode)
    for n in range(S.m, 7):
        for k in (1, 2, 3, n):
            assert max_over_partitions(S, n, k).mu == brute_mu(S.patterns, n, k, mode == RESTRICTED)


def test_max_over_words_examples():
    assert max_over_words(PatternSet.of("121", mode=RESTRICTED), 3, 2).mu == 1
    assert max_over_words(PatternSet.of("111", mode=RESTRICTED), 4, 1).mu == 4
    S = PatternSet.of("112", mode=RESTRICTED)
    assert max_over_words(S, 6, 2).mu == max_over_partitions(S, 6, 2).mu == brute_mu_words(S.patterns, 6, 2)
    with pytest.raises(ValueError):
        max_over_words(PatternSet.of("121"), 4, 2)


def test_word_to_partition_examples():
    S = PatternSet.of("112", mode=RESTRICTED)
    assert word_to_partition("2231", S) == (1, 2, 2, 3)
    assert count_restricted("112", "2231") == count_restricted("112", "1223") == 1
    assert word_to_partition("1231123") == parse_word("1231123")
    assert word_to_partition("333") == (1, 1, 1)


@settings(max_examples=300)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=8).map(tuple))
def test_word_to_partition_output_shape(w):
    out = word_to_partition(w)
    assert validate_canonical(out) and len(out) == len(w)
    assert len(set(out)) == len(set(w))


@pytest.mark.parametrize("pats", [("112",), ("121",), ("122",), ("112", "121"), ("1212",)])
def test_word_to_partition_keeps_copies_of_maximizers(pats):
    S = PatternSet.of(*pats, mode=RESTRICTED)
    for n in range(S.m, 7):
        for k in range(2, 5):
            W = words_array(n, k)
            counts = batch_counts(S, W)
            mu = int(counts.max())
            for row in W[counts == mu].tolist():
                assert count(S, word_to_partition(row)) == mu


def test_word_to_partition_can_lose_copies_off_the_maximum():
    assert count_restricted("112", "1312") == 1
    assert word_to_partition("1312") == (1, 2, 3, 1)
    assert count_restricted("112", "1231") == 0


def test_mu_by_blocks_monotone_and_saturates():
    for p in PI3:
        for mode in (RESTRICTED, UNRESTRICTED):
            S = PatternSet.of(p, mode=mode)
            for n in range(3, 9):
                mus = mu_by_blocks(S, n)
                assert len(mus) == n + 1
                assert mus == [max_over_partitions(S, n, k).mu for k in range(1, n + 2)]
                assert all(a <= b for a, b in zip(mus, mus[1:])) and mus[n - 1] == mus[n]


def test_max_layered_examples():
    res = max_layered("112", 6, 6)
    assert res.mu == 12 and parse_word("111122") in res.witnesses and res.verified is True
    res = max_layered("112", 3, 3)
    assert res.mu == 1 and res.witnesses == [(1, 1, 2)]
    res = max_layered("11", 7, 3)
    assert res.mu == comb(7, 2) and res.witnesses == [(1,) * 7]
    with pytest.raises(ValueError):
        max_layered("121", 5, 5)


@pytest.mark.parametrize("p", ["112", "122", "1122", "1123", "1233", "1112"])
def test_max_layered_matches_exhaustive(p):
    for n in range(len(p), 10):
        for k in (2, 3, n):
            assert max_layered(p, n, k, verify_limit=0).mu == max_over_partitions(p, n, k).mu


def test_max_two_block_examples():
    res = max_two_block(9)
    assert res.mu == 30 and res.witnesses == [alternating(9)]
    res = max_two_block(6)
    assert res.mu == 8 and alternating(6) in res.witnesses
    assert max_two_block(3).mu == 1
    for n in range(3, 11):
        assert max_two_block(n).mu == MU_121[n]


def test_swap_examples():
    d = swap_adjacent_delta("121", 2)
    assert (d.predicted, d.actual, d.swapped) == (-1, -1, (1, 1, 2))
    d = swap_adjacent_delta("1221", 3)
    assert (d.predicted, d.actual, d.swapped) == (0, 0, (1, 2, 1, 2))
    with pytest.raises(ValueError):
        swap_adjacent_delta("1212", 1)
    with pytest.raises(ValueError):
        swap_adjacent_delta("1231", 3)


def test_swap_formula_exhaustive():
    for n in range(3, 11):
        for w in partitions(n, 2):
            for i in range(1, n):
                if w[i - 1] == 2 and w[i] == 1:
                    d = swap_adjacent_delta(w, i)
                    c = d.context
                    assert c.a + c.b + c.c + c.d + 2 == n
                    assert d.predicted == d.actual


def test_same_structure_dominance_grids():
    # the same-structure layered rearrangement wins for decreasing 112 and increasing 1122
    for p, direction in (("112", "decr"), ("1122", "incr")):
        for n in range(len(p), 9):
            for s in partitions(n, n):
                lay = layered_from_structure(block_structure(s), direction)
                assert count_unrestricted(p, lay) >= count_unrestricted(p, s)
    # some two-block shape of equal structure wins for 121
    for n in range(3, 11):
        best = {}
        for w in two_block_candidates(n):
            st_ = block_structure(w)
            best[st_] = max(best.get(st_, 0), count_unrestricted("121", w))
        for s in partitions(n, 2):
            assert best[block_structure(s)] >= count_unrestricted("121", s)


def test_density_sequence_examples():
    rows = density_sequence("121", 6)
    assert [r.delta for r in rows] == [1, Fraction(1, 2), Fraction(1, 2), Fraction(2, 5)]
    assert [r.trend for r in rows] == ["start", "down", "flat", "down"]
    assert [r.delta for r in density_sequence("111", 9)] == [1] * 7
    rows = density_sequence("112", 9, engine="exhaustive")
    assert all(a.delta >= b.delta for a, b in zip(rows, rows[1:]))
    assert all(float(r.delta) >= 2 * 3 ** 0.5 - 3 for r in rows)
    exh = density_sequence("121", 9, engine="exhaustive")
    assert [r.delta for r in exh] == [r.delta for r in density_sequence("121", 9)]
    with pytest.raises(ValueError):
        density_sequence("1212", 6, engine="structured")


def test_density_sequence_truncates_at_cap(caplog):
    rows = density_sequence(PatternSet.of("1212"), 9, cap=1000)
    assert rows[-1].n == 7
    assert "truncated" in caplog.text


def test_cap_refusal_names_flag():
    with pytest.raises(CapExceeded, match="--unsafe-large"):
        max_over_partitions("121", 9, 9, cap=1000)
    with pytest.raises(CapExceeded):
        max_over_words(PatternSet.of("121", mode=RESTRICTED), 10, 5, cap=1000)
    assert max_over_partitions("121", 7, 7, cap=10, unsafe_large=True).mu == 14


def test_parallel_equals_serial(monkeypatch):
    monkeypatch.setattr(search, "PARALLEL_MIN_ROWS", 0)
    for S in (PatternSet.of("121"), PatternSet.of("112", "121", mode=RESTRICTED)):
        a = max_over_partitions(S, 8, 8, threads=1)
        b = max_over_partitions(S, 8, 8, threads=3)
        assert (a.mu, a.witnesses, a.witness_count, a.examined) == (b.mu, b.witnesses, b.witness_count, b.examined)
        assert mu_by_blocks(S, 8, threads=1) == mu_by_blocks(S, 8, threads=3)
    S = PatternSet.of("121", mode=RESTRICTED)
    assert max_over_words(S, 7, 3, threads=1) == max_over_words(S, 7, 3, threads=3)


def test_alternating_word_attains_two_block_max():
    for n in range(3, 11):
        assert ncopies([(1, 2, 1)], alternating(n)) == max_two_block(n).mu
