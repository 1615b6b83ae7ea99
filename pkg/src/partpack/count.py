"""Occurrence counts and densities of pattern sets in partitions and words.

Two routes share one definition of a copy:

* single targets go through ``occurrences``, which walks the index subsets in
  lexicographic order and matches each subsequence by canonization
  (unrestricted) or by dense ranking (restricted);
* ``batch_counts`` counts one pattern set in every row of an int8 array at
  once.  A subsequence is reduced to a code built from its pairwise letter
  relations: equal/unequal for unrestricted copies, less/equal/greater for
  restricted ones.  Two equal-length subsequences have the same code iff they
  canonize alike (resp. are order isomorphic).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .core import (
    RESTRICTED,
    UNRESTRICTED,
    PatternSet,
    Word,
    WordLike,
    as_pattern_set,
    as_word,
    canonize,
)

CHUNK_ROWS = 1 << 18


@dataclass(frozen=True)
class DensityValue:
    numerator: int
    denominator: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def dense_rank(w: Sequence[int]) -> Word:
    """Replace letters by their rank among the distinct letters of ``w``."""
    ranks = {x: r for r, x in enumerate(sorted(set(w)), start=1)}
    return tuple(ranks[x] for x in w)


def _check_lengths(m: int, n: int) -> None:
    if m > n:
        raise ValueError(f"pattern length {m} exceeds target length {n}")


def occurrences(S, t: WordLike, mode: str | None = None) -> list[tuple[int, ...]]:
    """1-based index tuples of all copies, lexicographic."""
    S = as_pattern_set(S, mode)
    t = as_word(t)
    _check_lengths(S.m, len(t))
    targets = set(S.patterns)
    reduce = dense_rank if S.mode == RESTRICTED else canonize
    found = []
    for idx in itertools.combinations(range(len(t)), S.m):
        if reduce([t[i] for i in idx]) in targets:
            found.append(tuple(i + 1 for i in idx))
    return found


def count(S, t: WordLike, mode: str | None = None) -> int:
    return len(occurrences(S, t, mode))


def count_restricted(S, t: WordLike) -> int:
    return count(S, t, RESTRICTED)


def count_unrestricted(S, t: WordLike) -> int:
    return count(S, t, UNRESTRICTED)


def count_with_last(p, t: WordLike, mode: str | None = None) -> int:
    """Copies whose last index is the final position of ``t``."""
    t = as_word(t)
    return sum(1 for occ in occurrences(p, t, mode) if occ[-1] == len(t))


def density(S, t: WordLike, mode: str | None = None) -> DensityValue:
    S = as_pattern_set(S, mode)
    t = as_word(t)
    return DensityValue(count(S, t), comb(len(t), S.m))


def count_layered(pattern_sizes: Sequence[int], layer_sizes: Sequence[int]) -> int:
    """Copies of a layered pattern in a layered word, from layer sizes alone.

    Any subsequence of a layered word is weakly increasing, so a copy takes
    p_1 letters from one layer, p_2 from a later layer, and so on.  The same
    number counts restricted and unrestricted copies.
    """
    r = len(pattern_sizes)
    # ways[j]: ways to realise the first j pattern layers using layers seen so far
    ways = [1] + [0] * r
    for s in layer_sizes:
        for j in range(r, 0, -1):
            ways[j] += ways[j - 1] * comb(s, pattern_sizes[j - 1])
    return ways[r]


# --- batch engine -----------------------------------------------------------


def _pairs(m: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(m), 2))


def pattern_codes(S: PatternSet) -> np.ndarray:
    rows = np.asarray(S.patterns, dtype=np.int8)
    codes = np.zeros(len(rows), dtype=np.int64)
    for a, b in _pairs(S.m):
        codes = _push(codes, rows[:, a], rows[:, b], S.mode)
    return codes


def _push(codes: np.ndarray, x: np.ndarray, y: np.ndarray, mode: str) -> np.ndarray:
    if mode == UNRESTRICTED:
        return codes * 2 + (x == y)
    return codes * 3 + 1 + (x > y).astype(np.int64) - (x < y)


def _relations(W: np.ndarray, mode: str) -> dict[tuple[int, int], np.ndarray]:
    n = W.shape[1]
    rel = {}
    for i, j in itertools.combinations(range(n), 2):
        x, y = W[:, i], W[:, j]
        if mode == UNRESTRICTED:
            rel[i, j] = (x == y).astype(np.int8)
        else:
            rel[i, j] = (1 + (x > y).astype(np.int8) - (x < y)).astype(np.int8)
    return rel


def batch_counts(S: PatternSet, W: np.ndarray) -> np.ndarray:
    """Copies of ``S`` in every row of the 2-d array ``W`` (int64 vector)."""
    W = np.asarray(W)
    rows, n = W.shape
    m = S.m
    _check_lengths(m, n)
    codes = pattern_codes(S)
    base = 2 if S.mode == UNRESTRICTED else 3
    table_size = base ** len(_pairs(m))
    table = None
    if table_size <= 1 << 20:
        table = np.zeros(table_size, dtype=np.int8)
        table[codes] = 1
    out = np.zeros(rows, dtype=np.int64)
    combos = list(itertools.combinations(range(n), m))
    pairs = _pairs(m)
    for lo in range(0, rows, CHUNK_ROWS):
        block = W[lo : lo + CHUNK_ROWS]
        rel = _relations(block, S.mode)
        acc = np.zeros(len(block), dtype=np.int32)
        for idx in combos:
            code = np.zeros(len(block), dtype=np.int64)
            for a, b in pairs:
                code = code * base + rel[idx[a], idx[b]]
            if table is not None:
                acc += table[code]
            else:
                acc += np.isin(code, codes)
        out[lo : lo + len(block)] = acc
    return out
