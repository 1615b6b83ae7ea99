"""Exhaustive streams over partitions, words, layered partitions and two-block shapes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .core import Word, alternating, canonize

MAX_SPACE_N = 20


def partitions(n: int, k_max: int, prefix: Sequence[int] = ()) -> Iterator[Word]:
    """Restricted growth strings of length n with at most k_max blocks, lexicographic.

    With ``prefix`` only the strings extending that (canonical) prefix are
    produced, which is how the search splits work.
    """
    if n < 0 or k_max < 1:
        raise ValueError("need n >= 0 and k_max >= 1")
    prefix = tuple(prefix)
    if len(prefix) > n:
        return
    word = list(prefix) + [0] * (n - len(prefix))
    tops = [0] * (n + 1)
    for i, x in enumerate(prefix):
        if x < 1 or x > min(tops[i] + 1, k_max):
            return
        tops[i + 1] = max(tops[i], x)

    def extend(i: int) -> Iterator[Word]:
        if i == n:
            yield tuple(word)
            return
        for x in range(1, min(tops[i] + 1, k_max) + 1):
            word[i] = x
            tops[i + 1] = max(tops[i], x)
            yield from extend(i + 1)

    yield from extend(len(prefix))


def words(n: int, k: int) -> Iterator[Word]:
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    return itertools.product(range(1, k + 1), repeat=n)


def space_size(n: int, k_max: int) -> int:
    """Number of partitions of [n] with at most k_max blocks (Stirling numbers summed)."""
    if n > MAX_SPACE_N:
        raise ValueError(f"space_size supports n <= {MAX_SPACE_N}")
    if n < 0 or k_max < 1:
        raise ValueError("need n >= 0 and k_max >= 1")
    # row[j] = S(i, j)
    row = [1] + [0] * n
    for i in range(1, n + 1):
        new = [0] * (n + 1)
        for j in range(1, i + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return sum(row[: min(k_max, n) + 1])


def rgs_array(n: int, k_max: int, prefix: Sequence[int] = ()) -> np.ndarray:
    """Same rows as ``partitions(n, k_max, prefix)`` as an (rows, n) int8 array."""
    prefix = tuple(prefix)
    if len(prefix) > n or not all(1 <= x for x in prefix):
        return np.zeros((0, n), dtype=np.int8)
    top = 0
    for x in prefix:
        if x > min(top + 1, k_max):
            return np.zeros((0, n), dtype=np.int8)
        top = max(top, x)
    rows = np.array([prefix], dtype=np.int8).reshape(1, len(prefix))
    tops = np.array([top], dtype=np.int8)
    for _ in range(len(prefix), n):
        choices = np.minimum(tops + 1, k_max).astype(np.int64)
        rep = np.repeat(np.arange(len(rows)), choices)
        starts = np.cumsum(choices) - choices
        letters = (np.arange(len(rep)) - starts[rep] + 1).astype(np.int8)
        rows = np.concatenate([rows[rep], letters[:, None]], axis=1)
        tops = np.maximum(tops[rep], letters)
    return rows


def words_array(n: int, k: int) -> np.ndarray:
    """All of [k]^n as an int8 array in lexicographic order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    grid = np.indices((k,) * n, dtype=np.int8).reshape(n, -1).T
    return np.ascontiguousarray(grid + 1)


def integer_partitions(n: int, max_parts: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as nondecreasing tuples, lexicographic."""
    max_parts = n if max_parts is None else max_parts

    def rec(remaining: int, smallest: int, parts: int) -> Iterator[tuple[int, ...]]:
        for first in range(smallest, remaining + 1):
            rest = remaining - first
            if rest == 0:
                yield (first,)
            elif parts > 1 and rest >= first:
                for tail in rec(rest, first, parts - 1):
                    yield (first,) + tail

    if n == 0:
        yield ()
    elif max_parts >= 1:
        yield from rec(n, 1, max_parts)


def layered_from_structure(sizes: Sequence[int], direction: str = "incr") -> Word:
    """Layered word whose layer sizes read left to right are ``sizes`` sorted."""
    if direction not in ("incr", "decr"):
        raise ValueError("direction must be 'incr' or 'decr'")
    ordered = sorted(sizes, reverse=(direction == "decr"))
    if not ordered or any(s < 1 for s in ordered):
        raise ValueError("block structure must be a nonempty multiset of positive sizes")
    return tuple(j for j, s in enumerate(ordered, start=1) for _ in range(s))


def layered_partitions(n: int, k_max: int, direction: str = "incr") -> Iterator[Word]:
    """One monotone layered word per integer partition of n into at most k_max parts."""
    if n < 1:
        raise ValueError("need n >= 1")
    for parts in integer_partitions(n, k_max):
        yield layered_from_structure(parts, direction)


@dataclass(frozen=True)
class TwoBlockShape:
    """1^front (12)^pairs [1] 1^back; the lone 1 is dropped when ``ends_in_two``."""

    front_ones: int
    alt_pairs: int
    alt_ends_in_two: bool
    back_ones: int

    def __post_init__(self):
        if min(self.front_ones, self.alt_pairs, self.back_ones) < 0:
            raise ValueError("shape parameters must be nonnegative")
        if self.alt_ends_in_two and self.back_ones:
            raise ValueError("an alternating section ending in 2 cannot be followed by ones")

    def __len__(self) -> int:
        return self.front_ones + 2 * self.alt_pairs + (0 if self.alt_ends_in_two else 1) + self.back_ones

    def word(self) -> Word:
        middle = (1, 2) * self.alt_pairs + (() if self.alt_ends_in_two else (1,))
        return canonize((1,) * self.front_ones + middle + (1,) * self.back_ones)


def two_block_shapes(n: int) -> Iterator[TwoBlockShape]:
    if n < 1:
        raise ValueError("need n >= 1")
    for pairs in range(n // 2 + 1):
        # ends in two: only front padding
        front = n - 2 * pairs
        if front >= 0:
            yield TwoBlockShape(front, pairs, True, 0)
        rest = n - 2 * pairs - 1
        for front in range(rest + 1):
            yield TwoBlockShape(front, pairs, False, rest - front)


def two_block_candidates(n: int) -> list[Word]:
    """Distinct words realised by two-block shapes of length n, sorted."""
    return sorted({s.word() for s in two_block_shapes(n)})


def zero_padding_shape(n: int) -> TwoBlockShape:
    """The unpadded shape of length n, whose word is ``alternating(n)``."""
    shape = TwoBlockShape(0, n // 2, n % 2 == 0, 0)
    assert shape.word() == alternating(n)
    return shape
