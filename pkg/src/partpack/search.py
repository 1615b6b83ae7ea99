"""Maximisation of pattern counts over partitions, words and structured families.

Exhaustive searches split the restricted growth strings by their length-3
prefix; each piece is counted independently and the pieces are merged by
(max, then union of argmax rows).  The merge is associative and commutative,
so the result does not depend on how many workers ran or in which order.
"""

from __future__ import annotations

import logging
import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import NamedTuple, Sequence

import numpy as np

from . import count as counting
from .core import (
    LAYERED_ONLY,
    MONOTONE_INCR,
    NOT_LAYERED,
    RESTRICTED,
    UNRESTRICTED,
    PatternSet,
    Word,
    WordLike,
    as_pattern_set,
    as_word,
    canonize,
    classify_layering,
    layer_sizes,
    num_blocks,
    validate_canonical,
)
from .enumeration import (
    MAX_SPACE_N,
    integer_partitions,
    layered_from_structure,
    partitions,
    rgs_array,
    space_size,
    two_block_candidates,
    words_array,
)

log = logging.getLogger(__name__)

DEFAULT_CAP = 5_000_000
DEFAULT_WITNESS_LIMIT = 100
VERIFY_LIMIT = 120_000
PARALLEL_MIN_ROWS = 200_000
PATTERN_121 = (1, 2, 1)


class CapExceeded(RuntimeError):
    """A search space is larger than the configured candidate cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(
            f"{what} has {size} candidates, above the cap of {cap}; "
            "pass unsafe_large=True (CLI: --unsafe-large) to run it anyway"
        )


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("PARTPACK_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class SearchResult:
    mu: int
    density: Fraction
    witnesses: list[Word]
    witness_count: int
    space: str
    examined: int
    n: int
    k: int
    m: int
    verified: bool | None = None

    @property
    def primary_witness(self) -> Word:
        return self.witnesses[0]


@dataclass(frozen=True)
class SwapContext:
    a: int
    b: int
    c: int
    d: int


class SwapDelta(NamedTuple):
    predicted: int
    actual: int
    swapped: Word
    context: SwapContext


@dataclass
class DensitySequenceRow:
    n: int
    k: int
    mu: int
    delta: Fraction
    witness: Word
    engine: str
    trend: str = "start"
    verified: bool | None = field(default=None, repr=False)


# --- fan-out plumbing -------------------------------------------------------


def _run(fn, tasks: list[tuple], threads: int | None) -> list:
    threads = default_threads() if threads is None else threads
    if threads <= 1 or len(tasks) <= 1:
        return [fn(*t) for t in tasks]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=min(threads, len(tasks)), mp_context=ctx) as pool:
        return list(pool.map(fn, *zip(*tasks)))


def _threads_for(size: int, threads: int | None) -> int:
    # process start-up costs more than small scans
    threads = default_threads() if threads is None else threads
    return threads if size >= PARALLEL_MIN_ROWS else 1


def _argmax_rows(W: np.ndarray, counts: np.ndarray, limit: int) -> tuple[int, list[Word], int]:
    if len(W) == 0:
        return -1, [], 0
    mu = int(counts.max())
    hits = np.flatnonzero(counts == mu)
    return mu, [tuple(int(x) for x in W[i]) for i in hits[:limit]], len(hits)


def _merge(parts: list[tuple[int, list[Word], int, int]], limit: int):
    mu = max(p[0] for p in parts)
    witnesses: list[Word] = []
    total = 0
    for part_mu, wit, hits, _ in parts:
        if part_mu == mu:
            witnesses.extend(wit)
            total += hits
    witnesses.sort()
    return mu, witnesses[:limit], total, sum(p[3] for p in parts)


def _prefixes(n: int, k: int) -> list[Word]:
    return list(partitions(3, k)) if n >= 3 else [()]


def _scan_partitions(S: PatternSet, n: int, k: int, prefix: Word, limit: int):
    W = rgs_array(n, k, prefix)
    counts = counting.batch_counts(S, W) if len(W) else np.zeros(0, dtype=np.int64)
    mu, wit, hits = _argmax_rows(W, counts, limit)
    return mu, wit, hits, len(W)


def _scan_blocks(S: PatternSet, n: int, prefix: Word):
    W = rgs_array(n, n, prefix)
    best = np.full(n + 2, -1, dtype=np.int64)
    if len(W):
        counts = counting.batch_counts(S, W)
        blocks = W.max(axis=1).astype(np.int64)
        np.maximum.at(best, blocks, counts)
    return best


def _scan_words(S: PatternSet, n: int, k: int, first: int, limit: int):
    tail = words_array(n - 1, k)
    W = np.concatenate([np.full((len(tail), 1), first, dtype=np.int8), tail], axis=1)
    mu, wit, hits = _argmax_rows(W, counting.batch_counts(S, W), limit)
    return mu, wit, hits, len(W)


def _check_cap(what: str, size: int, cap: int, unsafe_large: bool) -> None:
    if size > cap and not unsafe_large:
        raise CapExceeded(what, size, cap)


def _partition_space(n: int, k: int, cap: int, unsafe_large: bool) -> int:
    if n > MAX_SPACE_N:
        raise CapExceeded(f"Pi({n},{k})", -1, cap)
    size = space_size(n, k)
    _check_cap(f"Pi({n},{k})", size, cap, unsafe_large)
    return size


# --- exhaustive engines -----------------------------------------------------


def max_over_partitions(
    S,
    n: int,
    k: int,
    *,
    cap: int = DEFAULT_CAP,
    unsafe_large: bool = False,
    witness_limit: int = DEFAULT_WITNESS_LIMIT,
    threads: int | None = None,
) -> SearchResult:
    """mu(S, n, k): the largest count over all partitions of [n] with at most k blocks."""
    S = as_pattern_set(S)
    if S.m > n:
        raise ValueError(f"pattern length {S.m} exceeds n={n}")
    size = _partition_space(n, k, cap, unsafe_large)
    tasks = [(S, n, k, prefix, witness_limit) for prefix in _prefixes(n, k)]
    threads = _threads_for(size, threads)
    mu, wit, total, examined = _merge(_run(_scan_partitions, tasks, threads), witness_limit)
    return SearchResult(mu, Fraction(mu, comb(n, S.m)), wit, total, "partitions", examined, n, k, S.m)


def mu_by_blocks(S, n: int, *, cap: int = DEFAULT_CAP, unsafe_large: bool = False,
                 threads: int | None = None) -> list[int]:
    """[mu(S, n, k) for k = 1 .. n+1] from one pass over all partitions of [n]."""
    S = as_pattern_set(S)
    if S.m > n:
        raise ValueError(f"pattern length {S.m} exceeds n={n}")
    size = _partition_space(n, n, cap, unsafe_large)
    tasks = [(S, n, prefix) for prefix in _prefixes(n, n)]
    parts = _run(_scan_blocks, tasks, _threads_for(size, threads))
    best = np.maximum.reduce(parts)
    return [int(v) for v in np.maximum.accumulate(best[1 : n + 2])]


def max_over_words(
    S,
    n: int,
    k: int,
    *,
    cap: int = DEFAULT_CAP,
    unsafe_large: bool = False,
    witness_limit: int = DEFAULT_WITNESS_LIMIT,
    threads: int | None = None,
) -> SearchResult:
    """Largest restricted count over all words in [k]^n."""
    S = as_pattern_set(S, RESTRICTED if not isinstance(S, PatternSet) else None)
    if S.mode != RESTRICTED:
        raise ValueError("word search is defined for restricted counting only")
    if S.m > n:
        raise ValueError(f"pattern length {S.m} exceeds n={n}")
    _check_cap(f"[{k}]^{n}", k**n, cap, unsafe_large)
    tasks = [(S, n, k, first, witness_limit) for first in range(1, k + 1)]
    threads = _threads_for(k**n, threads)
    mu, wit, total, examined = _merge(_run(_scan_words, tasks, threads), witness_limit)
    return SearchResult(mu, Fraction(mu, comb(n, S.m)), wit, total, "words", examined, n, k, S.m)


def word_to_partition(w: WordLike, S=None) -> Word:
    """Turn a word into a canonical word without losing restricted copies.

    Letters are first relabelled onto 1..K by size.  Then, while the word is
    not canonical, take the first position i whose letter jumps above
    (running max + 1) and move the earliest later occurrence of
    (running max + 1) into position i.  Each move lengthens the canonical
    prefix, so the loop ends.

    Applied to a word attaining the maximum over [k]^n the restricted count is
    kept.  On other words a move can lose copies: 1312 has one copy of 112,
    its image 1231 has none.
    """
    if S is not None and as_pattern_set(S).mode != RESTRICTED:
        raise ValueError("word_to_partition preserves restricted copies only")
    sigma = list(counting.dense_rank(as_word(w)))
    while not validate_canonical(sigma):
        top = 0
        for i, x in enumerate(sigma):
            if x > top + 1:
                break
            top = max(top, x)
        t = sigma.index(top + 1, i)
        sigma.insert(i, sigma.pop(t))
    return tuple(sigma)


# --- structured engines -----------------------------------------------------


def max_layered(
    p: WordLike,
    n: int,
    k: int,
    *,
    witness_limit: int = DEFAULT_WITNESS_LIMIT,
    verify_limit: int = VERIFY_LIMIT,
    threads: int | None = None,
) -> SearchResult:
    """Best unrestricted count of a monotone layered pattern over layered partitions.

    Increasing patterns are searched over increasing layered words, decreasing
    ones over decreasing layered words.  When |Pi(n,k)| <= verify_limit the
    exhaustive maximum is computed too and ``verified`` records agreement.
    """
    p = as_word(p)
    kind = classify_layering(p)
    if kind in (NOT_LAYERED, LAYERED_ONLY):
        raise ValueError(f"{p} is not a monotone layered pattern ({kind})")
    if len(p) > n:
        raise ValueError(f"pattern length {len(p)} exceeds n={n}")
    direction = "incr" if kind == MONOTONE_INCR else "decr"
    S = PatternSet((p,), UNRESTRICTED)
    sizes = layer_sizes(p)
    structures = list(integer_partitions(n, k))
    if direction == "decr":
        structures = [parts[::-1] for parts in structures]
    counts = [counting.count_layered(sizes, parts) for parts in structures]
    mu = max(counts)
    best = sorted(layered_from_structure(parts, direction) for parts, c in zip(structures, counts) if c == mu)
    hits, wit = len(best), best[:witness_limit]
    res = SearchResult(mu, Fraction(mu, comb(n, len(p))), wit, hits, f"layered-{direction}",
                       len(structures), n, k, len(p))
    if n <= MAX_SPACE_N and space_size(n, k) <= verify_limit:
        res.verified = max_over_partitions(S, n, k, threads=threads).mu == mu
    return res


def max_two_block(n: int, k: int | None = None, *, witness_limit: int = DEFAULT_WITNESS_LIMIT) -> SearchResult:
    """Best count of 121 over the two-block shapes of length n (all-ones included)."""
    if n < 3:
        raise ValueError("need n >= 3")
    k = n if k is None else k
    cands = two_block_candidates(n) if k >= 2 else [(1,) * n]
    S = PatternSet((PATTERN_121,), UNRESTRICTED)
    W = np.asarray(cands, dtype=np.int8)
    mu, wit, hits = _argmax_rows(W, counting.batch_counts(S, W), witness_limit)
    return SearchResult(mu, Fraction(mu, comb(n, 3)), sorted(wit), hits, "two-block", len(cands), n, k, 3)


def swap_context(p: Sequence[int], i: int) -> SwapContext:
    before, after = p[: i - 1], p[i + 1 :]
    return SwapContext(before.count(1), before.count(2), after.count(1), after.count(2))


def swap_adjacent_delta(p: WordLike, i: int) -> SwapDelta:
    """Exchange the adjacent letters 2,1 at 1-based positions (i, i+1) of a two-block word.

    ``predicted`` is (b + c) - (a + d) with a, b the numbers of 1s and 2s before
    position i and c, d those after position i+1; ``actual`` is the recounted
    change in copies of 121.
    """
    p = as_word(p)
    if not validate_canonical(p) or num_blocks(p) != 2:
        raise ValueError("swap needs a canonical word with exactly two blocks")
    if not (1 <= i < len(p)) or p[i - 1] != 2 or p[i] != 1:
        raise ValueError(f"positions {i},{i + 1} do not hold the letters 2,1")
    ctx = swap_context(p, i)
    q = list(p)
    q[i - 1], q[i] = q[i], q[i - 1]
    swapped = canonize(q)
    S = PatternSet((PATTERN_121,), UNRESTRICTED)
    actual = counting.count(S, swapped) - counting.count(S, p)
    return SwapDelta((ctx.b + ctx.c) - (ctx.a + ctx.d), actual, swapped, ctx)


# --- density sequences ------------------------------------------------------


def structured_engine(S: PatternSet) -> str | None:
    """Name of the structured search that applies to ``S``, if any."""
    if S.mode != UNRESTRICTED or len(S.patterns) != 1:
        return None
    (p,) = S.patterns
    if p == PATTERN_121:
        return "two-block"
    if classify_layering(p) not in (NOT_LAYERED, LAYERED_ONLY):
        return "layered"
    return None


def density_sequence(
    S,
    n_max: int,
    k_policy="n",
    *,
    engine: str = "auto",
    cap: int | None = None,
    unsafe_large: bool = False,
    threads: int | None = None,
) -> list[DensitySequenceRow]:
    """delta(S, n, k) for n = m .. n_max with k = n (``k_policy="n"``) or a fixed k.

    ``engine`` is "auto" (structured search where one applies), "exhaustive"
    or "structured".  Rows stop early, with a logged notice, once an
    exhaustive row would exceed the cap.
    """
    S = as_pattern_set(S)
    cap = DEFAULT_CAP if cap is None else cap
    if engine not in ("auto", "exhaustive", "structured"):
        raise ValueError(f"unknown engine {engine!r}")
    fast = structured_engine(S)
    if engine == "structured" and fast is None:
        raise ValueError(f"no structured search applies to {S}")
    use_fast = fast is not None and engine != "exhaustive"
    rows: list[DensitySequenceRow] = []
    for n in range(S.m, n_max + 1):
        k = n if k_policy == "n" else int(k_policy)
        if use_fast and fast == "two-block":
            res = max_two_block(n, k, witness_limit=1)
        elif use_fast:
            res = max_layered(S.patterns[0], n, k, witness_limit=1, verify_limit=0, threads=threads)
        else:
            try:
                res = max_over_partitions(S, n, k, cap=cap, unsafe_large=unsafe_large,
                                          witness_limit=1, threads=threads)
            except CapExceeded as exc:
                log.warning("density sequence truncated at n=%d: %s", n - 1, exc)
                break
        row = DensitySequenceRow(n, k, res.mu, res.density, res.primary_witness, res.space)
        if rows:
            prev = rows[-1].delta
            row.trend = "down" if row.delta < prev else "flat" if row.delta == prev else "up"
        rows.append(row)
    return rows
