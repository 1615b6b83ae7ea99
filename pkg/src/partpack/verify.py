"""Desk-scale checks of every quantitative statement about set-partition packing.

Each check runs an exhaustive grid (bounded by ``n_cap``/``k_cap`` where the
grid is a full partition space) and returns a :class:`ClaimReport`.  Checks of
limits can only be trend-consistent at finite n; known display problems in
the source formulas are reported as informational.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Callable

import numpy as np

from . import count as counting
from . import search
from .closedform import (
    TWO_ROOT3_MINUS_3,
    QuadSurd,
    alternating_count_exact,
    at_least,
    g,
    kblock_bound,
    layered_pair_density,
    ones2_density,
    other_constants,
    pi3_density_table,
    solve_alpha,
    three_block_bound,
)
from .core import (
    MONOTONE_INCR,
    RESTRICTED,
    UNRESTRICTED,
    PatternSet,
    Word,
    alternating,
    block_structure,
    canonize,
    classify_layering,
    format_word,
)
from .enumeration import (
    layered_from_structure,
    partitions,
    rgs_array,
    two_block_candidates,
    two_block_shapes,
    zero_padding_shape,
)

CONFIRMED = "confirmed"
DEVIATION = "deviation"
TREND = "trend-consistent"
INFORMATIONAL = "informational"
SKIPPED = "skipped: cap"

PI3 = [(1, 1, 1), (1, 1, 2), (1, 2, 1), (1, 2, 2), (1, 2, 3)]
MU_121 = {3: 1, 4: 2, 5: 5, 6: 8, 7: 14, 8: 20, 9: 30, 10: 40}
QUARTER = Fraction(1, 4)
THREE_EIGHTHS = Fraction(3, 8)
LAYERED_TREND_N = 30
TWO_BLOCK_TREND_N = 14

FIELDS = ("id", "statement", "parameters", "expected", "computed", "status", "runtime_ms")


@dataclass
class ClaimReport:
    id: str
    statement: str
    parameters: dict
    expected: Any
    computed: Any
    status: str
    runtime_ms: int | None = None

    def to_dict(self) -> dict:
        return {f: _plain(getattr(self, f)) for f in FIELDS}


def _plain(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, QuadSurd):
        return str(x)
    if isinstance(x, float):
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, tuple) and all(isinstance(v, (int, np.integer)) for v in x) and x:
        return format_word(x)
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return str(x)


def _nonincreasing(values) -> bool:
    return all(a >= b for a, b in zip(values, values[1:]))


def _status(ok: bool, good: str = CONFIRMED) -> str:
    return good if ok else DEVIATION


# --- individual claims ------------------------------------------------------


def claim_c1(n_cap: int, k_cap: int, threads) -> ClaimReport:
    N, K = min(7, n_cap), min(4, k_cap)
    params = {"patterns": PI3, "mode": RESTRICTED, "n": [3, N], "k": [1, K]}
    stmt = "Restricted maximum over partitions with at most k blocks equals the maximum over all words in [k]^n"
    if N < 3 or K < 1:
        return ClaimReport("C1", stmt, params, "equal maxima", None, SKIPPED)
    mismatches, lost, checked = [], [], 0
    table = {}
    for p in PI3:
        S = PatternSet((p,), RESTRICTED)
        for n in range(3, N + 1):
            for k in range(1, K + 1):
                part = search.max_over_partitions(S, n, k, threads=threads)
                word = search.max_over_words(S, n, k, threads=threads)
                checked += 1
                if part.mu != word.mu:
                    mismatches.append({"pattern": p, "n": n, "k": k, "partitions": part.mu, "words": word.mu})
                moved = search.word_to_partition(word.primary_witness, S)
                if counting.count(S, moved) < word.mu or max(moved) > k:
                    lost.append({"word": word.primary_witness, "moved": moved})
                if k == K:
                    table.setdefault(format_word(p), []).append(part.mu)
    computed = {"comparisons": checked, "mismatches": mismatches[:1], "mismatch_count": len(mismatches),
                "word_to_partition_losses": lost[:1], f"mu_at_k={K}": table}
    return ClaimReport("C1", stmt, params, "equal maxima", computed, _status(not mismatches and not lost))


def _mu_tables(mode: str, N: int, threads) -> dict[Word, dict[int, list[int]]]:
    """mu(S, n, k) for k = 1..n+1, for every singleton S in Pi_3 and n = 3..N."""
    out = {}
    for p in PI3:
        S = PatternSet((p,), mode)
        out[p] = {n: search.mu_by_blocks(S, n, threads=threads) for n in range(3, N + 1)}
    return out


def _density(mu: int, n: int, m: int = 3) -> Fraction:
    return Fraction(mu, comb(n, m))


def claim_c2(n_cap: int, k_cap: int, threads) -> list[ClaimReport]:
    N = min(10, n_cap, k_cap)
    stmt_a = "Unrestricted maximum density delta(S,n,k) is nonincreasing in n (k fixed, and along k = n)"
    stmt_b = "Unrestricted maximum density is nondecreasing in k, with delta(S,n,n) = delta(S,n,n+1)"
    stmt_c = "Direction in n of the restricted maximum density (probe)"
    params = {"patterns": PI3, "n": [3, N], "k": "1..n+1"}
    if N < 4:
        return [ClaimReport(i, s, params, None, None, SKIPPED)
                for i, s in (("C2a", stmt_a), ("C2b", stmt_b), ("C2c", stmt_c))]
    t0 = time.perf_counter()
    tables = _mu_tables(UNRESTRICTED, N, threads)
    bad_n, bad_k, diagonal = [], [], {}
    for p, rows in tables.items():
        diag = [_density(rows[n][n - 1], n) for n in range(3, N + 1)]
        diagonal[format_word(p)] = diag
        for n in range(4, N + 1):
            for k in range(1, N + 2):
                prev = _density(rows[n - 1][min(k, n) - 1], n - 1)
                cur = _density(rows[n][min(k, n + 1) - 1], n)
                if prev < cur:
                    bad_n.append({"pattern": p, "n": n, "k": k, "prev": prev, "cur": cur})
        for n in range(3, N + 1):
            mus = rows[n]
            if not all(a <= b for a, b in zip(mus, mus[1:])) or mus[n - 1] != mus[n]:
                bad_k.append({"pattern": p, "n": n, "mu_by_k": mus})
    split = int((time.perf_counter() - t0) * 1000) // 2
    a = ClaimReport("C2a", stmt_a, dict(params, k="1..N+1 and k=n"), "nonincreasing in n",
                    {"delta_n_n": diagonal, "violations": bad_n[:1], "violation_count": len(bad_n)},
                    _status(not bad_n), split)
    b = ClaimReport("C2b", stmt_b, params, "nondecreasing in k; equality at k=n, n+1",
                    {"violations": bad_k[:1], "violation_count": len(bad_k)}, _status(not bad_k), split)

    t0 = time.perf_counter()
    NR = min(8, N)
    rtables = _mu_tables(RESTRICTED, NR, threads)
    probe = {}

    def mu_at(rows, n, k):
        return rows[n][min(k, n + 1) - 1]

    for p, rows in rtables.items():
        ups = downs = flats = 0
        for n in range(4, NR + 1):
            pairs = [(mu_at(rows, n - 1, k), mu_at(rows, n, k)) for k in range(2, min(4, k_cap) + 1)]
            pairs.append((rows[n - 1][n - 2], rows[n][n - 1]))
            for before, after in pairs:
                prev, cur = _density(before, n - 1), _density(after, n)
                ups += cur > prev
                downs += cur < prev
                flats += cur == prev
        probe[format_word(p)] = {"increases": ups, "decreases": downs, "equal": flats,
                                 "delta_n_n": [_density(rows[n][n - 1], n) for n in range(3, NR + 1)]}
    c = ClaimReport("C2c", stmt_c, {"patterns": PI3, "mode": RESTRICTED, "n": [3, NR], "k": "2..4 and k=n"},
                    "direction not asserted", probe, INFORMATIONAL, int((time.perf_counter() - t0) * 1000))
    return [a, b, c]


def _layered_direction(p: Word) -> str:
    return "incr" if classify_layering(p) == MONOTONE_INCR else "decr"


def _dominance(p: Word, N: int, direction: str):
    S = PatternSet((p,), UNRESTRICTED)
    checked, first = 0, None
    for n in range(len(p), N + 1):
        W = rgs_array(n, n)
        counts = counting.batch_counts(S, W)
        cache: dict[tuple, int] = {}
        for row, c in zip(W.tolist(), counts.tolist()):
            st = block_structure(row)
            if st not in cache:
                cache[st] = counting.count(S, layered_from_structure(st, direction))
            checked += 1
            if cache[st] < c and first is None:
                first = {"n": n, "sigma": tuple(row), "count": c,
                         "layered": layered_from_structure(st, direction), "layered_count": cache[st]}
    return checked, first


def claim_c3(n_cap: int, k_cap: int, threads) -> ClaimReport:
    N = min(9, n_cap)
    stmt = ("The monotone layered word with the same block structure has at least as many unrestricted "
            "copies of a monotone layered pattern (increasing patterns use increasing layers, "
            "decreasing patterns decreasing layers)")
    pats = [(1, 1, 2), (1, 1, 2, 2)]
    params = {"patterns": pats, "n": [3, N], "space": "all partitions of [n]"}
    if N < 4:
        return ClaimReport("C3", stmt, params, "zero counterexamples", None, SKIPPED)
    computed, ok = {}, True
    for p in pats:
        direction = _layered_direction(p)
        checked, first = _dominance(p, N, direction)
        ok &= first is None
        computed[format_word(p)] = {"direction": direction, "checked": checked, "counterexample": first}
    # the increasing rearrangement for the decreasing pattern 112, for the record
    _, first = _dominance((1, 1, 2), min(N, 5), "incr")
    computed["112_with_increasing_layers"] = {"counterexample": first}
    return ClaimReport("C3", stmt, params, "zero counterexamples", computed, _status(ok))


def claim_c4(n_cap: int, k_cap: int, threads) -> ClaimReport:
    stmt = "Swapping adjacent letters 2,1 in a two-block partition changes the copies of 121 by (b+c)-(a+d)"
    N = 10
    per_n, mismatches = {}, []
    for n in range(3, N + 1):
        swaps = bad = 0
        for w in partitions(n, 2):
            if max(w) != 2:
                continue
            for i in range(1, n):
                if w[i - 1] == 2 and w[i] == 1:
                    d = search.swap_adjacent_delta(w, i)
                    swaps += 1
                    if d.predicted != d.actual:
                        bad += 1
                        mismatches.append({"word": w, "i": i, "predicted": d.predicted, "actual": d.actual})
        per_n[n] = {"swaps": swaps, "mismatches": bad}
    return ClaimReport("C4", stmt, {"n": [3, N], "space": "two-block partitions"}, "zero mismatches",
                       {"per_n": per_n, "first_mismatch": mismatches[:1]}, _status(not mismatches))


def balanced_two_block(ones: int, twos: int) -> Word:
    """The explicit shape: ceil((i-j-1)/2) ones, 1212...121, floor((i-j-1)/2) ones."""
    if ones == twos:
        return canonize((1, 2) * twos)
    pad = ones - twos - 1
    front, back = (pad + 1) // 2, pad // 2
    return (1,) * front + (1, 2) * twos + (1,) + (1,) * back


def claim_c5(n_cap: int, k_cap: int, threads) -> ClaimReport:
    stmt = ("Within each two-block structure some two-block shape 1..1 1212..121 1..1 has at least as many "
            "copies of 121 as every partition with that structure")
    N = 12
    S = PatternSet(((1, 2, 1),), UNRESTRICTED)
    checked, failures, balanced_failures = 0, [], []
    for n in range(3, N + 1):
        best_shape: dict[tuple, int] = {}
        for w in two_block_candidates(n):
            st = block_structure(w)
            best_shape[st] = max(best_shape.get(st, -1), counting.count(S, w))
        W = rgs_array(n, 2)
        counts = counting.batch_counts(S, W).tolist()
        best_any: dict[tuple, int] = {}
        for row, c in zip(W.tolist(), counts):
            st = block_structure(row)
            checked += 1
            best_any[st] = max(best_any.get(st, -1), c)
            if best_shape.get(st, -1) < c:
                failures.append({"n": n, "sigma": tuple(row), "count": c, "best_shape": best_shape.get(st)})
        for st, c in sorted(best_any.items()):
            if len(st) == 2:
                w = balanced_two_block(st[1], st[0])
                if counting.count(S, w) < c:
                    balanced_failures.append({"structure": st, "shape": w, "max": c})
    computed = {"partitions_checked": checked, "counterexample": failures[:1],
                "balanced_shape_shortfalls": balanced_failures[:1],
                "balanced_shape_shortfall_count": len(balanced_failures)}
    return ClaimReport("C5", stmt, {"n": [3, N], "space": "partitions with at most two blocks"},
                       "zero counterexamples", computed, _status(not failures and not balanced_failures))


def claim_c6(n_cap: int, k_cap: int, threads) -> ClaimReport:
    stmt = "Among two-block shapes of length n the unpadded alternating shape has the most copies of 121"
    N = 14
    S = PatternSet(((1, 2, 1),), UNRESTRICTED)
    per_n, bad = {}, []
    for n in range(3, N + 1):
        shapes = list(two_block_shapes(n))
        best = max(counting.count(S, s.word()) for s in shapes)
        zero = counting.count(S, zero_padding_shape(n).word())
        per_n[n] = {"shapes": len(shapes), "max": best, "unpadded": zero}
        if zero != best:
            bad.append(n)
    return ClaimReport("C6", stmt, {"n": [3, N]}, "max attained with no padding", {"per_n": per_n, "failing_n": bad},
                       _status(not bad))


def claim_c7(n_cap: int, k_cap: int, threads) -> ClaimReport:
    stmt = "The alternating partition 1212... maximizes copies of 121 over all partitions of [n]"
    N = min(10, n_cap, k_cap)
    params = {"n": [3, N], "k": "n", "space": "all partitions of [n]"}
    expected = {n: MU_121[n] for n in range(3, N + 1)}
    if N < 4:
        return ClaimReport("C7", stmt, params, expected, None, SKIPPED)
    S = PatternSet(((1, 2, 1),), UNRESTRICTED)
    rows, ok = {}, True
    for n in range(3, N + 1):
        res = search.max_over_partitions(S, n, n, threads=threads)
        alt = counting.count(S, alternating(n))
        rows[n] = {"mu": res.mu, "alternating": alt, "witnesses": res.witnesses[:5],
                   "witness_count": res.witness_count}
        ok &= res.mu == alt == MU_121[n] and alternating(n) in res.witnesses
    return ClaimReport("C7", stmt, params, expected, rows, _status(ok))


def claim_c8(n_cap: int, k_cap: int, threads) -> ClaimReport:
    stmt = "Copies of 121 in the alternating partition equal g(n) = (n^3-n)/24"
    S = PatternSet(((1, 2, 1),), UNRESTRICTED)
    odd_bad, even_pairs = [], {}
    for n in range(1, 30):
        exact = counting.count(S, alternating(n)) if n >= 3 else 0
        if exact != alternating_count_exact(n):
            odd_bad.append({"n": n, "brute": exact, "closed_form": alternating_count_exact(n)})
        if n % 2 and g(n) != exact:
            odd_bad.append({"n": n, "brute": exact, "g": g(n)})
        if n % 2 == 0 and n >= 4:
            even_pairs[n] = {"g": g(n), "exact": exact}
    computed = {"odd_n_mismatches": odd_bad, "even_n_g_vs_exact": even_pairs,
                "note": "for even n = 2m the count is (m^3-m)/3, below g(n)"}
    return ClaimReport("C8", stmt, {"n": [1, 29]}, "equality for odd n", computed,
                       INFORMATIONAL if not odd_bad else DEVIATION)


def claim_c9(n_cap: int, k_cap: int, threads) -> ClaimReport:
    stmt = "delta(121,n,n) decreases toward 1/4"
    N = TWO_BLOCK_TREND_N
    NX = min(10, n_cap, k_cap)
    seq = {}
    for n in range(3, N + 1):
        seq[n] = search.max_two_block(n).density
    cross = {}
    for n in range(3, NX + 1):
        cross[n] = search.max_over_partitions(PatternSet(((1, 2, 1),)), n, n, threads=threads).density
    values = [seq[n] for n in range(4, N + 1)]
    agree = all(cross[n] == seq[n] for n in cross)
    plateaus = [[n, n + 1] for n in range(4, N) if seq[n] == seq[n + 1]]
    trend = _nonincreasing(values) and all(v >= QUARTER for v in seq.values())
    computed = {"delta_n_n": seq, "exhaustive_agrees": agree, "exhaustive_n": [3, NX],
                "strictly_decreasing": not plateaus, "equal_pairs": plateaus,
                "gap_at_last_n": seq[N] - QUARTER}
    status = DEVIATION if not agree else TREND if trend else DEVIATION
    return ClaimReport("C9", stmt, {"n": [3, N], "engine": "two-block shapes"}, ">= 1/4, decreasing",
                       computed, status)


def claim_c10(n_cap: int, k_cap: int, threads) -> ClaimReport:
    stmt = "Restricted densities of 112 and 121 decrease toward 2√3-3 and (2√3-3)/2 from above"
    N = min(10, n_cap, k_cap)
    bounds = {(1, 1, 2): TWO_ROOT3_MINUS_3, (1, 2, 1): QuadSurd(-3, 2, 2)}
    params = {"patterns": list(bounds), "mode": RESTRICTED, "n": [3, N], "k": "n"}
    if N < 4:
        return ClaimReport("C10", stmt, params, None, None, SKIPPED)
    computed, ok = {}, True
    for p, bound in bounds.items():
        S = PatternSet((p,), RESTRICTED)
        rows = search.density_sequence(S, N, "n", threads=threads)
        vals = [r.delta for r in rows]
        above = all(at_least(v, bound) for v in vals)
        mono = _nonincreasing(vals)
        ok &= above and mono
        computed[format_word(p)] = {"delta_n_n": vals, "bound": bound, "above_bound": above, "nonincreasing": mono}
    return ClaimReport("C10", stmt, params, {format_word(p): b for p, b in bounds.items()}, computed,
                       _status(ok, TREND))


def claim_c11(n_cap: int, k_cap: int, threads) -> ClaimReport:
    stmt = "Copies of 112 in a partition equal copies of 122 in the canonized reversal"
    N = min(9, n_cap)
    params = {"n": [3, N], "space": "all partitions of [n]"}
    if N < 3:
        return ClaimReport("C11", stmt, params, "equality", None, SKIPPED)
    s112 = PatternSet(((1, 1, 2),), UNRESTRICTED)
    s122 = PatternSet(((1, 2, 2),), UNRESTRICTED)
    checked, first = 0, None
    for n in range(3, N + 1):
        W = rgs_array(n, n)
        R = np.asarray([canonize(row[::-1]) for row in W.tolist()], dtype=np.int8)
        a, b = counting.batch_counts(s112, W), counting.batch_counts(s122, R)
        checked += len(W)
        diff = np.flatnonzero(a != b)
        if len(diff) and first is None:
            i = int(diff[0])
            first = {"sigma": tuple(W[i].tolist()), "112": int(a[i]), "122_reversed": int(b[i])}
    return ClaimReport("C11", stmt, params, "equality", {"checked": checked, "counterexample": first},
                       _status(first is None))


def claim_c12(n_cap: int, k_cap: int, threads) -> ClaimReport:
    stmt = "The four-letter layered patterns 1122, 1123, 1233 pack with density 3/8"
    N = min(10, n_cap, k_cap)
    pats = [(1, 1, 2, 2), (1, 1, 2, 3), (1, 2, 3, 3)]
    params = {"patterns": pats, "n_exhaustive": [4, N], "n_layered": [4, LAYERED_TREND_N], "k": "n"}
    if N < 5:
        return ClaimReport("C12", stmt, params, THREE_EIGHTHS, None, SKIPPED)
    computed = {"layered_pair_density(2,2)": layered_pair_density(2, 2),
                "constants": {c.label: c.exact for c in other_constants()}}
    ok = computed["layered_pair_density(2,2)"] == THREE_EIGHTHS
    agree = True
    for p in pats:
        S = PatternSet((p,), UNRESTRICTED)
        exh = search.density_sequence(S, N, "n", engine="exhaustive", threads=threads)
        lay = search.density_sequence(S, LAYERED_TREND_N, "n", engine="structured")
        same = all(e.delta == l.delta for e, l in zip(exh, lay))
        vals = [r.delta for r in lay]
        trend = _nonincreasing(vals) and all(v >= THREE_EIGHTHS for v in vals)
        agree &= same
        ok &= trend
        computed[format_word(p)] = {"exhaustive": [r.delta for r in exh], "layered_agrees": same,
                                    "layered_last": {"n": LAYERED_TREND_N, "delta": vals[-1]},
                                    "above_3/8_and_nonincreasing": trend}
    status = DEVIATION if not agree else TREND if ok else DEVIATION
    return ClaimReport("C12", stmt, params, THREE_EIGHTHS, computed, status)


def claim_c13(n_cap: int, k_cap: int, threads) -> ClaimReport:
    stmt = "Density of 1..12 from the alpha equation, set beside 2√3-3 and computed values for 112"
    root = solve_alpha(2)
    N = min(10, n_cap, k_cap)
    exh = search.density_sequence(PatternSet(((1, 1, 2),)), max(N, 3), "n", engine="exhaustive", threads=threads)
    lay = search.density_sequence(PatternSet(((1, 1, 2),)), LAYERED_TREND_N, "n", engine="structured")
    lay3 = search.density_sequence(PatternSet(((1, 1, 1, 2),)), LAYERED_TREND_N, "n", engine="structured")
    computed = {
        "alpha_k2": root.alpha,
        "alpha_residual": root.residual,
        "formula_k2": ones2_density(2),
        "2√3-3": float(TWO_ROOT3_MINUS_3),
        "delta_112_exhaustive": {r.n: r.delta for r in exh},
        "delta_112_layered_last": {"n": LAYERED_TREND_N, "delta": float(lay[-1].delta)},
        "formula_k3": ones2_density(3),
        "delta_1112_layered_last": {"n": LAYERED_TREND_N, "delta": float(lay3[-1].delta)},
    }
    return ClaimReport("C13", stmt, {"k": [2, 3], "n_layered": [3, LAYERED_TREND_N]},
                       {"formula_k2": "≈0.4330", "2√3-3": "≈0.4641"}, computed, INFORMATIONAL)


def claim_c14(n_cap: int, k_cap: int, threads) -> ClaimReport:
    stmt = "C(k,2) g(2n/k) set beside its expansion n^3/(24k) - n^3/(24k^2) - n(k-1)/24"
    k3 = {n: {"direct": kblock_bound(n, 3).direct, "n^3/27-n/12": three_block_bound(n)} for n in (3, 6, 9, 12)}
    k3_match = all(v["direct"] == v["n^3/27-n/12"] for v in k3.values())
    general = {}
    for k in range(3, 9):
        n = 3 * k
        b = kblock_bound(n, k)
        general[k] = {"n": n, "direct": b.direct, "expansion": b.printed, "match": b.direct == b.printed}
    below_g = all(kblock_bound(n, k).direct < g(n) for k in range(3, 101) for n in range(k, 101))
    computed = {"k3_closed_form_matches_direct": k3_match, "k3": k3, "general_k": general,
                "direct_below_g_for_3<=k<=n<=100": below_g}
    return ClaimReport("C14", stmt, {"k": [3, 8], "n": "3k", "bound_check": "3<=k<=n<=100"},
                       "k=3 closed form matches; expansion compared", computed,
                       INFORMATIONAL if k3_match and below_g else DEVIATION)


CLAIMS: list[Callable] = [claim_c1, claim_c2, claim_c3, claim_c4, claim_c5, claim_c6, claim_c7,
                          claim_c8, claim_c9, claim_c10, claim_c11, claim_c12, claim_c13, claim_c14]


def run_claims(n_cap: int = 10, k_cap: int = 10, threads: int | None = None,
               only: set[str] | None = None) -> list[ClaimReport]:
    reports: list[ClaimReport] = []
    for fn in CLAIMS:
        ids = {"claim_c2": {"C2a", "C2b", "C2c"}}.get(fn.__name__, {fn.__name__.replace("claim_c", "C")})
        if only and not ids & only:
            continue
        t0 = time.perf_counter()
        out = fn(n_cap, k_cap, threads)
        elapsed = int((time.perf_counter() - t0) * 1000)
        for r in out if isinstance(out, list) else [out]:
            if r.runtime_ms is None:
                r.runtime_ms = elapsed
            reports.append(r)
    return reports


def pi3_tables() -> dict:
    return {mode: {c.label: c.display for c in pi3_density_table(mode)} for mode in (RESTRICTED, UNRESTRICTED)}


def report_render(reports: list[ClaimReport], fmt: str = "json", include_runtime: bool = True) -> str:
    """Render reports as a JSON array or as plain text lines; field order is fixed."""
    dicts = [r.to_dict() for r in reports]
    if not include_runtime:
        for d in dicts:
            d["runtime_ms"] = None
    if fmt == "json":
        return json.dumps(dicts, indent=2, ensure_ascii=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for d in dicts:
        lines.append(f"{d['id']:<4} {d['status']:<17} {d['statement']}")
        comp = d["computed"]
        if d["id"] == "C4" and comp:
            for n, row in comp["per_n"].items():
                lines.append(f"       n={n}: {row['swaps']} swaps checked / mismatches {row['mismatches']}")
        elif isinstance(comp, dict):
            for key, val in comp.items():
                lines.append(f"       {key}: {json.dumps(val, ensure_ascii=False)}")
        if d["runtime_ms"] is not None:
            lines.append(f"       runtime: {d['runtime_ms']} ms")
    return "\n".join(lines) + ("\n" if lines else "")


def has_deviation(reports: list[ClaimReport]) -> bool:
    return any(r.status == DEVIATION for r in reports)
