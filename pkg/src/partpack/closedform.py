"""Closed-form densities and counts, evaluated exactly where they are rational."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple, Union

from .core import RESTRICTED, UNRESTRICTED

REAL_TOL = 1e-12


@dataclass(frozen=True)
class QuadSurd:
    """(p + q*sqrt(3)) / r with integers p, q, r."""

    p: int
    q: int
    r: int

    def __float__(self) -> float:
        return (self.p + self.q * math.sqrt(3)) / self.r

    def __str__(self) -> str:
        head = f"{self.q}√3" if self.q != 1 else "√3"
        if self.p:
            head += f"{self.p:+d}"
        return head if self.r == 1 else f"({head})/{self.r}"


Exact = Union[Fraction, QuadSurd]


@dataclass(frozen=True)
class DensityConstant:
    label: str
    exact: Exact
    source: str
    tolerance: float = 0.0

    @property
    def value(self) -> float:
        return float(self.exact)

    @property
    def display(self) -> str:
        return str(self.exact)


@dataclass(frozen=True)
class AlphaRoot:
    k: int
    alpha: float
    residual: float


class AlphaBracketError(ArithmeticError):
    pass


class KBlockBound(NamedTuple):
    direct: Fraction
    printed: Fraction


TWO_ROOT3_MINUS_3 = QuadSurd(-3, 2, 1)


def g(n) -> Fraction:
    """(n^3 - n) / 24, exact; ``n`` may be a Fraction."""
    n = Fraction(n)
    return (n**3 - n) / 24


def alternating_count_exact(n: int) -> int:
    """Copies of 121 in the alternating word of length n."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n % 2:
        return (n**3 - n) // 24
    m = n // 2
    return (m**3 - m) // 3


def pi3_density_table(mode: str) -> list[DensityConstant]:
    if mode not in (RESTRICTED, UNRESTRICTED):
        raise ValueError(f"unknown mode {mode!r}")
    tag = "restricted table" if mode == RESTRICTED else "unrestricted table"
    one = Fraction(1)
    d121 = QuadSurd(-3, 2, 2) if mode == RESTRICTED else Fraction(1, 4)
    tol = REAL_TOL
    return [
        DensityConstant("111", one, tag),
        DensityConstant("112", TWO_ROOT3_MINUS_3, tag, tol),
        DensityConstant("121", d121, tag, tol if isinstance(d121, QuadSurd) else 0.0),
        DensityConstant("123", one, tag),
    ]


def layered_pair_density(a: int, b: int) -> Fraction:
    """C(a+b, a) a^a b^b / (a+b)^(a+b), the density of the two-layer pattern 1^a 2^b."""
    if a < 2 or b < 2:
        warnings.warn(f"layered_pair_density({a}, {b}) is outside the range a, b >= 2", stacklevel=2)
    if a < 1 or b < 1:
        raise ValueError("layer sizes must be positive")
    return Fraction(comb(a + b, a) * a**a * b**b, (a + b) ** (a + b))


def alpha_residual(k: int, alpha: float) -> float:
    return (1 - k * alpha) ** (k + 1) - (1 - (k + 1) * alpha)


def solve_alpha(k: int, tol: float = REAL_TOL) -> AlphaRoot:
    """Nonzero root in (0, 1) of (1 - k a)^(k+1) = 1 - (k+1) a.

    Scans a = 0.001, 0.002, ... (staying 1e-6 away from the trivial root 0)
    for the first sign change, then bisects 100 times.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    step = 1e-3
    grid = [max(i * step, 1e-6) for i in range(1, 1000)]
    bracket = None
    prev_a, prev_f = grid[0], alpha_residual(k, grid[0])
    for a in grid[1:]:
        f = alpha_residual(k, a)
        if prev_f == 0.0:
            bracket = (prev_a, prev_a)
            break
        if (prev_f < 0) != (f < 0):
            bracket = (prev_a, a)
            break
        prev_a, prev_f = a, f
    if bracket is None:
        raise AlphaBracketError(f"no sign change of the alpha equation in (0, 1) for k={k}")
    lo, hi = bracket
    f_lo = alpha_residual(k, lo)
    for _ in range(100):
        mid = (lo + hi) / 2
        f_mid = alpha_residual(k, mid)
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    alpha = (lo + hi) / 2
    residual = abs(alpha_residual(k, alpha))
    if residual > tol:
        raise AlphaBracketError(f"bisection stalled at residual {residual:g} for k={k}")
    return AlphaRoot(k, alpha, residual)


def ones2_density(k: int) -> float:
    """k (1 - a) a^(k-1) with a from ``solve_alpha(k)``."""
    alpha = solve_alpha(k).alpha
    return k * (1 - alpha) * alpha ** (k - 1)


def kblock_bound(n, k: int) -> KBlockBound:
    """C(k,2) g(2n/k) next to the expansion n^3/(24k) - n^3/(24k^2) - n(k-1)/24."""
    if k < 2 or n < 1:
        raise ValueError("need k >= 2 and n >= 1")
    n = Fraction(n)
    direct = comb(k, 2) * g(2 * n / k)
    printed = n**3 / (24 * k) - n**3 / (24 * k * k) - n * (k - 1) / 24
    return KBlockBound(direct, printed)


def three_block_bound(n) -> Fraction:
    """n^3/27 - n/12, the closed form given for 3 g(2n/3)."""
    n = Fraction(n)
    return n**3 / 27 - n / 12


def other_constants() -> list[DensityConstant]:
    tag = "four-letter layered patterns"
    return [
        DensityConstant("1123", Fraction(3, 8), tag),
        DensityConstant("1233", Fraction(3, 8), tag),
        DensityConstant("1122", Fraction(3, 8), tag),
    ]


def surd_le(s: QuadSurd, x: Fraction) -> bool:
    """Exact test of (p + q√3)/r <= x for r > 0."""
    if s.r <= 0:
        raise ValueError("denominator must be positive")
    y = s.r * Fraction(x) - s.p
    # compare q√3 with y
    if s.q >= 0:
        return y >= 0 and 3 * s.q * s.q <= y * y
    return y >= 0 or 3 * s.q * s.q >= y * y


def at_least(x: Fraction, bound: Exact) -> bool:
    if isinstance(bound, QuadSurd):
        return surd_le(bound, x)
    return Fraction(x) >= bound
