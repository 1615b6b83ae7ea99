import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from partpack.closedform import (
    TWO_ROOT3_MINUS_3,
    AlphaBracketError,
    QuadSurd,
    alpha_residual,
    alternating_count_exact,
    at_least,
    g,
    kblock_bound,
    layered_pair_density,
    ones2_density,
    other_constants,
    pi3_density_table,
    solve_alpha,
    surd_le,
    three_block_bound,
)
from partpack.core import RESTRICTED, UNRESTRICTED, alternating
from partpack.count import count_unrestricted


def test_g_examples():
    assert g(5) == 5
    assert g(4) == Fraction(5, 2)
    assert g(1) == 0


def test_alternating_count_exact():
    assert alternating_count_exact(7) == 14
    assert alternating_count_exact(4) == 2
    assert alternating_count_exact(6) == 8
    for n in range(1, 31):
        assert alternating_count_exact(n) == (count_unrestricted("121", alternating(n)) if n >= 3 else 0)
        if n % 2:
            assert g(n) == alternating_count_exact(n)
        elif n >= 4:
            assert g(n) > alternating_count_exact(n)


def test_pi3_tables_symbolic():
    r = {c.label: c.display for c in pi3_density_table(RESTRICTED)}
    u = {c.label: c.display for c in pi3_density_table(UNRESTRICTED)}
    assert r == {"111": "1", "112": "2√3-3", "121": "(2√3-3)/2", "123": "1"}
    assert u == {"111": "1", "112": "2√3-3", "121": "1/4", "123": "1"}
    r121 = next(c for c in pi3_density_table(RESTRICTED) if c.label == "121")
    assert abs(r121.value - 0.2320508) < 1e-7
    with pytest.raises(ValueError):
        pi3_density_table("sideways")


def test_layered_pair_density():
    assert layered_pair_density(2, 2) == Fraction(3, 8)
    assert layered_pair_density(3, 3) == Fraction(5, 16)
    assert layered_pair_density(2, 3) == Fraction(216, 625)
    with pytest.warns(UserWarning):
        layered_pair_density(1, 2)


@given(st.integers(1, 12), st.integers(1, 12))
def test_layered_pair_density_symmetric(a, b):
    if min(a, b) >= 2:
        assert layered_pair_density(a, b) == layered_pair_density(b, a)
        assert 0 < layered_pair_density(a, b) <= 1


def test_solve_alpha():
    root = solve_alpha(2)
    assert abs(root.alpha - (3 - math.sqrt(3)) / 4) <= 1e-12
    assert root.residual <= 1e-12 and root.alpha > 0
    assert 0.24 < solve_alpha(3).alpha < 0.25
    assert alpha_residual(3, 0.0) == 0.0
    assert solve_alpha(4) == solve_alpha(4)
    for k in range(2, 9):
        assert abs(alpha_residual(k, solve_alpha(k).alpha)) <= 1e-12
    with pytest.raises(ValueError):
        solve_alpha(1)
    assert issubclass(AlphaBracketError, ArithmeticError)


def test_ones2_density():
    assert abs(ones2_density(2) - 0.4330127) < 1e-7
    assert abs(float(TWO_ROOT3_MINUS_3) - 0.4641016) < 1e-7
    assert 0 < ones2_density(3) < 1


def test_kblock_bound():
    assert kblock_bound(9, 3).direct == Fraction(105, 4) == three_block_bound(9)
    assert kblock_bound(9, 9).direct == 9
    for n in range(3, 40):
        assert kblock_bound(n, 3).direct == three_block_bound(n)
    assert kblock_bound(9, 3).printed != kblock_bound(9, 3).direct
    for k in range(3, 30):
        for n in range(k, 60):
            assert kblock_bound(n, k).direct < g(n)


def test_other_constants():
    assert {c.label: c.exact for c in other_constants()} == {"1123": Fraction(3, 8), "1233": Fraction(3, 8),
                                                             "1122": Fraction(3, 8)}


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 20), st.fractions(max_denominator=50))
def test_surd_comparison_exact(p, q, r, x):
    s = QuadSurd(p, q, r)
    exact = surd_le(s, x)
    approx = float(s) - float(x)
    if abs(approx) > 1e-9:
        assert exact == (approx <= 0)
    assert at_least(x, s) == exact


def test_surd_display():
    assert str(QuadSurd(-3, 2, 1)) == "2√3-3"
    assert str(QuadSurd(-3, 2, 2)) == "(2√3-3)/2"
    assert str(QuadSurd(0, 1, 1)) == "√3"
