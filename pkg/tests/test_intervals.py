"""Interval arithmetic, dominance, and linear independence.

The expected values below were worked out by hand (and, for the
independence witnesses, against a brute-force grid search over coefficient
space) before the implementation existed; they are frozen here.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ivopt import (
    Interval, IntervalVector, ZERO, ONE,
    add, moore_sub, mul, scalar_mul, div, neg,
    gh_difference, norm, distance, contains_zero, zero_containment_residual,
    dominates, strictly_dominates, better_strictly_dominates, compare,
    max_comparable, not_strictly_comparable, interval_eq,
    DominanceKind, DivisionByIntervalContainingZero, NotComparableError,
    linearly_independent,
)

finite = st.floats(min_value=-1e6, max_value=1e6,
                   allow_nan=False, allow_infinity=False)


@st.composite
def ivs(draw):
    a, b = draw(finite), draw(finite)
    return Interval(min(a, b), max(a, b))


# ---------------------------------------------------------------------------
# frozen arithmetic values
# ---------------------------------------------------------------------------

def test_add_endpointwise():
    assert add(Interval(1, 2), Interval(3, 5)) == Interval(4, 7)


def test_moore_difference_value():
    r = moore_sub(Interval(2, 6), Interval(4, 12))
    assert r.lo == -10.0 and r.hi == 2.0


def test_gh_difference_value():
    assert gh_difference(Interval(2, 6), Interval(4, 12)) == Interval(-6, -2)
    assert gh_difference(Interval(4, 12), Interval(2, 6)) == Interval(2, 6)


def test_mul_four_products():
    assert mul(Interval(-1, 2), Interval(3, 4)) == Interval(-4, 8)
    assert mul(Interval(-2, -1), Interval(-3, 5)) == Interval(-10, 6)


def test_scalar_mul_sign_flip():
    assert scalar_mul(-2.0, Interval(1, 3)) == Interval(-6, -2)
    assert scalar_mul(0.0, Interval(-5, 9)) == ZERO


def test_div_value_and_zero_guard():
    assert div(Interval(1, 2), Interval(-4, -2)) == Interval(-1.0, -0.25)
    with pytest.raises(DivisionByIntervalContainingZero):
        div(Interval(1, 2), Interval(-1, 1))


def test_norm_and_distance():
    assert norm(Interval(-3, 2)) == 3.0
    assert distance(Interval(1, 2), Interval(3, 5)) == 3.0
    assert distance(Interval(0, 0), Interval(-1, 4)) == 4.0


def test_zero_containment_residual():
    assert zero_containment_residual(Interval(1, 3)) == 1.0
    assert zero_containment_residual(Interval(-3, -1)) == 1.0
    assert zero_containment_residual(Interval(-1, 2)) == 0.0
    assert contains_zero(Interval(-1, 2))
    assert not contains_zero(Interval(1, 3))


# ---------------------------------------------------------------------------
# dominance verdicts
# ---------------------------------------------------------------------------

def test_compare_kinds():
    assert compare(Interval(1, 2), Interval(1, 2)).kind is DominanceKind.EQUAL
    assert compare(Interval(1, 2), Interval(1, 3)).kind is DominanceKind.STRICTLY_DOMINATES
    assert compare(Interval(1, 2), Interval(2, 3)).kind is DominanceKind.BETTER_STRICTLY_DOMINATES
    assert compare(Interval(1, 4), Interval(2, 3)).kind is DominanceKind.NOT_COMPARABLE
    # the verdict reports the strongest claim of a over b; b-over-a lives in
    # the flags
    v = compare(Interval(5, 6), Interval(1, 2))
    assert v.kind is DominanceKind.NOT_COMPARABLE or not v.a_dominates_b
    assert v.b_dominates_a


def test_max_comparable_returns_dominated():
    assert max_comparable(Interval(1, 2), Interval(1, 3)) == Interval(1, 3)
    assert max_comparable(Interval(1, 3), Interval(1, 2)) == Interval(1, 3)
    with pytest.raises(NotComparableError):
        max_comparable(Interval(1, 4), Interval(2, 3))


def test_not_strictly_comparable_nested():
    assert not_strictly_comparable(Interval(1, 4), Interval(2, 3))
    assert not not_strictly_comparable(Interval(1, 2), Interval(3, 4))


# ---------------------------------------------------------------------------
# property tests
# ---------------------------------------------------------------------------

@given(ivs())
def test_gh_self_difference_is_exact_zero(a):
    r = gh_difference(a, a)
    assert r.lo == 0.0 and r.hi == 0.0


@given(ivs(), ivs(), finite)
def test_closure_lo_le_hi(a, b, c):
    for r in (add(a, b), moore_sub(a, b), mul(a, b), gh_difference(a, b),
              scalar_mul(c, a), neg(a)):
        assert r.lo <= r.hi


@given(ivs(), ivs())
def test_gh_recovers_summand(a, b):
    r = gh_difference(add(a, b), b)
    slack = 1e-8 * (1.0 + norm(a) + norm(b))
    assert abs(r.lo - a.lo) <= slack and abs(r.hi - a.hi) <= slack


@given(ivs(), ivs())
def test_gh_inside_moore(a, b):
    g, m = gh_difference(a, b), moore_sub(a, b)
    assert m.lo <= g.lo and g.hi <= m.hi


@given(ivs(), finite)
def test_norm_absolute_homogeneity(a, c):
    assert norm(scalar_mul(c, a)) == pytest.approx(abs(c) * norm(a), rel=1e-12, abs=0.0)


@given(ivs(), ivs())
def test_norm_triangle(a, b):
    assert norm(add(a, b)) <= norm(a) + norm(b) + 1e-9


@given(ivs(), ivs())
def test_distance_metric_axioms(a, b):
    assert distance(a, a) == 0.0
    assert distance(a, b) == distance(b, a)
    assert distance(a, b) >= 0.0


@given(ivs(), ivs(), ivs())
def test_distance_triangle(a, b, c):
    assert distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9


@given(ivs(), ivs())
def test_dominance_order_implications(a, b):
    # the one-sided claims telescope: better-strict => strict => wide
    if better_strictly_dominates(a, b, 0.0):
        assert strictly_dominates(a, b, 0.0)
    if strictly_dominates(a, b, 0.0):
        assert dominates(a, b, 0.0)


@given(ivs(), ivs(), ivs())
def test_dominance_transitive(a, b, c):
    if dominates(a, b, 0.0) and dominates(b, c, 0.0):
        assert dominates(a, c, 1e-12)


@given(ivs(), ivs())
def test_nonnegative_upper_transfers_through_dominance(a, b):
    # b not below zero and b below a forces a not below zero
    if b.hi >= 0.0 and dominates(b, a, 0.0):
        assert a.hi >= 0.0


@given(ivs(), ivs())
def test_sum_keeps_sign_witness(a, b):
    # if a+b reaches zero from above while b sits at or below zero, the
    # positive part must have come from a
    if add(a, b).hi >= 0.0 and dominates(b, ZERO, 0.0):
        assert a.hi >= 0.0


@given(ivs(), ivs())
def test_mul_contains_point_products(a, b):
    p = mul(a, b)
    slack = 1e-9 * (1.0 + norm(a)) * (1.0 + norm(b))
    for x in (a.lo, a.hi, 0.5 * (a.lo + a.hi)):
        for y in (b.lo, b.hi, 0.5 * (b.lo + b.hi)):
            assert p.lo - slack <= x * y <= p.hi + slack


@given(ivs(), finite)
def test_scalar_mul_matches_degenerate_mul(a, c):
    assert mul(Interval(c, c), a) == scalar_mul(c, a)


# ---------------------------------------------------------------------------
# interval linear independence
# ---------------------------------------------------------------------------

def _combination(coeffs, intervals):
    total = ZERO
    for c, iv in zip(coeffs, intervals):
        total = add(total, scalar_mul(float(c), iv))
    return total


def test_independent_single_positive_interval():
    r = linearly_independent([Interval(1, 2)])
    assert r.independent and r.witness is None


def test_zero_interval_is_dependent():
    r = linearly_independent([Interval(0, 0)])
    assert not r.independent


def test_dependent_pair_witness_values():
    ivs_ = [Interval(1, 2), Interval(3, 4)]
    r = linearly_independent(ivs_)
    assert not r.independent
    assert r.margin == pytest.approx(0.5, abs=1e-9)
    c = np.asarray(r.witness)
    assert np.max(np.abs(c)) == pytest.approx(1.0, abs=1e-12)
    assert c[1] / c[0] == pytest.approx(-3.0 / 7.0, abs=1e-9)
    assert contains_zero(_combination(c, ivs_))


def test_dependent_opposed_pair():
    ivs_ = [Interval(1, 2), Interval(-2, -1)]
    r = linearly_independent(ivs_)
    assert not r.independent
    assert tuple(np.round(r.witness, 9)) == (1.0, 1.0)
    assert contains_zero(_combination(r.witness, ivs_))


@settings(max_examples=25, deadline=None)
@given(ivs(), ivs())
def test_dependence_witness_always_checks_out(a, b):
    r = linearly_independent([a, b])
    if not r.independent and r.witness is not None:
        comb = _combination(r.witness, [a, b])
        scale = 1.0 + norm(a) + norm(b)
        assert zero_containment_residual(comb) <= 1e-6 * scale
