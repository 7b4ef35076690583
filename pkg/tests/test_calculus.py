"""Derivative estimation, linearity, continuity, convexity, chain/max rules.

Closed-form targets were derived by hand from the endpoint functions and
cross-checked with an independent finite-difference script before being
frozen here.  Tolerances follow the estimator's convergence tolerance
(1e-6) except where the value is exact.
"""

import numpy as np
import pytest

from ivopt import (
    Config, Interval, IntervalVector, ZERO, scalar_mul, distance, norm,
    IVF, Box, DomainError, InvalidIVF,
    Existence, DiffVerdict, LinearityVerdict, ContinuityVerdict, ConvexityVerdict,
    directional_derivative, gateaux_derivative, hadamard_derivative,
    estimate_derivative, DerivativeQuery, DerivativeKind,
    hadamard_differentiable_at, gateaux_differentiable_at,
    frechet_check, NotLinearCandidate,
    is_linear_ivf, sample_linear_map, AdversarialSchedule,
    is_gh_continuous_at, is_convex_on, convexity_inequality,
    chain_rule, PreconditionFailed, path_derivative_check,
    pointwise_max, max_family_derivative, NotComparableFamily,
)
from ivopt.calculus import rng_for
from ivopt.gallery import (
    make_ee1, make_x2_3x2, make_nee1, make_ne1_objective,
    make_remark_in_objective, make_norm_counterexample, make_r2, make_affine,
    make_step, make_quad2d, scaled,
    r2_parabola_schedule, r2_parabola_probes,
    make_ex31_outer, ex31_inner, ex31_outer_schedule,
    _slope_hull,
)

C12 = Interval(1.0, 2.0)
TOL = 1e-6


@pytest.fixture(scope="module")
def cfg():
    return Config()


# ---------------------------------------------------------------------------
# IVF plumbing
# ---------------------------------------------------------------------------

def test_from_polynomials_eval():
    f = IVF.from_polynomials([0.0, 0.0, 1.0], [0.0, 0.0, 3.0])
    assert f((2.0,)) == Interval(4.0, 12.0)
    assert f((-1.0,)) == Interval(1.0, 3.0)


def test_domain_violation_raises():
    f = IVF.from_polynomials([0.0, 1.0], [1.0, 1.0],
                             domain=Box.from_bounds([(-1.0, 1.0)]))
    f((0.5,))
    with pytest.raises(DomainError):
        f((2.0,))


def test_crossed_endpoints_raise():
    f = IVF(lambda x: 1.0, lambda x: -1.0, 1, None, "crossed")
    with pytest.raises(InvalidIVF):
        f((0.0,))


def test_rng_for_is_deterministic():
    cfg = Config()
    a = rng_for(cfg, "probe").standard_normal(4)
    b = rng_for(cfg, "probe").standard_normal(4)
    c = rng_for(cfg, "other").standard_normal(4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_box_contains_and_grid():
    box = Box.from_bounds([(-1.0, 2.0)])
    assert box.contains((0.0,)) and not box.contains((3.0,))
    g = box.grid(5)
    assert len(g) == 5 and g[0][0] == -1.0 and g[-1][0] == 2.0


# ---------------------------------------------------------------------------
# directional / Gateaux estimates against closed forms
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("point,direction,want", [
    ((1.0,), (1.0,), Interval(2.0, 6.0)),
    ((1.0,), (-1.0,), Interval(-6.0, -2.0)),
    ((0.0,), (1.0,), ZERO),
    ((-2.0,), (1.0,), Interval(-12.0, -4.0)),
])
def test_x2_3x2_directional(cfg, point, direction, want):
    f = make_x2_3x2()
    est = directional_derivative(f, point, direction, cfg)
    assert est.exists is Existence.EXISTS
    assert distance(est.value, want) <= TOL


@pytest.mark.parametrize("point,direction,want", [
    ((0.0,), (1.0,), Interval(-4.0, 0.0)),
    ((0.0,), (-1.0,), Interval(0.0, 4.0)),
    ((1.0,), (1.0,), Interval(4.0, 4.0)),
])
def test_ne1_directional(cfg, point, direction, want):
    f = make_ne1_objective()
    est = directional_derivative(f, point, direction, cfg)
    assert est.exists is Existence.EXISTS
    assert distance(est.value, want) <= TOL


@pytest.mark.parametrize("point,direction,want", [
    ((0.0,), (1.0,), Interval(-4.0, 0.0)),
    ((3.0,), (1.0,), Interval(2.0, 6.0)),
    ((3.0,), (-2.0,), Interval(-12.0, -4.0)),
])
def test_remark_in_directional(cfg, point, direction, want):
    f = make_remark_in_objective()
    est = directional_derivative(f, point, direction, cfg)
    assert est.exists is Existence.EXISTS
    assert distance(est.value, want) <= TOL


def test_gateaux_matches_directional(cfg):
    f = make_x2_3x2()
    a = directional_derivative(f, (1.0,), (1.0,), cfg)
    b = gateaux_derivative(f, (1.0,), (1.0,), cfg)
    assert distance(a.value, b.value) <= 1e-12


def test_estimate_derivative_dispatch(cfg):
    f = make_x2_3x2()
    q = DerivativeQuery(DerivativeKind.HADAMARD, (1.0,), (1.0,))
    est = estimate_derivative(f, q, cfg)
    assert est.exists is Existence.EXISTS
    assert distance(est.value, Interval(2.0, 6.0)) <= TOL


def test_ee1_hadamard_closed_form(cfg):
    f = make_ee1()
    for xb, v in [((0.25, -0.3), (1.0, 0.5)),
                  ((1.0, 1.0), (-0.5, 2.0)),
                  ((-0.7, 0.4), (0.3, -0.9))]:
        est = hadamard_derivative(f, xb, v, cfg)
        want = scalar_mul(2.0 * float(np.dot(xb, v)), C12)
        assert est.exists is Existence.EXISTS
        assert distance(est.value, want) <= TOL


def test_infeasible_probe_refines_schedule(cfg):
    f = IVF.from_polynomials([0.0, 1.0], [1.0, 1.0],
                             domain=Box.from_bounds([(-1.0, 1.0)]))
    # from 0.999 a step of 0.1 leaves the box; the schedule shrinks once and
    # still converges
    est = directional_derivative(f, (0.999,), (1.0,), cfg)
    assert est.exists is Existence.EXISTS
    assert distance(est.value, Interval(1.0, 1.0)) <= TOL
    with pytest.raises(DomainError):
        directional_derivative(f, (2.0,), (1.0,), cfg)


# ---------------------------------------------------------------------------
# adversarial joint-limit schedules
# ---------------------------------------------------------------------------

def test_r2_tangent_limit_is_zero(cfg):
    f = make_r2()
    est = hadamard_derivative(f, (0.0, 0.0), (0.0, 0.0), cfg)
    assert est.exists is Existence.EXISTS
    assert norm(est.value) <= TOL


def test_r2_parabola_schedule_diverges(cfg):
    f = make_r2()
    est = hadamard_derivative(f, (0.0, 0.0), (0.0, 0.0), cfg,
                              adversarial=[r2_parabola_schedule])
    assert est.exists is Existence.DOES_NOT_EXIST
    diverged = [t for t in est.schedules if t.status is Existence.DOES_NOT_EXIST]
    assert diverged, "the parabola schedule should trip the norm cap"
    last_quotient = diverged[0].steps[-1][2]
    assert norm(last_quotient) > 1e6


def test_ex31_outer_schedule_diverges(cfg):
    outer = make_ex31_outer()
    est = hadamard_derivative(outer, (0.0, 0.0), (1.0, 0.0), cfg,
                              adversarial=[ex31_outer_schedule])
    assert est.exists is Existence.DOES_NOT_EXIST


# ---------------------------------------------------------------------------
# linearity of interval maps
# ---------------------------------------------------------------------------

def test_slope_hull_map_is_linear(cfg):
    sample = sample_linear_map(_slope_hull(2.0, 6.0), 1, cfg)
    rep = is_linear_ivf(sample, cfg)
    assert rep.verdict is LinearityVerdict.LINEAR


def test_norm_scaled_map_is_not_linear(cfg):
    cand = lambda v: scalar_mul(float(np.linalg.norm(v)), C12)
    rep = is_linear_ivf(sample_linear_map(cand, 2, cfg), cfg)
    assert rep.verdict is LinearityVerdict.NOT_LINEAR
    assert rep.homogeneity_failures


# ---------------------------------------------------------------------------
# differentiability verdicts and the Frechet cross-check
# ---------------------------------------------------------------------------

def test_hadamard_differentiable_quadratic(cfg):
    rep = hadamard_differentiable_at(make_x2_3x2(), (1.0,), cfg)
    assert rep.verdict is DiffVerdict.YES
    assert rep.linearity is not None


def test_norm_counterexample_not_differentiable(cfg):
    rep = hadamard_differentiable_at(make_norm_counterexample(), (0.0, 0.0), cfg)
    assert rep.verdict is DiffVerdict.NO


def test_gateaux_exists_where_hadamard_fails(cfg):
    # each straight line through the corner has a one-sided slope, so the
    # Gateaux scan succeeds even though the joint limit cannot be linear
    rep = gateaux_differentiable_at(make_norm_counterexample(), (0.0, 0.0), cfg)
    assert rep.verdict is not DiffVerdict.YES or rep.linearity is None \
        or rep.linearity.verdict is not LinearityVerdict.LINEAR


def test_frechet_yes_on_true_candidate(cfg):
    rep = frechet_check(make_x2_3x2(), (1.0,), _slope_hull(2.0, 6.0), cfg)
    assert rep.verdict is DiffVerdict.YES
    assert min(rep.residual_trace) <= TOL


def test_frechet_no_on_wrong_candidate(cfg):
    rep = frechet_check(make_x2_3x2(), (1.0,), _slope_hull(3.0, 7.0), cfg)
    assert rep.verdict is DiffVerdict.NO


def test_frechet_rejects_nonlinear_candidate(cfg):
    cand = lambda v: scalar_mul(float(np.linalg.norm(v)), C12)
    with pytest.raises(NotLinearCandidate):
        frechet_check(make_norm_counterexample(), (0.0, 0.0), cand, cfg)


def test_frechet_no_with_adversarial_probes(cfg):
    rep = frechet_check(make_r2(), (0.0, 0.0), lambda v: ZERO, cfg,
                        extra_probes=r2_parabola_probes)
    assert rep.verdict is DiffVerdict.NO


# ---------------------------------------------------------------------------
# continuity and convexity
# ---------------------------------------------------------------------------

def test_continuity_of_affine(cfg):
    rep = is_gh_continuous_at(make_affine(), (1.0,), cfg)
    assert rep.verdict is ContinuityVerdict.CONTINUOUS
    assert rep.moduli[-1] <= TOL


def test_step_is_discontinuous(cfg):
    rep = is_gh_continuous_at(make_step(), (0.0,), cfg)
    assert rep.verdict is ContinuityVerdict.DISCONTINUOUS


def test_quadratic_family_convex(cfg):
    rep = is_convex_on(make_x2_3x2(), Box.from_bounds([(-2.0, 2.0)]), cfg)
    assert rep.verdict is ConvexityVerdict.CONVEX


def test_nee1_not_convex_with_witness(cfg):
    rep = is_convex_on(make_nee1(), Box.from_bounds([(-1.0, 1.0)]), cfg)
    assert rep.verdict is ConvexityVerdict.NOT_CONVEX
    assert rep.witness is not None


def test_convexity_inequality_flags(cfg):
    f = make_x2_3x2()
    deriv = Interval(2.0, 6.0)  # slope hull at 1 applied to v - x = 1
    out = convexity_inequality(f, (1.0,), (2.0,), deriv, cfg)
    assert out["strong"] and out["weak"]
    # at the non-convex instance's base point the strong (gradient) form
    # fails while the no-strict-improvement form survives
    g = make_nee1()
    out2 = convexity_inequality(g, (0.0,), (1.0,), ZERO, cfg)
    assert out2["weak"] and not out2["strong"]


# ---------------------------------------------------------------------------
# chain rule and pointwise max family
# ---------------------------------------------------------------------------

def test_chain_rule_linear_inner(cfg):
    f = make_ee1()
    m = np.array([[1.0, 0.5], [-0.25, 1.0]])
    inner = lambda t: m @ np.asarray(t, float)
    xb, v = np.array([0.3, -0.2]), np.array([1.0, 0.5])
    rep = chain_rule(f, inner, xb, v, cfg)
    want = scalar_mul(2.0 * float((m @ xb) @ (m @ v)), C12)
    assert rep.verdict is DiffVerdict.YES
    assert distance(rep.chain_value, want) <= TOL
    assert rep.mismatch <= TOL


def test_chain_rule_smooth_inner_failure(cfg):
    outer = make_ex31_outer()
    with pytest.raises(PreconditionFailed):
        chain_rule(outer, ex31_inner, (0.0,), (1.0,), cfg,
                   inner_adversarial=[ex31_outer_schedule])


def test_path_derivative_consistency(cfg):
    f = make_x2_3x2()
    path = lambda lam: np.asarray([1.0 + lam], float)
    rep = path_derivative_check(f, path, cfg)
    assert rep is not None


def test_pointwise_max_and_family_rule(cfg):
    members = [scaled(lambda x: x[0] ** 2, C12, 1, "g1"),
               scaled(lambda x: 2.0 * x[0] ** 2 + 2.0 * x[0] - 3.0, C12, 1, "g2"),
               scaled(lambda x: x[0] ** 2 - 1.0, C12, 1, "g3")]
    top = pointwise_max(members)
    assert top((1.0,)) == Interval(1.0, 2.0)
    assert top((-2.0,)) == Interval(4.0, 8.0)

    rep = max_family_derivative(members, (1.0,), (1.0,), cfg)
    assert sorted(rep.active) == [0, 1]
    assert distance(rep.value, Interval(6.0, 12.0)) <= 1e-5
    assert rep.mismatch <= 1e-5

    rep2 = max_family_derivative(members, (1.0,), (-1.0,), cfg)
    assert distance(rep2.value, Interval(-4.0, -2.0)) <= 1e-5

    rep3 = max_family_derivative(members, (-2.0,), (1.0,), cfg)
    assert list(rep3.active) == [0]
    assert distance(rep3.value, Interval(-8.0, -4.0)) <= 1e-5


def test_incomparable_family_raises(cfg):
    members = [scaled(lambda x: x[0] ** 2, C12, 1, "small"),
               IVF.from_polynomials([-10], [100])]
    with pytest.raises(NotComparableFamily):
        pointwise_max(members)((0.5,))
