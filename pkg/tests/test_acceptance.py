"""End-to-end acceptance battery.

One test per shipped claim, each tagged with the ``criterion`` marker so the
terminal summary prints a single pass/fail line per criterion.  Tolerances
and runtime budgets are part of the claims and are asserted here, not in the
unit suites.
"""

import json
import subprocess
import time

import numpy as np
import pytest

import cvxpy as cp

from ivopt import (
    Config, Interval, IntervalVector, ZERO, ONE,
    add, moore_sub, mul, scalar_mul, div, neg, gh_difference,
    norm, distance, contains_zero, zero_containment_residual,
    dominates, strictly_dominates, better_strictly_dominates,
    DivisionByIntervalContainingZero,
    IVF, Box, Existence, DiffVerdict, LinearityVerdict, ContinuityVerdict,
    ConvexityVerdict,
    directional_derivative, gateaux_derivative, hadamard_derivative,
    hadamard_differentiable_at, frechet_check, NotLinearCandidate,
    is_gh_continuous_at, is_convex_on, convexity_inequality,
    chain_rule, PreconditionFailed, max_family_derivative, pointwise_max,
    is_efficient, fritz_john_check, kkt_necessary_check, kkt_sufficient_check,
    sample_directions,
    train, kkt_verify, NotSeparable,
)
from ivopt.svm import SVMDataset
from ivopt.gallery import (
    agreement_suite, get_dataset, get_problem, scaled,
    make_ee1, make_x2_3x2, make_ne1_objective, make_remark_in_objective,
    make_nee1, make_affine, make_step, make_r2, make_ex31_outer,
    ex31_inner, ex31_outer_schedule, r2_parabola_schedule,
)

CFG = Config()
C12 = Interval(1.0, 2.0)


def _hull(a, b):
    return Interval(min(a, b), max(a, b))


@pytest.mark.criterion(1, "gH arithmetic exact on 10,000 random pairs in < 1 s")
def test_criterion_01_arithmetic_bulk():
    rng = np.random.default_rng(0)
    raw = rng.uniform(-100.0, 100.0, size=(10_000, 5))
    start = time.perf_counter()
    violations = 0
    for a1, a2, b1, b2, c in raw:
        a = Interval(min(a1, a2), max(a1, a2))
        b = Interval(min(b1, b2), max(b1, b2))
        z = gh_difference(a, a)
        if z.lo != 0.0 or z.hi != 0.0:
            violations += 1
        results = [add(a, b), moore_sub(a, b), mul(a, b), gh_difference(a, b),
                   scalar_mul(c, a), neg(a)]
        if not contains_zero(b):
            results.append(div(a, b))
        if any(r.lo > r.hi for r in results):
            violations += 1
        # dominance transfers a non-negative upper endpoint
        if b.hi >= 0.0 and dominates(b, a, 0.0) and a.hi < 0.0:
            violations += 1
        if add(a, b).hi >= 0.0 and dominates(b, ZERO, 0.0) and a.hi < 0.0:
            violations += 1
    elapsed = time.perf_counter() - start
    assert violations == 0
    assert elapsed < 1.0, f"bulk arithmetic took {elapsed:.3f} s"


@pytest.mark.criterion(2, "2-d quadratic: 20 Hadamard estimates hit 2(x.v)*[1,2] "
                          "within 1e-6 in < 5 s, linearity certified")
def test_criterion_02_quadratic_reproduction():
    f = make_ee1()
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    for _ in range(20):
        xb = rng.uniform(-1.0, 1.0, 2)
        v = rng.uniform(-1.0, 1.0, 2)
        est = hadamard_derivative(f, xb, v, CFG)
        want = scalar_mul(2.0 * float(xb @ v), C12)
        assert est.exists is Existence.EXISTS
        assert distance(est.value, want) <= 1e-6
    rep = hadamard_differentiable_at(f, (0.25, -0.3), CFG)
    assert rep.verdict is DiffVerdict.YES
    assert rep.linearity is not None
    assert rep.linearity.verdict is LinearityVerdict.LINEAR
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"20 estimates took {elapsed:.3f} s"


@pytest.mark.criterion(3, "joint-limit counterexample: straight-line estimates "
                          "vanish, the curved schedule diverges past 1e6")
def test_criterion_03_joint_limit_counterexample():
    f = make_r2()
    for j in range(16):
        theta = 2.0 * np.pi * j / 16.0
        h = (float(np.cos(theta)), float(np.sin(theta)))
        d_est = directional_derivative(f, (0.0, 0.0), h, CFG)
        g_est = gateaux_derivative(f, (0.0, 0.0), h, CFG)
        assert d_est.exists is Existence.EXISTS
        assert norm(d_est.value) <= 1e-6
        assert norm(g_est.value) <= 1e-6
    est = hadamard_derivative(f, (0.0, 0.0), (0.0, 0.0), CFG,
                              adversarial=[r2_parabola_schedule])
    assert est.exists is Existence.DOES_NOT_EXIST
    diverged = [t for t in est.schedules if t.status is Existence.DOES_NOT_EXIST]
    assert diverged
    assert norm(diverged[0].steps[-1][2]) > 1e6


@pytest.mark.criterion(4, "Hadamard and Frechet verdicts agree on the closed-form "
                          "suite (including both non-examples)")
def test_criterion_04_hadamard_frechet_equivalence():
    suite = agreement_suite()
    assert len(suite) >= 6
    names = " ".join(e.name for e in suite)
    for required in ("ee1", "x2_3x2", "affine", "norm", "r2"):
        assert required in names
    for entry in suite:
        f = entry.make()
        had = hadamard_differentiable_at(f, entry.point, CFG,
                                         adversarial=entry.adversarial)
        try:
            fre = frechet_check(f, entry.point, entry.candidate, CFG,
                                extra_probes=entry.extra_probes).verdict
        except NotLinearCandidate:
            fre = DiffVerdict.NO
        want = DiffVerdict.YES if entry.expect == "yes" else DiffVerdict.NO
        assert had.verdict is want, entry.name
        assert fre is want, entry.name


@pytest.mark.criterion(5, "Hadamard-differentiable points are gH-continuous; "
                          "the step function is not")
def test_criterion_05_continuity():
    for entry in agreement_suite():
        if entry.expect != "yes":
            continue
        rep = is_gh_continuous_at(entry.make(), entry.point, CFG)
        assert rep.verdict is ContinuityVerdict.CONTINUOUS, entry.name
    step = is_gh_continuous_at(make_step(), (0.0,), CFG)
    assert step.verdict is ContinuityVerdict.DISCONTINUOUS


@pytest.mark.criterion(6, "convex gradient inequality holds at 1,000 sampled "
                          "pairs; the non-convex instance shows the converse gap")
def test_criterion_06_convexity_inequality():
    rng = np.random.default_rng(2)
    violations = 0

    # 2-d quadratic: closed-form derivative 2(x.h) * [1,2]
    f = make_ee1()
    for _ in range(200):
        xb = rng.uniform(-2.0, 2.0, 2)
        v = rng.uniform(-2.0, 2.0, 2)
        d = scalar_mul(2.0 * float(xb @ (v - xb)), C12)
        diff = gh_difference(f(v), f(xb))
        if not dominates(d, diff, 1e-9):
            violations += 1

    # 1-d instances with endpoint slopes known in closed form
    one_dim = [
        (make_x2_3x2(), (-2.0, 2.0), lambda t: 2.0 * t, lambda t: 6.0 * t),
        (make_ne1_objective(), (-1.0, 2.0),
         lambda t: 8.0 * t - 4.0, lambda t: 4.0 * t),
        (make_remark_in_objective(), (1.0, 6.0),
         lambda t: 2.0 * t - 4.0, lambda t: 2.0 * t),
        (make_affine(), (-2.5, 5.0), lambda t: 2.0, lambda t: 3.0),
    ]
    for g, (lo, hi), ls, us in one_dim:
        for _ in range(200):
            xb = float(rng.uniform(lo, hi))
            v = float(rng.uniform(lo, hi))
            h = v - xb
            d = _hull(ls(xb) * h, us(xb) * h)
            diff = gh_difference(g((v,)), g((xb,)))
            if not dominates(d, diff, 1e-9):
                violations += 1
    assert violations == 0

    # estimator spot checks on twenty of the same pairs
    g = make_x2_3x2()
    for _ in range(10):
        xb, v = rng.uniform(-2.0, 2.0, 2)
        est = directional_derivative(g, (xb,), (v - xb,), CFG)
        out = convexity_inequality(g, (xb,), (v,), est.value, CFG)
        assert out["strong"] and out["weak"]
    g = make_ne1_objective()
    for _ in range(10):
        xb, v = rng.uniform(-1.0, 2.0, 2)
        est = directional_derivative(g, (xb,), (v - xb,), CFG)
        out = convexity_inequality(g, (xb,), (v,), est.value, CFG)
        assert out["strong"] and out["weak"]

    # converse failure: the no-strict-improvement form survives everywhere at
    # the base point, yet the function is not convex
    nee = make_nee1()
    for _ in range(100):
        v = float(rng.uniform(-2.0, 2.0))
        diff = gh_difference(nee((v,)), nee((0.0,)))
        assert not strictly_dominates(diff, ZERO, CFG.cmp_tol)
    assert is_convex_on(nee, Box.from_bounds([(-1.0, 1.0)]),
                        CFG).verdict is ConvexityVerdict.NOT_CONVEX


@pytest.mark.criterion(7, "derivative monotonicity counterexample: Moore "
                          "difference equals [-10, 2] exactly")
def test_criterion_07_monotonicity_counterexample():
    d1, d2 = Interval(2.0, 6.0), Interval(4.0, 12.0)
    gap = moore_sub(d1, d2)
    assert gap.lo == -10.0 and gap.hi == 2.0
    assert not dominates(gap, ZERO, 0.0)

    f = make_x2_3x2()
    e1 = directional_derivative(f, (1.0,), (1.0,), CFG)
    e2 = directional_derivative(f, (2.0,), (1.0,), CFG)
    assert distance(e1.value, d1) <= 1e-6
    assert distance(e2.value, d2) <= 1e-6
    assert distance(moore_sub(e1.value, e2.value), gap) <= 2e-6


@pytest.mark.criterion(8, "chain rule matches the direct estimate; the smooth-"
                          "inner counterexample fails its precondition")
def test_criterion_08_chain_rule():
    f = make_ee1()
    m = np.array([[1.0, 0.5], [-0.25, 1.0]])
    inner = lambda t: m @ np.asarray(t, float)
    xb, v = np.array([0.3, -0.2]), np.array([1.0, 0.5])
    rep = chain_rule(f, inner, xb, v, CFG)
    want = scalar_mul(2.0 * float((m @ xb) @ (m @ v)), C12)
    assert rep.verdict is DiffVerdict.YES
    assert distance(rep.chain_value, want) <= 1e-6

    outer = make_ex31_outer()
    with pytest.raises(PreconditionFailed):
        chain_rule(outer, ex31_inner, (0.0,), (1.0,), CFG,
                   inner_adversarial=[ex31_outer_schedule])
    composed = IVF(lambda t: outer.lower(ex31_inner(t)),
                   lambda t: outer.upper(ex31_inner(t)), 1, None, "outer.inner")
    direct = hadamard_derivative(composed, (0.0,), (1.0,), CFG)
    assert direct.exists is Existence.DOES_NOT_EXIST


@pytest.mark.criterion(9, "max-family derivative equals the direct estimate on "
                          "the three-member family at the crossing")
def test_criterion_09_max_family():
    members = [scaled(lambda x: x[0] ** 2, C12, 1, "g1"),
               scaled(lambda x: 2.0 * x[0] ** 2 + 2.0 * x[0] - 3.0, C12, 1, "g2"),
               scaled(lambda x: x[0] ** 2 - 1.0, C12, 1, "g3")]
    rep = max_family_derivative(members, (1.0,), (1.0,), CFG)
    assert sorted(rep.active) == [0, 1]
    assert distance(rep.value, Interval(6.0, 12.0)) <= 1e-6
    assert rep.verdict is DiffVerdict.YES
    assert rep.mismatch <= 1e-6
    rep2 = max_family_derivative(members, (1.0,), (-1.0,), CFG)
    assert distance(rep2.value, Interval(-4.0, -2.0)) <= 1e-6
    assert rep2.mismatch <= 1e-6


@pytest.mark.criterion(10, "efficiency certified on the 401-point grid; the "
                           "sufficient check fails exactly as claimed")
def test_criterion_10_efficiency_conditions():
    assert CFG.grid_resolution == 401
    ne1 = get_problem("ne1")
    rin = get_problem("remark_in")

    for prob in (ne1, rin):
        rep = is_efficient(prob, (0.0,), CFG)
        assert rep.efficient
        assert rep.checked >= 401
        # no direction offers a better-strict descent at the certified point
        for d in sample_directions(1, CFG):
            est = hadamard_derivative(prob.objective, (0.0,), d, CFG)
            assert est.exists is Existence.EXISTS
            assert not better_strictly_dominates(est.value, ZERO, CFG.cmp_tol)

    suf1 = kkt_sufficient_check(ne1, (0.0,), CFG, cross_check=False)
    assert not suf1.holds and "strictly below zero" in suf1.reason
    suf2 = kkt_sufficient_check(rin, (0.0,), CFG, cross_check=False)
    assert not suf2.holds and "convexity" in suf2.reason

    # unconstrained zero containment at the quadratic minimum
    f = make_x2_3x2()
    for d in ((1.0,), (-1.0,), (0.5,)):
        est = hadamard_derivative(f, (0.0,), d, CFG)
        assert zero_containment_residual(est.value) <= 1e-6


@pytest.mark.criterion(11, "Fritz John / KKT certificates with residuals below "
                           "1e-8 on four instances; none at the bad point")
def test_criterion_11_certificates():
    instances = [("fj_box_active", (0.0,)), ("fj_inactive", (0.0,)),
                 ("fj_linear", (0.0,)), ("kkt_2d", (0.5, 0.5))]
    cross_cfg = CFG.replace(grid_resolution=81, random_points=64)
    for name, point in instances:
        prob = get_problem(name)
        fj = fritz_john_check(prob, point, CFG)
        assert fj.found, (name, fj.reason)
        assert fj.max_residual <= 1e-8, name
        kn = kkt_necessary_check(prob, point, CFG)
        assert kn.found, (name, kn.reason)
        assert kn.max_residual <= 1e-8, name
        ks = kkt_sufficient_check(prob, point, cross_cfg, cross_check=True)
        assert ks.holds, (name, ks.reason)
        assert ks.efficiency_cross_check is not None
        assert ks.efficiency_cross_check.efficient, name

    bad = fritz_john_check(get_problem("fj_no_certificate"), (0.0,), CFG)
    assert not bad.found


@pytest.mark.criterion(12, "SVM matches the corner-QP oracle, the interval KKT "
                           "containment holds, margins shrink with widening, "
                           "overlap raises; all in < 10 s")
def test_criterion_12_svm():
    start = time.perf_counter()

    # degenerate boxes reduce to the classical problem; compare with an
    # independent convex solve
    ds = get_dataset("svm_degenerate")
    sol = train(ds, CFG)
    d = len(ds.samples[0])
    w = cp.Variable(d)
    b = cp.Variable()
    cons = [y * (np.asarray(c) @ w + b) >= 1
            for x, y in zip(ds.samples, ds.labels) for c in x.corners()]
    cp.Problem(cp.Minimize(0.5 * cp.sum_squares(w)), cons).solve()
    assert np.allclose(sol.w, np.asarray(w.value).reshape(-1), atol=1e-6)
    assert abs(sol.b - float(b.value)) <= 1e-6

    # two interval points: unit slope, zero bias, zero in the stationarity set
    ds1 = get_dataset("svm_interval_1d")
    sol1 = train(ds1, CFG)
    assert sol1.w == pytest.approx((1.0,), abs=1e-9)
    assert sol1.b == pytest.approx(0.0, abs=1e-9)
    ver = kkt_verify(sol1, ds1, CFG)
    assert ver["passes"]
    st = ver["stationarity"][0]["interval"]
    assert st == Interval(-1.0, 0.0)
    assert contains_zero(st)

    # widening monotonicity over five nested datasets
    margins = []
    for delta in (0.0, 0.2, 0.4, 0.6, 0.8):
        nested = SVMDataset(
            (IntervalVector([Interval(1 - delta, 1 + delta)]),
             IntervalVector([Interval(-1 - delta, -1 + delta)])),
            (1, -1))
        margins.append(train(nested, CFG).margin_width)
    assert all(m1 >= m2 - 1e-12 for m1, m2 in zip(margins, margins[1:]))

    overlap = SVMDataset(
        (IntervalVector([Interval(-1.0, 1.0)]),
         IntervalVector([Interval(0.0, 2.0)])),
        (1, -1))
    with pytest.raises(NotSeparable):
        train(overlap, CFG)

    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"SVM battery took {elapsed:.3f} s"


@pytest.mark.criterion(13, "two seeded gallery runs emit byte-identical JSON")
def test_criterion_13_determinism():
    cmd = ["ivopt", "--seed", "0", "--format", "json", "gallery"]
    first = subprocess.run(cmd, capture_output=True, timeout=300)
    second = subprocess.run(cmd, capture_output=True, timeout=300)
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout
    report = json.loads(first.stdout)
    assert report["all_pass"] is True
    assert report["passed"] == len(report["cases"])
