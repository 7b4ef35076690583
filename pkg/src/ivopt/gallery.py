"""Worked examples and counterexamples, runnable as self-checking cases.

Each case packages a function (or problem, or dataset), the closed-form or
hand-derived values it should produce, and a runner that re-checks those
values with the estimators in this package.  The case ids are stable strings
used by the CLI (``ivopt gallery --filter ID``) and by the test suite.

Conventions: ``scaled(g, C)`` is the interval-valued function x -> g(x)*C
(endpoints swap where g changes sign), and quadratic examples carry their
derivative closed forms as hulls of the endpoint slopes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .calculus import (
    AdversarialSchedule,
    Box,
    DiffVerdict,
    ContinuityVerdict,
    ConvexityVerdict,
    Existence,
    IVF,
    LinearityVerdict,
    chain_rule,
    convexity_inequality,
    directional_derivative,
    frechet_check,
    gateaux_differentiable_at,
    hadamard_derivative,
    hadamard_differentiable_at,
    is_convex_on,
    is_gh_continuous_at,
    max_family_derivative,
    pointwise_max,
    rng_for,
)
from .config import Config
from .exceptions import (
    LinearIndependenceViolated,
    NotLinearCandidate,
    NotSeparable,
    PreconditionFailed,
    UnknownCaseId,
)
from .intervals import (
    Interval,
    ZERO,
    distance,
    dominates,
    gh_difference,
    moore_sub,
    norm,
    scalar_mul,
    strictly_dominates,
)
from .optimality import (
    FeasibleRegion,
    IOPInstance,
    descent_cone_member,
    fritz_john_check,
    is_efficient,
    kkt_necessary_check,
    kkt_sufficient_check,
)
from .svm import SVMDataset, bias_set, classify, kkt_verify, train, worst_margin


# ---------------------------------------------------------------------------
# the functions
# ---------------------------------------------------------------------------

C12 = Interval(1.0, 2.0)
C13 = Interval(1.0, 3.0)


def scaled(g: Callable, c: Interval, dim: int, name: str, domain=None) -> IVF:
    """x -> g(x) * c with endpoint order handled by the scalar product."""
    return IVF(lambda x: scalar_mul(float(g(x)), c).lo,
               lambda x: scalar_mul(float(g(x)), c).hi,
               dim, domain, name)


def make_ee1() -> IVF:
    return scaled(lambda x: float(x @ x), C12, 2, "ee1")


def make_x2_3x2() -> IVF:
    return scaled(lambda x: float(x[0] ** 2), C13, 1, "x2_3x2")


def make_norm_counterexample() -> IVF:
    return scaled(lambda x: float(np.linalg.norm(x)), C12, 2, "norm_counterexample")


def make_nee1() -> IVF:
    return scaled(lambda x: float(x[0] ** 2), Interval(-4.0, 6.0), 1, "nee1")


def make_r2() -> IVF:
    def kernel(x):
        a, b = float(x[0]), float(x[1])
        if a == 0.0 and b == 0.0:
            return 0.0
        return a ** 6 / ((b - a * a) ** 2 + a ** 8)
    return scaled(kernel, Interval(3.0, 9.0), 2, "remark_r2")


def make_ex31_outer() -> IVF:
    def kernel(x):
        a, b = float(x[0]), float(x[1])
        if a == 0.0 and b == 0.0:
            return 0.0
        return a ** 6 / ((b - a * a) ** 2 + a ** 8)
    return scaled(kernel, Interval(2.0, 6.0), 2, "ex31_outer")


def ex31_inner(t) -> np.ndarray:
    t = float(np.asarray(t, float).reshape(-1)[0])
    return np.array([t, t * t])


def make_ne1_objective() -> IVF:
    return IVF(lambda x: (2.0 * x[0] - 1.0) ** 2,
               lambda x: 2.0 * x[0] ** 2 + 75.0,
               1, None, "ne1_objective")


def make_remark_in_objective() -> IVF:
    """Endpoint expressions cross below x = -1/4; the hull keeps them ordered."""
    def lo(x):
        t = float(x[0])
        return min(t * t - 4.0 * t + 4.0, t * t + 5.0)
    def hi(x):
        t = float(x[0])
        return max(t * t - 4.0 * t + 4.0, t * t + 5.0)
    return IVF(lo, hi, 1, Box((-1.0,), (7.0,)), "remark_in_objective")


def make_step() -> IVF:
    g = lambda x: 0.0 if x[0] < 0.0 else 1.0
    return IVF(g, g, 1, None, "step")


def make_affine() -> IVF:
    return IVF(lambda x: 2.0 * x[0] + 1.0, lambda x: 3.0 * x[0] + 4.0,
               1, Box((-2.5,), (5.0,)), "affine")


def make_quad2d() -> IVF:
    c = np.array([0.5, 0.5])
    return scaled(lambda x: float((x - c) @ (x - c)), C12, 2, "quad2d")


FUNCTIONS = {
    "ee1": make_ee1,
    "x2_3x2": make_x2_3x2,
    "norm_counterexample": make_norm_counterexample,
    "nee1": make_nee1,
    "remark_r2": make_r2,
    "ex31_outer": make_ex31_outer,
    "ne1_objective": make_ne1_objective,
    "remark_in_objective": make_remark_in_objective,
    "step": make_step,
    "affine": make_affine,
    "quad2d": make_quad2d,
}


def get_function(name: str) -> IVF:
    if name not in FUNCTIONS:
        raise UnknownCaseId(f"no gallery function named {name!r}"
                            f" (have {', '.join(sorted(FUNCTIONS))})")
    return FUNCTIONS[name]()


# adversarial material for the joint-limit counterexamples
def r2_parabola_schedule(lam: float) -> np.ndarray:
    # lam * h(lam) = (lam^2, lam^4) sits on the curve b = a^2
    return np.array([lam, lam ** 3])


def r2_parabola_probes(r: float):
    return [np.array([r, r * r]), np.array([-r, r * r])]


def ex31_outer_schedule(lam: float) -> np.ndarray:
    # h -> (1, 0) while lam * h = (lam, lam^2) rides the curve
    return np.array([1.0, lam])


# ---------------------------------------------------------------------------
# problems and datasets
# ---------------------------------------------------------------------------

def make_ne1_problem() -> IOPInstance:
    return IOPInstance("ne1", make_ne1_objective(), (),
                       FeasibleRegion.from_box(Box((-1.0,), (2.0,))))


def make_remark_in_problem() -> IOPInstance:
    return IOPInstance("remark_in", make_remark_in_objective(), (),
                       FeasibleRegion.from_box(Box((-1.0,), (7.0,))))


def make_fj_box_active() -> IOPInstance:
    g = IVF(lambda x: -x[0], lambda x: -x[0], 1, None, "minus_x")
    return IOPInstance("fj_box_active", make_x2_3x2(), (g,),
                       FeasibleRegion.from_box(Box((-2.0,), (2.0,))))


def make_fj_inactive() -> IOPInstance:
    g = IVF(lambda x: x[0] - 1.0, lambda x: x[0] - 1.0, 1, None, "x_minus_1")
    return IOPInstance("fj_inactive", make_x2_3x2(), (g,),
                       FeasibleRegion.from_box(Box((-2.0,), (2.0,))))


def make_fj_linear() -> IOPInstance:
    f = IVF(lambda x: x[0], lambda x: x[0], 1, None, "identity")
    g = IVF(lambda x: -x[0], lambda x: -x[0], 1, None, "minus_x")
    return IOPInstance("fj_linear", f, (g,),
                       FeasibleRegion.from_box(Box((-2.0,), (2.0,))))


def make_fj_no_certificate() -> IOPInstance:
    f = IVF(lambda x: x[0], lambda x: x[0], 1, None, "identity")
    return IOPInstance("fj_no_certificate", f, (),
                       FeasibleRegion.from_box(Box((-1.0,), (1.0,))))


def make_kkt_dependent() -> IOPInstance:
    g = IVF(lambda x: -abs(x[0]), lambda x: abs(x[0]), 1, None, "abs_band")
    return IOPInstance("kkt_dependent", scaled(lambda x: x[0] ** 2, C12, 1, "x2_12"),
                       (g,), FeasibleRegion.from_box(Box((-1.0,), (1.0,))))


def make_kkt_2d() -> IOPInstance:
    c = np.array([1.0, 1.0])
    f = scaled(lambda x: float((x - c) @ (x - c)), C12, 2, "dist2_to_11")
    g = IVF(lambda x: x[0] + x[1] - 1.0, lambda x: x[0] + x[1] - 1.0,
            2, None, "sum_minus_1")
    return IOPInstance("kkt_2d", f, (g,),
                       FeasibleRegion.from_box(Box((-1.5, -1.5), (1.5, 1.5))))


PROBLEMS = {
    "ne1": make_ne1_problem,
    "remark_in": make_remark_in_problem,
    "fj_box_active": make_fj_box_active,
    "fj_inactive": make_fj_inactive,
    "fj_linear": make_fj_linear,
    "fj_no_certificate": make_fj_no_certificate,
    "kkt_dependent": make_kkt_dependent,
    "kkt_2d": make_kkt_2d,
}


def get_problem(name: str) -> IOPInstance:
    if name not in PROBLEMS:
        raise UnknownCaseId(f"no gallery problem named {name!r}"
                            f" (have {', '.join(sorted(PROBLEMS))})")
    return PROBLEMS[name]()


def make_svm_degenerate() -> SVMDataset:
    return SVMDataset.from_arrays([[1.0], [-1.0]], [[1.0], [-1.0]], [1, -1])


def make_svm_interval_1d() -> SVMDataset:
    return SVMDataset.from_arrays([[1.0], [-2.0]], [[2.0], [-1.0]], [1, -1])


def make_svm_2d() -> SVMDataset:
    lo = [[1.0, 0.5], [2.5, 2.0], [-2.0, -1.5], [-3.0, -2.5]]
    hi = [[2.0, 1.5], [3.0, 2.5], [-1.0, -0.5], [-2.5, -2.0]]
    return SVMDataset.from_arrays(lo, hi, [1, 1, -1, -1])


def make_svm_inseparable() -> SVMDataset:
    return SVMDataset.from_arrays([[-1.0], [0.0]], [[1.0], [2.0]], [1, -1])


DATASETS = {
    "svm_degenerate": make_svm_degenerate,
    "svm_interval_1d": make_svm_interval_1d,
    "svm_2d": make_svm_2d,
    "svm_inseparable": make_svm_inseparable,
}


def get_dataset(name: str) -> SVMDataset:
    if name not in DATASETS:
        raise UnknownCaseId(f"no gallery dataset named {name!r}"
                            f" (have {', '.join(sorted(DATASETS))})")
    return DATASETS[name]()


# ---------------------------------------------------------------------------
# Frechet/Hadamard agreement suite
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AgreementEntry:
    name: str
    make: Callable
    point: tuple
    candidate: Optional[Callable]    # closed-form derivative map, if one exists
    adversarial: tuple               # AdversarialSchedule list for the Hadamard side
    extra_probes: Optional[Callable] # extra Frechet probes per radius
    expect: str                      # "yes" | "no"


def _slope_hull(l_slope: float, u_slope: float):
    def cand(v):
        s = float(np.asarray(v, float).reshape(-1)[0])
        a, b = l_slope * s, u_slope * s
        return Interval(min(a, b), max(a, b))
    return cand


def agreement_suite() -> list:
    """Points where Hadamard differentiability and the Frechet property were
    decided by hand; estimators must agree with the hand verdicts (and with
    each other) on every entry."""
    xb = np.array([0.25, -0.3])
    ee1_cand = lambda v: scalar_mul(2.0 * float(xb @ np.asarray(v, float)), C12)
    return [
        AgreementEntry("ee1_at_interior", make_ee1, tuple(xb), ee1_cand, (), None, "yes"),
        AgreementEntry("x2_3x2_at_1", make_x2_3x2, (1.0,),
                       lambda v: scalar_mul(2.0 * float(np.asarray(v, float)[0]), C13),
                       (), None, "yes"),
        AgreementEntry("x2_3x2_at_0", make_x2_3x2, (0.0,),
                       lambda v: ZERO, (), None, "yes"),
        AgreementEntry("remark_in_at_3", make_remark_in_objective, (3.0,),
                       _slope_hull(2.0, 6.0), (), None, "yes"),
        AgreementEntry("ne1_at_1", make_ne1_objective, (1.0,),
                       _slope_hull(4.0, 4.0), (), None, "yes"),
        AgreementEntry("nee1_at_1", make_nee1, (1.0,),
                       _slope_hull(-8.0, 12.0), (), None, "yes"),
        AgreementEntry("affine_at_1", make_affine, (1.0,),
                       _slope_hull(2.0, 3.0), (), None, "yes"),
        AgreementEntry("norm_at_0", make_norm_counterexample, (0.0, 0.0),
                       lambda v: scalar_mul(float(np.linalg.norm(v)), C12),
                       (), None, "no"),
        AgreementEntry("r2_at_0", make_r2, (0.0, 0.0),
                       lambda v: ZERO,
                       (AdversarialSchedule((0.0, 0.0), r2_parabola_schedule),),
                       r2_parabola_probes, "no"),
    ]


# ---------------------------------------------------------------------------
# the case registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GalleryCase:
    case_id: str
    description: str
    runner: Callable


_CASES = {}


def case(case_id: str, description: str):
    def deco(fn):
        _CASES[case_id] = GalleryCase(case_id, description, fn)
        return fn
    return deco


def list_case_ids() -> list:
    return sorted(_CASES)


def get_case(case_id: str) -> GalleryCase:
    if case_id not in _CASES:
        raise UnknownCaseId(f"unknown gallery case {case_id!r}"
                            f" (have {', '.join(sorted(_CASES))})")
    return _CASES[case_id]


def _ck(checks: list, name: str, ok: bool, **info) -> bool:
    entry = {"name": name, "ok": bool(ok)}
    entry.update(info)
    checks.append(entry)
    return bool(ok)


def _iv(v: Optional[Interval]):
    return None if v is None else [v.lo, v.hi]


# -- calculus cases ---------------------------------------------------------

@case("ee1", "2-d quadratic ||x||^2*[1,2]: estimates match the closed form 2(x.v)*[1,2]")
def _case_ee1(cfg: Config) -> dict:
    f = make_ee1()
    checks = []
    rng = rng_for(cfg, "gallery:ee1")
    worst = 0.0
    fixed = [((0.4, -0.3), (1.0, 0.5)), ((1.0, 0.0), (0.0, 1.0)), ((-0.7, 1.1), (-2.0, 0.25))]
    drawn = [(tuple(rng.uniform(-1, 1, 2)), tuple(rng.uniform(-1, 1, 2))) for _ in range(3)]
    for xb, v in fixed + drawn:
        est = hadamard_derivative(f, xb, v, cfg)
        want = scalar_mul(2.0 * float(np.dot(xb, v)), C12)
        err = distance(est.value, want) if est.value is not None else float("inf")
        worst = max(worst, err)
        _ck(checks, f"estimate at {xb} dir {v}",
            est.exists is Existence.EXISTS and err <= 1e-6,
            value=_iv(est.value), closed_form=_iv(want), error=err)
    _ck(checks, "differentiable at interior point",
        hadamard_differentiable_at(f, (0.25, -0.3), cfg).verdict is DiffVerdict.YES)
    return {"pass": all(c["ok"] for c in checks), "worst_error": worst, "checks": checks}


@case("remark_r2", "joint-limit counterexample: every fixed direction gives [0,0] "
                   "but a curved schedule diverges")
def _case_r2(cfg: Config) -> dict:
    f = make_r2()
    checks = []
    rng = rng_for(cfg, "gallery:r2")
    worst = 0.0
    for _ in range(16):
        d = rng.normal(size=2)
        d /= np.linalg.norm(d)
        est = directional_derivative(f, (0.0, 0.0), d, cfg)
        err = distance(est.value, ZERO) if est.value is not None else float("inf")
        worst = max(worst, err)
        if err > 1e-6 or est.exists is not Existence.EXISTS:
            _ck(checks, f"direction {tuple(np.round(d, 6))}", False, error=err)
    _ck(checks, "16 fixed directions all converge to [0,0]", worst <= 1e-6,
        worst_error=worst)
    adv = hadamard_derivative(f, (0.0, 0.0), (0.0, 0.0), cfg,
                              adversarial=[r2_parabola_schedule])
    _ck(checks, "parabola schedule breaks the joint limit",
        adv.exists is Existence.DOES_NOT_EXIST)
    rep = hadamard_differentiable_at(
        f, (0.0, 0.0), cfg,
        adversarial=(AdversarialSchedule((0.0, 0.0), r2_parabola_schedule),))
    _ck(checks, "differentiability verdict is no", rep.verdict is DiffVerdict.NO)
    try:
        fre = frechet_check(f, (0.0, 0.0), lambda v: ZERO, cfg,
                            extra_probes=r2_parabola_probes)
        _ck(checks, "Frechet residual diverges on parabola probes",
            fre.verdict is DiffVerdict.NO)
    except NotLinearCandidate:
        _ck(checks, "Frechet residual diverges on parabola probes", False)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("norm_counterexample", "||x||*[1,2] at 0: all directional limits exist but the "
                             "limit map is not linear, so no derivative")
def _case_norm(cfg: Config) -> dict:
    f = make_norm_counterexample()
    checks = []
    for d in [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.6, -0.8)]:
        est = directional_derivative(f, (0.0, 0.0), d, cfg)
        want = scalar_mul(float(np.linalg.norm(d)), C12)
        _ck(checks, f"directional limit along {d}",
            est.exists is Existence.EXISTS and distance(est.value, want) <= 1e-6,
            value=_iv(est.value), closed_form=_iv(want))
    gat = gateaux_differentiable_at(f, (0.0, 0.0), cfg)
    _ck(checks, "limit map fails linearity",
        gat.linearity is not None
        and gat.linearity.verdict is LinearityVerdict.NOT_LINEAR)
    _ck(checks, "Gateaux verdict is no", gat.verdict is DiffVerdict.NO)
    had = hadamard_differentiable_at(f, (0.0, 0.0), cfg)
    _ck(checks, "Hadamard verdict is no", had.verdict is DiffVerdict.NO)
    try:
        frechet_check(f, (0.0, 0.0), lambda v: scalar_mul(float(np.linalg.norm(v)), C12), cfg)
        _ck(checks, "Frechet rejects the nonlinear candidate", False)
    except NotLinearCandidate:
        _ck(checks, "Frechet rejects the nonlinear candidate", True)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("nee1", "x^2*[-4,6]: the weak derivative inequality holds at 0 although the "
              "function is not convex (converse failure)")
def _case_nee1(cfg: Config) -> dict:
    f = make_nee1()
    checks = []
    d0 = hadamard_derivative(f, (0.0,), (1.0,), cfg)
    _ck(checks, "derivative at 0 is [0,0]",
        d0.exists is Existence.EXISTS and distance(d0.value, ZERO) <= 1e-6,
        value=_iv(d0.value))
    rng = rng_for(cfg, "gallery:nee1")
    weak_all = True
    strong_fails = 0
    for v in rng.uniform(-2.0, 2.0, 50):
        if abs(v) < 1e-3:
            continue
        forms = convexity_inequality(f, (0.0,), (float(v),), ZERO, cfg)
        weak_all = weak_all and forms["weak"]
        if not forms["strong"]:
            strong_fails += 1
    _ck(checks, "weak inequality holds on all samples", weak_all)
    _ck(checks, "strong (convex-case) inequality fails somewhere", strong_fails > 0,
        failures=strong_fails)
    conv = is_convex_on(f, Box((-2.0,), (2.0,)), cfg)
    _ck(checks, "function is not convex", conv.verdict is ConvexityVerdict.NOT_CONVEX,
        witness=conv.witness if conv.witness is None else
        {k: (list(v) if isinstance(v, tuple) else v) for k, v in conv.witness.items()})
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("x2_3x2_monotonicity", "x^2*[1,3]: closed-form derivatives (e.g. [2,6] at 1) and "
                             "dominance monotonicity on x >= 0")
def _case_x2(cfg: Config) -> dict:
    f = make_x2_3x2()
    checks = []
    for xb, want in [((1.0,), Interval(2.0, 6.0)), ((2.0,), Interval(4.0, 12.0))]:
        est = hadamard_derivative(f, xb, (1.0,), cfg)
        _ck(checks, f"derivative at {xb[0]} dir +1",
            est.exists is Existence.EXISTS and distance(est.value, want) <= 1e-6,
            value=_iv(est.value), closed_form=_iv(want))
    w_diff = moore_sub(Interval(2.0, 6.0), Interval(4.0, 12.0))
    _ck(checks, "Moore difference of the two derivatives is [-10,2]",
        w_diff == Interval(-10.0, 2.0), value=_iv(w_diff))
    g_diff = gh_difference(Interval(2.0, 6.0), Interval(4.0, 12.0))
    _ck(checks, "gH-difference of the two derivatives is [-6,-2]",
        g_diff == Interval(-6.0, -2.0), value=_iv(g_diff))
    xs = np.linspace(0.0, 3.0, 61)
    mono = all(dominates(f((xs[i],)), f((xs[i + 1],))) for i in range(len(xs) - 1))
    _ck(checks, "F(x) ⪯ F(y) along increasing x >= 0", mono)
    est0 = hadamard_derivative(f, (1.0,), (1.0,), cfg)
    _ck(checks, "derivative at 1 dominates [0,0] (ascent in the order)",
        est0.value is not None and dominates(ZERO, est0.value))
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("ex31", "chain rule failure: smooth inner curve feeds the joint-limit "
              "counterexample, so the composition has no derivative")
def _case_ex31(cfg: Config) -> dict:
    outer = make_ex31_outer()
    checks = []
    try:
        chain_rule(outer, ex31_inner, (0.0,), (1.0,), cfg,
                   inner_adversarial=[ex31_outer_schedule])
        _ck(checks, "chain rule raises PreconditionFailed", False)
    except PreconditionFailed as e:
        _ck(checks, "chain rule raises PreconditionFailed", True, message=str(e))
    composed = IVF(lambda t: outer.lower(ex31_inner(t)),
                   lambda t: outer.upper(ex31_inner(t)), 1, None, "outer∘inner")
    direct = hadamard_derivative(composed, (0.0,), (1.0,), cfg)
    _ck(checks, "direct derivative of the composition diverges",
        direct.exists is Existence.DOES_NOT_EXIST)
    outer_tan = hadamard_derivative(outer, (0.0, 0.0), (1.0, 0.0), cfg,
                                    adversarial=[ex31_outer_schedule])
    _ck(checks, "outer joint limit along the inner tangent diverges",
        outer_tan.exists is Existence.DOES_NOT_EXIST)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("chain_rule_linear", "chain rule positive control: linear inner map composed "
                           "with the 2-d quadratic")
def _case_chain_linear(cfg: Config) -> dict:
    f = make_ee1()
    m = np.array([[1.0, 0.5], [-0.25, 1.0]])
    inner = lambda t: m @ np.asarray(t, float)
    xb = np.array([0.3, -0.2])
    v = np.array([1.0, 0.5])
    rep = chain_rule(f, inner, xb, v, cfg)
    want = scalar_mul(2.0 * float((m @ xb) @ (m @ v)), C12)
    checks = []
    _ck(checks, "chain value matches the closed form",
        rep.chain_value is not None and distance(rep.chain_value, want) <= 1e-6,
        value=_iv(rep.chain_value), closed_form=_iv(want))
    _ck(checks, "direct and chained derivatives agree",
        rep.verdict is DiffVerdict.YES,
        mismatch=rep.mismatch)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("thm36_max_family", "pointwise max of three comparable scaled quadratics: "
                          "derivative is the max over active members")
def _case_max_family(cfg: Config) -> dict:
    members = [scaled(lambda x: x[0] ** 2, C12, 1, "g1"),
               scaled(lambda x: 2.0 * x[0] ** 2 + 2.0 * x[0] - 3.0, C12, 1, "g2"),
               scaled(lambda x: x[0] ** 2 - 1.0, C12, 1, "g3")]
    checks = []
    rep = max_family_derivative(members, (1.0,), (1.0,), cfg)
    _ck(checks, "active members at the crossing are {0, 1}",
        sorted(rep.active) == [0, 1], active=sorted(rep.active))
    _ck(checks, "max-of-derivatives is [6,12] along +1",
        distance(rep.value, Interval(6.0, 12.0)) <= 1e-5, value=_iv(rep.value))
    _ck(checks, "direct estimate on the max agrees", rep.verdict is DiffVerdict.YES,
        mismatch=rep.mismatch)
    rep2 = max_family_derivative(members, (1.0,), (-1.0,), cfg)
    _ck(checks, "max-of-derivatives is [-4,-2] along -1",
        distance(rep2.value, Interval(-4.0, -2.0)) <= 1e-5, value=_iv(rep2.value))
    _ck(checks, "direct estimate agrees along -1", rep2.verdict is DiffVerdict.YES)
    rep3 = max_family_derivative(members, (-2.0,), (1.0,), cfg)
    _ck(checks, "away from the crossing only one member is active",
        rep3.active == [0] and distance(rep3.value, Interval(-8.0, -4.0)) <= 1e-5,
        active=rep3.active, value=_iv(rep3.value))
    fmax = pointwise_max(members)
    _ck(checks, "max function value at the crossing is [1,2]",
        distance(fmax((1.0,)), Interval(1.0, 2.0)) <= 1e-12)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("continuity_step", "continuity verdicts: smooth quadratic is continuous, the "
                         "unit step at its jump is not")
def _case_continuity(cfg: Config) -> dict:
    checks = []
    smooth = is_gh_continuous_at(make_ee1(), (0.3, -0.4), cfg)
    _ck(checks, "quadratic is continuous",
        smooth.verdict is ContinuityVerdict.CONTINUOUS)
    step = is_gh_continuous_at(make_step(), (0.0,), cfg)
    _ck(checks, "step at the jump is discontinuous",
        step.verdict is ContinuityVerdict.DISCONTINUOUS,
        moduli_first=step.moduli[0] if step.moduli else None,
        moduli_last=step.moduli[-1] if step.moduli else None)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("frechet_agreement", "Hadamard and Frechet verdicts agree on the hand-decided "
                           "suite of gallery points")
def _case_agreement(cfg: Config) -> dict:
    checks = []
    for entry in agreement_suite():
        f = entry.make()
        had = hadamard_differentiable_at(f, entry.point, cfg,
                                         adversarial=entry.adversarial)
        try:
            fre = frechet_check(f, entry.point, entry.candidate, cfg,
                                extra_probes=entry.extra_probes)
            fre_verdict = fre.verdict
        except NotLinearCandidate:
            fre_verdict = DiffVerdict.NO
        want = DiffVerdict.YES if entry.expect == "yes" else DiffVerdict.NO
        _ck(checks, entry.name,
            had.verdict is want and fre_verdict is want,
            hadamard=had.verdict.value, frechet=fre_verdict.value,
            expected=entry.expect)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


# -- optimization cases -----------------------------------------------------

@case("ne1", "1-d instance efficient at 0 where the sufficient certificate fails "
             "(a strict descent value exists despite convexity)")
def _case_ne1(cfg: Config) -> dict:
    prob = make_ne1_problem()
    checks = []
    eff = is_efficient(prob, (0.0,), cfg)
    _ck(checks, "0 is efficient on the sampled region", eff.efficient,
        checked=eff.checked, objective=_iv(eff.objective_value))
    d_plus = hadamard_derivative(prob.objective, (0.0,), (1.0,), cfg)
    _ck(checks, "derivative along +1 is [-4,0]",
        d_plus.exists is Existence.EXISTS
        and distance(d_plus.value, Interval(-4.0, 0.0)) <= 1e-6,
        value=_iv(d_plus.value))
    suf = kkt_sufficient_check(prob, (0.0,), cfg, cross_check=False)
    _ck(checks, "sufficient certificate fails", not suf.holds, reason=suf.reason)
    _ck(checks, "failure is a strict-descent value, not convexity",
        "strictly below zero" in suf.reason, convexity=suf.convexity)
    nec = kkt_necessary_check(prob, (0.0,), cfg)
    _ck(checks, "necessary containment still holds with u0 = 1",
        nec.found and nec.max_residual <= cfg.feas_tol,
        multipliers=nec.multipliers, residual=nec.max_residual)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("remark_in", "efficient point whose objective needs the endpoint hull; the "
                   "sufficient condition's convexity precondition fails")
def _case_remark_in(cfg: Config) -> dict:
    prob = make_remark_in_problem()
    checks = []
    f = prob.objective
    _ck(checks, "hull keeps endpoints ordered at x = -1",
        f((-1.0,)) == Interval(6.0, 9.0), value=_iv(f((-1.0,))))
    for xb, d, want in [((0.0,), (1.0,), Interval(-4.0, 0.0)),
                        ((3.0,), (1.0,), Interval(2.0, 6.0)),
                        ((3.0,), (-2.0,), Interval(-12.0, -4.0))]:
        est = hadamard_derivative(f, xb, d, cfg)
        _ck(checks, f"derivative at {xb[0]} dir {d[0]}",
            est.exists is Existence.EXISTS and distance(est.value, want) <= 1e-6,
            value=_iv(est.value), closed_form=_iv(want))
    eff = is_efficient(prob, (0.0,), cfg)
    _ck(checks, "0 is efficient on the sampled region", eff.efficient,
        checked=eff.checked)
    des = descent_cone_member(f, (0.0,), (1.0,), cfg)
    _ck(checks, "+1 is a strict descent value at the efficient point",
        des["member"], derivative=_iv(des["derivative"]))
    suf = kkt_sufficient_check(prob, (0.0,), cfg, cross_check=False)
    _ck(checks, "sufficient certificate precondition (convexity) fails",
        not suf.holds and "convexity" in suf.reason,
        reason=suf.reason, convexity=suf.convexity)
    eff5 = is_efficient(prob, (5.0,), cfg)
    _ck(checks, "5 is not efficient (witness found near the left edge)",
        not eff5.efficient and eff5.witness_point is not None,
        witness=eff5.witness_point,
        witness_value=_iv(eff5.witness_value))
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("fj_box_active", "binding linear constraint at the quadratic minimum: "
                       "certificate (1, 0) with zero residual")
def _case_fj_active(cfg: Config) -> dict:
    prob = make_fj_box_active()
    checks = []
    fj = fritz_john_check(prob, (0.0,), cfg)
    _ck(checks, "Fritz John certificate found", fj.found,
        multipliers=fj.multipliers, margin=fj.margin)
    _ck(checks, "active set is {0}", fj.active == [0], active=fj.active)
    _ck(checks, "containment residual is tiny", fj.max_residual <= cfg.feas_tol,
        residual=fj.max_residual)
    _ck(checks, "objective multiplier carries the weight",
        fj.multipliers is not None and fj.multipliers[0] >= 0.9,
        multipliers=fj.multipliers)
    nec = kkt_necessary_check(prob, (0.0,), cfg)
    _ck(checks, "KKT multipliers normalize to (1, 0)",
        nec.found and abs(nec.multipliers[0] - 1.0) <= 1e-9
        and abs(nec.multipliers[1]) <= 1e-6,
        multipliers=nec.multipliers, residual=nec.max_residual)
    eff = is_efficient(prob, (0.0,), cfg)
    _ck(checks, "the point is efficient", eff.efficient)
    suf = kkt_sufficient_check(prob, (0.0,), cfg)
    _ck(checks, "sufficient certificate holds", suf.holds, reason=suf.reason)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("fj_inactive", "interior minimum with a slack constraint: the certificate "
                     "ignores the inactive constraint")
def _case_fj_inactive(cfg: Config) -> dict:
    prob = make_fj_inactive()
    checks = []
    fj = fritz_john_check(prob, (0.0,), cfg)
    _ck(checks, "certificate found with empty active set",
        fj.found and fj.active == [], active=fj.active,
        multipliers=fj.multipliers, residual=fj.max_residual)
    nec = kkt_necessary_check(prob, (0.0,), cfg)
    _ck(checks, "KKT holds with u0 = 1 alone",
        nec.found and nec.multipliers == (1.0,), multipliers=nec.multipliers)
    suf = kkt_sufficient_check(prob, (0.0,), cfg)
    _ck(checks, "sufficient certificate holds", suf.holds, reason=suf.reason)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("fj_linear", "linear objective pushed against x >= 0: balanced multipliers "
                   "(1, 1) after normalization")
def _case_fj_linear(cfg: Config) -> dict:
    prob = make_fj_linear()
    checks = []
    fj = fritz_john_check(prob, (0.0,), cfg)
    _ck(checks, "Fritz John certificate found", fj.found,
        multipliers=fj.multipliers, margin=fj.margin, residual=fj.max_residual)
    nec = kkt_necessary_check(prob, (0.0,), cfg)
    _ck(checks, "normalized multipliers are (1, 1)",
        nec.found and nec.multipliers is not None
        and abs(nec.multipliers[0] - 1.0) <= 1e-8
        and abs(nec.multipliers[1] - 1.0) <= 1e-6,
        multipliers=nec.multipliers)
    _ck(checks, "residuals are tiny", nec.max_residual <= cfg.feas_tol,
        residual=nec.max_residual)
    eff = is_efficient(prob, (0.0,), cfg)
    _ck(checks, "the point is efficient", eff.efficient)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("fj_no_certificate", "non-efficient interior point of a linear objective: "
                           "no Fritz John certificate exists")
def _case_fj_none(cfg: Config) -> dict:
    prob = make_fj_no_certificate()
    checks = []
    eff = is_efficient(prob, (0.0,), cfg)
    _ck(checks, "the point is not efficient", not eff.efficient,
        witness=eff.witness_point)
    fj = fritz_john_check(prob, (0.0,), cfg)
    _ck(checks, "no certificate is found", not fj.found, margin=fj.margin,
        reason=fj.reason)
    nec = kkt_necessary_check(prob, (0.0,), cfg)
    _ck(checks, "necessary condition also fails", not nec.found, reason=nec.reason)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("kkt_dependent", "active constraint with a zero-straddling derivative: "
                       "the independence precondition is violated")
def _case_kkt_dep(cfg: Config) -> dict:
    prob = make_kkt_dependent()
    checks = []
    try:
        kkt_necessary_check(prob, (0.0,), cfg)
        _ck(checks, "independence violation is raised", False)
    except LinearIndependenceViolated as e:
        _ck(checks, "independence violation is raised", True,
            witness=list(e.witness) if e.witness is not None else None,
            direction=list(e.direction) if e.direction is not None else None)
    fj = fritz_john_check(prob, (0.0,), cfg)
    _ck(checks, "Fritz John itself still certifies", fj.found,
        multipliers=fj.multipliers)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("kkt_2d", "2-d quadratic against a linear constraint: multiplier family "
                "certifies the boundary point")
def _case_kkt_2d(cfg: Config) -> dict:
    prob = make_kkt_2d()
    small = cfg.replace(grid_resolution=81)   # 2-d scan cost cap
    checks = []
    xb = (0.5, 0.5)
    eff = is_efficient(prob, xb, small)
    _ck(checks, "(0.5, 0.5) is efficient on the sampled region", eff.efficient,
        checked=eff.checked)
    nec = kkt_necessary_check(prob, xb, cfg)
    _ck(checks, "KKT multipliers found", nec.found, multipliers=nec.multipliers,
        residual=nec.max_residual)
    if nec.found:
        _ck(checks, "constraint multiplier sits in [1, 2] after normalization",
            1.0 - 1e-6 <= nec.multipliers[1] <= 2.0 + 1e-6,
            multipliers=nec.multipliers)
    _ck(checks, "residuals are tiny", nec.max_residual <= cfg.feas_tol * 10,
        residual=nec.max_residual)
    suf = kkt_sufficient_check(prob, xb, small)
    _ck(checks, "sufficient certificate holds", suf.holds, reason=suf.reason)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


# -- SVM cases --------------------------------------------------------------

@case("svm_degenerate", "two crisp points at ±1: classical SVM answer w=1, b=0, "
                        "margin 2, duals (1/2, 1/2)")
def _case_svm_degenerate(cfg: Config) -> dict:
    data = make_svm_degenerate()
    sol = train(data, cfg)
    checks = []
    _ck(checks, "weight", abs(sol.w[0] - 1.0) <= 1e-9, w=list(sol.w))
    _ck(checks, "bias", abs(sol.b) <= 1e-9, b=sol.b)
    _ck(checks, "margin width", abs(sol.margin_width - 2.0) <= 1e-9,
        margin=sol.margin_width)
    _ck(checks, "duals", max(abs(sol.duals[0] - 0.5), abs(sol.duals[1] - 0.5)) <= 1e-9,
        duals=list(sol.duals))
    _ck(checks, "both samples support", sol.support_indices == (0, 1),
        support=list(sol.support_indices))
    rep = kkt_verify(sol, data, cfg)
    _ck(checks, "KKT verification passes", rep["passes"],
        stationarity_residual=rep["stationarity_residual"],
        worst_margin=rep["worst_margin"])
    bs = bias_set(sol, data, cfg)
    _ck(checks, "bias set is the degenerate [0,0]", norm(bs) <= 1e-9, bias_set=_iv(bs))
    labels = [r["label"] for r in classify(sol, data, cfg)]
    _ck(checks, "classification recovers the labels", labels == [1, -1], labels=labels)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("svm_interval_1d", "two interval samples [1,2] / [-2,-1]: worst corners bind, "
                         "w=1, b=0, duals (1/2, 1/2), containment [-1,0]")
def _case_svm_interval(cfg: Config) -> dict:
    data = make_svm_interval_1d()
    sol = train(data, cfg)
    checks = []
    _ck(checks, "weight", abs(sol.w[0] - 1.0) <= 1e-9, w=list(sol.w))
    _ck(checks, "bias", abs(sol.b) <= 1e-9, b=sol.b)
    _ck(checks, "duals aggregate to (1/2, 1/2)",
        max(abs(sol.duals[0] - 0.5), abs(sol.duals[1] - 0.5)) <= 1e-9,
        duals=list(sol.duals))
    _ck(checks, "worst-corner margin is exactly 1",
        abs(worst_margin(sol.w, sol.b, data) - 1.0) <= 1e-9)
    rep = kkt_verify(sol, data, cfg)
    stat = rep["stationarity"][0]["interval"]
    _ck(checks, "stationarity containment interval is [-1,0] and contains 0",
        distance(stat, Interval(-1.0, 0.0)) <= 1e-9 and stat.lo <= 0.0 <= stat.hi,
        interval=_iv(stat))
    _ck(checks, "KKT verification passes (relaxed slackness)", rep["passes"],
        slackness_strict=rep["slackness_strict"],
        slackness_relaxed=rep["slackness_relaxed"])
    _ck(checks, "strict slackness is genuinely nonzero on interval supports",
        rep["slackness_strict"] > 0.1)
    bs = bias_set(sol, data, cfg)
    _ck(checks, "bias set is degenerate at 0", norm(bs) <= 1e-9, bias_set=_iv(bs))
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("svm_nested_margins", "symmetric widening of the 1-d interval data: the "
                            "optimal margin never increases")
def _case_svm_nested(cfg: Config) -> dict:
    base = make_svm_interval_1d()
    expected = {0.0: (1.0, 2.0), 0.25: (4.0 / 3.0, 1.5), 0.5: (2.0, 1.0),
                0.75: (4.0, 0.5)}
    checks = []
    margins = []
    for delta in (0.0, 0.25, 0.5, 0.75):
        sol = train(base.widen(delta), cfg)
        margins.append(sol.margin_width)
        w_want, m_want = expected[delta]
        _ck(checks, f"delta={delta}",
            abs(sol.w[0] - w_want) <= 1e-6 and abs(sol.margin_width - m_want) <= 1e-6,
            w=sol.w[0], margin=sol.margin_width)
    _ck(checks, "margins are non-increasing",
        all(margins[i] >= margins[i + 1] - 1e-12 for i in range(len(margins) - 1)),
        margins=margins)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("svm_2d", "four 2-d boxes: inner corners bind, w=(0.8, 0.4), b=0, "
                "duals (0.4, 0, 0.4, 0)")
def _case_svm_2d(cfg: Config) -> dict:
    data = make_svm_2d()
    sol = train(data, cfg)
    checks = []
    _ck(checks, "weights", max(abs(sol.w[0] - 0.8), abs(sol.w[1] - 0.4)) <= 1e-8,
        w=list(sol.w))
    _ck(checks, "bias", abs(sol.b) <= 1e-8, b=sol.b)
    _ck(checks, "objective", abs(sol.objective - 0.4) <= 1e-8, objective=sol.objective)
    want_u = (0.4, 0.0, 0.4, 0.0)
    _ck(checks, "duals", max(abs(a - b) for a, b in zip(sol.duals, want_u)) <= 1e-8,
        duals=list(sol.duals))
    _ck(checks, "supports are the inner boxes", sol.support_indices == (0, 2),
        support=list(sol.support_indices))
    rep = kkt_verify(sol, data, cfg)
    _ck(checks, "KKT verification passes", rep["passes"],
        stationarity_residual=rep["stationarity_residual"])
    labels = [r["label"] for r in classify(sol, data, cfg)]
    _ck(checks, "classification recovers the labels", labels == [1, 1, -1, -1],
        labels=labels)
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


@case("svm_inseparable", "overlapping opposite-label boxes: training reports the "
                         "witness pair instead of a model")
def _case_svm_inseparable(cfg: Config) -> dict:
    data = make_svm_inseparable()
    checks = []
    try:
        train(data, cfg)
        _ck(checks, "NotSeparable is raised", False)
    except NotSeparable as e:
        _ck(checks, "NotSeparable is raised", True,
            witness=list(e.witness_pair) if e.witness_pair is not None else None)
        _ck(checks, "witness is the overlapping pair (0, 1)",
            e.witness_pair == (0, 1))
    return {"pass": all(c["ok"] for c in checks), "checks": checks}


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------

def run_case(case_id: str, cfg: Config = Config()) -> dict:
    c = get_case(case_id)
    result = c.runner(cfg)
    out = {"case_id": c.case_id, "description": c.description}
    out.update(result)
    return out


def run_gallery(case_ids=None, cfg: Config = Config()) -> dict:
    """Run (a filtered subset of) the gallery; the report is deterministic for
    a fixed config and carries no timestamps."""
    ids = list_case_ids() if not case_ids else sorted(case_ids)
    for cid in ids:
        get_case(cid)   # fail fast on unknown ids
    cases = [run_case(cid, cfg) for cid in ids]
    passed = sum(1 for c in cases if c["pass"])
    return {
        "schema_version": 1,
        "tool": "ivopt-gallery",
        "config": cfg.to_dict(),
        "cases": cases,
        "passed": passed,
        "failed": len(cases) - passed,
        "all_pass": passed == len(cases),
    }
