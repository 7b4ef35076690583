"""Efficiency certificates for interval-valued optimization problems.

A problem minimizes an interval objective F over a region intersected with
interval inequality constraints G_i(x) ⪯ [0, 0] (which, for an interval with
ordered endpoints, is just G_i(x).hi <= 0).  A feasible point is *efficient*
when no feasible v has F(v) strictly better in the endpointwise order.

All certificates here are sampled: efficiency is checked against a grid plus
random draws, and the Fritz John / KKT conditions are imposed on a finite set
of probe directions, with the multiplier search posed as a small linear
program (simplex-normalized multipliers, maximize the zero-containment
margin of u0*D_F(d) + sum_i u_i*D_{G_i}(d) across directions).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linprog

from .config import Config
from .calculus import Box, IVF, Existence, hadamard_derivative, is_convex_on, \
    ConvexityVerdict, rng_for
from .exceptions import (
    DimensionError,
    InfeasiblePoint,
    LinearIndependenceViolated,
    PreconditionFailed,
    SlacknessViolated,
    ZeroDirection,
)
from .intervals import (
    Interval,
    ZERO,
    add,
    dominates,
    gh_difference,
    linearly_independent,
    norm,
    scalar_mul,
    strictly_dominates,
    zero_containment_residual,
)


class RegionKind(Enum):
    WHOLE = "whole"
    BOX = "box"


@dataclass(frozen=True)
class FeasibleRegion:
    kind: RegionKind
    dim: int
    box: Optional[Box] = None

    @classmethod
    def whole(cls, dim: int) -> "FeasibleRegion":
        return cls(RegionKind.WHOLE, dim, None)

    @classmethod
    def from_box(cls, box: Box) -> "FeasibleRegion":
        return cls(RegionKind.BOX, box.dim, box)

    def contains(self, x, tol: float = 0.0) -> bool:
        x = np.asarray(x, float)
        if x.shape != (self.dim,):
            raise DimensionError(f"point shape {x.shape} != ({self.dim},)")
        if self.kind is RegionKind.WHOLE:
            return True
        return self.box.contains(x, tol)

    def sampling_box(self, center, half_width: float = 5.0) -> Box:
        """Window used by sampled certificates; the box itself, or a window
        around ``center`` when the region is all of R^n."""
        if self.kind is RegionKind.BOX:
            return self.box
        c = np.asarray(center, float)
        return Box(tuple(c - half_width), tuple(c + half_width))


@dataclass(frozen=True)
class IOPInstance:
    """Interval optimization problem: minimize ``objective`` over the region
    cut down by ``constraints`` (each required ⪯ [0,0])."""

    name: str
    objective: IVF
    constraints: tuple
    region: FeasibleRegion

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.region.dim != self.objective.dim:
            raise DimensionError("region dimension != objective dimension")
        for g in self.constraints:
            if g.dim != self.objective.dim:
                raise DimensionError("constraint dimension != objective dimension")

    @property
    def dim(self) -> int:
        return self.objective.dim

    def feasible(self, x, tol: float = 0.0) -> bool:
        x = np.asarray(x, float)
        if not self.region.contains(x, tol):
            return False
        try:
            return all(g(x).hi <= tol for g in self.constraints)
        except Exception:
            return False

    def require_feasible(self, x, tol: float) -> None:
        if not self.feasible(x, tol):
            raise InfeasiblePoint(f"{np.asarray(x, float)} is not feasible for {self.name}")


def active_set(instance: IOPInstance, x, cfg: Config = Config(),
               mode: str = "strict") -> list:
    """Indices of constraints binding at ``x``.

    ``strict`` reads "binding" as G_i(x) = [0,0] within feas_tol (the form the
    multiplier slackness condition wants); ``relaxed`` only asks that the
    upper endpoint touches zero.
    """
    x = np.asarray(x, float)
    out = []
    for i, g in enumerate(instance.constraints):
        gi = g(x)
        if mode == "strict":
            if norm(gi) <= cfg.feas_tol:
                out.append(i)
        elif mode == "relaxed":
            if gi.hi >= -cfg.feas_tol:
                out.append(i)
        else:
            raise ValueError("mode must be 'strict' or 'relaxed'")
    return out


# ---------------------------------------------------------------------------
# sampled efficiency
# ---------------------------------------------------------------------------

@dataclass
class EfficiencyReport:
    efficient: bool
    objective_value: Interval
    witness_point: Optional[tuple]
    witness_value: Optional[Interval]
    checked: int


def is_efficient(instance: IOPInstance, xbar, cfg: Config = Config()) -> EfficiencyReport:
    """Grid-plus-random search for a feasible point strictly better than xbar.

    "Strictly better" is the endpointwise strict dominance F(v) ≺ F(xbar)
    with a relative tie tolerance, so the point itself (and floating-point
    twins of it) never count as witnesses.
    """
    xbar = np.asarray(xbar, float)
    instance.require_feasible(xbar, cfg.feas_tol)
    fbar = instance.objective(xbar)
    tie = cfg.cmp_tol * (1.0 + norm(fbar))

    window = instance.region.sampling_box(xbar)
    candidates = [window.grid(cfg.grid_resolution)]
    if cfg.random_points > 0:
        candidates.append(window.sample(rng_for(cfg, "efficiency"), cfg.random_points))
    checked = 0
    for block in candidates:
        for p in block:
            if not instance.feasible(p, cfg.feas_tol):
                continue
            checked += 1
            fp = instance.objective(p)
            if strictly_dominates(fp, fbar, tie):
                return EfficiencyReport(False, fbar, tuple(p), fp, checked)
    return EfficiencyReport(True, fbar, None, None, checked)


# ---------------------------------------------------------------------------
# probe directions and cones
# ---------------------------------------------------------------------------

def sample_directions(dim: int, cfg: Config = Config(),
                      label: str = "directions") -> list:
    """Unit probe directions: in 1-d just ±1, otherwise ±axes plus seeded
    sphere points up to cfg.num_directions."""
    if dim == 1:
        return [np.array([1.0]), np.array([-1.0])]
    dirs = []
    for j in range(dim):
        e = np.eye(dim)[j]
        dirs.append(e)
        dirs.append(-e)
    rng = rng_for(cfg, label)
    while len(dirs) < cfg.num_directions:
        u = rng.normal(size=dim)
        n = np.linalg.norm(u)
        if n > 1e-12:
            dirs.append(u / n)
    return dirs


def _certified(est, what: str, direction) -> Interval:
    if est.exists is not Existence.EXISTS or est.value is None:
        raise PreconditionFailed(
            f"{what} has no certified derivative along {np.asarray(direction, float)}"
            f" ({est.exists.value})", detail=est)
    return est.value


def descent_cone_member(f: IVF, x, d, cfg: Config = Config()) -> dict:
    """Is d a (sampled) descent direction: F_H(x)(d) ≺ [0,0]?"""
    d = np.asarray(d, float)
    if np.linalg.norm(d) == 0.0:
        raise ZeroDirection("descent test needs a nonzero direction")
    est = hadamard_derivative(f, x, d, cfg)
    val = _certified(est, f.name or "objective", d)
    return {"member": strictly_dominates(val, ZERO, cfg.cmp_tol),
            "derivative": val, "estimate": est}


def feasible_cone_member(instance: IOPInstance, x, d, cfg: Config = Config(),
                         mode: str = "strict") -> dict:
    """Is d a (sampled) feasible direction: active constraints have
    D_{G_i}(x)(d) ⪯ [0,0] and a short step stays in the region."""
    x = np.asarray(x, float)
    d = np.asarray(d, float)
    if np.linalg.norm(d) == 0.0:
        raise ZeroDirection("feasible-direction test needs a nonzero direction")
    step = cfg.cone_step0 * max(1.0, np.linalg.norm(d))
    if not instance.region.contains(x + step * d / max(np.linalg.norm(d), 1.0),
                                    cfg.feas_tol):
        return {"member": False, "reason": "leaves the region", "derivatives": {}}
    derivs = {}
    for i in active_set(instance, x, cfg, mode):
        est = hadamard_derivative(instance.constraints[i], x, d, cfg)
        val = _certified(est, f"constraint {i}", d)
        derivs[i] = val
        if not dominates(val, ZERO, cfg.cmp_tol):
            return {"member": False, "reason": f"constraint {i} increases",
                    "derivatives": derivs}
    return {"member": True, "reason": "", "derivatives": derivs}


def descent_feasible_intersection(instance: IOPInstance, x, cfg: Config = Config(),
                                  mode: str = "strict") -> dict:
    """Scan sampled directions for members of both cones.

    At an efficient point this intersection should be empty; a nonempty one
    is a certificate of non-efficiency up to sampling.
    """
    x = np.asarray(x, float)
    instance.require_feasible(x, cfg.feas_tol)
    hits = []
    dirs = sample_directions(instance.dim, cfg, "cone_directions")
    for d in dirs:
        des = descent_cone_member(instance.objective, x, d, cfg)
        if not des["member"]:
            continue
        fea = feasible_cone_member(instance, x, d, cfg, mode)
        if fea["member"]:
            hits.append({"direction": tuple(d), "derivative": des["derivative"]})
    return {"empty": not hits, "members": hits, "directions_checked": len(dirs)}


# ---------------------------------------------------------------------------
# Fritz John and KKT multiplier search
# ---------------------------------------------------------------------------

@dataclass
class CertificateReport:
    """Outcome of a multiplier search.

    ``found`` carries the verdict; when True, ``multipliers`` holds
    (u0, u_i for i in ``active``) and every probe direction's combined
    derivative contains zero with residual at most ``max_residual``.
    """

    found: bool
    kind: str                    # "fritz_john" | "kkt_necessary" | "kkt_sufficient"
    multipliers: Optional[tuple]
    active: list
    margin: float
    max_residual: float
    residuals: list              # (direction tuple, residual) pairs
    mode: str
    reason: str


def _direction_table(instance: IOPInstance, xbar, dirs, active, cfg: Config):
    """Hadamard values of the objective and active constraints per direction."""
    table = []
    for d in dirs:
        row = {"direction": d,
               "objective": _certified(hadamard_derivative(instance.objective, xbar, d, cfg),
                                       "objective", d)}
        cons = {}
        for i in active:
            cons[i] = _certified(hadamard_derivative(instance.constraints[i], xbar, d, cfg),
                                 f"constraint {i}", d)
        row["constraints"] = cons
        table.append(row)
    return table


def _combined(row, t, active) -> Interval:
    acc = scalar_mul(t[0], row["objective"])
    for pos, i in enumerate(active):
        acc = add(acc, scalar_mul(t[1 + pos], row["constraints"][i]))
    return acc


def _containment_lp(table, active, objective_coeffs=None):
    """LP over simplex multipliers t: every direction's combined interval
    must contain zero; maximize either the shared margin (default) or a
    caller-given linear functional of t."""
    m = 1 + len(active)
    with_margin = objective_coeffs is None
    nvar = m + (1 if with_margin else 0)
    a_ub = []
    b_ub = []
    for row in table:
        lo = [row["objective"].lo] + [row["constraints"][i].lo for i in active]
        hi = [row["objective"].hi] + [row["constraints"][i].hi for i in active]
        if with_margin:
            a_ub.append(lo + [1.0])            # sum t*lo + s <= 0
            a_ub.append([-v for v in hi] + [1.0])  # -sum t*hi + s <= 0
        else:
            a_ub.append(lo)
            a_ub.append([-v for v in hi])
        b_ub.extend([0.0, 0.0])
    a_eq = [[1.0] * m + ([0.0] if with_margin else [])]
    if with_margin:
        c = [0.0] * m + [-1.0]
        bounds = [(0.0, None)] * m + [(None, None)]
    else:
        c = [-v for v in objective_coeffs]
        bounds = [(0.0, None)] * m
    res = linprog(c, A_ub=np.array(a_ub), b_ub=np.array(b_ub),
                  A_eq=np.array(a_eq), b_eq=np.array([1.0]),
                  bounds=bounds, method="highs",
                  options={"primal_feasibility_tolerance": 1e-10,
                           "dual_feasibility_tolerance": 1e-10})
    return res


def _residuals(table, t, active):
    out = []
    worst = 0.0
    for row in table:
        r = zero_containment_residual(_combined(row, t, active))
        out.append((tuple(np.asarray(row["direction"], float)), r))
        worst = max(worst, r)
    return out, worst


def fritz_john_check(instance: IOPInstance, xbar, cfg: Config = Config(),
                     mode: Optional[str] = None,
                     activity: str = "strict") -> CertificateReport:
    """Search for Fritz John multipliers (u0, u_active) on the simplex with
    0 ∈ u0*D_F(d) ⊕ Σ u_i*D_{G_i}(d) on every probe direction.

    ``mode='for_all'`` (default) demands one multiplier vector working for all
    directions; ``'exists'`` allows a different vector per direction and
    reports the worst per-direction margin.
    """
    xbar = np.asarray(xbar, float)
    instance.require_feasible(xbar, cfg.feas_tol)
    mode = mode or cfg.fj_direction_mode
    active = active_set(instance, xbar, cfg, activity)
    dirs = sample_directions(instance.dim, cfg, "fj_directions")
    table = _direction_table(instance, xbar, dirs, active, cfg)

    if mode == "for_all":
        res = _containment_lp(table, active)
        if not res.success:
            return CertificateReport(False, "fritz_john", None, active,
                                     float("-inf"), float("inf"), [], mode,
                                     f"multiplier LP failed: {res.message}")
        t = res.x[:1 + len(active)]
        margin = float(res.x[-1])
        residuals, worst = _residuals(table, t, active)
        if margin >= -cfg.feas_tol:
            return CertificateReport(True, "fritz_john", tuple(float(v) for v in t),
                                     active, margin, worst, residuals, mode, "")
        return CertificateReport(False, "fritz_john", None, active, margin, worst,
                                 residuals, mode,
                                 "no simplex multiplier puts zero in every "
                                 "direction's combined derivative")
    if mode == "exists":
        worst_margin = float("inf")
        residuals = []
        per_dir = []
        for row in table:
            res = _containment_lp([row], active)
            if not res.success:
                return CertificateReport(False, "fritz_john", None, active,
                                         float("-inf"), float("inf"), [], mode,
                                         f"multiplier LP failed: {res.message}")
            t = res.x[:1 + len(active)]
            margin = float(res.x[-1])
            worst_margin = min(worst_margin, margin)
            r = zero_containment_residual(_combined(row, t, active))
            residuals.append((tuple(np.asarray(row["direction"], float)), r))
            per_dir.append(tuple(float(v) for v in t))
        worst = max((r for _, r in residuals), default=0.0)
        if worst_margin >= -cfg.feas_tol:
            return CertificateReport(True, "fritz_john", per_dir[0], active,
                                     worst_margin, worst, residuals, mode,
                                     "per-direction multipliers (first shown)")
        return CertificateReport(False, "fritz_john", None, active, worst_margin,
                                 worst, residuals, mode,
                                 "some direction admits no multiplier")
    raise ValueError("mode must be 'for_all' or 'exists'")


def kkt_necessary_check(instance: IOPInstance, xbar, cfg: Config = Config(),
                        activity: str = "strict") -> CertificateReport:
    """Fritz John with a nonzero objective multiplier, normalized to u0 = 1.

    Preconditions: the active constraints' derivative intervals must be
    linearly independent along every probe direction
    (:class:`LinearIndependenceViolated` otherwise).
    """
    xbar = np.asarray(xbar, float)
    instance.require_feasible(xbar, cfg.feas_tol)
    active = active_set(instance, xbar, cfg, activity)
    dirs = sample_directions(instance.dim, cfg, "fj_directions")
    table = _direction_table(instance, xbar, dirs, active, cfg)

    if active:
        for row in table:
            li = linearly_independent([row["constraints"][i] for i in active])
            if not li.independent:
                raise LinearIndependenceViolated(
                    "active constraint derivatives are dependent along "
                    f"{np.asarray(row['direction'], float)}",
                    witness=li.witness,
                    direction=tuple(np.asarray(row["direction"], float)))

    coeffs = [1.0] + [0.0] * len(active)
    res = _containment_lp(table, active, objective_coeffs=coeffs)
    if not res.success:
        return CertificateReport(False, "kkt_necessary", None, active,
                                 float("-inf"), float("inf"), [], "for_all",
                                 f"multiplier LP failed: {res.message}")
    t = res.x
    u0 = float(t[0])
    if u0 <= cfg.feas_tol:
        residuals, worst = _residuals(table, t, active)
        return CertificateReport(False, "kkt_necessary", None, active, u0, worst,
                                 residuals, "for_all",
                                 "only a degenerate (u0 = 0) multiplier exists")
    u = t / u0
    residuals, worst = _residuals(table, u, active)
    scale = max(1.0, float(np.max(np.abs(u))))
    if worst > cfg.feas_tol * scale:
        return CertificateReport(False, "kkt_necessary", None, active, u0, worst,
                                 residuals, "for_all",
                                 "normalized multipliers lose zero containment")
    return CertificateReport(True, "kkt_necessary", tuple(float(v) for v in u),
                             active, u0, worst, residuals, "for_all", "")


@dataclass
class SufficientReport:
    holds: bool
    reason: str
    multipliers: Optional[tuple]
    active: list
    convexity: dict
    directions_checked: int
    efficiency_cross_check: Optional[EfficiencyReport]


def kkt_sufficient_check(instance: IOPInstance, xbar, cfg: Config = Config(),
                         multipliers: Optional[Sequence[float]] = None,
                         cross_check: bool = True,
                         activity: str = "strict") -> SufficientReport:
    """Convexity + multipliers + no combined strict descent ⇒ efficiency.

    Requires the objective and all constraints convex on the sampling window
    (reported as a failed precondition otherwise), strict complementary
    slackness for any supplied multipliers (:class:`SlacknessViolated` when a
    positive u_i rides a slack constraint), and that the combined derivative
    u0*D_F(d) ⊕ Σ u_i*D_{G_i}(d) is never strictly below [0,0] on the probe
    directions.  Optionally cross-checks the claim against the sampled
    efficiency search.
    """
    xbar = np.asarray(xbar, float)
    instance.require_feasible(xbar, cfg.feas_tol)
    window = instance.region.sampling_box(xbar)
    convexity = {"objective": is_convex_on(instance.objective, window, cfg).verdict.value}
    ok = convexity["objective"] == ConvexityVerdict.CONVEX.value
    for i, g in enumerate(instance.constraints):
        v = is_convex_on(g, window, cfg).verdict.value
        convexity[f"constraint_{i}"] = v
        ok = ok and v == ConvexityVerdict.CONVEX.value
    active = active_set(instance, xbar, cfg, activity)
    if not ok:
        return SufficientReport(False,
                                "convexity precondition fails on the sampling window",
                                None, active, convexity, 0, None)

    if multipliers is None:
        # the margin-maximizing search lands inside the multiplier family when
        # the family has an interior, keeping the combined derivative safely
        # two-sided around zero
        cert = fritz_john_check(instance, xbar, cfg, mode="for_all", activity=activity)
        if not cert.found:
            return SufficientReport(False, f"no multiplier family: {cert.reason}",
                                    None, active, convexity, 0, None)
        t = np.asarray(cert.multipliers, float)
        if t[0] <= cfg.feas_tol:
            return SufficientReport(False,
                                    "objective multiplier vanishes in the best family",
                                    tuple(t), active, convexity, 0, None)
        u = t / t[0]
    else:
        u = np.asarray(multipliers, float)
        if u.shape != (1 + len(active),):
            raise DimensionError("multipliers must be (u0, u_i for active i)")
        if u[0] <= 0 or np.any(u < 0):
            return SufficientReport(False, "multipliers must be nonnegative with u0 > 0",
                                    tuple(u), active, convexity, 0, None)
        for pos, i in enumerate(active):
            gi = instance.constraints[i](xbar)
            if u[1 + pos] * norm(gi) > cfg.slack_tol:
                raise SlacknessViolated(
                    f"u_{i} = {u[1 + pos]} rides a slack constraint with ||G_i|| = {norm(gi)}")

    dirs = sample_directions(instance.dim, cfg, "fj_directions")
    table = _direction_table(instance, xbar, dirs, active, cfg)
    for row in table:
        comb = _combined(row, u, active)
        if strictly_dominates(comb, ZERO, cfg.cmp_tol):
            return SufficientReport(False,
                                    "combined derivative strictly below zero along "
                                    f"{np.asarray(row['direction'], float)}",
                                    tuple(float(v) for v in u), active, convexity,
                                    len(dirs), None)
    cross = is_efficient(instance, xbar, cfg) if cross_check else None
    holds = True
    reason = "convexity, slackness and combined-derivative conditions all hold"
    if cross is not None and not cross.efficient:
        holds = False
        reason = ("certificate conditions hold but the sampled search found a"
                  " better point; treat as inconsistent")
    return SufficientReport(holds, reason, tuple(float(v) for v in u), active,
                            convexity, len(dirs), cross)
