"""Interval-valued functions and numerical estimation of their gH-derivatives.

An IVF is a pair of endpoint callables ``lower, upper : R^n -> R`` with
``lower(x) <= upper(x)`` on its domain.  Derivatives are taken in the
generalized-difference sense: the directional limit at ``x`` in direction
``v`` is

    lim  (1/lam) * ( F(x + lam*h) gh- F(x) ),    lam -> 0+,

with ``h = v`` fixed for the directional/Gateaux notion and ``h -> v``
jointly with ``lam -> 0+`` for the Hadamard notion.  Limits are estimated on
geometric schedules ``lam_k = step0 * decay^k``; the Hadamard estimator runs
several independently perturbed schedules (plus optional adversarial ones)
and requires them to agree.  All verdicts are sampled certificates, not
proofs: ``DOES_NOT_EXIST`` is only declared on divergence past a norm cap or
on two converged schedules that disagree by more than ten agreement
tolerances, and everything in between is ``INCONCLUSIVE``.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np

from .config import Config
from .exceptions import (
    DimensionError,
    DomainError,
    InvalidIVF,
    NotComparableError,
    NotComparableFamily,
    NotLinearCandidate,
    PreconditionFailed,
)
from .intervals import (
    Interval,
    ZERO,
    add,
    compare,
    distance,
    dominates,
    gh_difference,
    interval_eq,
    norm,
    max_comparable,
    scalar_mul,
    strictly_dominates,
)


def rng_for(cfg: Config, label: str) -> np.random.Generator:
    """Deterministic per-purpose generator: seed mixes cfg.seed with the label."""
    return np.random.default_rng([cfg.seed & 0xFFFFFFFF, zlib.crc32(label.encode())])


# ---------------------------------------------------------------------------
# domains and functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Box:
    """Axis-aligned box, the standard bounded domain/sampling window."""

    lower: tuple
    upper: tuple

    def __post_init__(self):
        lo = tuple(float(v) for v in self.lower)
        hi = tuple(float(v) for v in self.upper)
        if len(lo) != len(hi) or not lo:
            raise DimensionError("box bounds must be nonempty and of equal length")
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError("box lower bound exceeds upper bound")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def from_bounds(cls, bounds) -> "Box":
        bounds = [(float(a), float(b)) for a, b in bounds]
        return cls(tuple(a for a, _ in bounds), tuple(b for _, b in bounds))

    @property
    def dim(self) -> int:
        return len(self.lower)

    def contains(self, x, tol: float = 0.0) -> bool:
        x = np.asarray(x, float)
        if x.shape != (self.dim,):
            raise DimensionError(f"point of dim {x.shape} vs box of dim {self.dim}")
        return bool(np.all(x >= np.array(self.lower) - tol)
                    and np.all(x <= np.array(self.upper) + tol))

    def grid(self, resolution: int) -> np.ndarray:
        """Regular grid with ``resolution`` points per axis, shape (N, dim)."""
        if resolution < 2:
            raise ValueError("resolution must be >= 2")
        axes = [np.linspace(a, b, resolution) for a, b in zip(self.lower, self.upper)]
        if self.dim == 1:
            return axes[0][:, None]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        lo = np.array(self.lower)
        hi = np.array(self.upper)
        return lo + (hi - lo) * rng.random((count, self.dim))


class IVF:
    """Interval-valued function given by endpoint callables on R^n."""

    def __init__(self, lower: Callable, upper: Callable, dim: int,
                 domain=None, name: str = ""):
        if dim < 1:
            raise DimensionError("dim must be >= 1")
        if isinstance(domain, Box) and domain.dim != dim:
            raise DimensionError("domain box dimension != function dimension")
        self.lower = lower
        self.upper = upper
        self.dim = int(dim)
        self.domain = domain
        self.name = name

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_endpoints(cls, lower, upper, dim, domain=None, name=""):
        return cls(lower, upper, dim, domain, name)

    @classmethod
    def degenerate(cls, g: Callable, dim: int, domain=None, name="") -> "IVF":
        return cls(g, g, dim, domain, name)

    @classmethod
    def constant(cls, value: Interval, dim: int, name="") -> "IVF":
        return cls(lambda x: value.lo, lambda x: value.hi, dim, None, name)

    @classmethod
    def from_polynomials(cls, lower_coeffs, upper_coeffs, domain=None, name="") -> "IVF":
        """Univariate IVF from ascending coefficient lists for each endpoint."""
        lc = np.asarray(lower_coeffs, float)
        uc = np.asarray(upper_coeffs, float)
        if lc.ndim != 1 or uc.ndim != 1 or lc.size == 0 or uc.size == 0:
            raise DimensionError("coefficient lists must be nonempty 1-d sequences")
        from numpy.polynomial import polynomial as P
        return cls(lambda x: float(P.polyval(x[0], lc)),
                   lambda x: float(P.polyval(x[0], uc)),
                   dim=1, domain=domain, name=name)

    # -- evaluation ---------------------------------------------------------
    def in_domain(self, x, tol: float = 0.0) -> bool:
        x = np.asarray(x, float)
        if x.shape != (self.dim,):
            raise DimensionError(f"point shape {x.shape} != ({self.dim},)")
        if self.domain is None:
            return True
        if isinstance(self.domain, Box):
            return self.domain.contains(x, tol)
        return bool(self.domain(x))

    def __call__(self, x, cmp_tol: float = 1e-12) -> Interval:
        x = np.asarray(x, float)
        if x.shape != (self.dim,):
            raise DimensionError(f"point shape {x.shape} != ({self.dim},)")
        if not self.in_domain(x):
            raise DomainError(f"{x} outside the domain of {self.name or 'IVF'}")
        lo = float(self.lower(x))
        hi = float(self.upper(x))
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise InvalidIVF(f"non-finite endpoints [{lo}, {hi}] at {x}")
        if lo > hi + cmp_tol:
            raise InvalidIVF(f"lower exceeds upper at {x}: [{lo}, {hi}]")
        if lo > hi:
            lo, hi = hi, lo   # tie within tolerance: normalize
        return Interval(lo, hi)

    def __repr__(self):
        return f"IVF({self.name or 'anonymous'}, dim={self.dim})"


def evaluate(f: IVF, x) -> Interval:
    return f(x)


# ---------------------------------------------------------------------------
# schedules and estimates
# ---------------------------------------------------------------------------

class Existence(Enum):
    EXISTS = "exists"
    DOES_NOT_EXIST = "does_not_exist"
    INCONCLUSIVE = "inconclusive"


class LinearityVerdict(Enum):
    LINEAR = "linear"
    NOT_LINEAR = "not_linear"
    INCONCLUSIVE = "inconclusive"


class DerivativeKind(Enum):
    DIRECTIONAL = "directional"
    GATEAUX = "gateaux"
    HADAMARD = "hadamard"
    FRECHET = "frechet"


@dataclass(frozen=True)
class DerivativeQuery:
    kind: DerivativeKind
    point: tuple
    direction: tuple


@dataclass
class ScheduleTrace:
    """One geometric schedule: steps hold (lam_k, eps_k, iterate)."""

    label: str
    steps: list
    status: Existence
    limit: Optional[Interval]
    window: float            # best 3-iterate Cauchy window achieved


@dataclass
class DerivativeEstimate:
    value: Optional[Interval]
    exists: Existence
    is_linear_in_direction: Optional[LinearityVerdict] = None
    diagnostics: list = field(default_factory=list)   # (lam, eps, Interval) of primary schedule
    schedules: list = field(default_factory=list)
    residual_trace: list = field(default_factory=list)


_SHRINK_ONCE = 0.01


def _run_schedule(f: IVF, x: np.ndarray, h_of: Callable, cfg: Config,
                  label: str, eps_of=None) -> ScheduleTrace:
    """Evaluate D_k = (1/lam_k)(F(x + lam_k h_k) gh- F(x)) down a geometric schedule.

    ``h_of(k, lam)`` supplies the probe direction; ``eps_of(k)`` is only
    recorded in diagnostics.  Convergence is judged on the best trailing
    3-iterate Cauchy window; divergence on iterate norm passing the cap.
    An infeasible probe shrinks the whole schedule once, then errors.
    """
    fx = f(x)
    for attempt in range(2):
        scale = 1.0 if attempt == 0 else _SHRINK_ONCE
        steps = []
        values = []
        try:
            for k in range(cfg.max_steps):
                lam = cfg.step0 * scale * cfg.decay ** k
                h = np.asarray(h_of(k, lam), float)
                probe = x + lam * h
                dk = scalar_mul(1.0 / lam, gh_difference(f(probe), fx))
                eps = eps_of(k) * scale if eps_of is not None else 0.0
                steps.append((lam, eps, dk))
                values.append(dk)
                if norm(dk) > cfg.norm_cap:
                    return ScheduleTrace(label, steps, Existence.DOES_NOT_EXIST,
                                         None, float("inf"))
        except DomainError:
            if attempt == 0:
                continue
            raise
        break

    dists = [distance(values[k], values[k - 1]) for k in range(1, len(values))]
    # 3-iterate windows: w[k] covers iterates k-2, k-1, k
    best_w = float("inf")
    best_k = len(values) - 1
    for k in range(2, len(values)):
        w = max(dists[k - 1], dists[k - 2])
        if w < best_w:
            best_w = w
            best_k = k
    if best_w <= cfg.conv_tol:
        return ScheduleTrace(label, steps, Existence.EXISTS, values[best_k], best_w)
    return ScheduleTrace(label, steps, Existence.INCONCLUSIVE, values[best_k], best_w)


def directional_derivative(f: IVF, x, h, cfg: Config = Config()) -> DerivativeEstimate:
    """One-sided directional limit with the direction held fixed."""
    x = np.asarray(x, float)
    h = np.asarray(h, float)
    trace = _run_schedule(f, x, lambda k, lam: h, cfg, "tangent")
    return DerivativeEstimate(value=trace.limit, exists=trace.status,
                              diagnostics=trace.steps, schedules=[trace])


def gateaux_derivative(f: IVF, x, h, cfg: Config = Config()) -> DerivativeEstimate:
    """Directional limit; the Gateaux notion adds map-level linearity, which
    is certified separately by :func:`gateaux_differentiable_at`."""
    return directional_derivative(f, x, h, cfg)


def hadamard_derivative(f: IVF, x, v, cfg: Config = Config(),
                        adversarial: Sequence[Callable] = ()) -> DerivativeEstimate:
    """Joint-limit estimate: the direction is perturbed along with the step.

    Runs the tangent schedule (h = v), ``cfg.num_seeds`` randomized schedules
    ``h_k = v + eps_k u_k`` with fresh seeded unit vectors, and any supplied
    adversarial schedules ``lam -> h(lam)``.  ``EXISTS`` requires every
    schedule to converge to a common interval within ``conv_tol``.
    """
    x = np.asarray(x, float)
    v = np.asarray(v, float)
    traces = [_run_schedule(f, x, lambda k, lam: v, cfg, "tangent")]
    for s in range(cfg.num_seeds):
        rng = rng_for(cfg, f"hadamard:{s}")
        def h_of(k, lam, rng=rng):
            u = rng.normal(size=f.dim)
            nu = np.linalg.norm(u)
            u = u / nu if nu > 0 else np.eye(f.dim)[0]
            return v + cfg.perturb0 * cfg.decay ** k * u
        traces.append(_run_schedule(f, x, h_of, cfg, f"perturbed:{s}",
                                    eps_of=lambda k: cfg.perturb0 * cfg.decay ** k))
    for i, h_fn in enumerate(adversarial):
        traces.append(_run_schedule(f, x, lambda k, lam, fn=h_fn: fn(lam), cfg,
                                    f"adversarial:{i}"))

    primary = traces[0]
    est = DerivativeEstimate(value=None, exists=Existence.INCONCLUSIVE,
                             diagnostics=primary.steps, schedules=traces)
    if any(t.status is Existence.DOES_NOT_EXIST for t in traces):
        est.exists = Existence.DOES_NOT_EXIST
        return est
    if any(t.status is Existence.INCONCLUSIVE for t in traces):
        est.value = primary.limit
        return est
    limits = [t.limit for t in traces]
    spread = max(distance(a, b) for a in limits for b in limits)
    if spread <= cfg.conv_tol:
        est.exists = Existence.EXISTS
        est.value = primary.limit
    elif spread > 10.0 * cfg.conv_tol:
        est.exists = Existence.DOES_NOT_EXIST
        est.value = None
    else:
        est.value = primary.limit
    return est


def estimate_derivative(f: IVF, query: DerivativeQuery, cfg: Config = Config(),
                        **kw) -> DerivativeEstimate:
    if query.kind in (DerivativeKind.DIRECTIONAL, DerivativeKind.GATEAUX):
        return directional_derivative(f, query.point, query.direction, cfg)
    if query.kind is DerivativeKind.HADAMARD:
        return hadamard_derivative(f, query.point, query.direction, cfg, **kw)
    raise ValueError("Frechet queries need a candidate map; use frechet_check")


# ---------------------------------------------------------------------------
# linearity of interval-valued maps
# ---------------------------------------------------------------------------

@dataclass
class LinearMapSample:
    """Probes of a map R^n -> I(R) with the structure linearity checks need.

    ``scale_pairs`` holds (i, j, lam) with probes[j] == lam * probes[i];
    ``add_triples`` holds (i, j, k) with probes[k] == probes[i] + probes[j].
    """

    probes: list
    values: list
    scale_pairs: list
    add_triples: list


@dataclass
class LinearityReport:
    verdict: LinearityVerdict
    homogeneity_failures: list
    additivity_failures: list
    probed: int


def sample_linear_map(map_fn: Callable, dim: int, cfg: Config = Config(),
                      base_directions=None) -> LinearMapSample:
    """Probe ``map_fn`` at base directions, their scalings, and pairwise sums."""
    if base_directions is None:
        bases = [np.eye(dim)[j] for j in range(dim)]
        rng = rng_for(cfg, "linearity")
        extra = rng.normal(size=dim)
        n = np.linalg.norm(extra)
        if n > 0:
            bases.append(extra / n)
    else:
        bases = [np.asarray(b, float) for b in base_directions]

    probes = []
    index = {}

    def probe_id(vec):
        key = tuple(np.round(vec, 12))
        if key not in index:
            index[key] = len(probes)
            probes.append(np.asarray(vec, float))
        return index[key]

    scale_pairs = []
    add_triples = []
    for b in bases:
        i = probe_id(b)
        for lam in cfg.linearity_scales:
            j = probe_id(lam * b)
            scale_pairs.append((i, j, float(lam)))
    for a, b in zip(bases, bases[1:]):
        add_triples.append((probe_id(a), probe_id(b), probe_id(a + b)))
    # opposite pair summing to zero exercises the non-comparable branch
    first = bases[0]
    add_triples.append((probe_id(first), probe_id(-first), probe_id(np.zeros(dim))))

    values = [map_fn(p) for p in probes]
    return LinearMapSample(probes, values, scale_pairs, add_triples)


def is_linear_ivf(sample: LinearMapSample, cfg: Config = Config()) -> LinearityReport:
    """Check homogeneity and the additivity-or-not-comparable clause on a sample."""
    hom_fail = []
    add_fail = []
    incomplete = False

    def tol_for(*vals, lam=1.0):
        scale = max([norm(v) for v in vals] + [1.0])
        return 10.0 * cfg.conv_tol * (1.0 + abs(lam)) * scale

    for (i, j, lam) in sample.scale_pairs:
        vi, vj = sample.values[i], sample.values[j]
        if vi is None or vj is None:
            incomplete = True
            continue
        expect = scalar_mul(lam, vi)
        if distance(vj, expect) > tol_for(vi, vj, lam=lam):
            hom_fail.append({"base": tuple(sample.probes[i]), "lam": lam,
                             "expected": expect, "got": vj})

    for (i, j, k) in sample.add_triples:
        vi, vj, vk = sample.values[i], sample.values[j], sample.values[k]
        if vi is None or vj is None or vk is None:
            incomplete = True
            continue
        s = add(vi, vj)
        tol = tol_for(vi, vj, vk)
        if distance(s, vk) <= tol:
            continue
        nested = ((s.lo > vk.lo + tol and s.hi < vk.hi - tol)
                  or (vk.lo > s.lo + tol and vk.hi < s.hi - tol))
        if nested:
            continue   # robustly not comparable: allowed by the definition
        add_fail.append({"x": tuple(sample.probes[i]), "y": tuple(sample.probes[j]),
                         "sum_value": s, "joint_value": vk})

    if hom_fail or add_fail:
        verdict = LinearityVerdict.NOT_LINEAR
    elif incomplete:
        verdict = LinearityVerdict.INCONCLUSIVE
    else:
        verdict = LinearityVerdict.LINEAR
    return LinearityReport(verdict, hom_fail, add_fail, probed=len(sample.probes))


# ---------------------------------------------------------------------------
# full differentiability verdicts
# ---------------------------------------------------------------------------

class DiffVerdict(Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class AdversarialSchedule:
    """A direction-specific stress schedule ``lam -> h(lam)`` with h(lam) -> direction."""

    direction: tuple
    h_fn: Callable
    label: str = "adversarial"


@dataclass
class DifferentiabilityReport:
    verdict: DiffVerdict
    per_direction: dict
    linearity: Optional[LinearityReport]
    reason: str


def _existence_directions(dim: int, cfg: Config, label: str):
    dirs = []
    for j in range(dim):
        e = np.eye(dim)[j]
        dirs.append(e)
        dirs.append(-e)
    rng = rng_for(cfg, label)
    for _ in range(2):
        u = rng.normal(size=dim)
        n = np.linalg.norm(u)
        if n > 0:
            dirs.append(u / n)
    return dirs


def _differentiability(f: IVF, x, cfg: Config, estimator,
                       adversarial: Sequence[AdversarialSchedule], label: str):
    x = np.asarray(x, float)
    adv_by_dir = {}
    for sch in adversarial:
        adv_by_dir.setdefault(tuple(np.round(np.asarray(sch.direction, float), 12)), []).append(sch.h_fn)

    def schedules_for(v):
        return adv_by_dir.get(tuple(np.round(np.asarray(v, float), 12)), [])

    per_direction = {}

    def map_fn(v):
        key = tuple(np.round(np.asarray(v, float), 12))
        if key not in per_direction:
            per_direction[key] = estimator(v, schedules_for(v))
        return per_direction[key].value

    dirs = _existence_directions(f.dim, cfg, label) + [np.asarray(s.direction, float)
                                                       for s in adversarial]
    for v in dirs:
        map_fn(v)
    if any(e.exists is Existence.DOES_NOT_EXIST for e in per_direction.values()):
        return DifferentiabilityReport(DiffVerdict.NO, per_direction, None,
                                       "a sampled direction has no limit")

    sample = sample_linear_map(map_fn, f.dim, cfg)
    lin = is_linear_ivf(sample, cfg)
    if any(e.exists is Existence.DOES_NOT_EXIST for e in per_direction.values()):
        return DifferentiabilityReport(DiffVerdict.NO, per_direction, lin,
                                       "a sampled direction has no limit")
    if lin.verdict is LinearityVerdict.NOT_LINEAR:
        return DifferentiabilityReport(DiffVerdict.NO, per_direction, lin,
                                       "directional limits exist but the map is not linear")
    if (lin.verdict is LinearityVerdict.LINEAR
            and all(e.exists is Existence.EXISTS for e in per_direction.values())):
        return DifferentiabilityReport(DiffVerdict.YES, per_direction, lin,
                                       "limits exist on all sampled directions and the map is linear")
    return DifferentiabilityReport(DiffVerdict.INCONCLUSIVE, per_direction, lin,
                                   "some schedule did not converge decisively")


def hadamard_differentiable_at(f: IVF, x, cfg: Config = Config(),
                               adversarial: Sequence[AdversarialSchedule] = ()
                               ) -> DifferentiabilityReport:
    """Existence of the joint limit over sampled directions plus map linearity."""
    return _differentiability(
        f, x, cfg,
        lambda v, adv: hadamard_derivative(f, x, v, cfg, adversarial=adv),
        adversarial, "hadamard_directions")


def gateaux_differentiable_at(f: IVF, x, cfg: Config = Config()) -> DifferentiabilityReport:
    """Existence of fixed-direction limits over sampled directions plus map linearity."""
    return _differentiability(
        f, x, cfg,
        lambda v, adv: directional_derivative(f, x, v, cfg),
        (), "gateaux_directions")


# ---------------------------------------------------------------------------
# Frechet check
# ---------------------------------------------------------------------------

@dataclass
class FrechetReport:
    verdict: DiffVerdict
    radii: list
    residual_trace: list
    linearity: LinearityReport
    reason: str


def frechet_check(f: IVF, x, candidate: Callable, cfg: Config = Config(),
                  extra_probes: Optional[Callable] = None) -> FrechetReport:
    """Does ``candidate`` act as a Frechet derivative of ``f`` at ``x``?

    The candidate must pass the interval-linearity check (otherwise
    :class:`NotLinearCandidate` is raised).  The sphere-max residual

        max_h || (F(x+h) gh- F(x)) gh- candidate(h) || / ||h||,  ||h|| = r

    is tracked down a geometric radius schedule; ``extra_probes(r)`` may add
    adversarial probe points (e.g. near singular curves) at each radius.
    """
    x = np.asarray(x, float)
    sample = sample_linear_map(candidate, f.dim, cfg)
    lin = is_linear_ivf(sample, cfg)
    if lin.verdict is LinearityVerdict.NOT_LINEAR:
        raise NotLinearCandidate(
            f"candidate map fails linearity: {len(lin.homogeneity_failures)} homogeneity,"
            f" {len(lin.additivity_failures)} additivity failures")

    dirs = _existence_directions(f.dim, cfg, "frechet_sphere")
    rng = rng_for(cfg, "frechet_extra")
    for _ in range(max(0, min(cfg.num_directions, 32) - len(dirs))):
        u = rng.normal(size=f.dim)
        n = np.linalg.norm(u)
        if n > 0:
            dirs.append(u / n)

    fx = f(x)
    radii = []
    residuals = []
    for k in range(cfg.max_steps):
        r = cfg.step0 * cfg.decay ** k
        probes = [r * d for d in dirs]
        if extra_probes is not None:
            probes.extend(np.asarray(p, float) for p in extra_probes(r))
        worst = None
        for h in probes:
            hn = np.linalg.norm(h)
            if hn == 0.0 or not f.in_domain(x + h):
                continue
            resid = norm(gh_difference(gh_difference(f(x + h), fx),
                                       candidate(h))) / hn
            worst = resid if worst is None else max(worst, resid)
        if worst is None:
            continue
        radii.append(r)
        residuals.append(worst)
        if worst > cfg.norm_cap:
            return FrechetReport(DiffVerdict.NO, radii, residuals, lin,
                                 "residual diverged past the norm cap")
    if not residuals:
        return FrechetReport(DiffVerdict.INCONCLUSIVE, radii, residuals, lin,
                             "no feasible probes")
    best = min(residuals)
    if best <= cfg.conv_tol:
        return FrechetReport(DiffVerdict.YES, radii, residuals, lin,
                             "residual fell below the agreement tolerance")
    if best >= 0.25 * residuals[0] and best > 10.0 * cfg.conv_tol:
        return FrechetReport(DiffVerdict.NO, radii, residuals, lin,
                             "residual plateaued well above tolerance")
    return FrechetReport(DiffVerdict.INCONCLUSIVE, radii, residuals, lin,
                         "residual decreased but did not certify")


# ---------------------------------------------------------------------------
# continuity and convexity
# ---------------------------------------------------------------------------

class ContinuityVerdict(Enum):
    CONTINUOUS = "continuous"
    DISCONTINUOUS = "discontinuous"
    INCONCLUSIVE = "inconclusive"


@dataclass
class ContinuityReport:
    verdict: ContinuityVerdict
    radii: list
    moduli: list


def is_gh_continuous_at(f: IVF, x, cfg: Config = Config()) -> ContinuityReport:
    """Track the local modulus max_d ||F(x + r d) gh- F(x)|| down a radius schedule."""
    x = np.asarray(x, float)
    fx = f(x)
    dirs = _existence_directions(f.dim, cfg, "continuity")
    rng = rng_for(cfg, "continuity_extra")
    for _ in range(max(0, min(cfg.num_directions, 16) - len(dirs))):
        u = rng.normal(size=f.dim)
        n = np.linalg.norm(u)
        if n > 0:
            dirs.append(u / n)
    radii = []
    moduli = []
    for k in range(cfg.max_steps):
        r = cfg.step0 * cfg.decay ** k
        worst = None
        for d in dirs:
            p = x + r * d
            if not f.in_domain(p):
                continue
            m = distance(f(p), fx)
            worst = m if worst is None else max(worst, m)
        if worst is None:
            continue
        radii.append(r)
        moduli.append(worst)
    if not moduli:
        return ContinuityReport(ContinuityVerdict.INCONCLUSIVE, radii, moduli)
    if moduli[-1] <= cfg.conv_tol:
        return ContinuityReport(ContinuityVerdict.CONTINUOUS, radii, moduli)
    if moduli[-1] >= 0.5 * moduli[0]:
        return ContinuityReport(ContinuityVerdict.DISCONTINUOUS, radii, moduli)
    return ContinuityReport(ContinuityVerdict.INCONCLUSIVE, radii, moduli)


class ConvexityVerdict(Enum):
    CONVEX = "convex"
    NOT_CONVEX = "not_convex"
    INCONCLUSIVE = "inconclusive"


@dataclass
class ConvexityReport:
    verdict: ConvexityVerdict
    witness: Optional[dict]
    checked: int


def is_convex_on(f: IVF, box: Box, cfg: Config = Config()) -> ConvexityReport:
    """Sampled midpoint/chord test of both endpoint functions on a box.

    An IVF is convex exactly when both endpoint functions are convex, so a
    single chord violation of either endpoint is a counterexample witness.
    """
    if box.dim != f.dim:
        raise DimensionError("box dimension != function dimension")
    rng = rng_for(cfg, "convexity")
    checked = 0
    n = max(cfg.convexity_samples, 8)
    xs = box.sample(rng, n)
    ys = box.sample(rng, n)
    lams = np.concatenate([[0.5, 0.25, 0.75], rng.random(n - 3)]) if n > 3 else rng.random(n)
    for x1, x2, lam in zip(xs, ys, lams):
        xm = lam * x1 + (1 - lam) * x2
        if not (f.in_domain(x1) and f.in_domain(x2) and f.in_domain(xm)):
            continue
        a, b, m = f(x1), f(x2), f(xm)
        checked += 1
        for endpoint, fa, fb, fm in (("lower", a.lo, b.lo, m.lo),
                                     ("upper", a.hi, b.hi, m.hi)):
            chord = lam * fa + (1 - lam) * fb
            if fm > chord + 1e-9 * (1.0 + abs(chord)):
                return ConvexityReport(
                    ConvexityVerdict.NOT_CONVEX,
                    {"x1": tuple(x1), "x2": tuple(x2), "lam": float(lam),
                     "endpoint": endpoint, "value": fm, "chord": chord},
                    checked)
    if checked == 0:
        return ConvexityReport(ConvexityVerdict.INCONCLUSIVE, None, 0)
    return ConvexityReport(ConvexityVerdict.CONVEX, None, checked)


def convexity_inequality(f: IVF, xbar, v, deriv_value: Interval,
                         cfg: Config = Config()) -> dict:
    """Both forms of the convexity/derivative inequality at (xbar, v).

    ``strong`` is D ⪯ F(v) gh- F(xbar); ``weak`` is F(v) gh- F(xbar) ⊀ D.
    For convex F (and D the Hadamard value in direction v - xbar) the strong
    form holds, and the weak form is its published consequence.
    """
    diff = gh_difference(f(v), f(np.asarray(xbar, float)))
    slack = cfg.conv_tol * (1.0 + norm(diff) + norm(deriv_value))
    return {
        "difference": diff,
        "derivative": deriv_value,
        "strong": dominates(deriv_value, diff, slack),
        "weak": not strictly_dominates(diff, deriv_value, slack),
    }


# ---------------------------------------------------------------------------
# chain rule, paths, pointwise maxima
# ---------------------------------------------------------------------------

def _vector_limit(g: Callable, x: np.ndarray, v: np.ndarray, cfg: Config,
                  out_dim: int) -> np.ndarray:
    """Joint-limit tangent of a real vector map: lim (g(x+lam h)-g(x))/lam."""
    gx = np.asarray(g(x), float)
    traces = []
    plans = [lambda k, lam: v]
    for s in range(max(1, cfg.num_seeds // 2)):
        rng = rng_for(cfg, f"vector_limit:{s}")
        def plan(k, lam, rng=rng):
            u = rng.normal(size=x.size)
            n = np.linalg.norm(u)
            u = u / n if n > 0 else np.eye(x.size)[0]
            return v + cfg.perturb0 * cfg.decay ** k * u
        plans.append(plan)
    for plan in plans:
        vals = []
        for k in range(cfg.max_steps):
            lam = cfg.step0 * cfg.decay ** k
            h = plan(k, lam)
            d = (np.asarray(g(x + lam * h), float) - gx) / lam
            if not np.all(np.isfinite(d)) or np.linalg.norm(d) > cfg.norm_cap:
                raise PreconditionFailed("inner map has no finite tangent along the schedule")
            vals.append(d)
        dists = [np.linalg.norm(vals[k] - vals[k - 1]) for k in range(1, len(vals))]
        best_w, best_k = float("inf"), len(vals) - 1
        for k in range(2, len(vals)):
            w = max(dists[k - 1], dists[k - 2])
            if w < best_w:
                best_w, best_k = w, k
        if best_w > cfg.conv_tol:
            raise PreconditionFailed("inner tangent schedule did not converge")
        traces.append(vals[best_k])
    spread = max(np.linalg.norm(a - b) for a in traces for b in traces)
    if spread > 10 * cfg.conv_tol:
        raise PreconditionFailed("inner tangent depends on the perturbation schedule")
    return traces[0]


@dataclass
class ChainRuleReport:
    verdict: DiffVerdict
    chain_value: Optional[Interval]
    direct: DerivativeEstimate
    outer: DerivativeEstimate
    inner_tangent: tuple
    mismatch: Optional[float]


def chain_rule(f: IVF, inner: Callable, x, v, cfg: Config = Config(),
               inner_adversarial: Sequence[Callable] = ()) -> ChainRuleReport:
    """Compare F_H(inner(x))(inner'(x)v) against the direct derivative of F∘inner.

    Raises :class:`PreconditionFailed` when the inner tangent does not settle
    or the outer Hadamard estimate at the image point is not certified
    (adversarial schedules for the outer estimate go in ``inner_adversarial``).
    """
    x = np.asarray(x, float)
    v = np.asarray(v, float)
    ybar = np.asarray(inner(x), float)
    if ybar.shape != (f.dim,):
        raise DimensionError("inner map image dimension != outer function dimension")
    z = _vector_limit(inner, x, v, cfg, f.dim)
    outer = hadamard_derivative(f, ybar, z, cfg, adversarial=inner_adversarial)
    if outer.exists is not Existence.EXISTS:
        raise PreconditionFailed(
            f"outer derivative at the inner image is {outer.exists.value}", detail=outer)

    if f.domain is None:
        comp_domain = None
    else:
        comp_domain = lambda t: f.in_domain(np.asarray(inner(np.asarray(t, float)), float))
    composed = IVF(lambda t: f.lower(np.asarray(inner(t), float)),
                   lambda t: f.upper(np.asarray(inner(t), float)),
                   dim=x.size, domain=comp_domain,
                   name=f"{f.name or 'F'}∘inner")
    direct = hadamard_derivative(composed, x, v, cfg)
    if direct.exists is Existence.EXISTS:
        mism = distance(direct.value, outer.value)
        tol = cfg.conv_tol * (1.0 + norm(outer.value))
        verdict = DiffVerdict.YES if mism <= tol else DiffVerdict.INCONCLUSIVE
    else:
        mism = None
        verdict = DiffVerdict.INCONCLUSIVE
    return ChainRuleReport(verdict, outer.value, direct, outer, tuple(z), mism)


@dataclass
class PathReport:
    verdict: DiffVerdict
    along_path: DerivativeEstimate
    at_point: DerivativeEstimate
    tangent: tuple
    mismatch: Optional[float]


def path_derivative_check(f: IVF, path: Callable, cfg: Config = Config()) -> PathReport:
    """(F ∘ path)'(0) against F_H(path(0)) applied to the path tangent."""
    def path_vec(t):
        return np.asarray(path(float(np.asarray(t).reshape(-1)[0])), float)

    xbar = path_vec([0.0])
    if xbar.shape != (f.dim,):
        raise DimensionError("path image dimension != function dimension")
    tangent = _vector_limit(path_vec, np.zeros(1), np.ones(1), cfg, f.dim)
    composed = IVF(lambda t: f.lower(path_vec(t)), lambda t: f.upper(path_vec(t)),
                   dim=1, name="F∘path")
    along = hadamard_derivative(composed, [0.0], [1.0], cfg)
    at_pt = hadamard_derivative(f, xbar, tangent, cfg)
    if along.exists is Existence.EXISTS and at_pt.exists is Existence.EXISTS:
        mism = distance(along.value, at_pt.value)
        tol = cfg.conv_tol * (1.0 + norm(at_pt.value))
        verdict = DiffVerdict.YES if mism <= tol else DiffVerdict.INCONCLUSIVE
    else:
        mism = None
        verdict = DiffVerdict.INCONCLUSIVE
    return PathReport(verdict, along, at_pt, tuple(tangent), mism)


@dataclass
class MaxFamilyReport:
    value: Interval
    active: list
    member_values: dict
    direct: DerivativeEstimate
    mismatch: Optional[float]
    verdict: DiffVerdict


def pointwise_max(members: Sequence[IVF], name: str = "max") -> IVF:
    """Pointwise maximum of pairwise-comparable IVFs (in the dominance order)."""
    members = list(members)
    if not members:
        raise DimensionError("need at least one member")
    dim = members[0].dim
    if any(m.dim != dim for m in members):
        raise DimensionError("members must share a dimension")

    def eval_max(x):
        vals = [m(x) for m in members]
        acc = vals[0]
        try:
            for v in vals[1:]:
                acc = max_comparable(acc, v)
        except NotComparableError as e:
            raise NotComparableFamily(
                f"family members not comparable at {np.asarray(x, float)}: {e}") from e
        return acc

    return IVF(lambda x: eval_max(x).lo, lambda x: eval_max(x).hi, dim,
               domain=members[0].domain, name=name)


def max_family_derivative(members: Sequence[IVF], x, h,
                          cfg: Config = Config()) -> MaxFamilyReport:
    """Derivative of a pointwise max: the max of active members' derivatives.

    Activity uses the relative tolerance ``cmp_tol * (1 + ||F(x)||)``.  Every
    active member must have a certified Hadamard estimate at ``x`` in
    direction ``h`` (:class:`PreconditionFailed` otherwise), and the result
    is cross-checked against the direct estimate on the max function itself.
    """
    members = list(members)
    x = np.asarray(x, float)
    h = np.asarray(h, float)
    fmax = pointwise_max(members)
    fx = fmax(x)
    act_tol = cfg.cmp_tol * (1.0 + norm(fx))
    active = [i for i, m in enumerate(members)
              if norm(gh_difference(m(x), fx)) <= act_tol]
    if not active:
        raise PreconditionFailed("no member attains the maximum within tolerance")

    member_values = {}
    for i in active:
        est = hadamard_derivative(members[i], x, h, cfg)
        if est.exists is not Existence.EXISTS:
            raise PreconditionFailed(
                f"active member {i} has no certified derivative ({est.exists.value})",
                detail=est)
        member_values[i] = est.value
    acc = None
    try:
        for i in active:
            acc = member_values[i] if acc is None else max_comparable(acc, member_values[i])
    except NotComparableError as e:
        raise NotComparableFamily(f"active derivative values not comparable: {e}") from e

    direct = hadamard_derivative(fmax, x, h, cfg)
    if direct.exists is Existence.EXISTS:
        mism = distance(direct.value, acc)
        verdict = (DiffVerdict.YES if mism <= cfg.conv_tol * (1.0 + norm(acc))
                   else DiffVerdict.INCONCLUSIVE)
    else:
        mism = None
        verdict = DiffVerdict.INCONCLUSIVE
    return MaxFamilyReport(acc, active, member_values, direct, mism, verdict)
