"""Hard-margin SVM for interval-valued samples.

Each sample is a box (an interval per feature) with a crisp ±1 label.  The
separation constraint per sample is

    [1, 1]  gh-  y_i * (w·X_i ⊕ b)   ⪯   [0, 0],

where w·X_i is the interval dot product; for ordered endpoints this says the
classical margin y_i (w·z + b) >= 1 at every corner z of the box.  Training
therefore minimizes ||w||^2 / 2 subject to the finitely many corner
constraints, and is solved exactly by enumerating candidate active sets of
corner rows (at most n_features + 1 of them can be needed), solving each
equality-constrained KKT system, and keeping the feasible KKT point —
deterministic and solver-free, at the price of hard caps on problem size.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

import numpy as np

from .config import Config
from .exceptions import (
    DimensionError,
    EmptyBiasSet,
    NotSeparable,
    ParseError,
    ScaleExceeded,
)
from .intervals import (
    Interval,
    IntervalVector,
    add,
    gh_difference,
    norm,
    scalar_mul,
    zero_containment_residual,
)

_ONE = Interval(1.0, 1.0)


@dataclass(frozen=True)
class SVMDataset:
    """Interval-valued samples with ±1 labels (labels may be None for
    unlabeled classification input)."""

    samples: tuple
    labels: Optional[tuple]

    def __post_init__(self):
        samples = tuple(self.samples)
        if not samples:
            raise ParseError("dataset has no samples")
        if any(not isinstance(s, IntervalVector) for s in samples):
            raise ParseError("samples must be IntervalVectors")
        d = len(samples[0])
        if any(len(s) != d for s in samples):
            raise DimensionError("samples must share a feature count")
        object.__setattr__(self, "samples", samples)
        if self.labels is not None:
            labels = tuple(int(v) for v in self.labels)
            if len(labels) != len(samples):
                raise ParseError("label count != sample count")
            if any(v not in (-1, 1) for v in labels):
                raise ParseError("labels must be -1 or +1")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_arrays(cls, lo, hi, labels=None) -> "SVMDataset":
        lo = np.atleast_2d(np.asarray(lo, float))
        hi = np.atleast_2d(np.asarray(hi, float))
        if lo.shape != hi.shape:
            raise DimensionError("lo/hi arrays must have equal shape")
        samples = tuple(IntervalVector.from_arrays(a, b) for a, b in zip(lo, hi))
        return cls(samples, None if labels is None else tuple(labels))

    @property
    def n_samples(self) -> int:
        return len(self.samples)

    @property
    def n_features(self) -> int:
        return len(self.samples[0])

    def widen(self, delta: float) -> "SVMDataset":
        """Symmetrically widen every feature interval by delta per side."""
        return SVMDataset(tuple(s.widen(delta) for s in self.samples), self.labels)


@dataclass(frozen=True)
class SVMSolution:
    w: tuple
    b: float
    duals: tuple             # u_i per sample, aggregated over its corners
    support_indices: tuple
    objective: float         # ||w||^2 / 2
    margin_width: float      # 2 / ||w||
    n_features: int

    @property
    def w_array(self) -> np.ndarray:
        return np.asarray(self.w, float)


def dot_interval(w, x: IntervalVector) -> Interval:
    """Interval dot product sum_j w_j * X_j for a crisp weight vector."""
    return x.dot(np.asarray(w, float))


def constraint_eval(w, b: float, x: IntervalVector, y: int) -> Interval:
    """G = [1,1] gh- y*(w·x ⊕ b); feasible (all corners at margin >= 1) iff G.hi <= 0."""
    score = add(dot_interval(w, x), Interval(float(b), float(b)))
    return gh_difference(_ONE, scalar_mul(float(y), score))


def worst_margin(w, b: float, dataset: SVMDataset) -> float:
    """min_i over samples of the worst-corner classical margin y_i (w·z + b)."""
    if dataset.labels is None:
        raise ParseError("worst_margin needs labels")
    worst = np.inf
    for x, y in zip(dataset.samples, dataset.labels):
        m = scalar_mul(float(y), add(dot_interval(w, x), Interval(b, b)))
        worst = min(worst, m.lo)
    return float(worst)


def _corner_rows(dataset: SVMDataset):
    """(corner point, label, sample index) rows; corners deduped per sample."""
    rows = []
    for i, (x, y) in enumerate(zip(dataset.samples, dataset.labels)):
        seen = set()
        for z in x.corners():
            key = tuple(z)
            if key in seen:
                continue
            seen.add(key)
            rows.append((np.asarray(z, float), y, i))
    return rows


def _overlap_witness(dataset: SVMDataset):
    for i in range(dataset.n_samples):
        for j in range(i + 1, dataset.n_samples):
            if dataset.labels[i] == dataset.labels[j]:
                continue
            xi, xj = dataset.samples[i], dataset.samples[j]
            if all(xi[f].lo <= xj[f].hi and xj[f].lo <= xi[f].hi
                   for f in range(dataset.n_features)):
                return (i, j)
    return None


def train(dataset: SVMDataset, cfg: Config = Config()) -> SVMSolution:
    """Exact hard-margin fit by corner expansion + active-set enumeration.

    Any feasible KKT point of the convex corner QP is its global optimum, so
    the enumeration returns the minimum-norm accepted candidate (ties broken
    by enumeration order, which is lexicographic in row indices).  Raises
    :class:`NotSeparable` — with an overlapping opposite-label box pair as
    witness when one exists — if no subset yields a feasible KKT point, and
    :class:`ScaleExceeded` when the instance is beyond the enumeration caps.
    """
    if dataset.labels is None:
        raise ParseError("training requires labels")
    n, d = dataset.n_samples, dataset.n_features
    if d > cfg.svm_max_dim:
        raise ScaleExceeded(f"{d} features exceeds the cap of {cfg.svm_max_dim}")
    if n > cfg.svm_max_samples:
        raise ScaleExceeded(f"{n} samples exceeds the cap of {cfg.svm_max_samples}")

    labels = set(dataset.labels)
    if labels == {1} or labels == {-1}:
        y = dataset.labels[0]
        return SVMSolution(w=(0.0,) * d, b=float(y), duals=(0.0,) * n,
                           support_indices=(), objective=0.0,
                           margin_width=float("inf"), n_features=d)

    rows = _corner_rows(dataset)
    big_z = np.array([r[0] for r in rows])
    big_y = np.array([r[1] for r in rows], float)
    owner = [r[2] for r in rows]
    big_n = len(rows)
    max_k = d + 1
    total = sum(comb(big_n, min(k, big_n)) for k in range(1, max_k + 1))
    if total > cfg.svm_enum_cap:
        raise ScaleExceeded(
            f"{total} candidate active sets exceed the cap of {cfg.svm_enum_cap}")

    scale = max(1.0, float(np.max(np.abs(big_z))))
    best = None
    for k in range(1, max_k + 1):
        for subset in itertools.combinations(range(big_n), k):
            S = list(subset)
            zs = big_z[S]
            ys = big_y[S]
            gram = (ys[:, None] * ys[None, :]) * (zs @ zs.T)
            a = np.zeros((k + 1, k + 1))
            a[:k, :k] = gram
            a[:k, k] = ys
            a[k, :k] = ys
            rhs = np.concatenate([np.ones(k), [0.0]])
            try:
                sol = np.linalg.solve(a, rhs)
            except np.linalg.LinAlgError:
                continue
            if not np.all(np.isfinite(sol)):
                continue
            if np.linalg.norm(a @ sol - rhs) > 1e-8 * (1.0 + np.linalg.norm(rhs)):
                continue
            mu = sol[:k]
            b = float(sol[k])
            if np.any(mu < -1e-9):
                continue
            w = (mu * ys) @ zs
            margins = big_y * (big_z @ w + b)
            tol = 1e-8 * (1.0 + np.linalg.norm(w) * scale + abs(b))
            if np.min(margins) < 1.0 - tol:
                continue
            obj = 0.5 * float(w @ w)
            if best is None or obj < best["obj"] - 1e-12 * (1.0 + best["obj"]):
                best = {"obj": obj, "w": w, "b": b, "mu": mu, "rows": S}

    if best is None:
        witness = _overlap_witness(dataset)
        raise NotSeparable("no separating hyperplane with unit margins on all corners",
                           witness_pair=witness)

    duals = np.zeros(n)
    for mu_j, row_idx in zip(best["mu"], best["rows"]):
        duals[owner[row_idx]] += max(float(mu_j), 0.0)
    dual_tol = 1e-9 * (1.0 + float(np.max(duals, initial=0.0)))
    support = tuple(int(i) for i in range(n) if duals[i] > dual_tol)
    wn = float(np.linalg.norm(best["w"]))
    return SVMSolution(w=tuple(float(v) for v in best["w"]), b=float(best["b"]),
                       duals=tuple(float(v) for v in duals),
                       support_indices=support, objective=best["obj"],
                       margin_width=float("inf") if wn == 0.0 else 2.0 / wn,
                       n_features=d)


def kkt_verify(solution: SVMSolution, dataset: SVMDataset,
               cfg: Config = Config()) -> dict:
    """Interval KKT residuals of a trained (or asserted) solution.

    Stationarity is the per-feature containment 0 ∈ [w_j, w_j] ⊕
    Σ_i (-u_i y_i) ⊙ X_{ij}; slackness is reported in two readings — strict
    (u_i · ||G_i||, which is generically nonzero for genuinely interval
    supports) and relaxed (u_i · |G_i.hi|, binding at the worst corner).  The
    overall flag uses the relaxed reading.
    """
    if dataset.labels is None:
        raise ParseError("kkt_verify needs labels")
    if solution.n_features != dataset.n_features:
        raise DimensionError("solution/dataset feature mismatch")
    w = solution.w_array
    u = np.asarray(solution.duals, float)
    y = np.asarray(dataset.labels, float)

    stationarity = []
    stat_resid = 0.0
    for j in range(dataset.n_features):
        acc = Interval(float(w[j]), float(w[j]))
        for i, x in enumerate(dataset.samples):
            if u[i] == 0.0:
                continue
            acc = add(acc, scalar_mul(-u[i] * y[i], x[j]))
        r = zero_containment_residual(acc)
        stationarity.append({"feature": j, "interval": acc, "residual": r})
        stat_resid = max(stat_resid, r)

    balance = abs(float(u @ y))
    feas_worst = worst_margin(w, solution.b, dataset)
    slack = []
    strict_worst = 0.0
    relaxed_worst = 0.0
    for i, (x, yi) in enumerate(zip(dataset.samples, dataset.labels)):
        g = constraint_eval(w, solution.b, x, yi)
        strict = u[i] * norm(g)
        relaxed = u[i] * abs(g.hi)
        slack.append({"sample": i, "constraint": g,
                      "strict": strict, "relaxed": relaxed})
        strict_worst = max(strict_worst, strict)
        relaxed_worst = max(relaxed_worst, relaxed)

    scale = 1.0 + float(np.max(np.abs(w), initial=0.0)) + float(np.max(u, initial=0.0))
    passes = (stat_resid <= cfg.feas_tol * scale
              and balance <= cfg.feas_tol * scale
              and feas_worst >= 1.0 - cfg.feas_tol * scale
              and relaxed_worst <= cfg.slack_tol * scale
              and bool(np.all(u >= -cfg.feas_tol)))
    return {
        "passes": passes,
        "stationarity": stationarity,
        "stationarity_residual": stat_resid,
        "dual_balance": balance,
        "worst_margin": feas_worst,
        "slackness": slack,
        "slackness_strict": strict_worst,
        "slackness_relaxed": relaxed_worst,
    }


def bias_set(solution_or_w, dataset: SVMDataset, cfg: Config = Config()) -> Interval:
    """All biases keeping every sample's corner margins >= 1 for the fixed w.

    For y=+1 the binding corner gives b >= 1 - (w·X).lo, for y=-1 it gives
    b <= -1 - (w·X).hi; the bias set is the intersection of these rays.
    Raises :class:`EmptyBiasSet` when the rays do not meet (or when a class
    is missing, leaving the set unbounded).
    """
    if dataset.labels is None:
        raise ParseError("bias_set needs labels")
    w = solution_or_w.w_array if isinstance(solution_or_w, SVMSolution) \
        else np.asarray(solution_or_w, float)
    lo_b, hi_b = -np.inf, np.inf
    for x, y in zip(dataset.samples, dataset.labels):
        s = dot_interval(w, x)
        if y == 1:
            lo_b = max(lo_b, 1.0 - s.lo)
        else:
            hi_b = min(hi_b, -1.0 - s.hi)
    if not (np.isfinite(lo_b) and np.isfinite(hi_b)):
        raise EmptyBiasSet("both classes are needed to bound the bias set")
    tol = cfg.feas_tol * (1.0 + abs(lo_b) + abs(hi_b))
    if lo_b > hi_b + tol:
        raise EmptyBiasSet(f"bias rays do not intersect: [{lo_b}, {hi_b}]")
    return Interval(min(lo_b, hi_b), max(lo_b, hi_b))


def classify(solution: SVMSolution, dataset: SVMDataset,
             cfg: Config = Config()) -> list:
    """Three-valued labels: +1/-1 when the score interval w·X ⊕ b clears zero,
    0 (ambiguous) when it straddles; the midpoint sign is also reported."""
    if solution.n_features != dataset.n_features:
        raise DimensionError("solution/dataset feature mismatch")
    out = []
    for x in dataset.samples:
        score = add(dot_interval(solution.w, x),
                    Interval(solution.b, solution.b))
        if score.lo > 0.0:
            label = 1
        elif score.hi < 0.0:
            label = -1
        else:
            label = 0
        out.append({"score": score, "label": label,
                    "midpoint_label": 1 if score.midpoint >= 0.0 else -1})
    return out
