"""Compact-interval arithmetic, the generalized difference, and dominance orders.

An :class:`Interval` is an ordered pair ``[lo, hi]`` of finite floats with
``lo <= hi``.  Arithmetic follows the usual endpoint rules; subtraction comes
in two flavours:

* ``moore_sub(a, b) = a + (-b)``, which never has zero width unless both
  operands are degenerate, and
* ``gh_difference(a, b)``, the generalized difference
  ``[min(a.lo-b.lo, a.hi-b.hi), max(a.lo-b.lo, a.hi-b.hi)]``, for which
  ``A ⊖ A = [0,0]`` exactly.

The partial order used throughout the package is the endpoint order:
``a`` dominates ``b`` when ``a.lo <= b.lo`` and ``a.hi <= b.hi`` (smaller is
better).  Strict dominance additionally requires one strict endpoint
inequality, and "better-strict" requires both.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

from .exceptions import (
    DimensionError,
    DivisionByIntervalContainingZero,
    NotComparableError,
)

#: Default endpoint tie tolerance (matches Config.cmp_tol).
CMP_TOL = 1e-12


@dataclass(frozen=True)
class Interval:
    """Closed bounded interval ``[lo, hi]`` with finite endpoints."""

    lo: float
    hi: float

    def __post_init__(self):
        lo = float(self.lo)
        hi = float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"interval endpoints must be finite, got [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"interval endpoints out of order: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    # -- constructors -------------------------------------------------------
    @classmethod
    def degenerate(cls, value: float) -> "Interval":
        return cls(value, value)

    @classmethod
    def zero(cls) -> "Interval":
        return cls(0.0, 0.0)

    # -- descriptive --------------------------------------------------------
    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def is_degenerate(self, tol: float = 0.0) -> bool:
        return self.width <= tol

    # -- operator sugar (delegates to the module-level ops) -----------------
    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return moore_sub(self, other)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, Interval):
            return mul(self, other)
        return scalar_mul(float(other), self)

    __rmul__ = __mul__

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


ZERO = Interval(0.0, 0.0)
ONE = Interval(1.0, 1.0)


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def add(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo + b.lo, a.hi + b.hi)


def neg(a: Interval) -> Interval:
    return Interval(-a.hi, -a.lo)


def moore_sub(a: Interval, b: Interval) -> Interval:
    """Minkowski difference ``a + (-b)``."""
    return Interval(a.lo - b.hi, a.hi - b.lo)


def mul(a: Interval, b: Interval) -> Interval:
    p = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return Interval(min(p), max(p))


def scalar_mul(lam: float, a: Interval) -> Interval:
    lam = float(lam)
    x, y = lam * a.lo, lam * a.hi
    if x <= y:
        return Interval(x, y)
    return Interval(y, x)


def div(a: Interval, b: Interval) -> Interval:
    if b.lo <= 0.0 <= b.hi:
        raise DivisionByIntervalContainingZero(f"divisor {b} contains zero")
    return mul(a, Interval(1.0 / b.hi, 1.0 / b.lo))


def gh_difference(a: Interval, b: Interval) -> Interval:
    """Generalized difference: ``a ⊖ a`` is exactly ``[0, 0]``."""
    dl = a.lo - b.lo
    du = a.hi - b.hi
    if dl <= du:
        return Interval(dl, du)
    return Interval(du, dl)


def norm(a: Interval) -> float:
    """``max(|lo|, |hi|)`` — the distance of the interval from zero's hull."""
    return max(abs(a.lo), abs(a.hi))


def distance(a: Interval, b: Interval) -> float:
    """Hausdorff distance ``max(|a.lo-b.lo|, |a.hi-b.hi|)`` (= norm of the gH-difference)."""
    return max(abs(a.lo - b.lo), abs(a.hi - b.hi))


def contains_zero(a: Interval, tol: float = 0.0) -> bool:
    return a.lo <= tol and a.hi >= -tol


def zero_containment_residual(a: Interval) -> float:
    """Distance from 0 to the interval; 0.0 when the interval contains zero."""
    return max(a.lo, -a.hi, 0.0)


# ---------------------------------------------------------------------------
# dominance
# ---------------------------------------------------------------------------

class DominanceKind(Enum):
    EQUAL = "equal"
    DOMINATES = "dominates"
    STRICTLY_DOMINATES = "strictly_dominates"
    BETTER_STRICTLY_DOMINATES = "better_strictly_dominates"
    NOT_COMPARABLE = "not_comparable"


@dataclass(frozen=True)
class DominanceVerdict:
    """Classification of the pair ``(a, b)``.

    ``kind`` is the strongest claim of ``a`` over ``b``; when ``a`` does not
    dominate ``b`` the kind falls back to ``NOT_COMPARABLE`` and the flags
    carry the reverse direction (``b_dominates_a``) and true comparability.
    """

    kind: DominanceKind
    a_dominates_b: bool
    b_dominates_a: bool
    comparable: bool


def interval_eq(a: Interval, b: Interval, tol: float = CMP_TOL) -> bool:
    return abs(a.lo - b.lo) <= tol and abs(a.hi - b.hi) <= tol


def dominates(a: Interval, b: Interval, tol: float = CMP_TOL) -> bool:
    """``a ⪯ b``: both endpoints of ``a`` are ≤ the matching endpoints of ``b``."""
    return a.lo <= b.lo + tol and a.hi <= b.hi + tol


def strictly_dominates(a: Interval, b: Interval, tol: float = CMP_TOL) -> bool:
    """``a ≺ b``: dominance with at least one strict endpoint inequality."""
    return dominates(a, b, tol) and (a.lo < b.lo - tol or a.hi < b.hi - tol)


def better_strictly_dominates(a: Interval, b: Interval, tol: float = CMP_TOL) -> bool:
    """``a < b``: both endpoint inequalities strict."""
    return a.lo < b.lo - tol and a.hi < b.hi - tol


def compare(a: Interval, b: Interval, tol: float = CMP_TOL) -> DominanceVerdict:
    a_dom = dominates(a, b, tol)
    b_dom = dominates(b, a, tol)
    if interval_eq(a, b, tol):
        kind = DominanceKind.EQUAL
    elif better_strictly_dominates(a, b, tol):
        kind = DominanceKind.BETTER_STRICTLY_DOMINATES
    elif strictly_dominates(a, b, tol):
        kind = DominanceKind.STRICTLY_DOMINATES
    elif a_dom:
        kind = DominanceKind.DOMINATES
    else:
        kind = DominanceKind.NOT_COMPARABLE
    return DominanceVerdict(kind, a_dom, b_dom, a_dom or b_dom)


def not_strictly_comparable(a: Interval, b: Interval, tol: float = CMP_TOL) -> bool:
    """Neither ``a ≺ b`` nor ``b ≺ a``."""
    return not strictly_dominates(a, b, tol) and not strictly_dominates(b, a, tol)


def max_comparable(a: Interval, b: Interval, tol: float = CMP_TOL) -> Interval:
    """The dominated (endpoint-wise larger) of two comparable intervals.

    If ``a ⪯ b`` the result is ``b``.  Raises :class:`NotComparableError`
    when neither dominates the other.
    """
    if dominates(a, b, tol):
        return b
    if dominates(b, a, tol):
        return a
    raise NotComparableError(a, b, context="max of an incomparable pair")


# ---------------------------------------------------------------------------
# interval vectors
# ---------------------------------------------------------------------------

class IntervalVector:
    """Fixed-length vector of intervals (a box in R^n)."""

    __slots__ = ("items",)

    def __init__(self, items: Iterable[Interval]):
        items = tuple(items)
        if not items:
            raise DimensionError("IntervalVector needs at least one component")
        for it in items:
            if not isinstance(it, Interval):
                raise TypeError(f"expected Interval, got {type(it).__name__}")
        self.items = items

    @classmethod
    def from_arrays(cls, lo, hi) -> "IntervalVector":
        lo = np.asarray(lo, float)
        hi = np.asarray(hi, float)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise DimensionError("lo/hi must be 1-d arrays of equal length")
        return cls(Interval(a, b) for a, b in zip(lo, hi))

    @classmethod
    def degenerate(cls, point) -> "IntervalVector":
        point = np.asarray(point, float)
        return cls(Interval(p, p) for p in point)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __eq__(self, other):
        return isinstance(other, IntervalVector) and self.items == other.items

    def __repr__(self):
        return "IVec(" + ", ".join(map(repr, self.items)) + ")"

    @property
    def lo(self) -> np.ndarray:
        return np.array([it.lo for it in self.items])

    @property
    def hi(self) -> np.ndarray:
        return np.array([it.hi for it in self.items])

    def add(self, other: "IntervalVector") -> "IntervalVector":
        if len(other) != len(self):
            raise DimensionError("length mismatch in IntervalVector.add")
        return IntervalVector(add(a, b) for a, b in zip(self.items, other.items))

    def scale(self, lam: float) -> "IntervalVector":
        return IntervalVector(scalar_mul(lam, a) for a in self.items)

    def dot(self, w) -> Interval:
        """``sum_j w_j ⊙ X_j`` for a real weight vector ``w``."""
        w = np.asarray(w, float)
        if w.shape != (len(self),):
            raise DimensionError(f"weight vector length {w.shape} != {len(self)}")
        acc = ZERO
        for wj, xj in zip(w, self.items):
            acc = add(acc, scalar_mul(wj, xj))
        return acc

    def corners(self) -> np.ndarray:
        """All corner points of the box, shape ``(2^n, n)`` in lexicographic order."""
        return np.array(list(itertools.product(*[(it.lo, it.hi) for it in self.items])))

    def contains_point(self, x, tol: float = 0.0) -> bool:
        x = np.asarray(x, float)
        if x.shape != (len(self),):
            raise DimensionError("point dimension mismatch")
        return all(it.lo - tol <= xi <= it.hi + tol for it, xi in zip(self.items, x))

    def widen(self, delta: float) -> "IntervalVector":
        if delta < 0:
            raise ValueError("widen expects a nonnegative delta")
        return IntervalVector(Interval(it.lo - delta, it.hi + delta) for it in self.items)


# ---------------------------------------------------------------------------
# linear independence of interval collections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearIndependenceResult:
    independent: bool
    witness: Optional[tuple]     # coefficients c with 0 ∈ Σ c_i ⊙ X_i, max|c_i| = 1
    margin: float                # best containment margin over the l1 sphere (≥ 0 ⟺ dependent)

    def __bool__(self):
        return self.independent


def combination_value(coeffs, intervals: Sequence[Interval]) -> Interval:
    """``Σ c_i ⊙ X_i`` for real coefficients."""
    acc = ZERO
    for c, iv in zip(coeffs, intervals):
        acc = add(acc, scalar_mul(c, iv))
    return acc


def linearly_independent(intervals: Sequence[Interval], tol: float = 1e-9) -> LinearIndependenceResult:
    """Decide whether only ``c = 0`` gives ``0 ∈ Σ c_i ⊙ X_i``.

    The decision is exact up to LP tolerance: for each sign pattern of ``c``
    the endpoints of the combination are linear in ``t_i = |c_i|``, so the
    search over the l1 sphere splits into ``2^m`` small feasibility problems
    over the simplex, each solved with a containment-margin objective.
    A nonnegative best margin means some ``c ≠ 0`` achieves containment.
    """
    from scipy.optimize import linprog

    intervals = list(intervals)
    m = len(intervals)
    if m == 0:
        raise DimensionError("need at least one interval")
    if m > 16:
        raise DimensionError("orthant decomposition limited to 16 intervals")

    best_margin = -math.inf
    best_witness = None
    for signs in itertools.product((1.0, -1.0), repeat=m):
        # endpoints of sum t_i * (s_i ⊙ X_i) with t on the simplex
        alpha = np.array([iv.lo if s > 0 else -iv.hi for s, iv in zip(signs, intervals)])
        beta = np.array([iv.hi if s > 0 else -iv.lo for s, iv in zip(signs, intervals)])
        # maximize s subject to alpha·t <= -s, beta·t >= s, t in simplex
        c = np.zeros(m + 1)
        c[-1] = -1.0
        a_ub = np.zeros((2, m + 1))
        a_ub[0, :m] = alpha
        a_ub[0, -1] = 1.0
        a_ub[1, :m] = -beta
        a_ub[1, -1] = 1.0
        a_eq = np.zeros((1, m + 1))
        a_eq[0, :m] = 1.0
        bounds = [(0.0, None)] * m + [(None, None)]
        res = linprog(c, A_ub=a_ub, b_ub=np.zeros(2), A_eq=a_eq, b_eq=[1.0],
                      bounds=bounds, method="highs")
        if not res.success:
            continue
        margin = -res.fun
        if margin > best_margin:
            best_margin = margin
            best_witness = tuple(s * t for s, t in zip(signs, res.x[:m]))

    dependent = best_margin >= -tol
    witness = None
    if dependent and best_witness is not None:
        scale = max(abs(ci) for ci in best_witness)
        if scale > 0:
            cand = tuple(ci / scale for ci in best_witness)
            # post-verify the witness through actual interval arithmetic
            resid = zero_containment_residual(combination_value(cand, intervals))
            if resid <= max(tol, 1e-9) * (1.0 + max(norm(iv) for iv in intervals)):
                witness = cand
            else:
                dependent = False
        else:
            dependent = False
    return LinearIndependenceResult(independent=not dependent, witness=witness,
                                    margin=best_margin)
