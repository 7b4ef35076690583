"""A tour of compact-interval arithmetic and the dominance order.

Run as a script; every section prints what it computes.  The punchline of the
first section is that the Moore difference never cancels an interval against
itself, while the generalized Hukuhara (gH) difference does -- which is the
whole reason the calculus downstream is built on gH.
"""

import numpy as np

from ivopt import (
    Interval, ZERO,
    add, moore_sub, mul, scalar_mul, div, gh_difference,
    norm, distance, contains_zero,
    compare, dominates, strictly_dominates, max_comparable,
    DominanceKind, DivisionByIntervalContainingZero, NotComparableError,
)

a = Interval(2.0, 6.0)
b = Interval(4.0, 12.0)

print("=== Moore arithmetic ===")
print(f"a           = {a}")
print(f"b           = {b}")
print(f"a + b       = {add(a, b)}")
print(f"a - b       = {moore_sub(a, b)}   (Moore: widths add)")
print(f"a * b       = {mul(a, b)}")
print(f"3 * a       = {scalar_mul(3.0, a)}")
print(f"-2 * a      = {scalar_mul(-2.0, a)}   (negative scalars swap endpoints)")
print(f"a / b       = {div(a, b)}")

try:
    div(a, Interval(-1.0, 1.0))
except DivisionByIntervalContainingZero as e:
    print(f"a / [-1,1]  -> {type(e).__name__}")

print()
print("=== why gH instead of Moore ===")
print(f"a - a  (Moore) = {moore_sub(a, a)}   <- width doubles, never [0,0]")
print(f"a gH- a        = {gh_difference(a, a)}   <- exact cancellation")
print(f"a gH- b        = {gh_difference(a, b)}")
# the gH difference always recovers a summand: either a = b + (a gH- b) or
# b = a + (-(a gH- b)).  Here b is wider than a, so the second case applies.
g = gh_difference(a, b)
print(f"a + -(a gH- b) = {add(a, scalar_mul(-1.0, g))}   vs b = {b}")

print()
print("=== metric structure ===")
print(f"norm(a)            = {norm(a)}")
print(f"distance(a, b)     = {distance(a, b)}")
print(f"distance(a, a)     = {distance(a, a)}")
print(f"contains_zero(a-b) = {contains_zero(moore_sub(a, b))}")

print()
print("=== dominance (lower-and-upper-endpoint order) ===")
pairs = [
    (Interval(1.0, 3.0), Interval(2.0, 5.0)),
    (Interval(1.0, 3.0), Interval(1.0, 3.0)),
    (Interval(1.0, 3.0), Interval(2.0, 2.5)),   # neither dominates
    (Interval(1.0, 2.0), Interval(3.0, 4.0)),
]
for p, q in pairs:
    v = compare(p, q)
    print(f"compare({p}, {q}) -> {v.kind.name}")
    if v.kind is DominanceKind.NOT_COMPARABLE:
        print("        (interval order is partial: overlapping mid-widths tie)")

print()
print("dominates(p, q) means p is at least as good (smaller) endpoint-wise:")
p, q = Interval(1.0, 3.0), Interval(2.0, 5.0)
print(f"  dominates({p}, {q})          = {dominates(p, q)}")
print(f"  strictly_dominates({p}, {q}) = {strictly_dominates(p, q)}")

print(f"  max_comparable({p}, {q})     = {max_comparable(p, q)}"
      "   (the dominated one of a comparable pair)")
try:
    max_comparable(Interval(1.0, 3.0), Interval(2.0, 2.5))
except NotComparableError as e:
    print(f"  max_comparable on an incomparable pair -> {type(e).__name__}")

print()
print("=== dominance interacts with arithmetic ===")
# two implications that the efficiency certificates lean on:
#   (i)  b.hi >= 0 and b <= a   implies a.hi >= 0
#   (ii) (a+b).hi >= 0 and b <= [0,0] implies a.hi >= 0
rng = np.random.default_rng(7)
checked = 0
for _ in range(2000):
    x = np.sort(rng.uniform(-10, 10, 2))
    y = np.sort(rng.uniform(-10, 10, 2))
    u, v = Interval(*x), Interval(*y)
    if v.hi >= 0 and dominates(v, u):
        assert u.hi >= 0
        checked += 1
    if add(u, v).hi >= 0 and dominates(v, ZERO):
        assert u.hi >= 0
        checked += 1
print(f"both implications held on {checked} random hits out of 2000 pairs")
