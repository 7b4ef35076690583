"""Certifying efficient points of interval-valued optimization problems.

A feasible point is *efficient* when no other feasible point produces an
objective interval that strictly improves on it -- the single-objective
notion of optimality transplanted to the partial dominance order.

This demo works through two one-dimensional problems from the built-in
gallery:

  ne1       minimize [ (2t-1)^2, 2t^2 + 75 ]      subject to  t in [-1, 2]
  remark_in minimize hull(t^2-4t+4, t^2+5)        subject to  t in [-1, 6]

Both have an efficient point at t = 0 -- and at both of them the *sufficient*
condition is powerless, each for a different reason.  That asymmetry
(necessary conditions certify, sufficient conditions need extra hypotheses)
is the whole story of this module.
"""

from ivopt import (
    Config, ZERO,
    better_strictly_dominates, compare,
    is_efficient, kkt_sufficient_check, hadamard_derivative,
    sample_directions, descent_feasible_intersection,
)
from ivopt.gallery import get_problem

cfg = Config()

for name in ("ne1", "remark_in"):
    prob = get_problem(name)
    print(f"=== {prob.name} ===")

    rep = is_efficient(prob, (0.0,), cfg)
    print(f"is_efficient at t=0: {rep.efficient} "
          f"(objective {rep.objective_value}, {rep.checked} feasible points scanned)")

    # a non-efficient point for contrast
    bad_pt = (-1.0,) if name == "ne1" else (5.0,)
    bad = is_efficient(prob, bad_pt, cfg)
    beat = (f", beaten by t={float(bad.witness_point[0]):+.4f} "
            f"with {bad.witness_value}" if bad.witness_point else "")
    print(f"is_efficient at t={bad_pt[0]}: {bad.efficient}{beat}")

    # first-order sanity: at an efficient point no direction can make the
    # derivative interval strictly better than zero
    print("derivative intervals at t=0:")
    for d in sample_directions(1, cfg):
        est = hadamard_derivative(prob.objective, (0.0,), d, cfg)
        strict = better_strictly_dominates(est.value, ZERO, cfg.cmp_tol)
        print(f"  direction {d[0]:+.0f}: {est.value}  "
              f"strictly-better-than-zero: {strict}")

    # the weaker strict relation (at-least-one-endpoint-strict) *does* fire
    # here, because the upper-endpoint derivative is exactly zero.  That is a
    # first-order artifact, not actual descent -- the scan above already
    # certified the point.  It is also exactly why the sufficient condition
    # cannot vouch for this point.
    inter = descent_feasible_intersection(prob, (0.0,), cfg)
    if not inter["empty"]:
        hits = ", ".join(f"d={float(m['direction'][0]):+.0f} "
                         f"-> {m['derivative']}" for m in inter["members"])
        print(f"first-order descent cone is nonempty anyway: {hits}")

    suf = kkt_sufficient_check(prob, (0.0,), cfg, cross_check=False)
    print(f"kkt_sufficient_check at t=0: holds={suf.holds}")
    print(f"  reason: {suf.reason}")
    print()

print("=== takeaway ===")
print("Both points are efficient, certified by the exhaustive grid scan.")
print("ne1: the combined derivative dips strictly below zero to first order")
print("     (upper endpoint flat), so the sufficient test cannot fire.")
print("remark_in: the lower endpoint is not convex on the feasible box, so")
print("     the convexity hypothesis of the sufficient condition fails.")
print("Necessary conditions certify; the sufficient shortcut needs luck.")
