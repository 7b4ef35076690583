"""Numerical derivatives of interval-valued functions, and how they can fail.

Four notions, in increasing strength: directional, Gateaux, Hadamard,
Frechet.  For nice functions they all agree; the interesting part is the
machinery that *detects* the gaps:

  * a function whose directional derivatives all exist and vanish, yet whose
    Hadamard derivative does not exist (a curved approach path diverges),
  * a scaled norm, linear along every ray but not linear in the direction,
    so Gateaux exists while Frechet fails.

Everything here is finite differences on shrinking step schedules -- no
symbolic help.
"""

import numpy as np

from ivopt import (
    Config, Interval, distance, norm,
    directional_derivative, gateaux_derivative, hadamard_derivative,
    hadamard_differentiable_at, frechet_check, is_gh_continuous_at,
    Existence, DiffVerdict, NotLinearCandidate, scalar_mul,
)
from ivopt.gallery import (
    make_ee1, make_r2, make_norm_counterexample, r2_parabola_schedule,
)

cfg = Config()
C = Interval(1.0, 2.0)

print("=== the well-behaved case: f(x) = ||x||^2 * [1,2] on R^2 ===")
f = make_ee1()
xbar = np.array([0.5, -0.25])
v = np.array([1.0, 0.5])

est_d = directional_derivative(f, xbar, v, cfg)
est_g = gateaux_derivative(f, xbar, v, cfg)
est_h = hadamard_derivative(f, xbar, v, cfg)
want = scalar_mul(2.0 * float(xbar @ v), C)

print(f"closed form 2(x.v)*[1,2] = {want}")
print(f"directional estimate     = {est_d.value}")
print(f"Gateaux estimate         = {est_g.value}")
print(f"Hadamard estimate        = {est_h.value}")
print(f"max deviation            = "
      f"{max(distance(e.value, want) for e in (est_d, est_g, est_h)):.2e}")

rep = hadamard_differentiable_at(f, xbar, cfg)
print(f"hadamard_differentiable_at -> {rep.verdict.name}, "
      f"linearity {rep.linearity.verdict.name}")

print()
print("=== directional != Hadamard: a joint-limit counterexample ===")
# On R^2 this function is 0 on the parabola's complement... more precisely it
# rewards approach along y = x^2.  Every straight ray through the origin gives
# derivative [0,0], but the Hadamard limit must survive *all* (t_n, h_n)
# schedules with h_n -> h, and the curved one blows up.
g = make_r2()
origin = (0.0, 0.0)
for h in [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (-1.0, 0.5)]:
    e = directional_derivative(g, origin, h, cfg)
    print(f"  directional along {h}: {e.value}  (|.| = {norm(e.value):.1e})")

bad = hadamard_derivative(g, origin, (0.0, 0.0), cfg,
                          adversarial=[r2_parabola_schedule])
print(f"Hadamard with the curved schedule -> {bad.exists.name}")
for tr in bad.schedules:
    if tr.status is Existence.DOES_NOT_EXIST:
        lam, step, q = tr.steps[-1]
        print(f"  schedule {tr.label!r}: last quotient {q} "
              f"(norm {norm(q):.2e}, past the divergence cap)")

print()
print("=== Gateaux != Frechet: the scaled norm at the origin ===")
h = make_norm_counterexample()
e = gateaux_derivative(h, origin, (0.6, 0.8), cfg)
print(f"Gateaux along (0.6, 0.8) exists: {e.value}")
rep = hadamard_differentiable_at(h, origin, cfg)
print(f"hadamard_differentiable_at -> {rep.verdict.name}")
if rep.linearity is not None:
    print(f"  linearity check: {rep.linearity.verdict.name}, "
          f"{len(rep.linearity.homogeneity_failures)} homogeneity failures")
try:
    frechet_check(h, origin, lambda d: scalar_mul(float(np.hypot(*d)), C), cfg)
except NotLinearCandidate as e:
    print(f"frechet_check rejects the norm candidate: {type(e).__name__}")

print()
print("=== differentiability sits on top of continuity ===")
# the scaled norm is continuous at the origin even though it is not
# differentiable there; continuity is the weaker property
for name, fn, pt in [("quadratic", f, (0.5, -0.25)), ("scaled norm", h, origin)]:
    c = is_gh_continuous_at(fn, pt, cfg)
    print(f"  {name} at {pt}: {c.verdict.name} "
          f"(modulus {c.moduli[-1]:.1e} at radius {c.radii[-1]:.1e})")
