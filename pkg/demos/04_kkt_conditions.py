"""Fritz John and KKT certificates for constrained interval problems.

The pipeline, on a 2-d instance with an active linear constraint:

  1. find the active set at the candidate point,
  2. search for Fritz John multipliers t = (t0, t1, ..., tm), t >= 0,
     sum t = 1, whose combination of derivative intervals contains zero in
     every sampled direction,
  3. normalize to KKT form (t0 = 1) after checking the constraint
     derivatives are linearly independent in the interval sense,
  4. if the data is convex, upgrade the certificate to a sufficient one and
     cross-check against a brute-force grid scan.

The demo closes with the two standard failure modes: a point where no
multiplier family exists, and a constraint pair whose derivative intervals
are linearly *dependent*, which poisons the normalization step.
"""

import numpy as np

from ivopt import (
    Config,
    active_set, fritz_john_check, kkt_necessary_check, kkt_sufficient_check,
    combination_value, linearly_independent, hadamard_derivative,
    LinearIndependenceViolated,
)
from ivopt.gallery import get_problem

cfg = Config()

print("=== a 2-d instance with its constraint active at the optimum ===")
prob = get_problem("kkt_2d")
x = (0.5, 0.5)
active = active_set(prob, x, cfg)
print(f"point {x}, active constraints: {active}")

fj = fritz_john_check(prob, x, cfg)
print(f"Fritz John: found={fj.found}, t={np.round(fj.multipliers, 6)}")
print(f"  worst residual over sampled directions: {fj.max_residual:.2e}")
print(f"  (residual = distance from zero to the combined derivative interval)")

kn = kkt_necessary_check(prob, x, cfg)
print(f"KKT necessary: found={kn.found}, u={np.round(kn.multipliers, 6)} "
      f"(u0 normalized to 1)")
print(f"  worst residual: {kn.max_residual:.2e}")

ks = kkt_sufficient_check(prob, x, cfg.replace(grid_resolution=81), cross_check=True)
print(f"KKT sufficient: holds={ks.holds}")
print(f"  convexity audit: {ks.convexity}")
print(f"  grid cross-check agrees: {ks.efficiency_cross_check.efficient}")

print()
print("=== what the multipliers actually combine ===")
d = (1.0, 0.0)
parts = [hadamard_derivative(prob.objective, x, d, cfg).value]
parts += [hadamard_derivative(prob.constraints[i], x, d, cfg).value
          for i in active]
print(f"along d={d}:")
print(f"  objective derivative  D_F  = {parts[0]}")
for i, iv in zip(active, parts[1:]):
    print(f"  constraint derivative D_G{i} = {iv}")
val = combination_value(kn.multipliers, parts)
print(f"  u0*D_F + sum u_i*D_Gi      = {val}  (zero inside)")

print()
print("=== failure mode 1: no certificate exists ===")
bad = get_problem("fj_no_certificate")
fj_bad = fritz_john_check(bad, (0.0,), cfg)
print(f"{bad.name} at t=0: found={fj_bad.found}")
print(f"  reason: {fj_bad.reason}")

print()
print("=== failure mode 2: dependent constraint derivatives ===")
# the constraint here is an absolute-value band; its derivative interval at
# the origin straddles zero, so even a single constraint is "dependent" in
# the interval sense: some nonzero multiplier puts zero in the combination
dep = get_problem("kkt_dependent")
dg = hadamard_derivative(dep.constraints[0], (0.0,), (1.0,), cfg).value
li = linearly_independent([dg])
print(f"constraint derivative at 0 along +1: {dg}")
witness = tuple(float(w) for w in li.witness)
print(f"interval linear independence: {li.independent} "
      f"(witness multipliers {witness})")
try:
    kkt_necessary_check(dep, (0.0,), cfg)
except LinearIndependenceViolated as e:
    print(f"kkt_necessary_check -> {type(e).__name__}: {e}")
