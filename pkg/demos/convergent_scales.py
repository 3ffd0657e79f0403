"""Convergents of l1/l2 drive the choice of scales X = q^(5k/(k+2)).
At each scale, count near-solutions and look at the minor-arc dichotomy.

Run:  python3 demos/convergent_scales.py
"""

import math
import random

from diophlab import FormParams, convergents, derive_circle_params, parse_ratio, sieve
from diophlab.approx import dichotomy_check, scale_sequence
from diophlab.search import theorem_scan

ratio = parse_ratio("sqrt(2)")
params = FormParams(math.sqrt(2), -1.0, 1.0, k=1.2, varpi=math.pi, eps=0.05, ratio=ratio)

convs = convergents(ratio, 8)
for c in convs:
    print(f"{c.a}/{c.q}  certified={c.certified}  X={scale_sequence(params, c):.1f}")

table = sieve(10**5)
scan = theorem_scan(params, convs, table)
print("\n   q        X       eta  count  best/eta")
for r in scan.rows:
    if r.note:
        print(f"{r.q:4d} {r.X:8.1f}   skipped: {r.note}")
    else:
        print(f"{r.q:4d} {r.X:8.1f} {r.eta:9.4f} {r.count:6d} {r.best_over_eta:9.2e}")
if scan.cutoff:
    print(scan.cutoff)

# On the minor arc at least one Dirichlet denominator should exceed Q once X
# is large; at desk scale this is only measured.
X = scale_sequence(params, 70)
cp = derive_circle_params(params, X)
rnd = random.Random(0)
reps = [dichotomy_check(rnd.uniform(cp.arcs.cut, cp.R), params, cp, 70) for _ in range(200)]
print(f"\nq=70: fraction of minor-arc samples with max(q1, q2) > Q: "
      f"{sum(r.some_q_exceeds_Q for r in reps) / len(reps):.2f}")
print(f"Q^2/X = {cp.Q**2 / X:.5f} = 1/q; threshold 1/(2q) = {1 / 140:.5f}")
