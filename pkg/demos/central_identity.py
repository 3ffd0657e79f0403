"""Counting near-solutions twice: once by brute force, once by integrating
exponential sums against the Fejer kernel.

Run:  python3 demos/central_identity.py
"""

import math

from diophlab import (
    FormParams,
    derive_circle_params,
    exact_weighted_sum,
    integrate_I,
    major_arc_J1,
    sieve,
)
from diophlab.search import best_miss, count_solutions

params = FormParams(math.sqrt(2), -1.0, 1.0, k=1.2, varpi=math.pi, delta=0.1, eps=0.05)
X = 500
cp = derive_circle_params(params, X)
print(f"X={X}  P={cp.P:.2f}  eta={cp.eta:.4f}  R={cp.R:.3f}  major arc |a| <= {cp.arcs.cut:.4f}")

table = sieve(10_000)

# Ground truth: every prime triple in the box with |form - varpi| <= eta.
n = count_solutions(params, X, cp.eta, table)
exact = exact_weighted_sum(params, X, cp.eta, table)
print(f"{n} triples within eta; weighted sum = {exact:.6f}")
for r in best_miss(params, X, table, 3):
    print(f"  p=({r.p1},{r.p2},{r.p3})  miss={r.miss:.3e}")

# The same number as an integral over the real line, truncated at T.
full = integrate_I(params, cp, "full-truncated", table)
print(f"integral  = {full.value.real:.6f}  (quadrature error <= {full.abs_error_est:.2e}, "
      f"{full.samples} nodes, T={full.details['T']:.1f})")
print(f"relative gap = {abs(full.value.real - exact) / exact:.2e}")

# How the integral splits over the arcs.
for arc in ("major", "minor", "trivial-truncated"):
    part = integrate_I(params, cp, arc, table).value.real
    print(f"  {arc:18s} {part:14.4f}  share {part / full.value.real:+.4f}")

# The main term: continuous approximations on the major arc vs the 3D volume.
j1 = major_arc_J1(params, cp)
print(f"J1 on major arc = {j1.value.real:.4f}, volume = {j1.volume:.4f}, "
      f"J1/(eta^2 X^(1+1/k)) = {j1.normalised:.4f}")
