"""The three generating functions S, U, T and the Fejer kernel side by side.

Run:  python3 demos/sums_and_kernel.py
"""

import numpy as np

from diophlab import SumSpec, eval_S, eval_T, eval_U, fourier_pair_check, k_hat, sieve

X, k = 10_000, 1.2
table = sieve(X)
alpha = np.array([0.0, 1e-4, 1e-3, 0.01, 0.1, 0.37])
S = eval_S(SumSpec("S", k, X), alpha, table)
U = eval_U(SumSpec("U", k, X), alpha)
T = eval_T(SumSpec("T", k, X), alpha)
print("alpha        |S|          |U|          |T|        |T-U|")
for a, s, u, t in zip(alpha, S, U, T):
    print(f"{a:8.1e} {abs(s):12.4f} {abs(u):12.4f} {abs(t):12.4f} {abs(t - u):10.4f}")

# The kernel's Fourier transform is the tent max(0, eta - |t|).
eta = 0.5
for t in (0.0, 0.25, 0.5, 1.0):
    r = fourier_pair_check(eta, t, 1e3)
    print(f"t={t:4.2f}  numeric={r.value:.6f}  tent={k_hat(eta, t):.6f}  tail<= {r.truncation_tail:.1e}")
