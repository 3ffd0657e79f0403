"""The exponent linear program: which (1/a, b, c) are admissible for a given
k, and where the admissible region closes.

Run:  python3 demos/exponent_lp.py
"""

from fractions import Fraction

from diophlab.lp import LABELS, build_lp, closed_form, solve_lp

for k in (Fraction(1), Fraction(11, 10), Fraction(6, 5), Fraction(13, 10), Fraction(4, 3), Fraction(7, 5)):
    sol = solve_lp(build_lp(k))
    if sol.status != "optimal":
        print(f"k={k}: {sol.status}")
        continue
    print(f"k={k}: 1/a={sol.inv_a}  b={sol.b}  c={sol.c}  closed form {closed_form(k)}")
    print("   tight:", "; ".join(LABELS[i] for i in sol.active_set))

# c(k) = (4 - 3k)/(10k) is the decay exponent of eta; it is 1/10 at k = 1
# and reaches 0 at k = 4/3, beyond which no feasible point remains.
