from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from diophlab.config import eta_exponent
from diophlab.lp import build_lp, closed_form, parse_grid, solve_lp, verify_closed_form


def test_build_lp_examples():
    lp1 = build_lp(1)
    assert len(lp1.constraints) == 7
    last = lp1.constraints[-1]
    assert last.rhs == 0 and last.coeffs == (0, Fraction(-1, 2), 1)
    # -c >= 1/2 - 3/8 - b/2 at k = 4/3, i.e. c - b/2 <= -1/8
    assert build_lp(Fraction(4, 3)).constraints[-1].rhs == Fraction(-1, 8)
    with pytest.raises(ValueError):
        build_lp(0.5)


def test_solution_examples():
    s = solve_lp(build_lp(1))
    assert (s.inv_a, s.b, s.c) == (Fraction(3, 5), Fraction(1, 5), Fraction(1, 10))
    assert solve_lp(build_lp(Fraction(4, 3))).c == 0
    assert solve_lp(build_lp(Fraction(6, 5))).c == Fraction(1, 30)
    assert solve_lp(build_lp(1.4)).status == "infeasible"


def test_active_set_is_the_three_structural_constraints():
    for k in np.linspace(1.01, 1.33, 30):
        assert set(solve_lp(build_lp(k)).active_set) == {4, 5, 6}


def test_c_decreasing_and_vanishing():
    ks = [Fraction(100 + i, 100) for i in range(34)] + [Fraction(4, 3)]
    cs = [solve_lp(build_lp(k)).c for k in ks]
    assert all(a > b for a, b in zip(cs, cs[1:]))
    assert cs[-1] == 0


def test_verify_closed_form():
    rep = verify_closed_form([1.01, 1.1, 1.2, 1.3, Fraction(4, 3)])
    assert rep.passed
    assert not verify_closed_form([1.4]).passed


@given(st.lists(st.fractions(Fraction(1, 100), 100), min_size=7, max_size=7), st.fractions(1, Fraction(4, 3)))
def test_scaling_invariance(factors, k):
    lp = build_lp(k)
    a, b = solve_lp(lp), solve_lp(lp.scaled(factors))
    assert (a.inv_a, a.b, a.c, a.status) == (b.inv_a, b.b, b.c, b.status)


@pytest.mark.parametrize("k", [1.0, 1.07, 1.2, 1.31, 4 / 3])
def test_against_scipy_linprog(k):
    """Independent float LP: maximise c, then 1/a, over the same polytope."""
    lp = build_lp(k)
    G = np.array([[float(x) for x in c.coeffs] for c in lp.constraints])
    h = np.array([float(c.rhs) for c in lp.constraints])
    r = linprog([0, 0, -1], A_ub=G, b_ub=h, bounds=[(None, None)] * 3)
    assert r.status == 0
    G2 = np.vstack([G, [0, 0, -1]])
    h2 = np.append(h, -r.x[2] + 1e-12)
    r2 = linprog([-1, 0, 0], A_ub=G2, b_ub=h2, bounds=[(None, None)] * 3)
    assert np.allclose(solve_lp(lp).as_floats(), r2.x, atol=1e-9)


def test_c_matches_eta_exponent():
    for k in np.linspace(1.01, 4 / 3, 20):
        assert float(closed_form(k)[2]) == pytest.approx(-eta_exponent(k, 0.0), abs=1e-12)


def test_parse_grid():
    assert parse_grid("1:2:3") == [1.0, 1.5, 2.0]
    assert parse_grid("1,1.5") == [1.0, 1.5]
