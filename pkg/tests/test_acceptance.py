"""One test per acceptance criterion, tolerances as specified."""

import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from diophlab.approx import QuadraticIrrational, convergents
from diophlab.arcs import (
    SelbergSpec,
    gallagher_lhs,
    gallagher_rhs,
    integrate_I,
    major_arc_J1,
    selberg_grid_oracle,
    selberg_J,
)
from diophlab.config import FormParams, derive_circle_params
from diophlab.expsums import SumSpec, eval_S
from diophlab.kernel import fourier_pair_check, k_fejer, k_hat, kernel_bound
from diophlab.lp import build_lp, closed_form, solve_lp
from diophlab.primes import sieve
from diophlab.search import count_solutions, exact_weighted_sum, naive_count

STANDARD = FormParams(math.sqrt(2), -1.0, 1.0, 1.2, math.pi, 0.1, 0.05)


@pytest.fixture(scope="module")
def big_table():
    return sieve(2 * 10**5)


def test_acc_central_identity(big_table):
    """|I(full-truncated) - exact weighted sum| <= 1% at X = 500, within 5 min."""
    start = time.perf_counter()
    cp = derive_circle_params(STANDARD, 500)
    res = integrate_I(STANDARD, cp, "full-truncated", big_table)
    exact = exact_weighted_sum(STANDARD, 500, cp.eta, big_table)
    assert abs(res.value.real - exact) <= 0.01 * exact
    assert time.perf_counter() - start <= 300


def test_acc_kernel_fourier_pair():
    """|check(eta, t, T=1e3) - K_hat(t)| <= 1e-3 for t in {0, 0.1eta, ..., 2eta}."""
    for eta in (0.1, 0.5, 1.0):
        for i in range(21):
            t = 0.1 * i * eta
            assert abs(fourier_pair_check(eta, t, 1e3).value - k_hat(eta, t)) <= 1e-3


def test_acc_kernel_pointwise_bound():
    """K_eta <= min(eta^2, (pi a)^-2) on 1e5 points, no violations."""
    a = np.linspace(-100, 100, 10**5)
    for eta in (0.1, 0.5, 1.0, 2.0):
        assert int(np.count_nonzero(k_fejer(eta, a) > kernel_bound(eta, a))) == 0


def test_acc_parseval_k1(big_table):
    """int_0^1 |S_1|^2 on 4X nodes = sum (log p)^2 to 1e-8 at X = 1e3."""
    X = 1000
    vals = eval_S(SumSpec("S", 1, X, 0.1), np.arange(4 * X) / (4 * X), big_table)
    mean = math.fsum((np.abs(vals) ** 2).tolist()) / (4 * X)
    ref = math.fsum(math.log(p) ** 2 for p in big_table.primes.tolist() if 100 <= p <= X)
    assert abs(mean - ref) <= 1e-8 * ref


def test_acc_bruteforce_count():
    """Sorted-window count equals the naive loop on 20 random configurations."""
    rnd = random.Random(12)
    t = sieve(5000)
    for _ in range(20):
        lam = [rnd.uniform(0.2, 4) * s for s in (1, -1, rnd.choice([-1, 1]))]
        params = FormParams(*lam, rnd.choice([1.0, 1.15, 1.3]), rnd.uniform(-10, 10), rnd.uniform(0.05, 0.6))
        X = rnd.uniform(50, 800)
        eta = rnd.uniform(0.01, 3)
        assert count_solutions(params, X, eta, t) == naive_count(params, X, eta, t)


def test_acc_inequality_chain():
    """exact weighted sum <= eta (log X)^3 count, every run."""
    rnd = random.Random(13)
    t = sieve(5000)
    for _ in range(20):
        X, eta = rnd.uniform(50, 1000), rnd.uniform(0.01, 3)
        params = FormParams(math.sqrt(rnd.choice([2, 3, 5])), -1, rnd.uniform(0.5, 2), 1.2, rnd.uniform(-5, 5))
        n = count_solutions(params, X, eta, t)
        assert exact_weighted_sum(params, X, eta, t) <= eta * math.log(X) ** 3 * n


def test_acc_lp_closed_form():
    """solve_lp matches the closed form to 1e-9 on 50 points of (1, 4/3]; c(1) = 1/10; < 1 s."""
    start = time.perf_counter()
    ks = [1 + (Fraction(1, 3) * i) / 50 for i in range(1, 51)]
    for k in ks:
        sol = solve_lp(build_lp(float(k)))
        for got, want in zip(sol.as_floats(), closed_form(float(k))):
            assert abs(got - float(want)) <= 1e-9
    assert solve_lp(build_lp(1)).c == Fraction(1, 10)
    assert time.perf_counter() - start < 1.0


def test_acc_selberg(big_table):
    """selberg_J within 0.1% of the fine-grid oracle; J(X, 0) = 0 exactly."""
    for k in (1.0, 1.2):
        for X in (1e2, 1e3):
            for h in (1.0, 10.0):
                spec = SelbergSpec(k, X, h)
                assert abs(selberg_J(spec, big_table).value / selberg_grid_oracle(spec, big_table) - 1) <= 1e-3
            assert selberg_J(SelbergSpec(k, X, 0.0), big_table).value == 0.0


def test_acc_gallagher(big_table):
    """lhs <= 1e2 rhs over Y in {1e-3, 1e-2}, X in {1e3, 1e4}, k in {1, 1.2}."""
    for k in (1.0, 1.2):
        p = FormParams(math.sqrt(2), -1, 1, k)
        for X in (1e3, 1e4):
            for Y in (1e-3, 1e-2):
                assert gallagher_lhs(p, X, Y, big_table).value <= 100 * gallagher_rhs(k, X, Y, big_table)["total"]


def test_acc_j1_stability():
    """J1 / (eta^2 X^(1+1/k)) within a factor 4 across X in {1e3, 1e4, 1e5}."""
    vals = [major_arc_J1(STANDARD, derive_circle_params(STANDARD, X), one_dimensional=False).normalised
            for X in (1e3, 1e4, 1e5)]
    assert min(vals) > 0 and max(vals) / min(vals) <= 4


def test_acc_convergent_certification():
    """30 convergents of sqrt 2 and the golden ratio: exact 1/q^2 bound and CF recurrence."""
    for x, digits in ((QuadraticIrrational(0, 1, 2, 1), [1] + [2] * 29),
                      (QuadraticIrrational(1, 1, 5, 2), [1] * 30)):
        cs = convergents(x, 30)
        assert len(cs) == 30
        h0, h1, k0, k1 = 0, 1, 1, 0
        for c, t in zip(cs, digits):
            h0, h1, k0, k1 = h1, t * h1 + h0, k1, t * k1 + k0
            assert (c.a, c.q) == (h1, k1) and c.certified
            centre, radius = Fraction(c.a, c.q), Fraction(1, c.q**2)
            assert x.compare(centre - radius) >= 0 and x.compare(centre + radius) <= 0


def test_acc_report_determinism(tmp_path):
    """report outputs byte-identical across runs with --threads 1 and 8."""
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"lambda": ["sqrt(2)", -1, 1], "k": 1.2, "varpi": 3.141592653589793, '
                   '"delta": 0.1, "eps": 0.05, "q": 29}')
    outs = []
    for i, threads in enumerate((1, 1, 8)):
        out = tmp_path / f"r{i}"
        subprocess.run([sys.executable, "-m", "diophlab", "--threads", str(threads), "report",
                        "--config", str(cfg), "--out", str(out)], check=True, capture_output=True)
        outs.append(((out / "report.json").read_bytes(), (out / "report.csv").read_bytes()))
    assert outs[0] == outs[1] == outs[2]
