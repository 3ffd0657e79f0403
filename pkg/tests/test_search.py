import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import trial_division_primes
from diophlab.config import FormParams
from diophlab.primes import sieve
from diophlab.quadrature import set_threads
from diophlab.search import (
    best_miss,
    count_solutions,
    enumerate_solutions,
    exact_weighted_sum,
    naive_count,
    theorem_scan,
)


def triple_loop(params, X, eta):
    """Pure-python reference: every triple, the same form expression."""
    ps = [p for p in trial_division_primes(int(X) + 2) if params.delta * X <= float(p) <= X]
    p3s = [p for p in trial_division_primes(int(X) + 2)
           if params.delta * X <= (float(p) ** params.k if params.k != 1 else float(p)) <= X]
    l1, l2, l3 = params.lambdas
    out = []
    for p1, p2, p3 in itertools.product(ps, ps, p3s):
        a3 = l3 * (float(p3) ** params.k if params.k != 1 else float(p3))
        miss = abs(l1 * float(p1) + l2 * float(p2) + a3 - params.varpi)
        if miss <= eta:
            out.append((p1, p2, p3, miss))
    return out


def test_empty_range():
    p = FormParams(1, 1, -1, 1, delta=0.95, irrational=False)
    assert count_solutions(p, 10, 0.5, sieve(100)) == 0
    assert exact_weighted_sum(p, 10, 0.5, sieve(100)) == 0.0
    assert best_miss(p, 10, sieve(100), 3) == []


def test_goldbach_like_count(goldbach_params):
    t = sieve(100)
    assert count_solutions(goldbach_params, 20, 0.5, t) == 8
    recs = enumerate_solutions(goldbach_params, 20, 0.5, t)
    assert sorted({r.p3 for r in recs}) == [5, 7, 13, 19]
    expect = math.fsum(0.5 * math.log(r.p1) * math.log(r.p2) * math.log(r.p3) for r in recs)
    assert exact_weighted_sum(goldbach_params, 20, 0.5, t) == pytest.approx(expect, rel=1e-15)
    assert all(r.miss == 0 for r in recs)


def test_window_covering_everything(goldbach_params):
    t = sieve(1000)
    n = len([p for p in t.primes.tolist() if 20 <= p <= 200])
    assert count_solutions(goldbach_params, 200, 1e6, t) == n**3


def test_best_miss_heads_with_exact_hits(goldbach_params):
    recs = best_miss(goldbach_params, 20, sieve(100), 5)
    assert recs[0].miss == 0 and len(recs) == 5
    keys = [(r.miss, r.p1, r.p2, r.p3) for r in recs]
    assert keys == sorted(keys)


def test_single_candidate():
    # [9.5, 10.5] holds no prime, [10.5, 11] holds only 11
    p = FormParams(1, -1, 1, 1.0, delta=0.96, irrational=False)
    assert len(best_miss(p, 11, sieve(100), 5)) == 1


def test_best_miss_matches_brute_force(sqrt2_params):
    t = sieve(1000)
    every = triple_loop(sqrt2_params, 200, 1e9)
    every.sort(key=lambda r: (r[3], r[0], r[1], r[2]))
    got = best_miss(sqrt2_params, 200, t, 10)
    assert [(r.p1, r.p2, r.p3) for r in got] == [r[:3] for r in every[:10]]


def _random_config(rnd):
    lam = [rnd.choice([-1, 1]) * rnd.uniform(0.3, 3) for _ in range(3)]
    if len({math.copysign(1, x) for x in lam}) == 1:
        lam[2] = -lam[2]
    k = rnd.choice([1.0, 1.1, 1.2, 1.3])
    X = rnd.uniform(30, 300)
    params = FormParams(*lam, k, rnd.uniform(-5, 5), rnd.uniform(0.05, 0.5))
    return params, X, rnd.uniform(0.01, 5)


def test_twenty_random_configs_match_naive():
    rnd = random.Random(2024)
    t = sieve(1000)
    for _ in range(20):
        params, X, eta = _random_config(rnd)
        got = count_solutions(params, X, eta, t)
        assert got == naive_count(params, X, eta, t)
        assert got == len(triple_loop(params, X, eta))


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_inequality_chain_and_monotonicity(seed):
    rnd = random.Random(seed)
    t = sieve(1000)
    params, X, eta = _random_config(rnd)
    n = count_solutions(params, X, eta, t)
    w = exact_weighted_sum(params, X, eta, t)
    assert 0 <= w <= eta * math.log(X) ** 3 * n
    assert count_solutions(params, X, 2 * eta, t) >= n


def test_threads_do_not_change_results(sqrt2_params):
    t = sieve(2000)
    set_threads(1)
    a = (count_solutions(sqrt2_params, 1000, 1.0, t), exact_weighted_sum(sqrt2_params, 1000, 1.0, t))
    set_threads(4)
    b = (count_solutions(sqrt2_params, 1000, 1.0, t), exact_weighted_sum(sqrt2_params, 1000, 1.0, t))
    set_threads(1)
    assert a == b


def test_theorem_scan(sqrt2_params):
    t = sieve(10**4)
    rep = theorem_scan(sqrt2_params, [2, 5, 12, 29], t)
    assert [r.q for r in rep.rows] == [2, 5, 12, 29]
    assert all(r.count >= 0 for r in rep.rows)
    # small q give X < 10 and are recorded, not dropped
    assert rep.rows[0].note
    wider = theorem_scan(FormParams(*sqrt2_params.lambdas, 1.2, math.pi, 0.1, 0.08), [12, 29], t)
    for a, b in zip(rep.rows[2:], wider.rows):
        assert b.count >= a.count


def test_scan_cutoff(sqrt2_params):
    rep = theorem_scan(sqrt2_params, [29, 70, 10**6], sieve(5000))
    assert rep.cutoff is not None and len(rep.rows) == 2


def test_scan_near_upper_k():
    t = sieve(10**4)
    lo = theorem_scan(FormParams(math.sqrt(2), -1, 1, 1.3, math.pi, 0.1, 0.01), [29, 70], t)
    hi = theorem_scan(FormParams(math.sqrt(2), -1, 1, 1.3, math.pi, 0.1, 0.03), [29, 70], t)
    for a, b in zip(lo.rows, hi.rows):
        assert b.eta > a.eta and b.count >= a.count
