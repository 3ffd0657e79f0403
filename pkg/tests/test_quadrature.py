import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diophlab.quadrature import (
    BudgetExceeded,
    PanelGrid,
    expi,
    gauss_legendre_pieces,
    integrate_function,
    integrate_panels,
    set_threads,
    trig_sum_grid,
)


@given(st.floats(-1e6, 1e6, allow_nan=False))
def test_expi_is_exactly_odd(x):
    assert expi(-x) == np.conj(expi(x))


@given(
    st.lists(st.integers(1, 5000), min_size=1, max_size=30),
    st.floats(-3, 3),
    st.floats(1e-5, 1e-2),
    st.integers(1, 300),
)
@settings(max_examples=40, deadline=None)
def test_trig_sum_grid_matches_direct(freqs, start, step, n):
    f = np.array(freqs, dtype=float)
    w = np.log(f + 1.0)
    offs = [0.0, 0.3 * step]
    got = trig_sum_grid(f, w, start, step, n, offs)
    for o, off in enumerate(offs):
        a = start + off + step * np.arange(n)
        direct = np.exp(2j * np.pi * np.outer(a, f)) @ w
        assert np.allclose(got[o], direct, atol=1e-9 * w.sum())


def test_gauss_panels_integrate_oscillation():
    # int_0^3 cos(2 pi 50 a) e^{-a} da in closed form
    w = 2 * math.pi * 50
    exact = (1 + math.exp(-3) * (w * math.sin(3 * w) - math.cos(3 * w))) / (1 + w * w)
    res = integrate_function(lambda a: np.cos(w * a) * np.exp(-a) + 0j, 0.0, 3.0, band=50.0, sup=1.0)
    assert res.value.real == pytest.approx(exact, abs=1e-12)
    assert abs(res.value.real - exact) <= res.abs_error_est + 1e-15


def test_empty_grid():
    g = PanelGrid.for_band(1.0, 1.0, 10.0)
    res = integrate_panels(g, lambda *a: None, 1.0, 1.0)
    assert res.value == 0 and res.samples == 1


def test_budget_refusal():
    g = PanelGrid.for_band(0.0, 1.0, 1e8)
    with pytest.raises(BudgetExceeded):
        integrate_panels(g, lambda *a: None, 1e8, 1.0)


def test_thread_count_does_not_change_bits():
    f = np.arange(1, 4000, dtype=float)
    g = PanelGrid.for_band(0.0, 2.0, 4000.0)

    def integrand(grid, first, count):
        return grid.sums(f, np.ones_like(f), first, count) ** 2

    set_threads(1)
    a = integrate_panels(g, integrand, 8000.0, 1.0).value
    set_threads(8)
    b = integrate_panels(g, integrand, 8000.0, 1.0).value
    set_threads(1)
    assert a == b


def test_gauss_pieces_with_kinks():
    val, err = gauss_legendre_pieces(lambda x: np.abs(x - 0.3) ** 3, [0.0, 0.3, 1.0])
    assert val == pytest.approx((0.3**4 + 0.7**4) / 4, rel=1e-14)
    assert err < 1e-12
