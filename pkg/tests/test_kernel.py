import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from diophlab.kernel import fourier_pair_check, k_fejer, k_hat, kernel_area, kernel_bound


def test_k_hat_examples():
    assert k_hat(0.5, 0.2) == pytest.approx(0.3)
    assert k_hat(0.5, 0.7) == 0.0
    for eta in (0.1, 1.0, 7.0):
        assert k_hat(eta, 0.0) == eta


def test_k_fejer_examples():
    assert k_fejer(0.5, 0.0) == 0.25
    assert k_fejer(0.5, 2.0) == pytest.approx(0.0, abs=1e-30)
    assert k_fejer(0.5, 1.0) == pytest.approx(1 / math.pi**2, rel=1e-15)
    assert 1 / math.pi**2 == pytest.approx(0.101321, abs=1e-6)


@given(st.floats(1e-3, 10), st.floats(-1e4, 1e4))
def test_evenness(eta, a):
    assert k_fejer(eta, -a) == k_fejer(eta, a)
    assert k_hat(eta, -a) == k_hat(eta, a)


@given(st.floats(1e-3, 10))
def test_continuous_through_taylor_guard(eta):
    edge = 1e-8 / eta
    inside, outside = k_fejer(eta, edge * 0.999), k_fejer(eta, edge * 1.001)
    assert inside == pytest.approx(outside, rel=1e-12)
    assert k_fejer(eta, 0.0) == eta * eta


def test_bound_on_dense_grid():
    a = np.linspace(-50, 50, 10**5)
    for eta in (0.1, 0.5, 1.0, 3.0):
        assert np.all(k_fejer(eta, a) <= kernel_bound(eta, a))


@pytest.mark.parametrize("eta,t,expect", [(0.5, 0.0, 0.5), (0.5, 1.0, 0.0), (1.0, 0.5, 0.5)])
def test_fourier_pair_examples(eta, t, expect):
    res = fourier_pair_check(eta, t, 1e3)
    assert abs(res.value - expect) <= 1e-3
    assert res.truncation_tail == pytest.approx(2 / (math.pi**2 * 1e3))


@pytest.mark.parametrize("eta", [0.1, 0.5, 1.0])
def test_area_equals_eta(eta):
    res = kernel_area(eta, 1e5)
    assert res.value == pytest.approx(eta, rel=1e-4)
