"""The Fejer kernel K_eta(a) = (sin(pi eta a)/(pi a))^2 and its transform
max(0, eta - |t|)."""

from __future__ import annotations

import math

import numpy as np

from .quadrature import QuadratureError, QuadratureResult, integrate_function

SMALL = 1e-8


def k_hat(eta: float, alpha):
    """max(0, eta - |alpha|)."""
    if eta <= 0:
        raise ValueError("eta must be positive")
    out = np.maximum(0.0, eta - np.abs(alpha))
    return float(out) if np.ndim(out) == 0 else out


def k_fejer(eta: float, alpha):
    """(sin(pi eta alpha) / (pi alpha))^2, equal to eta^2 at 0."""
    if eta <= 0:
        raise ValueError("eta must be positive")
    a = np.asarray(alpha, dtype=np.float64)
    small = np.abs(a) < SMALL / eta
    safe = np.where(small, 1.0, a)
    val = (np.sin(math.pi * eta * safe) / (math.pi * safe)) ** 2
    x = math.pi * eta * a
    taylor = eta * eta * (1.0 - x * x / 3.0)
    out = np.where(small, taylor, val)
    return float(out) if out.ndim == 0 else out


def kernel_bound(eta: float, alpha):
    """min(eta^2, (pi |alpha|)^-2), the pointwise majorant of K_eta."""
    a = np.abs(np.asarray(alpha, dtype=np.float64))
    with np.errstate(divide="ignore"):
        tail = np.where(a > 0, 1.0 / (math.pi * a) ** 2, np.inf)
    return np.minimum(eta * eta, tail)


def fourier_pair_check(eta: float, t: float, truncation: float) -> QuadratureResult:
    """Numerical int_{-T}^{T} K_eta(a) e(-t a) da; tends to k_hat(eta, t).

    The discarded tail is bounded by 2/(pi^2 T) since K_eta(a) <= (pi a)^-2.
    """
    if truncation <= 0:
        raise ValueError("truncation must be positive")
    band = abs(t) + eta
    # even integrand: twice the cosine integral over [0, T]
    res = integrate_function(
        lambda a: 2.0 * k_fejer(eta, a) * np.cos(2.0 * math.pi * t * a),
        0.0, truncation, band=band, sup=2.0 * eta * eta,
    )
    if not math.isfinite(res.value.real):
        raise QuadratureError("non-finite Fourier check")
    res.value = res.value.real
    res.truncation_tail = 2.0 / (math.pi**2 * truncation)
    return res


def kernel_area(eta: float, truncation: float = 1e5) -> QuadratureResult:
    """int K_eta over [-T, T]; the full line integral equals eta."""
    return fourier_pair_check(eta, 0.0, truncation)
