"""The exponential sums S_k, U_k, the integral T_k and the minor-arc minimum V.

    S_k(a) = sum_{dX <= p^k <= X} log p e(p^k a)
    U_k(a) = sum_{dX <= n^k <= X} e(n^k a)
    T_k(a) = int_{(dX)^(1/k)}^{X^(1/k)} e(t^k a) dt
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import spherical_jn

from .primes import OutOfTableError, PrimeTable, power_range
from .quadrature import QuadratureError, expi

ALPHA_CHUNK = 1 << 12
# T_k via Legendre expansion of the amplitude on geometric panels
T_PANEL_RATIO = 1.25
T_DEGREE = 16


@dataclass(frozen=True)
class SumSpec:
    kind: str  # "S", "U" or "T"
    k: float
    X: float
    delta: float = 0.1

    def __post_init__(self):
        if self.kind not in ("S", "U", "T"):
            raise ValueError(f"unknown sum kind {self.kind!r}")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.X < 10:
            raise ValueError("X must be >= 10")

    @property
    def lo(self) -> float:
        return (self.delta * self.X) ** (1.0 / self.k)

    @property
    def hi(self) -> float:
        return self.X ** (1.0 / self.k)


def prime_terms(spec: SumSpec, table: PrimeTable) -> tuple[np.ndarray, np.ndarray]:
    """Frequencies p^k and weights log p of S_k (p^k computed once)."""
    if table.limit < math.floor(spec.hi):
        raise OutOfTableError(f"table limit {table.limit} < X^(1/k) = {spec.hi:.6g}")
    return _prime_terms(spec.k, spec.X, spec.delta, table)


_term_cache: dict = {}


def _prime_terms(k, X, delta, table):
    key = (k, X, delta, id(table), table.limit)
    hit = _term_cache.get(key)
    if hit is None or hit[0] is not table:
        rng = power_range(X, delta, k, table)
        freqs = rng.members.astype(np.float64)
        if k != 1:
            freqs = freqs**k
        if len(_term_cache) > 64:
            _term_cache.clear()
        hit = (table, freqs, rng.weights)
        _term_cache[key] = hit
    return hit[1], hit[2]


@lru_cache(maxsize=64)
def integer_terms(k: float, X: float, delta: float) -> tuple[np.ndarray, np.ndarray]:
    lo, hi = (delta * X) ** (1.0 / k), X ** (1.0 / k)
    n = np.arange(max(1, math.floor(lo) - 1), math.floor(hi) + 2, dtype=np.float64)
    nk = n**k if k != 1 else n
    keep = (nk >= delta * X) & (nk <= X)
    nk = nk[keep]
    return nk, np.ones_like(nk)


def trig_sum(freqs, weights, alpha) -> np.ndarray | complex:
    """sum_j w_j e(f_j a) at each a, with phases reduced before trig calls."""
    a = np.asarray(alpha, dtype=np.float64)
    flat = a.reshape(-1)
    out = np.empty(flat.shape, dtype=np.complex128)
    w = np.asarray(weights, dtype=np.float64)
    for s in range(0, flat.size, ALPHA_CHUNK):
        block = flat[s : s + ALPHA_CHUNK]
        out[s : s + ALPHA_CHUNK] = expi(np.outer(block, freqs)) @ w
    out = out.reshape(a.shape)
    return complex(out) if out.ndim == 0 else out


def eval_S(spec: SumSpec, alpha, table: PrimeTable):
    freqs, weights = prime_terms(spec, table)
    return trig_sum(freqs, weights, alpha)


def eval_U(spec: SumSpec, alpha):
    freqs, weights = integer_terms(spec.k, spec.X, spec.delta)
    return trig_sum(freqs, weights, alpha)


# -- T_k -----------------------------------------------------------------------

@lru_cache(maxsize=64)
def _t_panels(k: float, X: float, delta: float):
    """Legendre coefficients of g(u) = u^(1/k-1)/k on geometric panels of
    [delta X, X]; T_k(a) = int g(u) e(a u) du after u = t^k."""
    A, B = delta * X, X
    n_pan = max(1, math.ceil(math.log(B / A) / math.log(T_PANEL_RATIO)))
    edges = A * (B / A) ** (np.arange(n_pan + 1) / n_pan)
    edges[-1] = B
    centre = 0.5 * (edges[1:] + edges[:-1])
    radius = 0.5 * (edges[1:] - edges[:-1])
    xs, ws = np.polynomial.legendre.leggauss(T_DEGREE + 8)
    u = centre[:, None] + radius[:, None] * xs[None, :]
    g = u ** (1.0 / k - 1.0) / k
    m = np.arange(T_DEGREE + 1)
    Pm = np.polynomial.legendre.legvander(xs, T_DEGREE)  # (nodes, m)
    coef = (g * ws) @ Pm * (m + 0.5)  # (panels, m)
    tail = np.abs(coef[:, -2:]).sum(axis=1)
    err = math.fsum((2.0 * radius * tail).tolist())
    return centre, radius, coef, err


def t_integral(k: float, X: float, delta: float, alpha) -> np.ndarray:
    """Vectorised T_k(alpha)."""
    a = np.asarray(alpha, dtype=np.float64)
    if k == 1:
        L, mid = X - delta * X, 0.5 * (X + delta * X)
        out = expi(a * mid) * (L * np.sinc(a * L))
        return out
    centre, radius, coef, _ = _t_panels(k, X, delta)
    flat = a.reshape(-1)
    out = np.zeros(flat.shape, dtype=np.complex128)
    m = np.arange(coef.shape[1])
    phase_m = (1j) ** m
    for s in range(0, flat.size, ALPHA_CHUNK):
        blk = flat[s : s + ALPHA_CHUNK]
        acc = np.zeros(blk.shape, dtype=np.complex128)
        for c, r, cf in zip(centre, radius, coef):
            w = 2.0 * math.pi * r * blk
            sgn = np.sign(w)
            jm = spherical_jn(m[:, None], np.abs(w)[None, :])  # (m, n)
            jm = jm * np.where(m[:, None] % 2 == 1, sgn[None, :], 1.0)
            inner = (2.0 * cf * phase_m) @ jm
            acc += r * expi(blk * c) * inner
        out[s : s + ALPHA_CHUNK] = acc
    return out.reshape(a.shape)


def t_error_estimate(k: float, X: float, delta: float) -> float:
    """Bound on |T_k(a) - computed| from the truncated Legendre tail, any a."""
    if k == 1:
        return 0.0
    return _t_panels(k, X, delta)[3]


def eval_T(spec: SumSpec, alpha):
    """T_k(alpha); raises if the amplitude expansion is not accurate to 1e-8 T_k(0)."""
    err = t_error_estimate(spec.k, spec.X, spec.delta)
    scale = spec.hi - spec.lo
    if err > 1e-8 * scale:
        raise QuadratureError(f"T_k amplitude expansion error {err:.3g} exceeds 1e-8 * T_k(0) = {1e-8 * scale:.3g}")
    out = t_integral(spec.k, spec.X, spec.delta, alpha)
    return complex(out) if np.ndim(out) == 0 else out


def eval_V(alpha, params, table: PrimeTable, X: float):
    """V(a) = min(|S_1(l1 a)|, |S_1(l2 a)|)."""
    spec = SumSpec("S", 1.0, X, params.delta)
    a = np.asarray(alpha, dtype=np.float64)
    s1 = np.abs(eval_S(spec, params.lambda1 * a, table))
    s2 = np.abs(eval_S(spec, params.lambda2 * a, table))
    out = np.minimum(s1, s2)
    return float(out) if np.ndim(out) == 0 else out
