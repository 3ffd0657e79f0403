"""Panel quadrature and fast evaluation of trigonometric sums on grids.

Every oscillatory integral in the package is a composite 4-point
Gauss-Legendre rule on equal panels.  Integrands are products of sums
``sum_j w_j e(f_j alpha)``; on an arithmetic grid of panels these are
evaluated by splitting the grid index as ``m = i * n_lo + r`` so that
the whole grid costs one complex matrix product per Gauss offset.

Reductions are deterministic: the panel range is cut into chunks of a
fixed size, each chunk is reduced with numpy's pairwise sum and the
chunk totals are combined with ``math.fsum`` in index order.  The thread
count only decides who computes a chunk, never how the sum is formed.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from threadpoolctl import threadpool_limits

TWO_PI = 2.0 * math.pi
GAUSS_ORDER = 4
GAUSS_X, GAUSS_W = np.polynomial.legendre.leggauss(GAUSS_ORDER)
# (n!)^4 / ((2n+1) ((2n)!)^3), the Gauss-Legendre remainder constant
GAUSS_REMAINDER = math.factorial(GAUSS_ORDER) ** 4 / (
    (2 * GAUSS_ORDER + 1) * math.factorial(2 * GAUSS_ORDER) ** 3
)
CHUNK_PANELS = 1 << 14
MAX_SAMPLES = 10**8

_threads = 1


class BudgetExceeded(RuntimeError):
    """Raised when a quadrature would need more than MAX_SAMPLES nodes."""


class QuadratureError(RuntimeError):
    pass


def set_threads(n: int) -> None:
    global _threads
    _threads = max(1, int(n))


def get_threads() -> int:
    return _threads


@dataclass
class QuadratureResult:
    value: complex | float
    abs_error_est: float
    samples: int
    truncation_tail: float = 0.0
    details: dict = field(default_factory=dict)

    def __add__(self, other: "QuadratureResult") -> "QuadratureResult":
        return QuadratureResult(
            self.value + other.value,
            self.abs_error_est + other.abs_error_est,
            self.samples + other.samples,
            self.truncation_tail + other.truncation_tail,
        )

    def as_dict(self) -> dict:
        v = self.value
        out = {
            "value": v.real if isinstance(v, complex) else v,
            "error": self.abs_error_est,
            "samples": self.samples,
            "tail": self.truncation_tail,
        }
        if isinstance(v, complex):
            out["imag"] = v.imag
        return out


def expi(phase) -> np.ndarray:
    """e(x) = exp(2 pi i x) with the argument reduced to [-1/2, 1/2] first.

    The reduction is odd in x, so e(-x) is exactly conj(e(x)).
    """
    x = np.asarray(phase, dtype=np.float64)
    frac = x - np.rint(x)
    return np.exp(1j * TWO_PI * frac)


def fsum_complex(values) -> complex:
    values = list(values)
    return complex(
        math.fsum(v.real for v in values), math.fsum(v.imag for v in values)
    )


def trig_sum_grid(
    freqs,
    weights,
    start: float,
    step: float,
    n: int,
    offsets: Sequence[float] = (0.0,),
) -> np.ndarray:
    """Evaluate sum_j w_j e(f_j * (start + o + m*step)) for m < n.

    Returns an array of shape (len(offsets), n).
    """
    freqs = np.asarray(freqs, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.complex128)
    offsets = np.asarray(offsets, dtype=np.float64)
    if n <= 0:
        return np.zeros((len(offsets), 0), dtype=np.complex128)
    if freqs.size == 0:
        return np.zeros((len(offsets), n), dtype=np.complex128)
    n_lo = max(1, math.isqrt(n))
    n_hi = -(-n // n_lo)
    fine = expi(np.outer(np.arange(n_lo) * step, freqs))  # (n_lo, J)
    coarse = expi(np.outer(np.arange(n_hi) * (n_lo * step), freqs))  # (n_hi, J)
    base = weights * expi(np.outer(start + offsets, freqs))  # (O, J)
    out = np.empty((len(offsets), n_hi * n_lo), dtype=np.complex128)
    for o in range(len(offsets)):
        out[o] = ((coarse * base[o]) @ fine.T).reshape(-1)
    return out[:, :n]


@dataclass(frozen=True)
class PanelGrid:
    """Equal panels of width ``h`` covering [a, b] (last panel may be shorter)."""

    a: float
    b: float
    h: float

    @classmethod
    def for_band(cls, a: float, b: float, band: float, per_cycle: float = 8.0):
        """Panels no wider than 1/(per_cycle * band), i.e. <= 1/8 oscillation."""
        if b <= a:
            return cls(a, a, 1.0)
        n = max(1, math.ceil((b - a) * per_cycle * max(band, 1e-300)))
        return cls(a, b, (b - a) / n)

    @property
    def n_panels(self) -> int:
        if self.b <= self.a:
            return 0
        return max(1, round((self.b - self.a) / self.h))

    @property
    def samples(self) -> int:
        return self.n_panels * GAUSS_ORDER

    @property
    def offsets(self) -> np.ndarray:
        return 0.5 * self.h * (GAUSS_X + 1.0)

    def chunks(self):
        n = self.n_panels
        for s in range(0, n, CHUNK_PANELS):
            yield s, min(CHUNK_PANELS, n - s)

    def nodes(self, first: int, count: int) -> np.ndarray:
        """Gauss nodes of panels first..first+count-1, shape (4, count)."""
        left = self.a + (first + np.arange(count)) * self.h
        return left[None, :] + self.offsets[:, None]

    def sums(self, freqs, weights, first: int, count: int) -> np.ndarray:
        return trig_sum_grid(
            freqs, weights, self.a + first * self.h, self.h, count, self.offsets
        )


def gauss_error_bound(length: float, h: float, band: float, sup: float) -> float:
    """A-priori bound for the composite 4-point rule on an integrand of
    exponential type 2*pi*band bounded by ``sup`` (Bernstein's inequality)."""
    if length <= 0:
        return 0.0
    sigma_h = TWO_PI * band * h
    return length * GAUSS_REMAINDER * sigma_h ** (2 * GAUSS_ORDER) * sup


def integrate_panels_multi(
    grid: PanelGrid,
    integrand: Callable[[PanelGrid, int, int], np.ndarray],
    band: float,
    sups: Sequence[float],
    budget: int = MAX_SAMPLES,
) -> list[QuadratureResult]:
    """Composite Gauss rule for several integrands sharing one grid.

    ``integrand(grid, first, count)`` returns values at
    ``grid.nodes(first, count)`` stacked as shape (m, 4, count).
    """
    m = len(sups)
    if grid.n_panels == 0:
        return [QuadratureResult(0.0, 0.0, 1) for _ in range(m)]
    if grid.samples > budget:
        raise BudgetExceeded(
            f"{grid.samples} quadrature nodes exceed the budget of {budget}; "
            "lower X or shorten the arc"
        )
    w = (0.5 * grid.h) * GAUSS_W[:, None]

    def work(chunk):
        first, count = chunk
        vals = np.asarray(integrand(grid, first, count)).reshape(m, GAUSS_ORDER, count)
        return np.sum(vals * w, axis=(1, 2))

    chunks = list(grid.chunks())
    with threadpool_limits(limits=1, user_api="blas"):
        if _threads > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=_threads) as pool:
                parts = list(pool.map(work, chunks))
        else:
            parts = [work(c) for c in chunks]
    out = []
    for i in range(m):
        total = fsum_complex(complex(p[i]) for p in parts)
        if not (math.isfinite(total.real) and math.isfinite(total.imag)):
            raise QuadratureError("non-finite quadrature value")
        err = gauss_error_bound(grid.b - grid.a, grid.h, band, sups[i])
        out.append(QuadratureResult(total, err, grid.samples))
    return out


def integrate_panels(grid, integrand, band, sup, budget: int = MAX_SAMPLES) -> QuadratureResult:
    """Single-integrand form of :func:`integrate_panels_multi`."""
    return integrate_panels_multi(
        grid, lambda g, s, c: integrand(g, s, c)[None], band, [sup], budget
    )[0]


def integrate_function(f, a: float, b: float, band: float, sup: float, **kw):
    """Convenience wrapper for a vectorised ``f(alpha)``."""
    grid = PanelGrid.for_band(a, b, band, **kw)
    return integrate_panels(grid, lambda g, s, c: f(g.nodes(s, c)), band, sup)


def gauss_legendre_pieces(f, breaks, order: int = 20) -> tuple[float, float]:
    """Integrate a smooth-between-breakpoints ``f`` with Gauss on each piece.

    Returns (value, |difference to half order|) as an error estimate.
    """
    xs, ws = np.polynomial.legendre.leggauss(order)
    xh, wh = np.polynomial.legendre.leggauss(order // 2)
    breaks = np.asarray(breaks, dtype=np.float64)
    a, b = breaks[:-1], breaks[1:]
    keep = b > a
    a, b = a[keep], b[keep]
    if a.size == 0:
        return 0.0, 0.0
    mid, rad = 0.5 * (a + b), 0.5 * (b - a)
    full = f(mid[:, None] + rad[:, None] * xs[None, :]) @ ws * rad
    half = f(mid[:, None] + rad[:, None] * xh[None, :]) @ wh * rad
    value = math.fsum(full.tolist())
    return value, abs(value - math.fsum(half.tolist()))
