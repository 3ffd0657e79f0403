"""Integrals of the circle method over the major, minor and trivial arcs.

The central object is

    I(eta, varpi, A) = int_A S_1(l1 a) S_1(l2 a) S_k(l3 a) K_eta(a) e(-varpi a) da.

All arcs are symmetric about 0 and the integrand satisfies
f(-a) = conj(f(a)), so by default only the positive half is integrated and
the result is 2 Re of it.  Quadrature panels resolve the full band of the
product, |l1| X + |l2| X + |l3| X + |varpi| + eta, at 8 panels per cycle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate as sp_integrate
from scipy.special import polygamma

from .config import CircleParams, FormParams
from .expsums import SumSpec, integer_terms, prime_terms, t_error_estimate, t_integral
from .kernel import k_fejer
from .primes import PrimeTable, theta_many
from .quadrature import (
    MAX_SAMPLES,
    BudgetExceeded,
    PanelGrid,
    QuadratureResult,
    expi,
    gauss_legendre_pieces,
    integrate_panels,
    integrate_panels_multi,
)

ARCS = ("major", "minor", "trivial-truncated", "full-truncated")
TRUNCATION_FACTOR = 4.0
MIN_TRUNCATION = 50.0


class FormSums:
    """Prime and integer terms of the three sums for one (params, X)."""

    def __init__(self, params: FormParams, X: float, table: PrimeTable):
        self.params, self.X = params, X
        d = params.delta
        self.f1, self.w1 = prime_terms(SumSpec("S", 1.0, X, d), table)
        self.fk, self.wk = prime_terms(SumSpec("S", params.k, X, d), table)
        self.S1_0 = math.fsum(self.w1.tolist())
        self.Sk_0 = math.fsum(self.wk.tolist())
        self.L2 = math.fsum((self.w1 * self.w1).tolist())

    @property
    def band(self) -> float:
        l1, l2, l3 = self.params.lambdas
        top1 = self.f1.max() if self.f1.size else 0.0
        topk = self.fk.max() if self.fk.size else 0.0
        return (abs(l1) + abs(l2)) * top1 + abs(l3) * topk + abs(self.params.varpi)

    def S1(self, grid, lam, first, count):
        return grid.sums(lam * self.f1, self.w1, first, count)

    def Sk(self, grid, lam, first, count):
        return grid.sums(lam * self.fk, self.wk, first, count)


def default_truncation(cp: CircleParams) -> float:
    return max(TRUNCATION_FACTOR * cp.R, MIN_TRUNCATION)


def _trigamma(x: float) -> float:
    return float(polygamma(1, x))


def s1_tail_integral_bound(L2: float, lam: float, start: float) -> float:
    """Bound for int_{start}^inf |S_1(lam a)|^2 a^-2 da.

    Substituting b = |lam| a and cutting into unit blocks, each block carries
    at most (n-1)^-2 times the period integral L2 = sum (log p)^2."""
    s = abs(lam) * start
    m0 = math.floor(s)
    if m0 < 1:
        return math.inf
    return abs(lam) * L2 * _trigamma(m0)


def truncation_tail_bound(fs: FormSums, T: float) -> float:
    """Certified bound for int_{|a| > T} |S_1 S_1 S_k| K_eta da using
    |S_k| <= S_k(0), K_eta(a) <= (pi a)^-2 and Cauchy-Schwarz."""
    l1, l2, _ = fs.params.lambdas
    c1 = s1_tail_integral_bound(fs.L2, l1, T)
    c2 = s1_tail_integral_bound(fs.L2, l2, T)
    return 2.0 * fs.Sk_0 / math.pi**2 * math.sqrt(c1 * c2)


def planned_samples(params: FormParams, cp: CircleParams, arc: str, T: float | None = None,
                    per_cycle: float = 8.0) -> int:
    """Upper estimate of the nodes integrate_I would use, without evaluating anything."""
    T = default_truncation(cp) if T is None else T
    a, b = cp.arcs.intervals(arc, T)[0]
    band = sum(abs(x) for x in params.lambdas) * cp.X + abs(params.varpi) + cp.eta
    return PanelGrid.for_band(a, b, band, per_cycle).samples


def check_budget(params: FormParams, cp: CircleParams, arcs, T: float | None = None,
                 budget: int = MAX_SAMPLES) -> int:
    """Raise BudgetExceeded before any work if the arcs together need too many nodes."""
    total = sum(planned_samples(params, cp, a, T) for a in arcs)
    if total > budget:
        raise BudgetExceeded(
            f"about {total} quadrature nodes needed, budget {budget}; lower X or the truncation T"
        )
    return total


def _fold(pos: QuadratureResult) -> QuadratureResult:
    return QuadratureResult(2.0 * pos.value.real + 0j, 2.0 * pos.abs_error_est, 2 * pos.samples)


def integrate_I(
    params: FormParams,
    cp: CircleParams,
    arc: str,
    table: PrimeTable,
    T: float | None = None,
    both_sides: bool = False,
    per_cycle: float = 8.0,
) -> QuadratureResult:
    """I(eta, varpi, arc) by oscillation-resolving Gauss panels.

    ``arc`` is one of major, minor, trivial-truncated, full-truncated; the
    last two stop at |a| = T and report a certified bound for the rest.
    """
    if arc not in ARCS:
        raise ValueError(f"unknown arc {arc!r}")
    fs = FormSums(params, cp.X, table)
    eta = cp.eta
    l1, l2, l3 = params.lambdas
    if T is None:
        T = default_truncation(cp)
    a, b = cp.arcs.intervals(arc, T)[0]
    band = fs.band + eta
    sup = fs.S1_0**2 * fs.Sk_0 * eta * eta

    def integrand(grid, first, count):
        nodes = grid.nodes(first, count)
        prod = fs.S1(grid, l1, first, count) * fs.S1(grid, l2, first, count)
        prod *= fs.Sk(grid, l3, first, count)
        return prod * k_fejer(eta, nodes) * expi(-params.varpi * nodes)

    grid = PanelGrid.for_band(a, b, band, per_cycle)
    if grid.n_panels == 0:
        return QuadratureResult(0j, 0.0, 1)
    pos = integrate_panels(grid, integrand, band, sup)
    if both_sides:
        neg = integrate_panels(PanelGrid.for_band(-b, -a, band, per_cycle), integrand, band, sup)
        res = pos + neg
    else:
        res = _fold(pos)
    if arc in ("trivial-truncated", "full-truncated"):
        res.truncation_tail = truncation_tail_bound(fs, T)
    res.details.update(arc=arc, a=a, b=b, T=T, panel=grid.h, band=band)
    return res


# -- J1: the main term -----------------------------------------------------------

def _tent_second_antiderivative(u, eta: float):
    """A2 with A2'' = max(0, eta - |u|) and A2 = 0 left of -eta."""
    u = np.asarray(u, dtype=np.float64)
    return np.where(
        u <= -eta,
        0.0,
        np.where(
            u <= 0.0,
            (u + eta) ** 3 / 6.0,
            np.where(u <= eta, eta * eta * u + (eta - u) ** 3 / 6.0, eta**3 + eta * eta * (u - eta)),
        ),
    )


def j1_volume(params: FormParams, X: float, eta: float, order: int = 24) -> tuple[float, float]:
    """The triple integral of max(0, eta - |l1 t1 + l2 t2 + l3 t3^k - varpi|)
    over [dX, X]^2 x [(dX)^(1/k), X^(1/k)].

    The t1 and t2 integrals are done in closed form (the tent has a
    piecewise-cubic second antiderivative); t3 is integrated by Gauss on
    pieces split at every kink.  Returns (value, error estimate).
    """
    if eta <= 0:
        return 0.0, 0.0
    l1, l2, l3 = params.lambdas
    d, k, w = params.delta, params.k, params.varpi
    e1 = sorted((l1 * d * X, l1 * X))
    e2 = sorted((l2 * d * X, l2 * X))
    scale = 1.0 / (abs(l1) * abs(l2))
    corners = [(e2[1] + e1[1], 1.0), (e2[0] + e1[1], -1.0), (e2[1] + e1[0], -1.0), (e2[0] + e1[0], 1.0)]

    def g2(dd):
        acc = np.zeros_like(dd)
        for c, sgn in corners:
            acc += sgn * _tent_second_antiderivative(dd + c, eta)
        return scale * acc

    lo, hi = (d * X) ** (1.0 / k), X ** (1.0 / k)
    breaks = {lo, hi}
    for c, _ in corners:
        for kink in (-eta, 0.0, eta):
            # l3 t^k - varpi + c = kink
            v = (kink - c + w) / l3
            if v > 0:
                t = v ** (1.0 / k)
                if lo < t < hi:
                    breaks.add(t)
    pts = np.array(sorted(breaks))
    # refine so each piece is short relative to its position
    fine = [pts[0]]
    for x0, x1 in zip(pts[:-1], pts[1:]):
        n = max(1, math.ceil(8 * (x1 - x0) / (hi - lo)))
        fine.extend(np.linspace(x0, x1, n + 1)[1:])
    return gauss_legendre_pieces(lambda t: g2(l3 * t**k - w), fine, order)


def _t_envelope(lam: float, k: float, X: float, delta: float, a):
    """|T_k(lam a)| <= min(T_k(0), 1/(pi |lam a| k t0^(k-1))), t0 the lower end."""
    t0, t1 = (delta * X) ** (1.0 / k), X ** (1.0 / k)
    return np.minimum(t1 - t0, 1.0 / (math.pi * abs(lam) * np.abs(a) * k * t0 ** (k - 1.0)))


def j1_tail_bound(params: FormParams, X: float, eta: float, cut: float) -> float:
    """Bound for int_{|a| > cut} |T_1 T_1 T_k| K_eta da from the first
    derivative test and K_eta <= min(eta^2, (pi a)^-2)."""
    l1, l2, l3 = params.lambdas
    d, k = params.delta, params.k

    def f(a):
        return float(
            _t_envelope(l1, 1.0, X, d, a)
            * _t_envelope(l2, 1.0, X, d, a)
            * _t_envelope(l3, k, X, d, a)
            * min(eta * eta, 1.0 / (math.pi * a) ** 2)
        )

    total, edge = 0.0, cut
    # decade pieces keep quad accurate on the power-law envelope
    while edge < 1e12 * max(cut, 1e-12):
        val, _ = sp_integrate.quad(f, edge, 10.0 * edge, limit=200)
        total += val
        edge *= 10.0
    return 2.0 * total


@dataclass
class J1Result:
    value: complex  # 1D integral of T1 T1 Tk K e(-varpi a) over the major arc
    volume: float  # the same main term over the whole line, as a 3D volume
    volume_error: float
    abs_error_est: float
    samples: int
    tail_bound: float  # certified bound on |value - volume|
    normalised: float  # volume / (eta^2 X^(1+1/k))
    fitted_tail: float  # |value - volume| / (eta^2 X^(1+1/k) P^-2)


def major_arc_J1(
    params: FormParams, cp: CircleParams, eta: float | None = None, one_dimensional: bool = True
) -> J1Result:
    """The main term computed two ways: the 1D major-arc integral of the
    T-approximations and the 3D volume it approaches."""
    eta = cp.eta if eta is None else eta
    X, k = cp.X, params.k
    vol, vol_err = j1_volume(params, X, eta)
    norm = eta * eta * X ** (1.0 + 1.0 / k)
    value, err, samples = complex(math.nan), math.nan, 0
    if one_dimensional and eta > 0:
        l1, l2, l3 = params.lambdas
        d = params.delta
        band = (abs(l1) + abs(l2) + abs(l3)) * X + abs(params.varpi) + eta
        sup = (X - d * X) ** 2 * (X ** (1 / k) - (d * X) ** (1 / k)) * eta * eta

        def integrand(grid, first, count):
            a = grid.nodes(first, count)
            prod = t_integral(1.0, X, d, l1 * a) * t_integral(1.0, X, d, l2 * a)
            prod *= t_integral(k, X, d, l3 * a)
            return prod * k_fejer(eta, a) * expi(-params.varpi * a)

        grid = PanelGrid.for_band(0.0, cp.arcs.cut, band)
        res = _fold(integrate_panels(grid, integrand, band, sup))
        value, samples = res.value, res.samples
        err = res.abs_error_est + 2 * cp.arcs.cut * t_error_estimate(k, X, d) * X * X * eta * eta
    tail = j1_tail_bound(params, X, eta, cp.arcs.cut) if eta > 0 else 0.0
    fitted = abs(value.real - vol) / (norm * cp.P**-2) if eta > 0 else 0.0
    return J1Result(value, vol, vol_err, err, samples, tail, vol / norm, fitted)


# -- J2, J3, J4 ---------------------------------------------------------------------

@dataclass
class ErrorTermReport:
    I_major: complex
    J: dict  # J1..J4, complex
    pieces: dict  # A2, B2, A3, B3, A4, B4 (nonnegative)
    normalised: dict  # every entry divided by eta^2 X^(1+1/k)
    residual: float  # |I_major - (J1+J2+J3+J4)|
    abs_error_est: float
    samples: int


def major_arc_error_terms(params: FormParams, cp: CircleParams, table: PrimeTable) -> ErrorTermReport:
    """Split I over the major arc into J1 + J2 + J3 + J4 and evaluate the
    pieces A_j, B_j that bound J2, J3 and J4, all on one shared grid."""
    X, k, eta = cp.X, params.k, cp.eta
    d = params.delta
    fs = FormSums(params, X, table)
    l1, l2, l3 = params.lambdas
    n1, u1w = integer_terms(1.0, X, d)
    nk, ukw = integer_terms(k, X, d)
    band = fs.band + eta
    base = fs.S1_0**2 * fs.Sk_0

    def integrand(grid, first, count):
        a = grid.nodes(first, count)
        s1a, s1b = fs.S1(grid, l1, first, count), fs.S1(grid, l2, first, count)
        sk = fs.Sk(grid, l3, first, count)
        u1a = grid.sums(l1 * n1, u1w, first, count)
        u1b = grid.sums(l2 * n1, u1w, first, count)
        uk = grid.sums(l3 * nk, ukw, first, count)
        t1a, t1b = t_integral(1.0, X, d, l1 * a), t_integral(1.0, X, d, l2 * a)
        tk = t_integral(k, X, d, l3 * a)
        ke = k_fejer(eta, a) * expi(-params.varpi * a)
        return np.stack([
            s1a * s1b * sk * ke,
            t1a * t1b * tk * ke,
            (s1a - t1a) * t1b * tk * ke,
            s1a * (s1b - t1b) * tk * ke,
            s1a * s1b * (sk - tk) * ke,
            np.abs(s1a - u1a) * np.abs(t1b) * np.abs(tk),
            np.abs(u1a - t1a) * np.abs(t1b) * np.abs(tk),
            np.abs(s1a) * np.abs(s1b - u1b) * np.abs(tk),
            np.abs(s1a) * np.abs(u1b - t1b) * np.abs(tk),
            np.abs(s1a) * np.abs(s1b) * np.abs(sk - uk),
            np.abs(s1a) * np.abs(s1b) * np.abs(uk - tk),
        ]) + 0j

    grid = PanelGrid.for_band(0.0, cp.arcs.cut, band)
    sups = [base * eta * eta] * 5 + [4 * base] * 6
    res = [_fold(r) for r in integrate_panels_multi(grid, integrand, band, sups)]
    names = ["J1", "J2", "J3", "J4"]
    J = {n: r.value for n, r in zip(names, res[1:5])}
    pieces = {n: r.value.real for n, r in zip(["A2", "B2", "A3", "B3", "A4", "B4"], res[5:])}
    norm = eta * eta * X ** (1.0 + 1.0 / k)
    normalised = {n: abs(v) / norm for n, v in J.items()}
    normalised.update({n: eta * eta * v / norm for n, v in pieces.items()})
    normalised["I_major"] = abs(res[0].value) / norm
    residual = abs(res[0].value - sum(J.values()))
    err = sum(r.abs_error_est for r in res[:5])
    return ErrorTermReport(res[0].value, J, pieces, normalised, residual, err, res[0].samples)


# -- minor arc -------------------------------------------------------------------------

def minor_arc_L2(params: FormParams, cp: CircleParams, table: PrimeTable, which: int, eta: float | None = None) -> QuadratureResult:
    """int over the minor arc of |S(l_j a)|^2 K_eta(a), split at 1/eta.

    ``which`` = 1, 2 uses S_1(l_j a); 3 uses S_k(l3 a).
    """
    if which not in (1, 2, 3):
        raise ValueError("which must be 1, 2 or 3")
    eta = cp.eta if eta is None else eta
    X, k = cp.X, params.k
    fs = FormSums(params, X, table)
    lam = params.lambdas[which - 1]
    if which == 3:
        freqs, weights, s0 = lam * fs.fk, fs.wk, fs.Sk_0
    else:
        freqs, weights, s0 = lam * fs.f1, fs.w1, fs.S1_0
    band = 2.0 * (np.abs(freqs).max() if freqs.size else 0.0) + eta

    def integrand(grid, first, count):
        a = grid.nodes(first, count)
        s = grid.sums(freqs, weights, first, count)
        return (s.real**2 + s.imag**2) * k_fejer(eta, a) + 0j

    cut, R = cp.arcs.cut, cp.R
    split = min(max(1.0 / eta, cut), R)
    parts = []
    for lo, hi in ((cut, split), (split, R)):
        grid = PanelGrid.for_band(lo, hi, band)
        parts.append(_fold(integrate_panels(grid, integrand, band, s0 * s0 * eta * eta)))
    total = parts[0] + parts[1]
    total.value = total.value.real
    logX = math.log(X)
    scale = eta * X * logX if which != 3 else eta * X ** (1.0 / k) * logX**3
    total.details.update(
        near=parts[0].value.real, far=parts[1].value.real, split=split, fitted=total.value / scale
    )
    return total


# -- trivial arc -------------------------------------------------------------------------

def _s1_squared_period(fs: FormSums, band: float):
    """Grid evaluator of |S_1(b)|^2 for b in [0, 1)."""

    def sq(grid, first, count):
        s = grid.sums(fs.f1, fs.w1, first, count)
        return s.real**2 + s.imag**2

    return sq


def s1_tail_integral(fs: FormSums, start: float, rel_tol: float = 1e-10) -> QuadratureResult:
    """C = int_{start}^inf |S_1(a)|^2 a^-2 da by unit blocks.

    |S_1|^2 has period 1, so block n contributes int_0^1 |S_1(b)|^2
    (b + n)^-2 db; the blocks n0..N are summed inside the integral with the
    trigamma function, and blocks past N are bounded by L2 * psi'(N+1).
    """
    if start <= 0:
        raise ValueError("start must be positive")
    band = float(fs.f1.max() - fs.f1.min()) if fs.f1.size else 0.0
    # last block whose tail bound L2/N is below rel_tol of the leading term
    N = math.ceil(start / rel_tol) + 2
    frac = start - math.floor(start)
    n_base = math.floor(start)
    sq = _s1_squared_period(fs, band)

    def weight(b, first_block):
        return polygamma(1, b + first_block) - polygamma(1, b + N + 1)

    total = QuadratureResult(0j, 0.0, 0)
    # b in [frac, 1): first block n_base; b in [0, frac): first block n_base + 1
    for lo, hi, nb in ((0.0, frac, n_base + 1), (frac, 1.0, n_base)):
        grid = PanelGrid.for_band(lo, hi, max(band, 1.0))

        def integrand(grid, first, count, nb=nb):
            b = grid.nodes(first, count)
            return sq(grid, first, count) * weight(b, nb) + 0j

        total = total + integrate_panels(grid, integrand, max(band, 1.0), fs.S1_0**2 / max(start - 1, 1e-12))
    total.value = total.value.real
    total.truncation_tail = fs.L2 * _trigamma(N + 1)
    return total


def trivial_arc_tail(params: FormParams, cp: CircleParams, table: PrimeTable, R: float | None = None) -> QuadratureResult:
    """Bound for |I(eta, varpi, trivial arc)| via the block integrals
    C_j = int_{|l_j| R}^inf |S_1(a)|^2 a^-2 da.

    The value is 2 S_k(0)/pi^2 * sqrt(|l1| C_1 |l2| C_2); details carry C_j
    and the fitted constants against X log X / (|l_j| R) and
    X^(1+1/k) log X / R.
    """
    R = cp.R if R is None else R
    X, k = cp.X, params.k
    fs = FormSums(params, X, table)
    logX = math.log(X)
    C, fits = [], []
    samples, err, tail = 0, 0.0, 0.0
    for lam in params.lambdas[:2]:
        res = s1_tail_integral(fs, abs(lam) * R)
        C.append(res.value)
        fits.append(res.value * abs(lam) * R / (X * logX))
        samples += res.samples
        err += res.abs_error_est
        tail += res.truncation_tail
    l1, l2 = abs(params.lambda1), abs(params.lambda2)
    bound = 2.0 * fs.Sk_0 / math.pi**2 * math.sqrt(l1 * C[0] * l2 * C[1])
    out = QuadratureResult(bound, err, samples, tail)
    out.details.update(C=C, fitted_C=fits, R=R, fitted_I=bound * R / (X ** (1 + 1 / k) * logX))
    return out


# -- Selberg integral and the Gallagher-type lemma --------------------------------------

@dataclass(frozen=True)
class SelbergSpec:
    k: float
    X: float
    h: float

    def __post_init__(self):
        if not 0 <= self.h <= self.X:
            raise ValueError(f"need 0 <= h <= X, got h={self.h}")
        if self.X < 10:
            raise ValueError("X must be >= 10")


def _root_gap(x, h, k):
    """(x + h)^(1/k) - x^(1/k) without cancellation."""
    return x ** (1.0 / k) * np.expm1(np.log1p(h / x) / k)


def selberg_J(spec: SelbergSpec, table: PrimeTable, order: int = 8) -> QuadratureResult:
    """J_k(X, h) = int_X^2X (theta((x+h)^(1/k)) - theta(x^(1/k)) - ((x+h)^(1/k) - x^(1/k)))^2 dx.

    The theta difference is constant between the breakpoints x = p^k and
    x = p^k - h, so each piece is integrated by Gauss on a smooth integrand.
    """
    k, X, h = spec.k, spec.X, spec.h
    top = (2 * X + h) ** (1.0 / k)
    if top > table.limit:
        from .primes import OutOfTableError

        raise OutOfTableError(f"table limit {table.limit} < (2X+h)^(1/k) = {top:.6g}")
    if h == 0:
        return QuadratureResult(0.0, 0.0, 1)
    p = table.primes[table.primes <= top + 1].astype(np.float64)
    pk = p**k if k != 1 else p
    cand = np.concatenate([pk, pk - h, np.linspace(X, 2 * X, 65)])
    breaks = np.unique(cand[(cand >= X) & (cand <= 2 * X)])
    mids = 0.5 * (breaks[1:] + breaks[:-1])
    jump = theta_many((mids + h) ** (1.0 / k), table) - theta_many(mids ** (1.0 / k), table)

    def f(x):
        # x has shape (pieces, nodes); each row lies inside one piece
        return (jump[:, None] - _root_gap(x, h, k)) ** 2

    value, err = gauss_legendre_pieces(f, breaks, order)
    return QuadratureResult(value, err, len(mids) * order, details={"pieces": len(mids)})


def selberg_grid_oracle(spec: SelbergSpec, table: PrimeTable, step: float = 1e-3) -> float:
    """Midpoint Riemann sum of the Selberg integrand on a uniform grid."""
    k, X, h = spec.k, spec.X, spec.h
    n = int(round(X / step))
    total = []
    for s in range(0, n, 1 << 20):
        x = X + (np.arange(s, min(n, s + (1 << 20))) + 0.5) * step
        diff = theta_many((x + h) ** (1.0 / k), table) - theta_many(x ** (1.0 / k), table)
        diff -= (x + h) ** (1.0 / k) - x ** (1.0 / k)
        total.append(float(np.sum(diff * diff)) * step)
    return math.fsum(total)


def gallagher_lhs(params: FormParams, X: float, Y: float, table: PrimeTable) -> QuadratureResult:
    """int_{-Y}^{Y} |S_k(a) - U_k(a)|^2 da."""
    if not 0 < Y <= 0.5:
        raise ValueError("need 0 < Y <= 1/2")
    k, d = params.k, params.delta
    fk, wk = prime_terms(SumSpec("S", k, X, d), table)
    nk, uw = integer_terms(k, X, d)
    freqs = np.concatenate([fk, nk])
    weights = np.concatenate([wk, -uw])
    band = 2.0 * X
    s0 = math.fsum(np.abs(weights).tolist())

    def integrand(grid, first, count):
        s = grid.sums(freqs, weights, first, count)
        return s.real**2 + s.imag**2 + 0j

    res = _fold(integrate_panels(PanelGrid.for_band(0.0, Y, band), integrand, band, s0 * s0))
    res.value = res.value.real
    return res


def gallagher_rhs(k: float, X: float, Y: float, table: PrimeTable) -> dict:
    """The three terms X^(2/k-2) log^2 X / Y, Y^2 X and Y^2 J_k(X, 1/(2Y))."""
    logX = math.log(X)
    h = min(1.0 / (2.0 * Y), X)
    J = selberg_J(SelbergSpec(k, X, h), table).value
    terms = {
        "first": X ** (2.0 / k - 2.0) * logX**2 / Y,
        "second": Y * Y * X,
        "third": Y * Y * J,
    }
    terms["total"] = math.fsum(terms.values())
    return terms
