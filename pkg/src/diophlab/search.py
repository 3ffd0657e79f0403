"""Brute-force ground truth: prime triples with |l1 p1 + l2 p2 + l3 p3^k - varpi| <= eta.

For each (p2, p3) the admissible p1 form a window in the sorted array of
l1 p1.  Windows are located with ``searchsorted`` after widening by a few
ulps, then every candidate is re-tested with the same floating-point
expression as the naive triple loop, so both agree exactly.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .approx import Convergent, scale_sequence
from .config import ConfigError, FormParams, derive_circle_params
from .primes import OutOfTableError, PrimeTable, power_range
from .quadrature import get_threads

BOUNDARY_ULPS = 4


@dataclass(frozen=True)
class SolutionRecord:
    p1: int
    p2: int
    p3: int
    form_value: float
    miss: float
    weight: float
    on_boundary: bool = False


class _Box:
    """Sorted candidate values for one (params, X)."""

    def __init__(self, params: FormParams, X: float, table: PrimeTable):
        need = max(X, X ** (1.0 / params.k))
        if not table.covers(need):
            raise OutOfTableError(f"table limit {table.limit} < {need:.6g}")
        d = params.delta
        r1 = power_range(X, d, 1.0, table)
        r3 = power_range(X, d, params.k, table)
        l1, l2, l3 = params.lambdas
        self.params = params
        a1 = l1 * r1.members.astype(np.float64)
        order = np.argsort(a1, kind="stable")
        self.p1, self.a1, self.w1 = r1.members[order], a1[order], r1.weights[order]
        self.p2, self.w2 = r1.members, r1.weights
        self.a2 = l2 * r1.members.astype(np.float64)
        pk = r3.members.astype(np.float64)
        if params.k != 1:
            pk = pk**params.k
        self.p3, self.w3, self.a3 = r3.members, r3.weights, l3 * pk
        mags = [np.abs(x).max() for x in (self.a1, self.a2, self.a3) if x.size]
        self.slack = 64.0 * np.finfo(float).eps * (sum(mags) + abs(params.varpi) + 1.0)

    @property
    def empty(self) -> bool:
        return self.p1.size == 0 or self.p3.size == 0

    @property
    def n_triples(self) -> int:
        return self.p1.size * self.p2.size * self.p3.size

    def form(self, a1, a2, a3):
        """The single expression used for every miss computation."""
        return a1 + a2 + a3

    def row(self, j: int, eta: float):
        """All (i1, i3, form, miss) with miss <= eta for p2 = self.p2[j]."""
        a2 = self.a2[j]
        centre = self.params.varpi - a2 - self.a3
        lo = np.searchsorted(self.a1, centre - eta - self.slack, side="left")
        hi = np.searchsorted(self.a1, centre + eta + self.slack, side="right")
        lens = hi - lo
        total = int(lens.sum())
        if total == 0:
            return _EMPTY
        i3 = np.repeat(np.arange(self.a3.size), lens)
        starts = np.repeat(lo - np.concatenate(([0], np.cumsum(lens)[:-1])), lens)
        i1 = starts + np.arange(total)
        f = self.form(self.a1[i1], a2, self.a3[i3])
        miss = np.abs(f - self.params.varpi)
        keep = miss <= eta
        return i1[keep], i3[keep], f[keep], miss[keep]

    def nearest(self, j: int, top: int):
        """For p2 = self.p2[j], the ``top`` nearest p1 on each side for every p3."""
        centre = self.params.varpi - self.a2[j] - self.a3
        pos = np.searchsorted(self.a1, centre)
        span = np.arange(-top - 1, top + 1)
        i1 = (pos[:, None] + span[None, :]).reshape(-1)
        i3 = np.repeat(np.arange(self.a3.size), span.size)
        ok = (i1 >= 0) & (i1 < self.a1.size)
        i1, i3 = i1[ok], i3[ok]
        f = self.form(self.a1[i1], self.a2[j], self.a3[i3])
        return i1, i3, f, np.abs(f - self.params.varpi)


_EMPTY = (np.zeros(0, np.int64), np.zeros(0, np.int64), np.zeros(0), np.zeros(0))


def _map_rows(box: _Box, fn):
    rows = range(box.p2.size)
    n = get_threads()
    if n > 1 and box.p2.size > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            return list(pool.map(fn, rows))
    return [fn(j) for j in rows]


def count_solutions(params: FormParams, X: float, eta: float, table: PrimeTable) -> int:
    box = _Box(params, X, table)
    if box.empty:
        return 0
    return sum(_map_rows(box, lambda j: int(box.row(j, eta)[0].size)))


def exact_weighted_sum(params: FormParams, X: float, eta: float, table: PrimeTable) -> float:
    """sum over triples of log p1 log p2 log p3 max(0, eta - miss)."""
    box = _Box(params, X, table)
    if box.empty:
        return 0.0

    def row_terms(j):
        i1, i3, _, miss = box.row(j, eta)
        return (box.w1[i1] * box.w2[j] * box.w3[i3] * (eta - miss)).tolist()

    terms = []
    for part in _map_rows(box, row_terms):
        terms.extend(part)
    return math.fsum(terms)


def _records(box: _Box, rows, eta: float | None) -> list[SolutionRecord]:
    out = []
    for j, (i1, i3, f, miss) in rows:
        for a, c, fv, m in zip(i1.tolist(), i3.tolist(), f.tolist(), miss.tolist()):
            w = float(box.w1[a] * box.w2[j] * box.w3[c])
            edge = eta is not None and abs(m - eta) <= BOUNDARY_ULPS * math.ulp(eta)
            out.append(SolutionRecord(int(box.p1[a]), int(box.p2[j]), int(box.p3[c]), fv, m, w, edge))
    return out


def enumerate_solutions(params: FormParams, X: float, eta: float, table: PrimeTable) -> list[SolutionRecord]:
    """Every triple with miss <= eta, ordered by (p1, p2, p3)."""
    box = _Box(params, X, table)
    if box.empty:
        return []
    rows = list(enumerate(_map_rows(box, lambda j: box.row(j, eta))))
    recs = _records(box, rows, eta)
    recs.sort(key=lambda r: (r.p1, r.p2, r.p3))
    return recs


def best_miss(params: FormParams, X: float, table: PrimeTable, top: int = 5) -> list[SolutionRecord]:
    """The ``top`` smallest-miss triples, ties broken by (p1, p2, p3)."""
    if top <= 0:
        return []
    box = _Box(params, X, table)
    if box.empty:
        return []

    def smallest(j):
        i1, i3, f, miss = box.nearest(j, top)
        if miss.size > top:
            # keep ties with the top-th value so the global tie-break stays exact
            cut = np.partition(miss, top - 1)[top - 1]
            keep = miss <= cut
            i1, i3, f, miss = i1[keep], i3[keep], f[keep], miss[keep]
        return i1, i3, f, miss

    rows = list(enumerate(_map_rows(box, smallest)))
    recs = _records(box, rows, None)
    recs.sort(key=lambda r: (r.miss, r.p1, r.p2, r.p3))
    return recs[:top]


def naive_count(params: FormParams, X: float, eta: float, table: PrimeTable) -> int:
    """The O(n^3) reference loop (vectorised over p1 only)."""
    box = _Box(params, X, table)
    n = 0
    for a2 in box.a2:
        for a3 in box.a3:
            miss = np.abs(box.form(box.a1, a2, a3) - params.varpi)
            n += int(np.count_nonzero(miss <= eta))
    return n


# -- scan over the convergent scale sequence -----------------------------------

@dataclass
class ScanRow:
    q: int
    X: float
    eta: float
    count: int
    best: float  # smallest miss in the box
    best_over_eta: float
    note: str = ""


@dataclass
class ScanReport:
    rows: list[ScanRow] = field(default_factory=list)
    cutoff: str | None = None


def theorem_scan(
    params: FormParams, conv_list: list[Convergent | int], table: PrimeTable, eta_log6: bool = False
) -> ScanReport:
    """For each denominator q: X = q^(5k/(k+2)), the count at the derived
    eta and the best miss relative to eta."""
    report = ScanReport()
    for conv in conv_list:
        q = conv.q if isinstance(conv, Convergent) else int(conv)
        X = scale_sequence(params, q)
        if max(X, X ** (1.0 / params.k)) > table.limit:
            report.cutoff = f"stopped at q={q}: X={X:.6g} beyond table limit {table.limit}"
            break
        try:
            eta = derive_circle_params(params, X, eta_log6).eta
        except ConfigError as exc:
            report.rows.append(ScanRow(q, X, math.nan, 0, math.nan, math.nan, str(exc)))
            continue
        count = count_solutions(params, X, eta, table)
        bm = best_miss(params, X, table, 1)
        best = bm[0].miss if bm else math.inf
        report.rows.append(ScanRow(q, X, eta, count, best, best / eta))
    return report
