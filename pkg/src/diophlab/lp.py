"""The exponent linear program in (1/a, b, c) for a fixed k.

Solved exactly in rational arithmetic by enumerating every vertex of the
three-variable polytope.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .config import eta_exponent

VARIABLES = ("inv_a", "b", "c")
LABELS = (
    "a >= 1",
    "b >= 0",
    "b <= 5/(6k)",
    "c >= 0",
    "2b - 1 <= -1/a",
    "2b + 2c <= 1/a",
    "-c >= 1/2 - 1/(2k) - b/2",
)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, Fraction, Fraction]
    rhs: Fraction
    label: str

    def slack(self, x) -> Fraction:
        return self.rhs - sum(c * v for c, v in zip(self.coeffs, x))

    def scaled(self, s: Fraction) -> "Constraint":
        return Constraint(tuple(s * c for c in self.coeffs), s * self.rhs, self.label)


@dataclass(frozen=True)
class ExponentLP:
    k: Fraction
    constraints: tuple[Constraint, ...]
    objective: str = "maximize c, then inv_a"

    def scaled(self, factors) -> "ExponentLP":
        """Same feasible set with constraint i multiplied by factors[i] > 0."""
        fs = [Fraction(f) for f in factors]
        if len(fs) != len(self.constraints) or min(fs) <= 0:
            raise ValueError("need one positive factor per constraint")
        return ExponentLP(self.k, tuple(c.scaled(f) for c, f in zip(self.constraints, fs)), self.objective)


@dataclass
class LPSolution:
    inv_a: Fraction | None
    b: Fraction | None
    c: Fraction | None
    status: str  # "optimal" or "infeasible"
    active_set: tuple[int, ...] = ()

    def as_floats(self) -> tuple[float, float, float]:
        return (float(self.inv_a), float(self.b), float(self.c))


def build_lp(k) -> ExponentLP:
    """Seven inequalities G x <= h over x = (1/a, b, c)."""
    k = Fraction(k)
    if k < 1:
        raise ValueError("k must be >= 1")
    F = Fraction
    rows = [
        ((F(1), F(0), F(0)), F(1)),
        ((F(0), F(-1), F(0)), F(0)),
        ((F(0), F(1), F(0)), F(5) / (6 * k)),
        ((F(0), F(0), F(-1)), F(0)),
        ((F(1), F(2), F(0)), F(1)),
        ((F(-1), F(2), F(2)), F(0)),
        ((F(0), F(-1, 2), F(1)), 1 / (2 * k) - F(1, 2)),
    ]
    return ExponentLP(k, tuple(Constraint(c, r, lab) for (c, r), lab in zip(rows, LABELS)))


def _solve3(rows):
    """Cramer's rule on a 3x3 rational system; None if singular."""
    (a, b, c), (d, e, f), (g, h, i) = (r[0] for r in rows)
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if det == 0:
        return None
    r1, r2, r3 = (r[1] for r in rows)
    x = (r1 * (e * i - f * h) - b * (r2 * i - f * r3) + c * (r2 * h - e * r3)) / det
    y = (a * (r2 * i - f * r3) - r1 * (d * i - f * g) + c * (d * r3 - r2 * g)) / det
    z = (a * (e * r3 - r2 * h) - b * (d * r3 - r2 * g) + r1 * (d * h - e * g)) / det
    return (x, y, z)


def solve_lp(lp: ExponentLP) -> LPSolution:
    """The feasible vertex with the largest c, ties broken by the largest 1/a."""
    best = None
    for triple in itertools.combinations(range(len(lp.constraints)), 3):
        x = _solve3([(lp.constraints[i].coeffs, lp.constraints[i].rhs) for i in triple])
        if x is None or any(con.slack(x) < 0 for con in lp.constraints):
            continue
        key = (x[2], x[0])
        if best is None or key > best[0]:
            best = (key, x)
    if best is None:
        return LPSolution(None, None, None, "infeasible")
    x = best[1]
    active = tuple(i for i, con in enumerate(lp.constraints) if con.slack(x) == 0)
    return LPSolution(x[0], x[1], x[2], "optimal", active)


def closed_form(k) -> tuple[Fraction, Fraction, Fraction]:
    """1/a = (k+2)/(5k), b = (2k-1)/(5k), c = (4-3k)/(10k)."""
    k = Fraction(k)
    return ((k + 2) / (5 * k), (2 * k - 1) / (5 * k), (4 - 3 * k) / (10 * k))


@dataclass
class VerificationReport:
    rows: list[dict] = field(default_factory=list)
    violations: list[float] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_closed_form(k_grid, tol: float = 1e-9) -> VerificationReport:
    """Compare solve_lp with the closed form and c(k) with minus the eta
    exponent at eps = 0, for each k of the grid."""
    rep = VerificationReport()
    for k in k_grid:
        sol = solve_lp(build_lp(k))
        row = {"k": float(k), "status": sol.status}
        if sol.status != "optimal" or sol.c < 0:
            rep.rows.append(row)
            rep.violations.append(float(k))
            continue
        cf = closed_form(k)
        gaps = [abs(float(s - c)) for s, c in zip((sol.inv_a, sol.b, sol.c), cf)]
        eta_gap = abs(float(sol.c) + eta_exponent(float(k), 0.0))
        row.update(dict(zip(VARIABLES, sol.as_floats())), gap=max(gaps), eta_gap=eta_gap, active=sol.active_set)
        rep.rows.append(row)
        if max(gaps) > tol or eta_gap > tol:
            rep.violations.append(float(k))
    return rep


def parse_grid(text: str) -> list[float]:
    """'lo:hi:n' gives n equispaced points including both ends; 'a,b,c' a list."""
    if ":" in text:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
        if n < 1:
            raise ValueError("grid needs at least one point")
        if n == 1:
            return [lo]
        return [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    return [float(t) for t in text.split(",") if t.strip()]
