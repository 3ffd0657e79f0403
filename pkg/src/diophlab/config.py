"""Problem definition, hypothesis checks and derived circle-method parameters."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .approx import QuadraticIrrational, parse_ratio

K_MAX = Fraction(4, 3)
CONFIG_KEYS = {"lambda", "k", "varpi", "delta", "eps", "X", "q", "ratio", "irrational", "eta_log6"}


class ConfigError(ValueError):
    """Raised for invalid parameters; the CLI maps it to exit status 2."""


@dataclass(frozen=True)
class FormParams:
    """Coefficients, exponent, target and slack of the inequality
    |l1 p1 + l2 p2 + l3 p3^k - varpi| <= eta."""

    lambda1: float
    lambda2: float
    lambda3: float
    k: float
    varpi: float = 0.0
    delta: float = 0.1
    eps: float = 0.01
    # user assertion that lambda1/lambda2 is irrational
    irrational: bool = True
    # exact lambda1/lambda2 when known, used for certified convergents
    ratio: QuadraticIrrational | Fraction | None = None

    @property
    def lambdas(self) -> tuple[float, float, float]:
        return (self.lambda1, self.lambda2, self.lambda3)

    @property
    def max_lambda(self) -> float:
        return max(abs(x) for x in self.lambdas)

    @property
    def theorem_mode(self) -> bool:
        return 1.0 < self.k < float(K_MAX) and self.irrational

    def eta_exponent(self) -> float:
        return eta_exponent(self.k, self.eps)


def eta_exponent(k: float, eps: float = 0.0) -> float:
    return 0.3 - 0.4 / k + eps


@dataclass
class ValidationReport:
    checks: dict[str, bool]
    theorem_mode: bool
    exploratory: bool
    messages: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def validate(params: FormParams, strict: bool = True) -> ValidationReport:
    """Check the hypotheses; raise ConfigError on a hard violation if strict."""
    lam = params.lambdas
    signs = {math.copysign(1.0, x) for x in lam if x != 0}
    checks = {
        "nonzero": all(x != 0 and math.isfinite(x) for x in lam),
        "mixed_signs": len(signs) == 2,
        "k_ge_1": params.k >= 1.0,
        "delta_in_0_1": 0.0 < params.delta < 1.0,
        "eps_positive": 0.0 < params.eps < 1.0,
    }
    msgs = []
    if not 0.0 < params.eps < 0.01:
        msgs.append(f"eps={params.eps} outside the nominal range (0, 1/100)")
    in_range = 1.0 < params.k < float(K_MAX)
    theorem = in_range and params.irrational and all(checks.values())
    if not in_range:
        msgs.append(f"k={params.k} outside (1, 4/3): exploratory mode")
    if not params.irrational:
        msgs.append("lambda1/lambda2 irrationality not asserted: exploratory mode")
    report = ValidationReport(checks, theorem, not theorem, msgs)
    if strict and not report.ok:
        failed = [name for name, good in checks.items() if not good]
        raise ConfigError("invalid form parameters: " + ", ".join(failed))
    return report


@dataclass(frozen=True)
class ArcDecomposition:
    """Major arc [-P/X, P/X], minor arc P/X < |a| < R, trivial arc |a| >= R."""

    cut: float  # P/X
    R: float

    def classify(self, alpha: float) -> str:
        a = abs(alpha)
        if a <= self.cut:
            return "major"
        if a < self.R:
            return "minor"
        return "trivial"

    def intervals(self, arc: str, T: float | None = None) -> list[tuple[float, float]]:
        """Positive half of an arc; every arc is symmetric about 0."""
        if arc == "major":
            return [(0.0, self.cut)]
        if arc == "minor":
            return [(self.cut, self.R)]
        if arc in ("trivial", "trivial-truncated"):
            if T is None:
                raise ValueError("trivial arc needs a truncation point T")
            return [(self.R, max(self.R, T))]
        if arc == "full-truncated":
            return [(0.0, T)]
        raise ValueError(f"unknown arc {arc!r}")


@dataclass(frozen=True)
class CircleParams:
    X: float
    P: float
    eta: float
    R: float
    Q: float
    arcs: ArcDecomposition
    eta_log6: bool = False


def derive_circle_params(params: FormParams, X: float, eta_log6: bool = False) -> CircleParams:
    """P = X^(5/(6k)-eps), eta = X^(3/10-2/(5k)+eps), R = eta^-2 (log X)^(3/2),
    Q = X^(2/5-1/(5k)).  With ``eta_log6`` eta also carries (log X)^6."""
    if X < 10:
        raise ConfigError(f"X={X} too small (need X >= 10)")
    k, eps = params.k, params.eps
    logX = math.log(X)
    P = X ** (5.0 / (6.0 * k) - eps)
    eta = X ** eta_exponent(k, eps)
    if eta_log6:
        eta *= logX**6
    R = eta**-2 * logX**1.5
    Q = X ** (0.4 - 0.2 / k)
    if not P / X < R:
        raise ConfigError(f"X={X} too small: P/X={P / X:.4g} >= R={R:.4g}")
    return CircleParams(X, P, eta, R, Q, ArcDecomposition(P / X, R), eta_log6)


# -- JSON config --------------------------------------------------------------

def _coefficient(value):
    """A coefficient given as a number or an expression such as "sqrt(2)"."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value), Fraction(value) if isinstance(value, int) else None
    if isinstance(value, str):
        exact = parse_ratio(value)
        return float(exact), exact
    raise ConfigError(f"bad coefficient {value!r}")


@dataclass
class RunConfig:
    params: FormParams
    X: float | None = None
    q: int | None = None
    eta_log6: bool = False


def params_from_dict(data: dict) -> RunConfig:
    unknown = set(data) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for key in ("lambda", "k"):
        if key not in data:
            raise ConfigError(f"missing required key {key!r}")
    lam = data["lambda"]
    if not isinstance(lam, list) or len(lam) != 3:
        raise ConfigError("'lambda' must be a list of three coefficients")
    coeffs = [_coefficient(v) for v in lam]
    ratio = None
    if "ratio" in data:
        ratio = parse_ratio(str(data["ratio"]))
    elif coeffs[0][1] is not None and isinstance(coeffs[1][1], Fraction):
        # exact numerator over a rational denominator
        ratio = coeffs[0][1] / coeffs[1][1]
    irrational = data.get("irrational")
    if irrational is None:
        irrational = ratio is None or isinstance(ratio, QuadraticIrrational)
    params = FormParams(
        coeffs[0][0],
        coeffs[1][0],
        coeffs[2][0],
        float(data["k"]),
        float(data.get("varpi", 0.0)),
        float(data.get("delta", 0.1)),
        float(data.get("eps", 0.01)),
        bool(irrational),
        ratio,
    )
    X = data.get("X")
    q = data.get("q")
    if X is not None and q is not None:
        raise ConfigError("give either 'X' or 'q', not both")
    return RunConfig(params, None if X is None else float(X),
                     None if q is None else int(q), bool(data.get("eta_log6", False)))


def load_config(path) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    return params_from_dict(data)
