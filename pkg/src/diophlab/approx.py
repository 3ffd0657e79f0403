"""Continued fractions of exact quadratic irrationals, Dirichlet approximation
and the rational-approximation dichotomy on the minor arc."""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterator

if TYPE_CHECKING:
    from .config import CircleParams, FormParams

MAX_CONVERGENTS = 60


class UncertifiedWarning(UserWarning):
    pass


def _squarefree_split(d: int) -> tuple[int, int]:
    """Return (f, s) with d = f*f*s."""
    f, s, p = 1, d, 2
    while p * p <= s:
        while s % (p * p) == 0:
            s //= p * p
            f *= p
        p += 1
    return f, s


@dataclass(frozen=True)
class QuadraticIrrational:
    """The real number (p + q*sqrt(d)) / r with integers, d > 1 squarefree, q != 0."""

    p: int
    q: int
    d: int
    r: int

    def __post_init__(self):
        if self.r == 0:
            raise ZeroDivisionError("r = 0")
        if self.q == 0 or self.d < 2 or math.isqrt(self.d) ** 2 == self.d:
            raise ValueError("not an irrational quadratic number")

    def __float__(self) -> float:
        # enough digits for any size of integers
        scale = 1 << 64
        root = math.isqrt(self.d * scale * scale)
        return float(Fraction(self.p * scale + self.q * root, self.r * scale))

    def __str__(self) -> str:
        return f"({self.p}{self.q:+d}*sqrt({self.d}))/{self.r}"

    def _sign_of(self, a: int, b: int) -> int:
        """Sign of a + b*sqrt(d)."""
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with b^2 d
        return sa if a * a > b * b * self.d else sb

    def compare(self, x: Fraction) -> int:
        """Exact sign of self - x."""
        x = Fraction(x)
        a = self.p * x.denominator - x.numerator * self.r
        b = self.q * x.denominator
        s = self._sign_of(a, b)
        return s if self.r > 0 else -s

    def __neg__(self):
        return QuadraticIrrational(-self.p, -self.q, self.d, self.r)

    def __truediv__(self, other):
        other = Fraction(other)
        return _normalise(Fraction(self.p, self.r) / other, Fraction(self.q, self.r) / other, self.d)

    def __mul__(self, other):
        other = Fraction(other)
        return _normalise(Fraction(self.p, self.r) * other, Fraction(self.q, self.r) * other, self.d)

    __rmul__ = __mul__

    def __rtruediv__(self, other):
        # other / ((p + q sqrt d)/r) = other*r*(p - q sqrt d) / (p^2 - q^2 d)
        other = Fraction(other)
        den = self.p * self.p - self.q * self.q * self.d
        return _normalise(other * self.r * self.p / den, -other * self.r * self.q / den, self.d)

    def partial_quotients(self) -> Iterator[int]:
        """Infinite exact continued-fraction expansion."""
        p, q, r = self.p, self.q, self.r
        if q < 0:
            p, q, r = -p, -q, -r
        D, P, Q = q * q * self.d, p, r
        if (D - P * P) % Q:
            P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
        s = math.isqrt(D)
        while True:
            a = (P + s) // Q if Q > 0 else (P + s + 1) // Q
            yield a
            P = a * Q - P
            Q = (D - P * P) // Q


def _normalise(a: Fraction, b: Fraction, d: int):
    """a + b*sqrt(d) as QuadraticIrrational, or a Fraction when b = 0."""
    if b == 0:
        return a
    f, s = _squarefree_split(d)
    b = b * f
    if s == 1:
        return a + b
    den = math.lcm(a.denominator, b.denominator)
    return QuadraticIrrational(int(a * den), int(b * den), s, den)


def rational_partial_quotients(x: Fraction) -> Iterator[int]:
    num, den = x.numerator, x.denominator
    while den:
        a = num // den
        yield a
        num, den = den, num - a * den


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(sqrt|\d+|[-+*/()])")


class _Parser:
    """Tiny grammar: numbers, + - * /, parentheses and sqrt(n)."""

    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ValueError(f"cannot parse {text!r} at {pos}")
            self.tokens.append(m.group(1))
            pos = m.end()
        self.i = 0
        self.d = None

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, tok=None):
        t = self.peek()
        if t is None or (tok is not None and t != tok):
            raise ValueError(f"expected {tok!r}, got {t!r}")
        self.i += 1
        return t

    def parse(self):
        val = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input at {self.peek()!r}")
        return val

    def expr(self):
        a, b = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            c, e = self.term()
            a, b = (a + c, b + e) if op == "+" else (a - c, b - e)
        return a, b

    def term(self):
        a, b = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            c, e = self.factor()
            d = self.d or 0
            if op == "*":
                a, b = a * c + b * e * d, a * e + b * c
            else:
                n = c * c - e * e * d
                if n == 0:
                    raise ZeroDivisionError("division by zero in ratio")
                a, b = (a * c - b * e * d) / n, (b * c - a * e) / n
        return a, b

    def factor(self):
        t = self.peek()
        if t == "-":
            self.take()
            a, b = self.factor()
            return -a, -b
        if t == "+":
            self.take()
            return self.factor()
        if t == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        if t == "sqrt":
            self.take()
            self.take("(")
            n = int(self.take())
            self.take(")")
            f, s = _squarefree_split(n)
            if s == 1:
                return Fraction(f), Fraction(0)
            if self.d not in (None, s):
                raise ValueError("only one square root radicand is supported")
            self.d = s
            return Fraction(0), Fraction(f)
        if t is not None and t.isdigit():
            return Fraction(int(self.take())), Fraction(0)
        raise ValueError(f"unexpected token {t!r}")


def parse_ratio(text: str):
    """Parse "3", "3/7", "sqrt(2)", "(1+sqrt(5))/2" and similar into an exact value."""
    parser = _Parser(text)
    a, b = parser.parse()
    return _normalise(a, b, parser.d) if parser.d else a


# -- convergents --------------------------------------------------------------

@dataclass(frozen=True)
class Convergent:
    a: int
    q: int
    index: int
    certified: bool

    def __float__(self):
        return self.a / self.q


def _certify(x, a: int, q: int) -> bool:
    lo, hi = Fraction(a, q) - Fraction(1, q * q), Fraction(a, q) + Fraction(1, q * q)
    if isinstance(x, QuadraticIrrational):
        return x.compare(lo) >= 0 and x.compare(hi) <= 0
    return lo <= Fraction(x) <= hi


def convergents(x, count: int) -> list[Convergent]:
    """First ``count`` convergents a/q of x, each certified |x - a/q| <= 1/q^2.

    ``x`` is a QuadraticIrrational, a Fraction/int, a ratio string, or a
    float (the last gives uncertified approximants and a warning).
    """
    if count > MAX_CONVERGENTS:
        raise ValueError(f"count must be <= {MAX_CONVERGENTS}")
    if isinstance(x, str):
        x = parse_ratio(x)
    exact = True
    if isinstance(x, QuadraticIrrational):
        terms = x.partial_quotients()
    elif isinstance(x, (Fraction, int)):
        terms = rational_partial_quotients(Fraction(x))
    else:
        warnings.warn("floating-point input: convergents are not certified", UncertifiedWarning)
        exact = False
        terms = rational_partial_quotients(Fraction(float(x)))
    out = []
    h0, h1, k0, k1 = 0, 1, 1, 0
    for i, t in enumerate(terms):
        if i >= count:
            break
        h0, h1 = h1, t * h1 + h0
        k0, k1 = k1, t * k1 + k0
        out.append(Convergent(h1, k1, i, exact and _certify(x, h1, k1)))
    return out


@dataclass(frozen=True)
class DirichletApprox:
    a: int
    q: int
    quality: float  # |alpha q - a|


def dirichlet(alpha: float, tau: float) -> DirichletApprox:
    """(a, q) with 1 <= q <= tau and |alpha q - a| <= 1/tau.

    Uses the exact continued fraction of the binary rational ``alpha`` and
    keeps the last convergent whose denominator does not exceed ``tau``.
    """
    if tau < 1:
        raise ValueError("tau must be >= 1")
    x = Fraction(alpha)
    h0, h1, k0, k1 = 0, 1, 1, 0
    a, q = math.floor(x), 1
    for t in rational_partial_quotients(x):
        h0, h1 = h1, t * h1 + h0
        k0, k1 = k1, t * k1 + k0
        if k1 > tau:
            break
        a, q = h1, k1
    return DirichletApprox(a, q, float(abs(x * q - a)))


# -- scale sequence and the dichotomy -----------------------------------------

def scale_exponent(k: float) -> float:
    return 5.0 * k / (k + 2.0)


def scale_sequence(params: "FormParams", conv: Convergent | int) -> float:
    """X = q^(5k/(k+2)) for the convergent denominator q."""
    q = conv.q if isinstance(conv, Convergent) else int(conv)
    if q <= 0:
        raise ValueError("denominator must be positive")
    return float(q) ** scale_exponent(params.k)


def invert_scale(X: float, k: float) -> float:
    """q = X^((k+2)/(5k))."""
    return X ** (1.0 / scale_exponent(k))


@dataclass
class DichotomyReport:
    alpha: float
    q: int
    Q: float
    tau: float
    approx1: DirichletApprox
    approx2: DirichletApprox
    major_arc_like: bool  # a1 a2 == 0
    some_q_exceeds_Q: bool
    bd1_lhs: float  # |a2 q1 (l1/l2) - a1 q2|
    bd1_bound: float  # 2 (1 + |l1/l2|) Q^2 / X
    bd1_threshold: float  # 1/(2q)
    bd1_holds: bool
    bd2_chain: dict
    pre_asymptotic: bool


def dichotomy_check(alpha: float, params: "FormParams", cp: "CircleParams", conv: Convergent | int) -> DichotomyReport:
    """Measure both Dirichlet approximations of lambda_i * alpha on the minor arc.

    Nothing is asserted: at desk scale the contradiction argument may not
    have kicked in yet, which is reported as ``pre_asymptotic``.
    """
    if not cp.arcs.cut < abs(alpha) < cp.arcs.R:
        raise ValueError(f"alpha={alpha} is not in the minor arc")
    q = conv.q if isinstance(conv, Convergent) else int(conv)
    X, Q, R = cp.X, cp.Q, cp.R
    tau = X / Q
    d1 = dirichlet(params.lambda1 * alpha, tau)
    d2 = dirichlet(params.lambda2 * alpha, tau)
    ratio = params.lambda1 / params.lambda2
    lhs = abs(d2.a * d1.q * ratio - d1.a * d2.q)
    bound = 2.0 * (1.0 + abs(ratio)) * Q * Q / X
    thresh = 1.0 / (2.0 * q)
    chain = {
        "q": q,
        "abs_a2_q1": abs(d2.a * d1.q),
        "q1_q2_R": d1.q * d2.q * R,
        "Q2_R": Q * Q * R,
        "upper": X ** (1.0 / scale_exponent(params.k) - params.eps),
    }
    some_big = max(d1.q, d2.q) > Q
    return DichotomyReport(
        alpha, q, Q, tau, d1, d2,
        major_arc_like=d1.a * d2.a == 0,
        some_q_exceeds_Q=some_big,
        bd1_lhs=lhs,
        bd1_bound=bound,
        bd1_threshold=thresh,
        bd1_holds=bound < thresh,
        bd2_chain=chain,
        pre_asymptotic=not (bound < thresh and chain["Q2_R"] < chain["q"]),
    )


def first_bd1_index(params: "FormParams", convs: list[Convergent]) -> int | None:
    """Index of the first convergent whose scale X makes
    2(1+|l1/l2|) Q^2/X < 1/(2q) hold, or None within the list."""
    ratio = abs(params.lambda1 / params.lambda2)
    for c in convs:
        X = scale_sequence(params, c)
        Q = X ** (0.4 - 0.2 / params.k)
        if 2.0 * (1.0 + ratio) * Q * Q / X < 1.0 / (2.0 * c.q):
            return c.index
    return None
