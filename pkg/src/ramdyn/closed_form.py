"""Closed forms for the leading coefficients of p-power iterates of 2-ramified series.

For f(z) = z(1 + a_2 z^2 + a_3 z^3 + a_4 z^4 + ...) put
phi = 3/2 a_2^3 + a_3^2 - a_2 a_4 and d = d(n) = (p^n - 1)/(p - 1).  Then

    alpha_n = a_2^(p^n - 2d) phi^d
    beta_n  = a_3 a_2^(p^n - 2d - 1) phi^d
    gamma_n = (a_4 a_2^(p^n - 2d - 1) - 3/2 a_2^(p^n - 2d + 1)) phi^d

are the coefficients of f^(p^n)(z) - z at degrees 2 d(n+1) + 1, +2, +3, and all
lower coefficients vanish.  The product forms are used throughout, so a_2 is
never inverted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import LambdaZero, UnsupportedPrime
from .rings import INF, FpElem, LaurentScalar


def d_of(p: int, n: int) -> int:
    return (p**n - 1) // (p - 1)


def three_halves(p: int) -> int:
    return 3 * (p + 1) // 2 % p


def valuation(c):
    """t-adic valuation of a scalar; F_p carries the trivial valuation."""
    if isinstance(c, LaurentScalar):
        if c.val == INF and not c.is_zero():
            c.__bool__()  # raises PrecisionExhausted
        return c.val
    return INF if int(c) % c.p == 0 else 0


def _a(f):
    return f.a(2), f.a(3), f.a(4)


def phi(f):
    a2, a3, a4 = _a(f)
    return a2 * a2 * a2 * three_halves(f.p) + a3 * a3 - a2 * a4


def _pow(x, e):
    return x**e


@dataclass(frozen=True)
class ThmBCoefficients:
    p: int
    n: int
    d: int
    phi: object
    alpha: object
    beta: object
    gamma: object
    lam: object  # None for p = 3
    degree: int  # degree carrying alpha; beta, gamma follow

    def triple(self):
        return self.alpha, self.beta, self.gamma


def thmB_coeffs(f, n: int) -> ThmBCoefficients:
    p = f.p
    if p == 2:
        raise UnsupportedPrime("p must be odd")
    if n < 1:
        raise ValueError("n must be at least 1")
    a2, a3, a4 = _a(f)
    ph = phi(f)
    d = d_of(p, n)
    e = p**n - 2 * d
    phd = _pow(ph, d)
    base = _pow(a2, e - 1)
    alpha = base * a2 * phd
    beta = a3 * base * phd
    gamma = (a4 * base - _pow(a2, e + 1) * three_halves(p)) * phd
    lam = _pow(a2, p - 3) * ph if p >= 5 else None
    return ThmBCoefficients(p, n, d, ph, alpha, beta, gamma, lam, 2 * d_of(p, n + 1) + 1)


def lambda_(f):
    if f.p < 5:
        raise UnsupportedPrime(f"lambda is defined for p >= 5, got p={f.p}; use the alpha_1 coefficient of thmB_coeffs instead")
    a2 = f.a(2)
    return _pow(a2, f.p - 3) * phi(f)


def is_zero_scalar(c):
    if isinstance(c, LaurentScalar):
        return not c
    return int(c) % c.p == 0 if isinstance(c, FpElem) else c == 0


def norm_bound(f, kind="period", n=1) -> Fraction:
    """Largest valuation a point of the given kind may have.

    ``kind="fixed"`` gives v(a_2); ``kind="period"`` gives v(lambda)/p for
    periodic points of period p^n that are not fixed.
    """
    if kind == "fixed":
        v = valuation(f.a(2))
        if v == INF:
            raise LambdaZero("a_2 = 0: the fixed-point bound degenerates")
        return Fraction(v)
    if kind != "period":
        raise ValueError(f"unknown bound kind {kind!r}")
    if n < 1:
        raise ValueError("period bound needs n >= 1")
    lam = lambda_(f)
    v = valuation(lam)
    if v == INF:
        raise LambdaZero("lambda = 0: the periodic-point bound degenerates")
    return Fraction(v, f.p)
