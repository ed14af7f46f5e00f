"""Coefficient rings: the prime field F_p and truncated Laurent series F_p((t)).

Norms never appear as floats.  A Laurent scalar carries its exact t-adic
valuation ``val`` (``INF`` for zero); a larger valuation means a smaller norm.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import DivisionByZero, NotIntegral, PrecisionExhausted, RingMismatch

INF = math.inf
DEFAULT_TPREC = 32
MAX_PRIME = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@lru_cache(maxsize=None)
def _checked_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"{p} is not a prime")
    if p == 2 or p >= MAX_PRIME:
        raise ValueError(f"p must be an odd prime below 2^16, got {p}")
    return int(p)


class PrimeField:
    """Descriptor for F_p; validates ``p`` once."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        self.p = _checked_prime(p)

    def __call__(self, value) -> "FpElem":
        return FpElem(self.p, value)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def zero(self):
        return FpElem(self.p, 0)

    def one(self):
        return FpElem(self.p, 1)

    def elements(self):
        return [FpElem(self.p, v) for v in range(self.p)]


class FpElem:
    """Residue class modulo an odd prime, canonical representative in [0, p)."""

    __slots__ = ("p", "value")

    def __init__(self, p: int, value):
        if isinstance(value, FpElem):
            if value.p != p:
                raise RingMismatch(f"F_{value.p} element used in F_{p}")
            value = value.value
        self.p = p
        self.value = int(value) % p

    def _coerce(self, other):
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise RingMismatch(f"F_{self.p} and F_{other.p} mixed")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElem(self.p, self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElem(self.p, self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElem(self.p, o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElem(self.p, self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElem(self.p, -self.value)

    def inv(self) -> "FpElem":
        return fp_inv(self)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * fp_inv(FpElem(self.p, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElem(self.p, o) * fp_inv(self)

    def __pow__(self, e: int):
        if e < 0:
            return fp_inv(self) ** (-e)
        return FpElem(self.p, pow(self.value, e, self.p))

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def is_zero(self):
        return self.value == 0

    def signed(self) -> int:
        """Representative in (-p/2, p/2)."""
        return self.value - self.p if self.value > self.p // 2 else self.value

    def __repr__(self):
        return f"FpElem({self.value} mod {self.p})"

    def __str__(self):
        return str(self.value)


def fp_inv(x: FpElem) -> FpElem:
    if x.value == 0:
        raise DivisionByZero(f"0 has no inverse in F_{x.p}")
    return FpElem(x.p, pow(x.value, -1, x.p))


# -- truncated Laurent series ------------------------------------------------


def _strip(p, val, coeffs, absprec):
    """Normalise (val, coeffs) so the leading coefficient is nonzero."""
    k = 0
    n = len(coeffs)
    while k < n and coeffs[k] == 0:
        k += 1
    if k == n:
        return LaurentScalar(p, INF, (), absprec)
    coeffs = coeffs[k:]
    val = val + k
    if absprec is None:
        end = len(coeffs)
        while coeffs[end - 1] == 0:
            end -= 1
        coeffs = coeffs[:end]
    return LaurentScalar(p, val, tuple(int(c) for c in coeffs), absprec)


def _conv(a, b, p, length=None):
    if len(a) < 8 or len(b) < 8:
        n = len(a) + len(b) - 1
        if length is not None:
            n = min(n, length)
        out = [0] * n
        for i, x in enumerate(a):
            if x == 0 or i >= n:
                continue
            for j in range(min(len(b), n - i)):
                out[i + j] += x * b[j]
        return [c % p for c in out]
    res = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    if length is not None:
        res = res[:length]
    return [int(c) for c in res % p]


class LaurentScalar:
    """Element of F_p((t)) known either exactly or up to ``O(t^absprec)``.

    Nonzero values store ``val`` and the coefficient window of t^val, t^(val+1), ...
    Exact values (``absprec is None``) are Laurent polynomials; every parsed
    literal is exact and stays so until an inverse introduces an infinite tail.
    Zero is ``val = INF`` with an empty window; an inexact zero ``O(t^k)``
    additionally records ``absprec = k`` and is never reported as certified.
    """

    __slots__ = ("p", "val", "window", "absprec")

    def __init__(self, p, val, window, absprec=None):
        self.p = p
        self.val = val
        self.window = window
        self.absprec = absprec

    # constructors
    @classmethod
    def zero(cls, p):
        return cls(p, INF, (), None)

    @classmethod
    def one(cls, p):
        return cls(p, 0, (1,), None)

    @classmethod
    def constant(cls, p, c):
        return _strip(p, 0, [int(c) % p], None)

    @classmethod
    def monomial(cls, p, c, k):
        return _strip(p, k, [int(c) % p], None)

    @classmethod
    def from_coeffs(cls, p, coeffs, val=0, absprec=None):
        """Build ``sum coeffs[i] t^(val+i)``, optionally truncated at ``O(t^absprec)``."""
        coeffs = [int(c) % p for c in coeffs]
        if absprec is not None:
            coeffs = coeffs[: max(0, absprec - val)]
            coeffs += [0] * (absprec - val - len(coeffs))
        return _strip(p, val, coeffs, absprec)

    @classmethod
    def from_dict(cls, p, terms, absprec=None):
        terms = {k: c % p for k, c in terms.items() if c % p}
        if not terms:
            return cls(p, INF, (), absprec)
        lo, hi = min(terms), max(terms)
        return cls.from_coeffs(p, [terms.get(k, 0) for k in range(lo, hi + 1)], lo, absprec)

    # properties
    @property
    def tprec(self):
        """Relative precision W (number of certified window terms); None if exact."""
        if self.absprec is None:
            return None
        if self.val == INF:
            return 0
        return self.absprec - self.val

    def is_exact(self):
        return self.absprec is None

    def is_zero(self):
        """True only for the exact zero."""
        return self.val == INF and self.absprec is None

    def is_certified_nonzero(self):
        return self.val != INF

    def __bool__(self):
        if self.val == INF and self.absprec is not None:
            raise PrecisionExhausted(
                f"value is O(t^{self.absprec}); cannot decide whether it vanishes (raise tprec)"
            )
        return self.val != INF

    def coefficient(self, k: int) -> int:
        if self.absprec is not None and k >= self.absprec:
            raise PrecisionExhausted(f"coefficient of t^{k} lies beyond O(t^{self.absprec})")
        if self.val == INF or k < self.val or k >= self.val + len(self.window):
            return 0
        return self.window[k - self.val]

    def leading(self) -> FpElem:
        if self.val == INF:
            raise PrecisionExhausted("zero has no leading coefficient")
        return FpElem(self.p, self.window[0])

    def _coerce(self, other):
        if isinstance(other, LaurentScalar):
            if other.p != self.p:
                raise RingMismatch(f"F_{self.p}((t)) and F_{other.p}((t)) mixed")
            return other
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise RingMismatch(f"F_{other.p} element used in F_{self.p}((t))")
            return LaurentScalar.constant(self.p, other.value)
        if isinstance(other, (int, np.integer)):
            return LaurentScalar.constant(self.p, int(other))
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return _laurent_add(self, y)

    __radd__ = __add__

    def __neg__(self):
        if self.val == INF:
            return self
        return LaurentScalar(self.p, self.val, tuple((-c) % self.p for c in self.window), self.absprec)

    def __sub__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return _laurent_add(self, -y)

    def __rsub__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return _laurent_add(y, -self)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            c = int(other) % self.p
            if c == 0:
                return LaurentScalar.zero(self.p)
            if self.val == INF:
                return self
            return LaurentScalar(self.p, self.val, tuple(x * c % self.p for x in self.window), self.absprec)
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return laurent_mul(self, y)

    __rmul__ = __mul__

    def inv(self, tprec: int = DEFAULT_TPREC) -> "LaurentScalar":
        return laurent_inv(self, tprec)

    def __truediv__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return laurent_mul(self, laurent_inv(y))

    def __rtruediv__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return laurent_mul(y, laurent_inv(self))

    def __pow__(self, e: int):
        if e < 0:
            return laurent_inv(self) ** (-e)
        result = LaurentScalar.one(self.p)
        base = self
        while e:
            if e & 1:
                result = laurent_mul(result, base)
            e >>= 1
            if e:
                base = laurent_mul(base, base)
        return result

    def __eq__(self, other):
        if isinstance(other, (int, np.integer, FpElem)):
            other = self._coerce(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return (self.p, self.val, self.window, self.absprec) == (
            other.p,
            other.val,
            other.window,
            other.absprec,
        )

    def __hash__(self):
        return hash((self.p, self.val, self.window, self.absprec))

    def reduce(self) -> FpElem:
        return laurent_reduce(self)

    def __repr__(self):
        return f"LaurentScalar({self}, p={self.p})"

    def __str__(self):
        if self.val == INF:
            return "0" if self.absprec is None else f"O(t^{self.absprec})"
        parts = []
        for i, c in enumerate(self.window):
            if c == 0:
                continue
            k = self.val + i
            if k == 0:
                parts.append(str(c))
            else:
                mono = "t" if k == 1 else f"t^{k}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        if self.absprec is not None:
            parts.append(f"O(t^{self.absprec})")
        return "+".join(parts)


def _laurent_add(x: LaurentScalar, y: LaurentScalar) -> LaurentScalar:
    p = x.p
    if y.is_zero():
        return x
    if x.is_zero():
        return y
    precs = [a for a in (x.absprec, y.absprec) if a is not None]
    absprec = min(precs) if precs else None
    vals = [v for v in (x.val, y.val) if v != INF]
    if not vals:
        return LaurentScalar(p, INF, (), absprec)
    lo = min(vals)
    hi = max(v + len(w) for v, w in ((x.val, x.window), (y.val, y.window)) if v != INF)
    if absprec is not None:
        hi = absprec
    if hi <= lo:
        return LaurentScalar(p, INF, (), absprec)
    acc = [0] * (hi - lo)
    for v, w in ((x.val, x.window), (y.val, y.window)):
        if v == INF:
            continue
        for i, c in enumerate(w):
            k = v + i - lo
            if k >= len(acc):
                break
            acc[k] += c
    return _strip(p, lo, [c % p for c in acc], absprec)


def laurent_mul(x: LaurentScalar, y: LaurentScalar) -> LaurentScalar:
    """Product; valuations add and relative precision is the smaller of the two."""
    if x.p != y.p:
        raise RingMismatch(f"F_{x.p}((t)) and F_{y.p}((t)) mixed")
    p = x.p
    if x.is_zero() or y.is_zero():
        return LaurentScalar.zero(p)
    if x.val == INF or y.val == INF:
        # at least one factor is O(t^k): the product is only bounded below
        lx = x.absprec if x.val == INF else x.val
        ly = y.absprec if y.val == INF else y.val
        return LaurentScalar(p, INF, (), lx + ly)
    rels = [r for r in (x.tprec, y.tprec) if r is not None]
    rel = min(rels) if rels else None
    window = _conv(x.window, y.window, p, rel)
    val = x.val + y.val
    if rel is not None:
        window = window + [0] * (rel - len(window))
        return _strip(p, val, window, val + rel)
    return _strip(p, val, window, None)


def laurent_inv(x: LaurentScalar, tprec: int = DEFAULT_TPREC) -> LaurentScalar:
    p = x.p
    if x.is_zero():
        raise DivisionByZero("inverse of 0 in F_p((t))")
    if x.val == INF:
        raise PrecisionExhausted(f"cannot invert O(t^{x.absprec}) (raise tprec)")
    if x.absprec is None and len(x.window) == 1:
        return LaurentScalar(p, -x.val, (pow(x.window[0], -1, p),), None)
    rel = tprec if x.tprec is None else min(tprec, x.tprec)
    u = list(x.window[:rel]) + [0] * max(0, rel - len(x.window))
    c0 = pow(u[0], -1, p)
    inv = [0] * rel
    inv[0] = c0
    for k in range(1, rel):
        s = 0
        for i in range(1, k + 1):
            if u[i]:
                s += u[i] * inv[k - i]
        inv[k] = (-s * c0) % p
    return LaurentScalar(p, -x.val, tuple(inv), -x.val + rel)


def laurent_reduce(x: LaurentScalar) -> FpElem:
    """Residue-field image of an integral element (coefficient of t^0)."""
    if x.val != INF and x.val < 0:
        raise NotIntegral(f"{x} has valuation {x.val} < 0")
    if x.absprec is not None and x.absprec <= 0:
        raise PrecisionExhausted(f"constant term of {x} is not certified (raise tprec)")
    if x.val == 0:
        return FpElem(x.p, x.window[0])
    return FpElem(x.p, 0)


def laurent_t(p: int) -> LaurentScalar:
    return LaurentScalar.monomial(p, 1, 1)
