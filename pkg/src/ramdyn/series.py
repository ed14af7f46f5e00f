"""Truncated parabolic power series over F_p or F_p((t)).

A series is known modulo zeta^(N+1).  Series over F_p keep their coefficients
in an int64 numpy array so that composition is a handful of convolutions;
series over F_p((t)) keep a tuple of :class:`LaurentScalar`.

Precision rule: when f and g are known mod zeta^(N+1) and g(0) = 0, the
composite f(g) is known mod zeta^(N+1).  Series parsed from polynomial text
are flagged ``exact`` and may be re-truncated at any higher N.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    NotIntegral,
    OrderMismatch,
    PrecisionExhausted,
    ResourceLimit,
    RingMismatch,
)
from .rings import DEFAULT_TPREC, FpElem, LaurentScalar, PrimeField, laurent_reduce

FP = "fp"
LAURENT = "laurent"
DEFAULT_BUDGET = 10**6


def composition_budget(budget=None):
    """Composition budget: explicit argument, else $RAMDYN_BUDGET, else 10^6."""
    if budget is not None:
        return int(budget)
    env = os.environ.get("RAMDYN_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class AtLeast:
    """Lower bound reported when a quantity vanishes to full working precision."""

    bound: int

    def __str__(self):
        return f">={self.bound}"


class TruncatedSeries:
    __slots__ = ("p", "ring", "N", "_c", "exact")

    def __init__(self, p, ring, N, coeffs, exact=False):
        self.p = p
        self.ring = ring
        self.N = N
        self._c = coeffs
        self.exact = exact

    # -- construction --------------------------------------------------------
    @classmethod
    def from_coeffs(cls, p, coeffs, N=None, ring=None, exact=False):
        """``coeffs`` is a mapping degree -> scalar or a sequence indexed by degree."""
        PrimeField(p)
        if isinstance(coeffs, dict):
            items = dict(coeffs)
        else:
            items = dict(enumerate(coeffs))
        if ring is None:
            ring = LAURENT if any(isinstance(c, LaurentScalar) for c in items.values()) else FP
        if N is None:
            N = max((d for d, c in items.items() if not _is_zero(c)), default=1)
        if ring == FP:
            arr = np.zeros(N + 1, dtype=np.int64)
            for d, c in items.items():
                if d < 0:
                    raise ValueError("negative degree")
                if d <= N:
                    if isinstance(c, LaurentScalar):
                        raise RingMismatch("Laurent coefficient in an F_p series")
                    arr[d] = int(c) % p
            arr.flags.writeable = False
            return cls(p, FP, N, arr, exact)
        zero = LaurentScalar.zero(p)
        out = [zero] * (N + 1)
        for d, c in items.items():
            if d < 0:
                raise ValueError("negative degree")
            if d <= N:
                out[d] = c if isinstance(c, LaurentScalar) else LaurentScalar.constant(p, int(c))
        return cls(p, LAURENT, N, tuple(out), exact)

    @classmethod
    def identity(cls, p, N, ring=FP):
        return cls.from_coeffs(p, {1: 1}, N=N, ring=ring, exact=True)

    @classmethod
    def parabolic(cls, p, a, N=None, ring=None):
        """zeta * (1 + sum a[j] zeta^j); ``a`` maps j (>= 2) to a_j, as in the a_j convention."""
        coeffs = {1: 1}
        for j, c in dict(a).items():
            coeffs[j + 1] = c
        if N is None:
            N = max(coeffs)
        return cls.from_coeffs(p, coeffs, N=N, ring=ring, exact=True)

    # -- access --------------------------------------------------------------
    def coeff(self, d):
        if d > self.N:
            if self.exact:
                return FpElem(self.p, 0) if self.ring == FP else LaurentScalar.zero(self.p)
            raise PrecisionExhausted(f"degree {d} exceeds zeta-precision {self.N} (raise zprec)")
        if self.ring == FP:
            return FpElem(self.p, int(self._c[d]))
        return self._c[d]

    def __getitem__(self, d):
        return self.coeff(d)

    def coeffs(self):
        return [self.coeff(d) for d in range(self.N + 1)]

    def a(self, j):
        """Coefficient a_j, i.e. the coefficient of zeta^(j+1)."""
        return self.coeff(j + 1)

    def degree(self):
        for d in range(self.N, -1, -1):
            if not _is_zero(self.coeff(d)):
                return d
        return -1

    def truncate(self, N):
        """Same series known mod zeta^(N+1); raising N is allowed only for exact series."""
        if N > self.N and not self.exact:
            raise PrecisionExhausted(
                f"series known only mod zeta^{self.N + 1}; cannot extend to {N}"
            )
        if self.ring == FP:
            arr = np.zeros(N + 1, dtype=np.int64)
            m = min(N, self.N) + 1
            arr[:m] = self._c[:m]
            arr.flags.writeable = False
            return TruncatedSeries(self.p, FP, N, arr, self.exact)
        zero = LaurentScalar.zero(self.p)
        c = list(self._c[: N + 1]) + [zero] * max(0, N - self.N)
        return TruncatedSeries(self.p, LAURENT, N, tuple(c), self.exact)

    def is_parabolic(self):
        return _is_zero(self.coeff(0)) and self.coeff(1) == 1

    def _check(self, other):
        if self.p != other.p or self.ring != other.ring:
            raise RingMismatch(
                f"series over {self.ring}/{self.p} and {other.ring}/{other.p} mixed"
            )

    # -- ring operations (truncated) -----------------------------------------
    def __add__(self, other):
        self._check(other)
        N = min(self.N, other.N)
        if self.ring == FP:
            arr = (self._c[: N + 1] + other._c[: N + 1]) % self.p
            return TruncatedSeries(self.p, FP, N, arr, self.exact and other.exact)
        c = tuple(x + y for x, y in zip(self._c[: N + 1], other._c[: N + 1]))
        return TruncatedSeries(self.p, LAURENT, N, c, self.exact and other.exact)

    def __neg__(self):
        if self.ring == FP:
            return TruncatedSeries(self.p, FP, self.N, (-self._c) % self.p, self.exact)
        return TruncatedSeries(self.p, LAURENT, self.N, tuple(-x for x in self._c), self.exact)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        if self.ring == FP:
            return TruncatedSeries(self.p, FP, self.N, (self._c * (int(other) % self.p)) % self.p, self.exact)
        return TruncatedSeries(self.p, LAURENT, self.N, tuple(x * other for x in self._c), self.exact)

    def minus_identity(self):
        """f(zeta) - zeta."""
        return self - TruncatedSeries.identity(self.p, self.N, self.ring)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if (self.p, self.ring, self.N) != (other.p, other.ring, other.N):
            return False
        if self.ring == FP:
            return bool(np.array_equal(self._c, other._c))
        return self._c == other._c

    def __hash__(self):
        return hash((self.p, self.ring, self.N, tuple(str(c) for c in self.coeffs())))

    def __repr__(self):
        return f"TruncatedSeries({self}, p={self.p}, ring={self.ring}, N={self.N})"

    def __str__(self):
        parts = []
        for d in range(self.N + 1):
            c = self.coeff(d)
            if _is_zero(c):
                continue
            mono = "1" if d == 0 else ("z" if d == 1 else f"z^{d}")
            s = str(c)
            if d == 0:
                parts.append(f"({s})" if "+" in s else s)
            elif s == "1":
                parts.append(mono)
            else:
                parts.append(f"({s})*{mono}" if ("+" in s or "O" in s) else f"{s}*{mono}")
        body = " + ".join(parts) if parts else "0"
        return body if self.exact else f"{body} + O(z^{self.N + 1})"


def _is_zero(c):
    if isinstance(c, LaurentScalar):
        return c.is_zero()
    if isinstance(c, FpElem):
        return c.value == 0
    return c == 0


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Product mod zeta^(min(N)+1)."""
    f._check(g)
    N = min(f.N, g.N)
    if f.ring == FP:
        arr = np.convolve(f._c[: N + 1], g._c[: N + 1])[: N + 1] % f.p
        return TruncatedSeries(f.p, FP, N, arr, False)
    fc, gc = f._c, g._c
    fnz = [(i, c) for i, c in enumerate(fc[: N + 1]) if not c.is_zero()]
    gnz = [(j, c) for j, c in enumerate(gc[: N + 1]) if not c.is_zero()]
    acc = [LaurentScalar.zero(f.p)] * (N + 1)
    for i, x in fnz:
        for j, y in gnz:
            if i + j > N:
                break
            acc[i + j] = acc[i + j] + x * y
    return TruncatedSeries(f.p, LAURENT, N, tuple(acc), False)


def compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """f(g(zeta)) by Horner evaluation of f at g, mod zeta^(N+1) with N = min precision."""
    f._check(g)
    if not _is_zero(g.coeff(0)):
        raise ValueError("compose requires g(0) = 0")
    N = min(f.N, g.N)
    top = f.degree()
    if top > N:
        top = N
    if f.ring == FP:
        p = f.p
        gc = g._c[: N + 1]
        fc = f._c
        acc = np.zeros(N + 1, dtype=np.int64)
        if top < 0:
            return TruncatedSeries(p, FP, N, acc, False)
        acc[0] = fc[top]
        for k in range(top - 1, -1, -1):
            acc = np.convolve(acc, gc)[: N + 1] % p
            acc[0] = (acc[0] + fc[k]) % p
        return TruncatedSeries(p, FP, N, acc, False)
    gN = g.truncate(N)
    acc = TruncatedSeries.from_coeffs(f.p, {0: f.coeff(max(top, 0))}, N=N, ring=LAURENT)
    for k in range(top - 1, -1, -1):
        acc = series_mul(acc, gN)
        c = list(acc._c)
        c[0] = c[0] + f.coeff(k)
        acc = TruncatedSeries(f.p, LAURENT, N, tuple(c), False)
    return acc


def iterate_p_power(f: TruncatedSeries, n: int, budget=None) -> TruncatedSeries:
    """f^(p^n) by p^n - 1 sequential compositions f(f(...)); n = 0 returns f."""
    count = f.p**n
    limit = composition_budget(budget)
    if count - 1 > limit:
        raise ResourceLimit(f"{count - 1} compositions exceed the budget of {limit}")
    return iterate(f, count)


def iterate(f: TruncatedSeries, count: int) -> TruncatedSeries:
    g = f
    for _ in range(count - 1):
        g = compose(f, g)
    return g


@dataclass(frozen=True)
class OrdResult:
    ord: object  # int or AtLeast
    lead: object  # scalar or None

    def __iter__(self):
        return iter((self.ord, self.lead))


def series_ord(h: TruncatedSeries) -> OrdResult:
    """Lowest degree with a certified nonzero coefficient (AtLeast(N+1) if none)."""
    if h.ring == FP:
        nz = np.flatnonzero(h._c)
        if nz.size == 0:
            return OrdResult(AtLeast(h.N + 1), None)
        d = int(nz[0])
        return OrdResult(d, FpElem(h.p, int(h._c[d])))
    for d, c in enumerate(h._c):
        if c.is_zero():
            continue
        if not c.is_certified_nonzero():
            raise PrecisionExhausted(
                f"coefficient of z^{d} is {c}; its vanishing is not certified (raise tprec)"
            )
        return OrdResult(d, c)
    return OrdResult(AtLeast(h.N + 1), None)


def ord_delta(f: TruncatedSeries) -> OrdResult:
    """Order and leading coefficient of f(zeta) - zeta."""
    return series_ord(f.minus_identity())


def reduce_series(f: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise reduction O_k[[zeta]] -> F_p[[zeta]]."""
    if f.ring == FP:
        return f
    out = {}
    for d, c in enumerate(f._c):
        try:
            out[d] = laurent_reduce(c).value
        except NotIntegral as exc:
            raise NotIntegral(f"coefficient of z^{d} is not integral: {c}", degree=d) from exc
    return TruncatedSeries.from_coeffs(f.p, out, N=f.N, ring=FP, exact=f.exact)


def wideg(f: TruncatedSeries):
    """Weierstrass degree: order of the reduction, counted from degree 0."""
    return series_ord(reduce_series(f)).ord


def _leading_inverse(c, tprec):
    if isinstance(c, LaurentScalar):
        return c.inv(tprec)
    return c.inv()


def divide_truncated(num: TruncatedSeries, den: TruncatedSeries, tprec: int = DEFAULT_TPREC):
    """Quotient q with num = q * den mod zeta^(M+1), M = N - ord(den).

    Long division after cancelling zeta^ord(den); Laurent leading coefficients
    are inverted to relative precision ``tprec``.
    """
    num._check(den)
    N = min(num.N, den.N)
    e, lead = series_ord(den.truncate(N))
    if isinstance(e, AtLeast):
        raise PrecisionExhausted("denominator vanishes to working precision (raise zprec)")
    en, _ = series_ord(num.truncate(N))
    if not isinstance(en, AtLeast) and en < e:
        raise OrderMismatch(f"ord(num) = {en} < ord(den) = {e}")
    M = N - e
    inv = _leading_inverse(lead, tprec)
    if num.ring == FP:
        p = num.p
        inv_v = inv.value
        nc = [int(x) for x in num._c[e : N + 1]]
        dc = [int(x) for x in den._c[e : N + 1]]
        q = [0] * (M + 1)
        for k in range(M + 1):
            s = nc[k]
            for j in range(max(0, k - (len(dc) - 1)), k):
                if q[j] and dc[k - j]:
                    s -= q[j] * dc[k - j]
            q[k] = s * inv_v % p
        return TruncatedSeries.from_coeffs(p, q, N=M, ring=FP)
    nc = num._c[e : N + 1]
    dc = den._c[e : N + 1]
    dnz = [(i, c) for i, c in enumerate(dc) if i > 0 and not c.is_zero()]
    q = []
    for k in range(M + 1):
        s = nc[k]
        for i, c in dnz:
            if i > k:
                break
            if not q[k - i].is_zero():
                s = s - q[k - i] * c
        q.append(s * inv)
    return TruncatedSeries(num.p, LAURENT, M, tuple(q), False)
