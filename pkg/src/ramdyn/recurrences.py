"""Sparse polynomials over F_p and the five-term recurrences behind the p-th iterate.

With f(z) = z(1 + x1 z^2 + x2 z^3 + x3 z^4 + x4 z^5 + x5 z^6) and
Delta_1 = f - id, Delta_m = Delta_{m-1} o f - Delta_{m-1}, the coefficients of
Delta_m at degrees 2m+1, ..., 2m+5 are polynomials A_m, ..., E_m in the x_i
obeying a lower-triangular linear recurrence.  In characteristic p,
Delta_p = f^p - id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .closed_form import d_of, thmB_coeffs, three_halves
from .errors import DegreeOverflow
from .rings import FpElem, PrimeField
from .series import iterate_p_power

NVARS = 5
DEFAULT_DEGREE_CAP = 40


class SparsePoly:
    """Polynomial in x1..x5 over F_p stored as {exponent tuple: coefficient}."""

    __slots__ = ("p", "terms", "cap")

    def __init__(self, p, terms=None, cap=DEFAULT_DEGREE_CAP):
        self.p = p
        self.cap = cap
        clean = {}
        for e, c in (terms or {}).items():
            c = int(c) % p
            if c:
                if sum(e) > cap:
                    raise DegreeOverflow(f"total degree {sum(e)} exceeds cap {cap}")
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def var(cls, p, i, cap=DEFAULT_DEGREE_CAP):
        """x_i for i in 1..5."""
        e = [0] * NVARS
        e[i - 1] = 1
        return cls(p, {tuple(e): 1}, cap)

    @classmethod
    def const(cls, p, c, cap=DEFAULT_DEGREE_CAP):
        return cls(p, {(0,) * NVARS: c}, cap)

    def _lift(self, other):
        if isinstance(other, SparsePoly):
            return other
        if isinstance(other, FpElem):
            other = other.value
        return SparsePoly.const(self.p, int(other), self.cap)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePoly(self.p, out, self.cap)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.p, {e: -c for e, c in self.terms.items()}, self.cap)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, FpElem)):
            c = int(other)
            return SparsePoly(self.p, {e: v * c for e, v in self.terms.items()}, self.cap)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly(self.p, out, self.cap)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = SparsePoly.const(self.p, 1, self.cap)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            if isinstance(other, (int, FpElem)):
                other = self._lift(other)
            else:
                return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def evaluate(self, values):
        """Specialise x_i -> values[i-1] (integers or FpElem)."""
        vals = [int(v) % self.p for v in values]
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * pow(v, k, self.p)
            total += t
        return FpElem(self.p, total)

    def difference(self, other):
        """Monomials where self and other disagree, as {exponent: (mine, theirs)}."""
        keys = set(self.terms) | set(other.terms)
        return {
            e: (self.terms.get(e, 0), other.terms.get(e, 0))
            for e in sorted(keys)
            if self.terms.get(e, 0) != other.terms.get(e, 0)
        }

    def __repr__(self):
        return f"SparsePoly({self}, p={self.p})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), [-k for k in e])):
            c = self.terms[e]
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def xs(p, cap=DEFAULT_DEGREE_CAP):
    return [SparsePoly.var(p, i, cap) for i in range(1, NVARS + 1)]


@dataclass(frozen=True)
class RecurrenceState:
    m: int
    A: SparsePoly
    B: SparsePoly
    C: SparsePoly
    D: SparsePoly
    E: SparsePoly

    @classmethod
    def initial(cls, p, cap=DEFAULT_DEGREE_CAP):
        return cls(1, *xs(p, cap))

    def as_tuple(self):
        return (self.A, self.B, self.C, self.D, self.E)


def step(s: RecurrenceState) -> RecurrenceState:
    x1, x2, x3, x4, x5 = xs(s.A.p, s.A.cap)
    m = s.m
    A, B, C, D, E = s.as_tuple()
    A1 = x1 * (2 * m + 1) * A
    B1 = x2 * (2 * m + 1) * A + x1 * (2 * m + 2) * B
    C1 = (x1 * x1 * (m * (2 * m + 1)) + x3 * (2 * m + 1)) * A + x2 * (2 * m + 2) * B + x1 * (2 * m + 3) * C
    D1 = (
        (x4 * (2 * m + 1) + x1 * x2 * ((2 * m + 1) * 2 * m)) * A
        + (x3 * (2 * m + 2) + x1 * x1 * ((m + 1) * (2 * m + 1))) * B
        + x2 * (2 * m + 3) * C
        + x1 * (2 * m + 4) * D
    )
    E1 = (
        (
            x5 * (2 * m + 1)
            + x1 * x3 * ((2 * m + 1) * 2 * m)
            + x1**3 * comb(2 * m + 1, 3)
            + x2 * x2 * (m * (2 * m + 1))
        )
        * A
        + (x4 * (2 * m + 2) + x1 * x2 * ((2 * m + 2) * (2 * m + 1))) * B
        + (x3 * (2 * m + 3) + x1 * x1 * comb(2 * m + 3, 2)) * C
        + x2 * (2 * m + 4) * D
        + x1 * (2 * m + 5) * E
    )
    return RecurrenceState(m + 1, A1, B1, C1, D1, E1)


def run_to(state: RecurrenceState, m: int) -> RecurrenceState:
    if m < state.m:
        raise ValueError("cannot run backwards")
    while state.m < m:
        state = step(state)
    return state


def trajectory(p, m, cap=DEFAULT_DEGREE_CAP):
    """[state_1, ..., state_m]."""
    s = RecurrenceState.initial(p, cap)
    out = [s]
    while s.m < m:
        s = step(s)
        out.append(s)
    return out


def main_lemma_targets(p, cap=DEFAULT_DEGREE_CAP):
    """Expected (C_p, D_p, E_p) as polynomials."""
    x1, x2, x3, _, _ = xs(p, cap)
    h = three_halves(p)
    phi = x1**3 * h + x2 * x2 - x1 * x3
    C = x1 ** (p - 2) * phi
    D = x2 * x1 ** (p - 3) * phi
    E = (x3 * x1 ** (p - 3) - x1 ** (p - 1) * h) * phi
    return C, D, E


@dataclass
class Report:
    passed: bool
    mismatches: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def verify_main_lemma_symbolic(p, cap=DEFAULT_DEGREE_CAP) -> Report:
    """Run the recurrences to m = p and compare with the closed forms."""
    PrimeField(p)
    s = run_to(RecurrenceState.initial(p, cap), p)
    zero = SparsePoly(p, {}, cap)
    C, D, E = main_lemma_targets(p, cap)
    expected = {"A": zero, "B": zero, "C": C, "D": D, "E": E}
    got = dict(zip("ABCDE", s.as_tuple()))
    mism = {k: got[k].difference(v) for k, v in expected.items() if got[k] != v}
    return Report(not mism, mism, got)


def solve_first_order(f_coeff, g_term, n0, y0, n):
    """y_n for y_{k+1} = f(k) y_k + g(k), y_{n0} = y0, via the product-sum formula."""
    if n < n0:
        raise ValueError("n must be at least n0")
    # suffix[r] = prod_{j=r+1}^{n-1} f(j); built from the right
    fs = [f_coeff(j) for j in range(n0, n)]
    suffix = [1] * (len(fs) + 1)
    for i in range(len(fs) - 1, -1, -1):
        suffix[i] = fs[i] * suffix[i + 1]
    y = suffix[0] * y0
    for i, r in enumerate(range(n0, n)):
        y = y + suffix[i + 1] * g_term(r)
    return y


# -- concrete induction step ------------------------------------------------------


def _window(series, lo, count):
    return [series.coeff(lo + i) for i in range(count)]


def _is_zero(c):
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0


def hat_induction_step(p, n, f, budget=None) -> Report:
    """Check that the 5x5 recurrence carries the level-n coefficients to level n+1.

    The five coefficients of f^(p^n) - z starting at degree 2D+1, D = d(n+1),
    are fed through the lower-triangular recurrence with diagonal factors
    (2m+1, ..., 2m+5) up to m = p and compared with the five coefficients of
    f^(p^(n+1)) - z starting at 2Dp+1.  The last three must also equal the
    closed-form coefficients at level n+1.
    """
    if f.p != p:
        raise ValueError("prime mismatch")
    D = d_of(p, n + 1)
    N = 2 * D * p + 5
    base = f.truncate(N) if f.exact or f.N >= N else f
    h = iterate_p_power(base, n, budget)
    delta = h.minus_identity()
    hats = _window(delta, 2 * D + 1, 5)
    low_ok = all(_is_zero(delta.coeff(k)) for k in range(2, 2 * D + 1))
    state = list(hats)
    for m in range(1, p):
        new = []
        for i in range(5):
            acc = None
            for k in range(i + 1):
                term = hats[i - k] * (2 * m + 1 + k) * state[k]
                acc = term if acc is None else acc + term
            new.append(acc)
        state = new
    big = iterate_p_power(base, n + 1, budget)
    bdelta = big.minus_identity()
    direct = _window(bdelta, 2 * D * p + 1, 5)
    big_low_ok = all(_is_zero(bdelta.coeff(k)) for k in range(2, 2 * D * p + 1))
    closed = thmB_coeffs(f, n + 1)
    mism = {}
    if not low_ok:
        mism["level_n_low_terms"] = "nonzero coefficient below degree 2D+1"
    if not big_low_ok:
        mism["level_n1_low_terms"] = "nonzero coefficient below degree 2Dp+1"
    names = "ABCDE"
    for i in range(5):
        if state[i] != direct[i]:
            mism[f"{names[i]}hat_p"] = (str(state[i]), str(direct[i]))
    for name, got, want in zip(("alpha", "beta", "gamma"), state[2:], closed.triple()):
        if got != want:
            mism[name] = (str(got), str(want))
    return Report(not mism, mism, {"hats": hats, "recurrence": state, "direct": direct})
