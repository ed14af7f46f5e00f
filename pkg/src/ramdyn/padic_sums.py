"""Exact double-factorial sums, their p-adic valuations and reductions mod p.

Every family has the shape ``prefactor(n) * sum_j summand(n, j)``.  Values are
exact :class:`fractions.Fraction` objects; nothing is reduced mod p before the
final step, so a wrong valuation cannot be hidden by modular shortcuts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import HigherOrderPole, NegativeValuation, UnsupportedPrime
from .rings import INF, FpElem, PrimeField

PadicRational = Fraction


def nu_p(x, p: int):
    """p-adic valuation of an integer or rational (INF for 0)."""
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def reduce_mod_p(x, p: int) -> FpElem:
    x = Fraction(x)
    if nu_p(x, p) != INF and nu_p(x, p) < 0:
        raise NegativeValuation(f"{x} has negative {p}-adic valuation")
    return FpElem(p, x.numerator * pow(x.denominator, -1, p))


@lru_cache(maxsize=4096)
def double_factorial(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return math.prod(range(n, 0, -2))


dfact = double_factorial


# -- families ------------------------------------------------------------------

ARITY = {
    "R": 0, "T": 0, "S": 2, "K": 1, "U": 2, "V": 3, "W": 0, "X": 2,
    "SHat": 3, "THat": 1, "RHat": 1, "Z": 3,
    "UHat": 2, "VHat": 3, "WHat": 0, "XHat": 2, "H": 0, "HPrime": 0,
}
# families whose reduction table needs p >= 7 (or p >= 5)
NEEDS_7 = {"K", "Z", "SHat", "THat", "RHat", "UHat", "VHat", "WHat", "XHat"}
NEEDS_5 = {"H", "HPrime"}


@dataclass(frozen=True)
class SumFamily:
    tag: str
    params: tuple = ()

    def __post_init__(self):
        if self.tag not in ARITY:
            raise ValueError(f"unknown family {self.tag!r}")
        if len(self.params) != ARITY[self.tag]:
            raise ValueError(f"{self.tag} takes {ARITY[self.tag]} parameters, got {len(self.params)}")
        if not all(isinstance(x, int) for x in self.params):
            raise TypeError("family parameters must be integers")

    def __str__(self):
        if not self.params:
            return self.tag
        return f"{self.tag}({','.join(map(str, self.params))})"

    def prefactor(self, n):
        t = self.tag
        if t in ("R",):
            return dfact(2 * n - 1)
        if t in ("T", "S"):
            return dfact(2 * n + 1)
        if t in ("U", "V", "W", "X"):
            return dfact(2 * n + 2)
        if t in ("K", "H", "HPrime"):
            return 1
        return dfact(2 * n + 3)

    def upper(self, n):
        """Last summation index."""
        return n if self.tag in ("R", "T", "S", "H", "HPrime") else n - 1


def _prefix_products(n):
    """P_k = prod_{j<=k} 2j/(2j-1) for k = 0..n."""
    out = [Fraction(1)]
    for j in range(1, n + 1):
        out.append(out[-1] * Fraction(2 * j, 2 * j - 1))
    return out


def summands(fam: SumFamily, n: int) -> list:
    """The exact summands of the family at n, indexed from j = 1."""
    t, prm = fam.tag, fam.params
    m = fam.upper(n)
    js = range(1, m + 1)
    if t == "R":
        P = _prefix_products(n)
        return [P[n] / P[r] for r in js]
    if t == "T":
        return [Fraction(dfact(2 * j), dfact(2 * j + 1)) for j in js]
    if t == "S":
        a, b = prm
        return [Fraction(a * j + b, 2 * j + 1) for j in js]
    if t == "K":
        (k,) = prm
        return [Fraction(dfact(2 * (j + k)), dfact(2 * j + 5)) for j in js]
    if t == "H":
        return [Fraction(1, 2 * j + 1) for j in js]
    if t == "HPrime":
        return [Fraction(1, 2 * j) for j in js]
    if t == "X":
        a, b = prm
        return [Fraction((a * j + b) * dfact(2 * j + 1), dfact(2 * j + 4)) for j in js]
    if t == "Z":
        a, b, c = prm
        return [Fraction(a * j * j + b * j + c, (2 * j + 3) * (2 * j + 5)) for j in js]
    if t == "U":
        S = sequence(SumFamily("S", prm), m)
        return [S[j - 1] * (2 * j + 3) / dfact(2 * j + 4) for j in js]
    if t == "V":
        a, b, c = prm
        R = sequence(SumFamily("R"), m)
        return [R[j - 1] * (a * j * j + b * j + c) / dfact(2 * j + 4) for j in js]
    if t == "W":
        T = sequence(SumFamily("T"), m)
        return [T[j - 1] * (2 * j + 3) / dfact(2 * j + 4) for j in js]
    if t == "SHat":
        a, b, c = prm
        S = sequence(SumFamily("S", (a, b)), m)
        return [Fraction((c * j + 1) * (2 * j + 3), dfact(2 * j + 5)) * S[j - 1] for j in js]
    if t == "THat":
        (a,) = prm
        T = sequence(SumFamily("T"), m)
        return [Fraction((a * j + 1) * (2 * j + 3), dfact(2 * j + 5)) * T[j - 1] for j in js]
    if t == "RHat":
        (a,) = prm
        R = sequence(SumFamily("R"), m)
        return [Fraction((2 * j + 2) * (a * j + 1), dfact(2 * j + 5)) * R[j - 1] for j in js]
    inner = {"UHat": "U", "VHat": "V", "WHat": "W", "XHat": "X"}[t]
    base = sequence(SumFamily(inner, prm), m)
    return [Fraction(2 * j + 4, dfact(2 * j + 5)) * base[j - 1] for j in js]


@lru_cache(maxsize=256)
def sequence(fam: SumFamily, nmax: int) -> tuple:
    """(value at n=1, ..., value at n=nmax), each by direct summation."""
    if nmax <= 0:
        return ()
    if fam.tag == "R":
        return tuple(fam.prefactor(n) * sum(summands(fam, n), Fraction(0)) for n in range(1, nmax + 1))
    # summands do not depend on n: one list, running partial sums
    terms = summands(fam, nmax)
    out, acc = [], Fraction(0)
    for n in range(1, nmax + 1):
        m = fam.upper(n)
        if m >= 1:
            acc += terms[m - 1]
        out.append(fam.prefactor(n) * acc)
    return tuple(out)


def eval_sum(fam: SumFamily, n: int) -> Fraction:
    if n < 1:
        raise ValueError("n must be at least 1")
    return fam.prefactor(n) * sum(summands(fam, n), Fraction(0))


# -- closed-form reduction tables ------------------------------------------------


def table_value(fam: SumFamily, p: int, n=None):
    """Closed-form reduction mod p of the family at n (default p), or None if no table entry."""
    n = p if n is None else n
    t, prm = fam.tag, fam.params
    F = Fraction
    val = None
    if t in ("R", "T"):
        table = {"R": {0: 0, 1: 1, 2: F(-1, 2)}, "T": {0: 0, 1: 0, 2: -1}}[t]
        val = table.get(p - n)
    elif t == "S":
        a, b = prm
        val = {0: F(a, 2) - b, 1: F(a, 2) - b, 2: -F(a, 2) + b}.get(p - n)
    elif n != p:
        return None
    elif t == "U":
        a, b = prm
        val = F(3 * a, 2) - 3 * b
    elif t == "V":
        a, b, c = prm
        val = -3 * a + b
    elif t in ("W", "WHat"):
        val = 2
    elif t == "X":
        val = 0
    elif t == "SHat":
        a, b, c = prm
        val = F(a * (17 - 41 * c) + b * (-4 + 7 * c), 4)
    elif t == "THat":
        (a,) = prm
        val = 6 - 15 * a
    elif t == "RHat":
        (a,) = prm
        val = 9 * a - 3
    elif t == "Z":
        a, b, c = prm
        val = 6 * a - F(3 * b, 2)
    elif t == "UHat":
        a, b = prm
        val = a - F(19 * b, 2)
    elif t == "VHat":
        a, b, c = prm
        val = -F(45 * a, 4) + b + 3 * c
    elif t == "XHat":
        a, b = prm
        val = -3 * (a - b)
    if val is None:
        return None
    return reduce_mod_p(val, p)


def check_prime(fam: SumFamily, p: int):
    PrimeField(p)
    if fam.tag in NEEDS_7 and p < 7:
        raise UnsupportedPrime(f"{fam.tag} needs p >= 7")
    if fam.tag in NEEDS_5 and p < 5:
        raise UnsupportedPrime(f"{fam.tag} needs p >= 5")


@dataclass(frozen=True)
class LemmaCheck:
    family: SumFamily
    p: int
    n: int
    value: Fraction
    valuation: object
    reduced: FpElem
    table: object  # FpElem or None
    match: object  # bool, or None when there is no table entry


def reduce_family(fam: SumFamily, p: int, n=None) -> LemmaCheck:
    """Direct value at n (default p), its valuation and reduction, compared with the table."""
    check_prime(fam, p)
    n = p if n is None else n
    value = eval_sum(fam, n)
    v = nu_p(value, p)
    if v != INF and v < 0:
        raise NegativeValuation(f"{fam} at n={n} has {p}-adic valuation {v}")
    red = reduce_mod_p(value, p)
    tab = table_value(fam, p, n)
    return LemmaCheck(fam, p, n, value, v, red, tab, None if tab is None else red == tab)


def scaled_reduce(fam: SumFamily, p: int, scale) -> FpElem:
    """Reduction of scale * fam at p; covers rational parameters via linearity."""
    return reduce_mod_p(Fraction(scale) * eval_sum(fam, p), p)


# -- poles and residues ------------------------------------------------------------


def _poly_eval(coeffs, j):
    return sum(c * j**i for i, c in enumerate(coeffs))


def find_simple_poles(num_coeffs, den_coeffs, lo, hi, p):
    """[(j, residue)] for j in [lo, hi] where num(j)/den(j) has a pole.

    Coefficients are listed from the constant term up.  A pole of order two or
    more raises HigherOrderPole.
    """
    out = []
    for j in range(lo, hi + 1):
        den = _poly_eval(den_coeffs, j)
        if den == 0:
            raise HigherOrderPole(f"denominator vanishes at j={j}")
        x = Fraction(_poly_eval(num_coeffs, j), den)
        v = nu_p(x, p)
        if v == INF or v >= 0:
            continue
        if v < -1:
            raise HigherOrderPole(f"pole of order {-v} at j={j}")
        out.append((j, reduce_mod_p(p * x, p)))
    return out


def residue_reduce(fam: SumFamily, p: int, n=None) -> FpElem:
    """Reduction through residues: reduce(prefactor/p) times the sum of residues of the summands.

    Applies when the prefactor at n carries exactly one factor of p.
    """
    check_prime(fam, p)
    n = p if n is None else n
    pref = fam.prefactor(n)
    if nu_p(pref, p) != 1:
        raise ValueError(f"{fam}: prefactor at n={n} is not exactly divisible by {p}")
    total = FpElem(p, 0)
    for j, s in enumerate(summands(fam, n), start=1):
        v = nu_p(s, p)
        if v == INF or v >= 0:
            continue
        if v < -1:
            raise HigherOrderPole(f"{fam}: pole of order {-v} at j={j}")
        total = total + reduce_mod_p(p * s, p)
    return reduce_mod_p(Fraction(pref, p), p) * total


def residue_applicable(fam: SumFamily, p: int, n=None) -> bool:
    n = p if n is None else n
    return nu_p(fam.prefactor(n), p) == 1


# -- standalone identities ----------------------------------------------------------


def eval_K(n: int, k: int) -> Fraction:
    if n < 2 or k < 0:
        raise ValueError("K(n, k) needs n >= 2 and k >= 0")
    return eval_sum(SumFamily("K", (k,)), n)


def K_closed(n: int, k: int) -> Fraction:
    return Fraction(dfact(2 * (n + k)), (2 * k - 3) * dfact(2 * n + 3)) - Fraction(
        dfact(2 * k + 2), (2 * k - 3) * dfact(5)
    )


def harmonic_pair(p: int):
    """Reductions of H_g and H'_g at g = (p-3)/2; they sum to 0."""
    if p < 5:
        raise UnsupportedPrime("harmonic pair needs p >= 5")
    PrimeField(p)
    g = (p - 3) // 2
    H = eval_sum(SumFamily("H"), g)
    Hp = eval_sum(SumFamily("HPrime"), g)
    return reduce_mod_p(H, p), reduce_mod_p(Hp, p)


def wilson_product(a: int, b: int, p: int) -> FpElem:
    """Product of a*s + b over s in F_p except the root of a*s + b."""
    if a % p == 0:
        raise ValueError("a must be nonzero mod p")
    root = (-b * pow(a, -1, p)) % p
    out = 1
    for s in range(p):
        if s != root:
            out = out * (a * s + b) % p
    return FpElem(p, out)


def eval_F_families(kind: str, f, n: int) -> Fraction:
    """Direct value of F_n, F'_n or F''_n for a callback f on integers."""
    if kind == "F":
        return dfact(2 * n + 2) * sum((Fraction(f(j), dfact(2 * j + 4)) for j in range(1, n)), Fraction(0))
    if kind == "FPrime":
        return dfact(2 * n + 3) * sum(
            (Fraction(f(j) * dfact(2 * j), dfact(2 * j + 5)) for j in range(1, n)), Fraction(0)
        )
    if kind == "FDoublePrime":
        total = Fraction(0)
        inner = Fraction(0)
        for j in range(1, n):
            total += Fraction(dfact(2 * j + 4), dfact(2 * j + 5)) * inner
            inner += Fraction(f(j))
        return dfact(2 * n + 3) * total
    raise ValueError(f"unknown kind {kind!r}")


def f_double_prime_rhs(f, n: int) -> Fraction:
    s1 = sum((Fraction(f(i)) for i in range(1, n)), Fraction(0))
    s2 = sum((Fraction(f(i)) * Fraction(dfact(2 * i + 6), dfact(2 * i + 5)) for i in range(1, n)), Fraction(0))
    return dfact(2 * n + 4) * s1 - dfact(2 * n + 3) * s2


def F_expected(f, p: int) -> FpElem:
    """2 f(p-2) + f(p-1) mod p."""
    return reduce_mod_p(2 * Fraction(f(p - 2)) + Fraction(f(p - 1)), p)


def all_families(rng, count=1, lo=-10, hi=10):
    """Random parameter draws for every family that has a reduction table."""
    out = []
    for tag, k in ARITY.items():
        if tag in ("K", "H", "HPrime"):
            continue
        draws = 1 if k == 0 else count
        for _ in range(draws):
            out.append(SumFamily(tag, tuple(int(rng.integers(lo, hi + 1)) for _ in range(k))))
    return out
