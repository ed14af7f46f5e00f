"""Newton polygons over F_p((t)) and the valuations of periodic points.

A hull segment of slope -s and horizontal length l stands for l roots of
valuation s.  Larger valuation means smaller norm, so a norm lower bound
|z| >= |lambda|^(1/p) reads v(z) <= v(lambda)/p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .closed_form import lambda_, valuation
from .errors import InternalInconsistency, LambdaZero, PrecisionExhausted
from .ramification import geometric, profile
from .rings import INF, LaurentScalar
from .series import (
    AtLeast,
    divide_truncated,
    iterate_p_power,
    reduce_series,
    series_ord,
    wideg,
)


@dataclass(frozen=True)
class Segment:
    start: tuple
    end: tuple

    @property
    def length(self):
        return self.end[0] - self.start[0]

    @property
    def slope(self):
        return Fraction(self.end[1] - self.start[1]) / self.length

    @property
    def root_valuation(self):
        return -self.slope


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple  # (exponent, valuation)
    vertices: tuple
    segments: tuple

    @classmethod
    def from_points(cls, points, lower_bounds=()):
        """Lower hull of ``points``; ``lower_bounds`` are (i, k) with v >= k known only."""
        pts = sorted((i, Fraction(v)) for i, v in points)
        if not pts:
            return cls((), (), ())
        hull = []
        for q in pts:
            while len(hull) >= 2 and _cross(hull[-2], hull[-1], q) <= 0:
                hull.pop()
            hull.append(q)
        segs = tuple(Segment(a, b) for a, b in zip(hull, hull[1:]))
        poly = cls(tuple(pts), tuple(hull), segs)
        for i, k in lower_bounds:
            h = poly.height_at(i)
            if h is not None and Fraction(k) < h:
                raise PrecisionExhausted(
                    f"coefficient of degree {i} is only known to have valuation >= {k},"
                    f" below the hull; raise tprec"
                )
        return poly

    def height_at(self, i):
        for s in self.segments:
            if s.start[0] <= i <= s.end[0]:
                return s.start[1] + s.slope * (i - s.start[0])
        return None

    def slopes(self):
        return [s.slope for s in self.segments]

    def root_valuations(self):
        """[(valuation, count)] in decreasing order of valuation."""
        return [(s.root_valuation, s.length) for s in self.segments]

    def __str__(self):
        return " ".join(f"({i},{v})" for i, v in self.vertices)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def build(series, through_degree, from_degree=0) -> NewtonPolygon:
    """Polygon of {(i, v(c_i))} for from_degree <= i <= through_degree."""
    if through_degree > series.N:
        raise PrecisionExhausted(
            f"through_degree {through_degree} exceeds zeta-precision {series.N} (raise zprec)"
        )
    pts, bounds = [], []
    for i in range(from_degree, through_degree + 1):
        c = series.coeff(i)
        if isinstance(c, LaurentScalar) and c.val == INF:
            if c.absprec is not None:
                bounds.append((i, c.absprec))
            continue
        v = valuation(c)
        if v != INF:
            pts.append((i, v))
    return NewtonPolygon.from_points(pts, bounds)


def merge_buckets(pairs):
    out = {}
    for v, c in pairs:
        out[v] = out.get(v, 0) + c
    return sorted(out.items(), key=lambda vc: -vc[0])


@dataclass(frozen=True)
class PeriodicReport:
    n: int
    polygon: NewtonPolygon
    buckets: list  # [(valuation, count)]
    quotient_ord: int
    quotient_wideg: int
    N: int


def quotient_series(f, n, N, budget=None, tprec=32):
    big = iterate_p_power(f.truncate(N), n, budget).minus_identity()
    small = iterate_p_power(f.truncate(N), n - 1, budget).minus_identity()
    return divide_truncated(big, small, tprec)


def periodic_report(f, n=1, start=None, doublings=3, budget=None, tprec=32) -> PeriodicReport:
    if n < 1:
        raise ValueError("n must be at least 1")
    p = f.p
    N = start or 2 * geometric(p, n) + 1 + 3 * p**n + 6
    for _ in range(doublings + 1):
        if not f.exact:
            N = min(N, f.N)
        q = quotient_series(f, n, N, budget, tprec)
        w = wideg(q)
        if not isinstance(w, AtLeast):
            o = series_ord(q).ord
            poly = build(q, w, from_degree=o)
            return PeriodicReport(n, poly, merge_buckets(poly.root_valuations()), o, w, N)
        if not f.exact:
            break
        N *= 2
    raise PrecisionExhausted(
        f"Weierstrass degree of the period-{p}^{n} quotient not certified at zprec={N} (raise zprec)"
    )


def periodic_valuations(f, n=1, **kw):
    """[(valuation, count)] for the nonzero roots in the open unit disk of the quotient."""
    return periodic_report(f, n, **kw).buckets


@dataclass(frozen=True)
class PeriodicBoundVerdict:
    holds: bool
    bound: Fraction
    buckets: list
    on_sphere: bool  # every valuation equals the bound

    @property
    def strict(self):
        return all(v < self.bound for v, _ in self.buckets)


def lambda_bound(f):
    v = valuation(lambda_(f))
    if v == INF:
        raise LambdaZero("lambda = 0: no periodic-point bound")
    return Fraction(v, f.p)


def check_theorem_A(f, n=1, **kw) -> PeriodicBoundVerdict:
    bound = lambda_bound(f)
    buckets = periodic_valuations(f, n, **kw)
    holds = all(v <= bound for v, _ in buckets)
    return PeriodicBoundVerdict(holds, bound, buckets, all(v == bound for v, _ in buckets))


def three_ramified_precheck(f):
    """Fast sufficient test for the 3-ramified hypothesis: i_0 = 3 and i_1 = 3 + 3p."""
    prof = profile(reduce_series(f), 1)
    i0, i1 = prof.values()
    return i0 == 3 and i1 == 3 + 3 * f.p


@dataclass(frozen=True)
class SphereVerdict:
    hypothesis: bool
    conclusion: bool
    reduced_profile: list
    bound: Fraction
    buckets: dict  # level -> [(valuation, count)]


def check_corollary_C(f, depth=2, levels=1, **kw) -> SphereVerdict:
    """Check the 3-ramified hypothesis up to ``depth`` and the sphere conclusion for n <= levels."""
    bound = lambda_bound(f)
    prof = profile(reduce_series(f), depth)
    vals = prof.values()
    hyp = all(not isinstance(v, AtLeast) and v == 3 * geometric(f.p, k) for k, v in enumerate(vals))
    buckets = {n: periodic_valuations(f, n, **kw) for n in range(1, levels + 1)}
    concl = all(v == bound for bs in buckets.values() for v, _ in bs)
    if hyp and not concl:
        raise InternalInconsistency(
            f"3-ramified reduction but periodic valuations {buckets} are off the sphere v={bound}"
        )
    return SphereVerdict(hyp, concl, vals, bound, buckets)
