"""Valuations of period-p points over F_5((t)) from a Newton polygon.

The nonzero roots of (f^p(z) - z)/(f(z) - z) are the points of exact period p.
Their valuations are the slopes of the Newton polygon of that quotient and never
exceed v(lambda)/p, where lambda = a2^(p-3) phi.
"""

from ramdyn import check_corollary_C, check_theorem_A, parse_series
from ramdyn.newton import periodic_report

cases = {
    "q1": "z + (1+t)*z^3 + z^4",
    "q2": "z + (2+t)*z^3 + 4*z^4 + 4*z^5",
    "sphere": "z + t*z^3 + z^4",
}
for name, text in cases.items():
    f = parse_series(text, p=5)
    rep = periodic_report(f, 1)
    verdict = check_theorem_A(f)
    print(f"{name}: polygon {rep.polygon}")
    print(f"    root valuations {[(str(v), c) for v, c in rep.buckets]}, bound {verdict.bound}, "
          f"all on the sphere: {verdict.on_sphere}")

# When the reduction is 3-ramified every such point lies on the sphere itself.
c = check_corollary_C(parse_series(cases["sphere"], p=5))
print("reduced profile", c.reduced_profile, "hypothesis", c.hypothesis, "conclusion", c.conclusion)
