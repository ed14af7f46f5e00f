"""Lower ramification numbers of a few parabolic series over F_p.

i_n(f) measures how closely the p^n-th iterate of f agrees with the identity.
For f = z + a2 z^3 + ... with a2 != 0 the values start at 2 and, when the
series is 2-ramified, follow 2(1 + p + ... + p^n).
"""

from ramdyn import classify, parse_series, profile

for p, text in [(3, "z + z^3 + z^4"), (5, "z + 2*z^3 + z^4"), (5, "z + z^3 + z^4"), (5, "z + z^4")]:
    f = parse_series(text, p=p)
    prof = profile(f, depth=2)
    print(f"p={p}  f={text:18s} i_n={prof.values()}  {classify(prof)}")

# The third series has phi = 0 in F_5, so its i_1 jumps past 12.
# The last one has a2 = 0 and starts one step higher.
