"""The first nonzero coefficients of f^(p^n)(z) - z in closed form.

For f = z(1 + a2 z^2 + a3 z^3 + a4 z^4 + ...) the iterate minus the identity
begins at degree 2 d(n+1) + 1, where d(n) = 1 + p + ... + p^(n-1).  Its first
three coefficients are powers of a2 times phi^d with phi = 3/2 a2^3 + a3^2 - a2 a4.
"""

from ramdyn import iterate_p_power, parse_series, thmB_coeffs

f = parse_series("z + z^3 + z^4 + 3*z^5", p=5)
for n in (1, 2):
    c = thmB_coeffs(f, n)
    g = iterate_p_power(f.truncate(c.degree + 2), n).minus_identity()
    direct = [g.coeff(c.degree + i) for i in range(3)]
    print(f"n={n}: degree {c.degree}, closed form {list(map(str, c.triple()))}, direct {list(map(str, direct))}")
    print(f"     lower coefficients vanish: {all(g.coeff(k) == 0 for k in range(2, c.degree))}")
