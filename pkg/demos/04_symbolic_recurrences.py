"""Tracking the five leading coefficients of Delta_m symbolically.

Delta_1 = f - id and Delta_m = Delta_(m-1) o f - Delta_(m-1).  The coefficients
of Delta_m at degrees 2m+1 .. 2m+5 are polynomials in x1..x5 over F_p, and at
m = p they collapse to multiples of phi = 3/2 x1^3 + x2^2 - x1 x3.
"""

from ramdyn import hat_induction_step, parse_series, verify_main_lemma_symbolic
from ramdyn.recurrences import trajectory

for s in trajectory(5, 5):
    print(f"m={s.m}: C_m = {s.C}")

for p in (3, 5, 7, 11, 13):
    rep = verify_main_lemma_symbolic(p)
    print(f"p={p}: A_p = B_p = 0 and C_p, D_p, E_p match the closed forms: {rep.passed}")

# The same recurrence, with the level-n coefficients in place of x1..x5,
# carries the closed form from level n to level n + 1.
f = parse_series("z + 2*z^3 + z^4 + z^6", p=3)
print("induction step (3, 2):", hat_induction_step(3, 2, f.truncate(8)).passed)
