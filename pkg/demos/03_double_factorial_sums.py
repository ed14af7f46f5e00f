"""Double-factorial sums are p-integral and reduce to short closed forms.

Each sum is evaluated as an exact rational, its p-adic valuation is read off,
and the reduction mod p is compared with its table value.  Where the prefactor
carries one factor of p the reduction also follows from the residues at the
simple poles of the summand.
"""

from ramdyn import SumFamily, reduce_family
from ramdyn.padic_sums import harmonic_pair, residue_applicable, residue_reduce

p = 13
for fam in [SumFamily("R"), SumFamily("S", (3, -2)), SumFamily("U", (1, -1)), SumFamily("Z", (4, 2, 1)),
            SumFamily("SHat", (1, -1, 1)), SumFamily("VHat", (2, 3, 1))]:
    chk = reduce_family(fam, p)
    extra = f" residue route {residue_reduce(fam, p)}" if residue_applicable(fam, p) else ""
    print(f"{str(fam):14s} nu_p={chk.valuation}  reduced={chk.reduced}  table={chk.table}{extra}")

h, hp = harmonic_pair(p)
print(f"harmonic pair at p={p}: {h} + {hp} = {h + hp}")
