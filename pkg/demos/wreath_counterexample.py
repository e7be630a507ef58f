"""C_3 wr C_3: the degree-3 induced character whose quotient is not symmetric.

Prints the checks made inside OH (H the base group), then classifies every
character of the full group of order 81 at p = 3.
"""
from symquot.characters import character_table
from symquot.group_algebra import classify, verify_example61
from symquot.groups import build

rep = verify_example61(3)
print("inside OH, H = (C_3)^3, over Z_3[zeta_3]:")
for key in ("lambda_exponent", "z_integral", "z_minimal", "basis_confirmed", "pure",
            "witness_divisible", "witness_in_OHz", "witness_quotient_in_OHz"):
    print(f"  {key:26s} {rep[key]}")
print(f"induced character irreducible: {rep['induced_irreducible']}, symmetric: {rep['symmetric']}")
print(f"ranks of OG pi^t e(chi): over K {rep['group_rank_K']}, over k {rep['group_rank_k']}")

G = build("wreath:3")
table = character_table(G)
print("\nall characters at p = 3:")
print("chi deg  t  symmetric  matrix  kernel")
for r in classify(G, 3):
    chi = table[r.chi]
    kernel = sum(chi(g) == chi.degree for g in range(G.n))
    print(f"{r.chi:3d} {r.degree:3d} {r.lambda_exponent:2d}  {str(r.symmetric):9s}  {str(r.matrix_algebra):6s}  {kernel}")
