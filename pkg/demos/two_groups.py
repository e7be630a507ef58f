"""Every character of a 2-group with a cyclic subgroup of index 2 gives a symmetric quotient.

For the faithful degree-2 characters the image of OG is a proper order in
M_2(K); the trace-form exponent r is positive and pi^-r tr is a symmetrising form.
"""
from symquot.group_algebra import classify
from symquot.groups import build

for spec in ("dihedral:16", "quaternion:16", "quasidihedral:16", "dihedral:32", "quaternion:32"):
    G = build(spec)
    print(spec)
    for r in classify(G, 2):
        if r.degree > 1:
            print(f"  chi{r.chi:<2d} t={r.lambda_exponent:<3d} symmetric={r.symmetric} matrix={r.matrix_algebra} "
                  f"r={r.trace_exponent} gram_unimodular={r.gram_unimodular} divisible={r.divisible}")
