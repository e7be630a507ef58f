"""When is OG / O(sum of all x) symmetric?  Only for p-nilpotent G with cyclic Sylow p-subgroups."""
from symquot.group_algebra import augmentation_quotient_symmetric
from symquot.groups import build

cases = [("cyclic:12", 2), ("cyclic:12", 3), ("file:s3", 2), ("file:s3", 3), ("file:klein4", 2),
         ("dihedral:10", 2), ("dihedral:10", 5), ("quaternion:8", 2)]
print("group          p  p-nilpotent  cyclic-Sylow  witness  k-level  dim I/JI")
for spec, p in cases:
    r = augmentation_quotient_symmetric(build(spec), p)
    print(f"{spec:13s} {p:2d}  {str(r.p_nilpotent):11s}  {str(r.sylow_cyclic):12s}  "
          f"{str(r.witness_verified):7s}  {str(r.k_level):7s}  {r.top_dimension}")
