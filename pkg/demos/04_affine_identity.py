"""
An identity over the extended diagram
=====================================

Delete one node of an extended Dynkin diagram, evaluate the cone volume
of what remains, and add up.  For every crystallographic type the sum is 1,
because the normal cones at the vertices of the fundamental alcove
partition space.
"""

from rootcone import alcove_partition_check, curious_identity, root_system
from rootcone.identity import ALL_CRYSTALLOGRAPHIC

rep = curious_identity("G", 2)
for r in rep.records:
    print(f"delete node {r.index}: {r.decomposition.name:6s} term {r.term}")
print("total", rep.total)

print()
for fam, rank in ALL_CRYSTALLOGRAPHIC:
    rep = curious_identity(fam, rank)
    print(f"{rep.name:3s}", " + ".join(str(t) for t in rep.terms), "=", rep.total)

# the geometric reason, checked point by point
alc = alcove_partition_check(root_system("B", 3), 200, seed=3)
print("\nB3: points per vertex cone", alc.cone_hits, "each point in exactly one:", alc.status)
