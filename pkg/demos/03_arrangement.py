"""
The reflection arrangement and its lattice
==========================================

The Poincare polynomial of the reflection arrangement factors over the
degrees, and cutting off its top rank counts the bounded regions of a
generic affine slice.
"""

from rootcone import (
    chamber_counts,
    exponents_from_lattice,
    intersection_lattice,
    poincare_polynomial,
    reflection_arrangement,
    root_system,
    slice_region_counts_rank2,
    truncated_poincare,
)
from rootcone.arrangement import make_arrangement

for fam, rank in [("A", 3), ("B", 3), ("H", 3)]:
    rs = root_system(fam, rank)
    L = intersection_lattice(reflection_arrangement(rs))
    p = poincare_polynomial(L)
    print(f"{rs.name}: {len(L)} flats, pi = {p}, exponents {exponents_from_lattice(L)}")
    trunc = truncated_poincare(L, rank)
    regions, bounded = chamber_counts(trunc, rank - 1)
    print(f"    slice has {regions} regions, {bounded} bounded")

# four planes in general position in R^3 are not a reflection arrangement
A = make_arrangement([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
L = intersection_lattice(A)
print("generic 4 planes:", poincare_polynomial(L), "exponents", exponents_from_lattice(L))

# the plane case by hand: three lines of A2 cut a generic line in 3 points
rs = root_system("A", 2)
x = rs.coweights[0]
x = tuple(a + 2 * b for a, b in zip(x, rs.coweights[1]))
print("A2 slice regions, bounded:", slice_region_counts_rank2(reflection_arrangement(rs), x))
