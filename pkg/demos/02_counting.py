"""
Counting translates of the cone
===============================

The volume formula comes from a counting statement: a generic point x lies
in exactly prod (d_i - 1) of the cones g(sigma), g in W.  We check it
with exact arithmetic, counting in two different ways.
"""

from rootcone import (
    bounded_orbit_count,
    count_containing_cones,
    generate_group,
    random_generic_point,
    root_system,
)

rs = root_system("H", 3)
W = generate_group(rs)
print("H3: |W| =", len(W), " positive roots =", len(rs.positive))

# a point with small rational coordinates avoiding every root-spanned hyperplane
pt = random_generic_point(rs, seed=5)
print("x =", pt.as_strings(), "(", pt.rejected, "rejected draws )")

# route 1: g^-1 x a positive combination of simple roots
print("cones containing x:", count_containing_cones(rs, W, pt))

# route 2: chambers on the positive side of x; these are the bounded
# regions cut by the affine hyperplane (x, y) = 1
print("bounded chambers:  ", bounded_orbit_count(rs, W, pt))

expected = 1
for d in rs.degrees():
    expected *= d - 1
print("prod (d_i - 1):    ", expected)

# dividing by |W| turns the count into the volume
print("volume", expected, "/", len(W))
