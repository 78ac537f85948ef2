"""
How much of space does the simple-root cone fill?
=================================================

The open cone spanned by the simple roots of a finite root system fills
the fraction prod (d_i - 1) / d_i of all directions.  Here we compare the
exact value with a Monte Carlo estimate for a few types.
"""

from rootcone import cone_volume_exact, monte_carlo_cone_volume, root_system

# the degrees of the reflection group determine everything
for fam, rank in [("A", 2), ("B", 2), ("G", 2), ("H", 3), ("F", 4)]:
    rs = root_system(fam, rank)
    exact = cone_volume_exact(rs.degrees())
    rep = monte_carlo_cone_volume(rs, 200_000, seed=1)
    print(f"{rs.name:3s} degrees {rs.degrees()}  exact {exact} = {float(exact):.5f}"
          f"  sampled {rep.estimate:.5f} +/- {rep.stderr:.5f}")

# In type A_n the answer collapses to 1/(n+1)
for n in range(1, 7):
    print(f"A{n}:", cone_volume_exact(root_system("A", n).degrees()))

# The fundamental chamber is much smaller: 1/|W|
from rootcone import chamber_volume_exact, monte_carlo_chamber_volume

rs = root_system("H", 3)
rep = monte_carlo_chamber_volume(rs, 500_000, seed=2)
print("H3 chamber", chamber_volume_exact(rs.degrees()), "sampled", round(rep.estimate, 5))
