"""Exact root systems, reflection arrangements and cone volumes.

The simple-root cone of a finite root system occupies the fraction
``prod (d_i - 1) / d_i`` of space, where ``d_i`` are the degrees of the
reflection group.  This package builds the objects involved exactly over
Q(sqrt 5) and checks the statement and its combinatorial ingredients.
"""

__version__ = "0.1.0"

from .arrangement import (
    CentralArrangement,
    IntersectionLattice,
    IntPolynomial,
    chamber_counts,
    dihedral_arrangement,
    exponents_from_lattice,
    intersection_lattice,
    is_general_position,
    make_arrangement,
    poincare_polynomial,
    reflection_arrangement,
    slice_region_counts_rank2,
    truncated_poincare,
    verify_factorization,
)
from .coxeter import (
    CoxeterDiagram,
    ExtendedDiagram,
    build_diagram,
    classify_finite,
    degrees,
    delete_node,
    extended_diagram,
    parse_diagram,
    simple_roots,
)
from .exact import Scalar, inner_product, rank, solve_linear
from .identity import (
    alcove_partition_check,
    brute_force_admissible,
    curious_identity,
    formal_identity_sum,
    search_h_extensions,
)
from .roots import (
    ReflectionGroup,
    RootSystem,
    bounded_orbit_count,
    cone_coefficients,
    count_containing_cones,
    generate_group,
    generate_roots,
    in_fundamental_chamber,
    in_open_cone,
    is_generic,
    random_generic_point,
    root_system,
)
from .volume import (
    chamber_volume_exact,
    cone_volume_exact,
    monte_carlo_chamber_volume,
    monte_carlo_cone_volume,
    verify_count_theorem,
)
