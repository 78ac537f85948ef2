from fractions import Fraction
import itertools
import random

import numpy as np
import pytest

from rootcone.arrangement import (
    IntPolynomial,
    LatticeBudgetError,
    NonGenericError,
    affine_slice,
    chamber_counts,
    dihedral_arrangement,
    exponents_from_lattice,
    intersection_lattice,
    is_general_position,
    make_arrangement,
    poincare_polynomial,
    reflection_arrangement,
    slice_region_counts_rank2,
    truncated_mobius,
    truncated_poincare,
    verify_factorization,
)
from rootcone.exact import ZERO, solve_linear, vector
from rootcone.roots import generic_points


def _whitney(arr):
    """Oracle: pi(t) = sum over subsets S of (-1)^|S| (-t)^rank(S)."""
    N = np.array([[float(c) for c in v] for v in arr.normals])
    coeffs = [0] * (arr.ambient_dim + 1)
    for k in range(len(N) + 1):
        for S in itertools.combinations(range(len(N)), k):
            r = int(np.linalg.matrix_rank(N[list(S)])) if S else 0
            coeffs[r] += (-1) ** k * (-1) ** r
    return IntPolynomial(tuple(coeffs))


def test_a2_lattice(lattice_of):
    L = lattice_of("A2")
    assert len(L) == 5
    assert [len(L.by_rank(r)) for r in range(3)] == [1, 3, 1]
    assert L.by_rank(2)[0].mu == 2
    assert all(f.mu == -1 for f in L.by_rank(1))


@pytest.mark.parametrize("name", ["A2", "B3", "H3", "D4"])
def test_mobius_recursion(lattice_of, name):
    L = lattice_of(name)
    for x in L.flats:
        if x.rank == 0:
            assert x.mu == 1
            continue
        assert sum(y.mu for y in L.flats if L.leq(y, x)) == 0


@pytest.mark.parametrize("name,poly", [
    ("A1", (1, 1)), ("A2", (1, 3, 2)), ("B2", (1, 4, 3)), ("G2", (1, 6, 5)), ("I2(5)", (1, 5, 4)),
    ("A3", (1, 6, 11, 6)), ("H3", (1, 15, 59, 45)), ("H4", (1, 60, 1138, 7140, 6061)),
])
def test_poincare_examples(rs_of, lattice_of, name, poly):
    p = poincare_polynomial(lattice_of(name))
    assert p.coeffs == poly
    assert verify_factorization(p, rs_of(name).degrees())


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "H3"])
def test_poincare_against_whitney(rs_of, lattice_of, name):
    assert poincare_polynomial(lattice_of(name)) == _whitney(reflection_arrangement(rs_of(name)))


@pytest.mark.parametrize("name", ["A4", "B4", "D4", "F4", "H4"])
def test_exponents_recovered(rs_of, lattice_of, name):
    degs = rs_of(name).degrees()
    assert exponents_from_lattice(lattice_of(name)) == tuple(sorted(d - 1 for d in degs))


def test_non_reflection_arrangement_does_not_split():
    A = make_arrangement([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
    L = intersection_lattice(A)
    p = poincare_polynomial(L)
    assert p.coeffs == (1, 4, 6, 3)
    assert p == _whitney(A)
    assert exponents_from_lattice(L) is None
    assert str(p) == "1 + 4t + 6t^2 + 3t^3"


def test_polynomial_helpers():
    p = IntPolynomial.from_degrees([2, 3])
    assert p.coeffs == (1, 3, 2) and str(p) == "1 + 3t + 2t^2"
    assert p(1) == 6 and p(-1) == 0
    assert chamber_counts(p, 2) == (6, 0)
    assert exponents_from_lattice(p) == (1, 2)
    assert (p - IntPolynomial((1, 3))).coeffs == (0, 0, 2)


@pytest.mark.parametrize("name,regions", [("A2", 6), ("B2", 8), ("A3", 24), ("B3", 48), ("H3", 120)])
def test_central_chambers_equal_group_order(lattice_of, name, regions):
    p = poincare_polynomial(lattice_of(name))
    assert chamber_counts(p, p.degree) == (regions, 0)


def test_parallel_normals_deduplicated():
    A = make_arrangement([(1, 0), (2, 0), (0, 1)])
    assert len(A) == 2
    with pytest.raises(ValueError):
        make_arrangement([(0, 0)])


def test_lattice_budget(rs_of):
    with pytest.raises(LatticeBudgetError):
        intersection_lattice(reflection_arrangement(rs_of("B5")), max_hyperplanes=10)


@pytest.mark.parametrize("name", ["A2", "A3", "B3", "H3", "A4", "H4"])
def test_truncation(rs_of, lattice_of, name):
    L = lattice_of(name)
    n = rs_of(name).ambient_dim
    p, trunc = poincare_polynomial(L), truncated_poincare(L, n)
    expected = 1
    for d in rs_of(name).degrees():
        expected *= d - 1
    assert (p - trunc).coeffs == (0,) * n + (expected,)
    # cutting the top off leaves every lower Moebius value unchanged
    mu = truncated_mobius(L, n)
    assert mu == {f.mask: f.mu for f in L.flats if f.rank < n}
    assert chamber_counts(trunc, n - 1)[1] == p.coefficient(n)


def _brute_general_position(L, x):
    # x^perp contains some nonzero flat X iff every basis vector of X is orthogonal to x
    metric = L.arrangement.metric
    for f in L.flats:
        if f.rank == L.arrangement.ambient_dim:
            continue
        if all(sum((a * b * w for a, b, w in zip(x, v, metric)), ZERO) == 0 for v in L.subspace(f)):
            return False
    return True


def test_general_position_a3_root(rs_of, lattice_of):
    rs = rs_of("A3")
    A, L = reflection_arrangement(rs), lattice_of("A3")
    root = rs.positive_roots[0]
    assert not is_general_position(A, root)
    assert not _brute_general_position(L, root)
    for pt in generic_points(rs, 20, 1):
        assert is_general_position(A, pt.x) == _brute_general_position(L, pt.x) == True


def test_general_position_random_agrees_with_brute_force(rs_of, lattice_of):
    rs = rs_of("B3")
    A, L = reflection_arrangement(rs), lattice_of("B3")
    rng = random.Random(3)
    seen = set()
    for _ in range(300):
        x = vector([rng.randint(-2, 2) for _ in range(3)])
        if not any(x):
            continue
        got = is_general_position(A, x)
        assert got == _brute_general_position(L, x)
        seen.add(got)
    assert seen == {True, False}


def test_general_position_rejects_bad_input(rs_of):
    A = reflection_arrangement(rs_of("A2"))
    with pytest.raises(ValueError):
        is_general_position(A, (1, 1), eps=0)
    with pytest.raises(ValueError):
        is_general_position(A, (0, 0))


@pytest.mark.parametrize("name,counts", [("A2", (4, 2)), ("B2", (5, 3)), ("G2", (7, 5)), ("I2(5)", (6, 4))])
def test_rank2_slice_oracle(rs_of, lattice_of, name, counts):
    rs = rs_of(name)
    A, L = reflection_arrangement(rs), lattice_of(name)
    trunc = truncated_poincare(L, 2)
    for pt in generic_points(rs, 5, 8):
        for eps in (Fraction(1, 7), 1, 13):
            assert slice_region_counts_rank2(A, pt.x, eps) == counts
        assert chamber_counts(trunc, 1) == counts


def test_rank2_slice_a1xa1():
    A = make_arrangement([(1, 0), (0, 1)])
    assert slice_region_counts_rank2(A, (1, 2)) == (3, 1)
    with pytest.raises(NonGenericError):
        slice_region_counts_rank2(A, (1, 0))


@pytest.mark.parametrize("m", range(1, 13))
def test_dihedral_arrangements(m):
    A = dihedral_arrangement(m)
    L = intersection_lattice(A)
    p = poincare_polynomial(L)
    assert p.coeffs == ((1, 1) if m == 1 else (1, m, m - 1))
    x = (7, -3)
    assert is_general_position(A, x)
    assert slice_region_counts_rank2(A, x) == (m + 1, m - 1)
    assert chamber_counts(truncated_poincare(L, 2), 1) == (m + 1, m - 1)


def _plane_slice_counts(A, x, eps):
    """Oracle for rank 3: regions of the line arrangement cut on H_x, from
    exact crossing points with their multiplicities."""
    s = affine_slice(A, x, eps)
    w = A.metric
    xw = tuple(a * b for a, b in zip(s.x, w))
    rows = [tuple(a * b for a, b in zip(nrm, w)) for nrm in A.normals]
    points = {}
    for i, j in itertools.combinations(range(len(rows)), 2):
        p = solve_linear((rows[i], rows[j], xw), (ZERO, ZERO, s.offset))
        assert p is not None and s.contains(p)
        points.setdefault(p, set()).update((i, j))
    extra = sum(len(v) - 1 for v in points.values())
    n = len(rows)
    return 1 + n + extra, 1 - n + extra


@pytest.mark.parametrize("name", ["A3", "B3", "H3"])
def test_rank3_slice_counts(rs_of, lattice_of, name):
    rs = rs_of(name)
    A, L = reflection_arrangement(rs), lattice_of(name)
    trunc = truncated_poincare(L, 3)
    top = poincare_polynomial(L).coefficient(3)
    for pt in generic_points(rs, 3, 6):
        assert is_general_position(A, pt.x, L=L)
        for eps in (Fraction(1, 7), 13):
            got = _plane_slice_counts(A, pt.x, eps)
            assert got == chamber_counts(trunc, 2)
            assert got[1] == top
