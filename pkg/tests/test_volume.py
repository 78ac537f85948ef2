import json
import math
from fractions import Fraction

import numpy as np
import pytest

from rootcone.coxeter import build_diagram, degrees
from rootcone.roots import root_system
from rootcone.volume import (
    TheoremViolation,
    chamber_volume_exact,
    classify_directions,
    cone_volume_exact,
    count_expected,
    monte_carlo_chamber_volume,
    monte_carlo_cone_volume,
    sample_directions,
    verify_count_theorem,
)


@pytest.mark.parametrize("fam,rank,value", [
    ("A", 1, Fraction(1, 2)), ("A", 2, Fraction(1, 3)), ("B", 2, Fraction(3, 8)),
    ("G", 2, Fraction(5, 12)), ("H", 3, Fraction(3, 8)), ("H", 4, Fraction(6061, 14400)),
    ("A", 3, Fraction(1, 4)), ("F", 4, Fraction(385, 1152)),
    ("E", 8, Fraction(30808063, 99532800)),
])
def test_exact_cone_volumes(fam, rank, value):
    assert cone_volume_exact(degrees(build_diagram(fam, rank))) == value


def test_type_a_volume_is_one_over_n_plus_one():
    for n in range(1, 9):
        assert cone_volume_exact(degrees(build_diagram("A", n))) == Fraction(1, n + 1)


@pytest.mark.parametrize("m", range(3, 13))
def test_dihedral_volume(m):
    assert cone_volume_exact(degrees(build_diagram("I2", 2, m))) == Fraction(m - 1, 2 * m)
    # oracle: the cone between a1, a2 spans the angle pi - pi/m
    assert math.isclose((math.pi - math.pi / m) / (2 * math.pi), (m - 1) / (2 * m))


def test_degree_one_gives_zero():
    assert cone_volume_exact((1, 2, 3)) == 0
    assert count_expected((1, 3)) == 0
    assert chamber_volume_exact((2, 3)) == Fraction(1, 6)


def test_sampled_directions_are_unit_for_metric():
    rs = root_system("B", 3)
    X = sample_directions(rs, np.random.default_rng(1), 1000)
    w = np.array([float(c) for c in rs.metric])
    assert np.allclose((X * X) @ w, 1.0)


@pytest.mark.parametrize("fam,rank", [("A", 2), ("B", 2), ("G", 2), ("I2", 2), ("A", 3), ("B", 3), ("H", 3)])
def test_monte_carlo_small(fam, rank):
    rs = root_system(fam, rank, 5 if fam == "I2" else None)
    for fn in (monte_carlo_cone_volume, monte_carlo_chamber_volume):
        rep = fn(rs, 100_000, 3)
        assert rep.deviation < 5, rep


def test_planar_cone_by_angle():
    # oracle: in the plane the hit fraction is the opening angle over 2 pi
    rs = root_system("G", 2)
    S = np.array([[float(c) for c in r] for r in rs.simple])
    w = np.array([float(c) for c in rs.metric])
    y = S * np.sqrt(w)
    ang = math.acos(y[0] @ y[1] / np.linalg.norm(y[0]) / np.linalg.norm(y[1]))
    assert math.isclose(ang / (2 * math.pi), float(cone_volume_exact(rs.degrees())))


def test_monte_carlo_deterministic_and_threaded():
    rs = root_system("H", 3)
    a = monte_carlo_cone_volume(rs, 200_000, 42)
    b = monte_carlo_cone_volume(rs, 200_000, 42, threads=3)
    assert a.estimate == b.estimate and a.discards == b.discards
    assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(b.to_json(), sort_keys=True)
    c = monte_carlo_cone_volume(rs, 200_000, 43)
    assert c.estimate != a.estimate


def test_tolerance_robustness():
    rs = root_system("B", 3)
    lo = monte_carlo_cone_volume(rs, 200_000, 5, tol=1e-9)
    hi = monte_carlo_cone_volume(rs, 200_000, 5, tol=1e-12)
    assert abs(lo.estimate - hi.estimate) < 1e-4
    assert lo.deviation < 5 and hi.deviation < 5


def test_boundary_directions_are_discarded():
    rs = root_system("A", 2)
    X = np.array([[float(c) for c in rs.simple[0]]])
    inside, discard = classify_directions(rs, X, "cone")
    assert discard.all() and not inside.any()
    with pytest.raises(ValueError):
        classify_directions(rs, X, "wedge")


def test_doubling_samples_shrinks_error():
    rs = root_system("A", 3)
    errs = [monte_carlo_cone_volume(rs, n, 0).stderr for n in (50_000, 100_000, 200_000)]
    for a, b in zip(errs, errs[1:]):
        assert math.isclose(a / b, math.sqrt(2), rel_tol=0.02)


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "H3"])
def test_doubling_samples_moves_estimate_little(rs_of, name):
    rs = rs_of(name)
    for fn in (monte_carlo_cone_volume, monte_carlo_chamber_volume):
        a, b = fn(rs, 100_000, 11), fn(rs, 200_000, 11)
        combined = math.hypot(a.stderr, b.stderr)
        assert abs(a.estimate - b.estimate) <= 6 * combined


def test_monte_carlo_rejects_empty():
    with pytest.raises(ValueError):
        monte_carlo_cone_volume(root_system("A", 2), 0, 0)


@pytest.mark.parametrize("name", ["A2", "B3", "G2", "I2(5)"])
def test_verify_count_theorem(rs_of, group_of, name):
    rep = verify_count_theorem(rs_of(name), group_of(name), 10, 1, check_bounded=True)
    assert rep.status == "PASS"
    assert {s["count"] for s in rep.samples} == {rep.expected}
    assert all(s["bounded"] == rep.expected for s in rep.samples)
    again = verify_count_theorem(rs_of(name), group_of(name), 10, 1, check_bounded=True)
    assert json.dumps(rep.to_json(), sort_keys=True) == json.dumps(again.to_json(), sort_keys=True)


def test_count_violation_carries_witness(rs_of, group_of):
    # the trivial subgroup in place of W must fail loudly
    from rootcone.roots import ReflectionGroup

    W = group_of("B2")
    trivial = ReflectionGroup(W.rs, W.perms[:1], (0,))
    try:
        verify_count_theorem(rs_of("B2"), trivial, 20, 0)
    except TheoremViolation as e:
        assert e.witness["count"] != 3 and "x" in e.witness
    else:
        pytest.fail("no violation raised")
