"""Solid-angle volumes of the simple-root cone and of a chamber.

Exact values come from the degrees; Monte Carlo estimates sample uniform
directions.  The count verifier checks, point by point, that every generic
point lies in exactly ``prod (d_i - 1)`` translates ``g sigma``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import List, Sequence

import numpy as np

from .coxeter import group_order
from .roots import (
    ReflectionGroup,
    RootSystem,
    bounded_orbit_count,
    count_containing_cones,
    generic_points,
)

GENERATOR = "PCG64"
DEFAULT_TOLERANCE = 1e-9
CHUNK = 1 << 16


class TheoremViolation(AssertionError):
    """A generic point whose cone count differs from prod (d_i - 1)."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


def cone_volume_exact(degs: Sequence[int]) -> Fraction:
    """``prod (d_i - 1) / d_i``; zero as soon as some degree is 1."""
    out = Fraction(1)
    for d in degs:
        out *= Fraction(d - 1, d)
    return out


def chamber_volume_exact(degs: Sequence[int]) -> Fraction:
    return Fraction(1, group_order(degs))


def count_expected(degs: Sequence[int]) -> int:
    out = 1
    for d in degs:
        out *= d - 1
    return out


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass
class VolumeReport:
    type: str
    kind: str
    degrees: List[int]
    exact: Fraction
    estimate: float
    stderr: float
    samples: int
    seed: int
    discards: int
    tolerance: float = DEFAULT_TOLERANCE
    generator: str = GENERATOR

    @property
    def deviation(self) -> float:
        """|estimate - exact| in units of the standard error."""
        if self.stderr == 0:
            return 0.0 if self.estimate == float(self.exact) else math.inf
        return abs(self.estimate - float(self.exact)) / self.stderr

    def to_json(self) -> dict:
        d = asdict(self)
        d["exact"] = fraction_str(self.exact)
        return d


def _float_data(rs: RootSystem):
    if not rs.full_rank:
        raise ValueError("Monte Carlo volumes need a full-rank root system")
    simple = np.array([[float(c) for c in row] for row in rs.simple])
    w = np.array([float(c) for c in rs.metric])
    return simple, w


def sample_directions(rs: RootSystem, rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniform unit directions for the root system's metric, in its coordinates."""
    _, w = _float_data(rs)
    z = rng.standard_normal((size, rs.ambient_dim))
    z /= np.linalg.norm(z, axis=1)[:, None]
    # y = sqrt(w) x is an isometry onto Euclidean space
    return z / np.sqrt(w)


def classify_directions(rs: RootSystem, X: np.ndarray, kind: str, tol: float = DEFAULT_TOLERANCE):
    """Boolean arrays (inside, discarded) for the rows of ``X``.

    ``kind`` is ``"cone"`` (strictly positive simple-root coefficients) or
    ``"chamber"`` (strictly positive pairing with every simple root).
    Rows with any quantity within ``tol`` of zero are discarded.
    """
    simple, w = _float_data(rs)
    if kind == "cone":
        vals = X @ np.linalg.inv(simple)
    elif kind == "chamber":
        vals = X @ (simple * w).T
    else:
        raise ValueError(f"unknown kind {kind!r}")
    discard = np.any(np.abs(vals) < tol, axis=1)
    inside = np.all(vals > tol, axis=1) & ~discard
    return inside, discard


def _chunk(rs, kind, seed, k, size, tol):
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(k,))))
    hits = kept = discards = 0
    while kept < size:
        X = sample_directions(rs, rng, size - kept)
        inside, discard = classify_directions(rs, X, kind, tol)
        hits += int(inside.sum())
        discards += int(discard.sum())
        kept += int((~discard).sum())
    return hits, discards


def _monte_carlo(rs, kind, exact, N, seed, tol, threads) -> VolumeReport:
    if N <= 0:
        raise ValueError("N must be positive")
    sizes = [min(CHUNK, N - s) for s in range(0, N, CHUNK)]
    jobs = [(rs, kind, seed, k, size, tol) for k, size in enumerate(sizes)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda a: _chunk(*a), jobs))
    else:
        parts = [_chunk(*a) for a in jobs]
    hits = sum(p[0] for p in parts)
    discards = sum(p[1] for p in parts)
    p_hat = hits / N
    return VolumeReport(
        type=rs.name,
        kind=kind,
        degrees=list(rs.degrees()),
        exact=exact,
        estimate=p_hat,
        stderr=math.sqrt(p_hat * (1 - p_hat) / N),
        samples=N,
        seed=seed,
        discards=discards,
        tolerance=tol,
    )


def monte_carlo_cone_volume(
    rs: RootSystem, N: int, seed: int, tol: float = DEFAULT_TOLERANCE, threads: int = 1
) -> VolumeReport:
    """Fraction of uniform directions inside the open cone of the simple roots."""
    return _monte_carlo(rs, "cone", cone_volume_exact(rs.degrees()), N, seed, tol, threads)


def monte_carlo_chamber_volume(
    rs: RootSystem, N: int, seed: int, tol: float = DEFAULT_TOLERANCE, threads: int = 1
) -> VolumeReport:
    """Fraction of uniform directions inside the fundamental chamber."""
    return _monte_carlo(rs, "chamber", chamber_volume_exact(rs.degrees()), N, seed, tol, threads)


@dataclass
class CountReport:
    type: str
    expected: int
    group_order: int
    trials: int
    seed: int
    samples: List[dict] = field(default_factory=list)
    status: str = "PASS"
    note: str = ""

    def to_json(self) -> dict:
        return asdict(self)


def verify_count_theorem(
    rs: RootSystem,
    W: ReflectionGroup,
    trials: int,
    seed: int,
    *,
    check_bounded: bool = False,
    threads: int = 1,
) -> CountReport:
    """Count cones containing each of ``trials`` generic points.

    Raises :class:`TheoremViolation` carrying the offending point if any
    count differs from ``prod (d_i - 1)``.
    """
    degs = rs.degrees()
    expected = count_expected(degs)
    report = CountReport(rs.name, expected, len(W), trials, seed)
    for k, pt in enumerate(generic_points(rs, trials, seed)):
        c = count_containing_cones(rs, W, pt, threads=threads)
        rec = {"index": k, "x": pt.as_strings(), "count": c, "certificate": pt.certificate}
        if check_bounded:
            rec["bounded"] = bounded_orbit_count(rs, W, pt, threads=threads)
        report.samples.append(rec)
        if c != expected or rec.get("bounded", expected) != expected:
            report.status = "FAIL"
            raise TheoremViolation(
                f"{rs.name}: count {c} != {expected} at x = {rec['x']}", rec
            )
    return report


def skipped_count_report(name: str, degs: Sequence[int], trials: int, seed: int, reason: str) -> CountReport:
    return CountReport(name, count_expected(degs), group_order(degs), trials, seed, [], "SKIPPED", reason)
