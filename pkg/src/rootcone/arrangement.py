"""Central hyperplane arrangements: intersection lattice, Moebius function,
Poincare polynomial, Zaslavsky counts and generic affine slices.

Hyperplane ``i`` is ``{y : (normals[i], y) = 0}`` for the arrangement's
diagonal metric.  A lattice element (flat) is stored as the bitmask of the
hyperplanes containing it; the canonical key of a flat is the reduced echelon
basis of the span of its normals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import ONE, ZERO, Scalar, nullspace, rref, solve_linear, vector
from .roots import RootSystem, metric_inner

DEFAULT_MAX_HYPERPLANES = 64
DEFAULT_MAX_ELEMENTS = 50_000


class LatticeBudgetError(ValueError):
    pass


class NonGenericError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CentralArrangement:
    normals: Tuple[Tuple[Scalar, ...], ...]
    metric: Tuple[Scalar, ...]

    @property
    def ambient_dim(self) -> int:
        return len(self.metric)

    def __len__(self):
        return len(self.normals)


def _direction_key(v):
    lead = next(x for x in v if x)
    inv = lead.inverse()
    return tuple(x * inv for x in v)


def make_arrangement(normals: Sequence, metric=None, dim: Optional[int] = None) -> CentralArrangement:
    """Build an arrangement, dropping repeated hyperplanes (parallel normals)."""
    normals = [vector(v) for v in normals]
    if dim is None:
        if not normals:
            raise ValueError("give dim for an empty arrangement")
        dim = len(normals[0])
    metric = tuple(ONE for _ in range(dim)) if metric is None else vector(metric)
    kept, seen = [], set()
    for v in normals:
        if len(v) != dim:
            raise ValueError("normal has the wrong length")
        if not any(v):
            raise ValueError("zero normal vector")
        key = _direction_key(v)
        if key not in seen:
            seen.add(key)
            kept.append(v)
    return CentralArrangement(tuple(kept), metric)


def reflection_arrangement(rs: RootSystem) -> CentralArrangement:
    """One hyperplane per positive root (cached on ``rs``)."""
    cached = rs.__dict__.get("_arrangement")
    if cached is None:
        cached = make_arrangement(rs.positive_roots, rs.metric, rs.ambient_dim)
        rs.__dict__["_arrangement"] = cached
    return cached


def dihedral_arrangement(m: int) -> CentralArrangement:
    """``m`` distinct lines through the origin of the plane.

    Any such family has the intersection lattice of the I2(m) reflection
    arrangement, so this rational model stands in for labels whose cosines
    leave Q(sqrt 5).
    """
    if m < 1:
        raise ValueError("need at least one line")
    return make_arrangement([(1, k) for k in range(m)])


@dataclass
class Flat:
    mask: int
    rank: int
    basis: Tuple[Tuple[Scalar, ...], ...]  # reduced echelon basis of the normals' span
    pivots: Tuple[int, ...]
    mu: int = 0

    def hyperplanes(self) -> List[int]:
        out, m, k = [], self.mask, 0
        while m:
            if m & 1:
                out.append(k)
            m >>= 1
            k += 1
        return out


@dataclass
class IntersectionLattice:
    arrangement: CentralArrangement
    flats: List[Flat]
    index: Dict[int, int] = field(default_factory=dict)

    def __len__(self):
        return len(self.flats)

    @property
    def top_rank(self) -> int:
        return max(f.rank for f in self.flats)

    def by_rank(self, r: int) -> List[Flat]:
        return [f for f in self.flats if f.rank == r]

    def leq(self, a: Flat, b: Flat) -> bool:
        """Order by reverse inclusion of subspaces: ``a <= b`` iff ``b`` is inside ``a``."""
        return a.mask & b.mask == a.mask

    def subspace(self, f: Flat):
        """Basis of the subspace ``{y : (n, y) = 0 for n in f}``."""
        arr = self.arrangement
        dim = arr.ambient_dim
        if not f.basis:
            return tuple(tuple(ONE if i == j else ZERO for j in range(dim)) for i in range(dim))
        weighted = [tuple(c * w for c, w in zip(row, arr.metric)) for row in f.basis]
        return nullspace(weighted, dim)


def _reduce(v, basis, pivots):
    # residual of v after eliminating the echelon basis
    r = list(v)
    for row, pc in zip(basis, pivots):
        f = r[pc]
        if f:
            r = [a - f * b for a, b in zip(r, row)]
    return r


def _in_span(v, basis, pivots) -> bool:
    return not any(_reduce(v, basis, pivots))


def intersection_lattice(
    A: CentralArrangement,
    max_hyperplanes: int = DEFAULT_MAX_HYPERPLANES,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> IntersectionLattice:
    """All intersections of hyperplanes of ``A`` with their Moebius values."""
    cached = A.__dict__.get("_lattice")
    if cached is not None:
        return cached
    if len(A) > max_hyperplanes:
        raise LatticeBudgetError(f"{len(A)} hyperplanes exceeds the budget {max_hyperplanes}")
    normals = A.normals
    bottom = Flat(0, 0, (), ())
    flats = [bottom]
    by_key: Dict[tuple, int] = {(): 0}
    layer = [bottom]
    r = 0
    while layer:
        nxt = []
        for f in layer:
            covered = f.mask
            for h in range(len(normals)):
                if covered >> h & 1:
                    continue
                basis, pivots = rref(f.basis + (normals[h],))
                key = basis
                k = by_key.get(key)
                if k is None:
                    mask = 0
                    for j, nj in enumerate(normals):
                        if (f.mask >> j & 1) or j == h or _in_span(nj, basis, pivots):
                            mask |= 1 << j
                    g = Flat(mask, r + 1, basis, pivots)
                    by_key[key] = len(flats)
                    flats.append(g)
                    nxt.append(g)
                    if len(flats) > max_elements:
                        raise LatticeBudgetError(f"more than {max_elements} lattice elements")
                else:
                    g = flats[k]
                covered |= g.mask
        layer = nxt
        r += 1
    _assign_mobius(flats)
    lat = IntersectionLattice(A, flats, {f.mask: k for k, f in enumerate(flats)})
    A.__dict__["_lattice"] = lat
    return lat


def _assign_mobius(flats: List[Flat]) -> None:
    # flats must be sorted by rank
    for k, x in enumerate(flats):
        if x.rank == 0:
            x.mu = 1
            continue
        s = 0
        xm = x.mask
        for y in flats[:k]:
            if y.rank < x.rank and y.mask & xm == y.mask:
                s += y.mu
        x.mu = -s


# polynomials


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in ``t``; ``coeffs[k]`` multiplies ``t**k``."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) if c else (0,))

    @classmethod
    def from_degrees(cls, degs: Sequence[int]) -> "IntPolynomial":
        """``prod (1 + (d - 1) t)``."""
        p = cls((1,))
        for d in degs:
            p = p * cls((1, d - 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, t):
        out = 0
        for c in reversed(self.coeffs):
            out = out * t + c
        return out

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self.coefficient(k) - other.coefficient(k) for k in range(n)))

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0 and self.degree > 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if k == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def poincare_polynomial(L: IntersectionLattice) -> IntPolynomial:
    """``sum mu(0, X) (-t)^rank(X)``."""
    coeffs = [0] * (L.top_rank + 1)
    for f in L.flats:
        coeffs[f.rank] += f.mu * (-1) ** f.rank
    return IntPolynomial(tuple(coeffs))


def verify_factorization(p: IntPolynomial, degs: Sequence[int]) -> bool:
    return p == IntPolynomial.from_degrees(degs)


def exponents_from_lattice(L) -> Optional[Tuple[int, ...]]:
    """Exponents ``m_i`` with ``pi(t) = prod (1 + m_i t)``, or None if ``pi``
    does not split into such integer factors."""
    p = L if isinstance(L, IntPolynomial) else poincare_polynomial(L)
    c = [Fraction(x) for x in p.coeffs]
    if c[0] != 1:
        return None
    exps = []
    while len(c) > 1:
        lead = abs(int(c[-1]))
        found = None
        for m in range(1, lead + 1):
            if lead % m:
                continue
            # root t = -1/m
            val = sum(ck * Fraction(-1, m) ** k for k, ck in enumerate(c))
            if val == 0:
                found = m
                break
        if found is None:
            return None
        # divide by (1 + m t): q_k = c_k - m q_{k-1}
        q = []
        prev = Fraction(0)
        for k in range(len(c) - 1):
            prev = c[k] - found * prev
            q.append(prev)
        c = q
        exps.append(found)
    return tuple(sorted(exps))


def chamber_counts(p: IntPolynomial, rank: int) -> Tuple[int, int]:
    """Zaslavsky: ``(p(1), (-1)^rank p(-1))`` = (regions, bounded regions)."""
    return p(1), (-1) ** rank * p(-1)


def truncated_poincare(L: IntersectionLattice, ambient_rank: int) -> IntPolynomial:
    """Poincare polynomial of the lattice cut below ``ambient_rank``, with
    Moebius values recomputed inside the truncated poset."""
    kept = [Flat(f.mask, f.rank, f.basis, f.pivots) for f in L.flats if f.rank <= ambient_rank - 1]
    _assign_mobius(kept)
    coeffs = [0] * (max((f.rank for f in kept), default=0) + 1)
    for f in kept:
        coeffs[f.rank] += f.mu * (-1) ** f.rank
    return IntPolynomial(tuple(coeffs))


def truncated_mobius(L: IntersectionLattice, ambient_rank: int) -> Dict[int, int]:
    """Mask -> recomputed Moebius value on the truncated poset."""
    kept = [Flat(f.mask, f.rank, f.basis, f.pivots) for f in L.flats if f.rank <= ambient_rank - 1]
    _assign_mobius(kept)
    return {f.mask: f.mu for f in kept}


# slices


def _check_eps(eps) -> Scalar:
    eps = Scalar(eps) if not isinstance(eps, Scalar) else eps
    if eps.sign() <= 0:
        raise ValueError("epsilon must be positive")
    return eps


def is_general_position(A: CentralArrangement, x, eps=1, L: Optional[IntersectionLattice] = None) -> bool:
    """Does the affine hyperplane ``{y : (x, y) = eps (x, x)}`` meet every
    nonzero element of the intersection lattice?

    A subspace X misses it exactly when ``X`` lies in ``x^perp``, i.e. when
    ``x`` is in the span of the normals of X.
    """
    _check_eps(eps)
    x = vector(x)
    if not any(x):
        raise ValueError("x must be nonzero")
    L = intersection_lattice(A) if L is None else L
    dim = A.ambient_dim
    for f in L.flats:
        if f.rank == dim:
            continue
        if _in_span(x, f.basis, f.pivots):
            return False
    return True


@dataclass(frozen=True)
class AffineSlice:
    """The arrangement induced on ``H_x = {y : (x, y) = eps (x, x)}``."""

    arrangement: CentralArrangement
    x: Tuple[Scalar, ...]
    eps: Scalar

    @property
    def offset(self) -> Scalar:
        return self.eps * metric_inner(self.x, self.x, self.arrangement.metric)

    def contains(self, y) -> bool:
        return metric_inner(self.x, y, self.arrangement.metric) == self.offset


def affine_slice(A: CentralArrangement, x, eps=1) -> AffineSlice:
    return AffineSlice(A, vector(x), _check_eps(eps))


def slice_region_counts_rank2(A: CentralArrangement, x, eps=1) -> Tuple[int, int]:
    """Regions and bounded regions cut on the line ``H_x`` by the lines of a
    planar central arrangement, counted from the exact crossing points."""
    if A.ambient_dim != 2:
        raise ValueError("the planar slice oracle needs ambient dimension 2")
    s = affine_slice(A, x, eps)
    w = A.metric
    xw = tuple(a * b for a, b in zip(s.x, w))
    points = set()
    for nrm in A.normals:
        row = tuple(a * b for a, b in zip(nrm, w))
        p = solve_linear((row, xw), (ZERO, s.offset))
        if p is None:
            raise NonGenericError("a line of the arrangement is parallel to the slice")
        points.add(p)
    k = len(points)
    if k == 0:
        return 1, 0
    return k + 1, k - 1
