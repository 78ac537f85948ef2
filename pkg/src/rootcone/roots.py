"""Root systems, their reflection groups, cone membership and orbit counts.

A root system lives in coordinates with a diagonal exact metric, so
``(u, v) = sum metric[k] * u[k] * v[k]``.  This lets every finite type with
labels in {2, 3, 4, 5, 6} be realized over Q(sqrt 5) even where no Euclidean
realization exists (A2 needs sqrt 3, for instance).

Group elements are stored as permutations of the finite vector set
``W . simple``; the linear action is recovered from the images of the
simple roots.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

from .coxeter import (
    CoxeterDiagram,
    NotFiniteError,
    build_diagram,
    degrees,
    diagram_from_gram,
    group_order,
    simple_roots,
)
from .exact import (
    ONE,
    ZERO,
    Scalar,
    inverse,
    nullspace,
    rank,
    scalar,
    transpose,
    vector,
)

DEFAULT_GROUP_CAP = 60_000
DEFAULT_VECTOR_CAP = 20_000
# lattice-based genericity certificates are only attempted below these sizes
GENERIC_MAX_HYPERPLANES = 64
GENERIC_MAX_RANK = 5


class GroupTooLargeError(ValueError):
    pass


class SamplingError(RuntimeError):
    pass


def metric_inner(u, v, metric) -> Scalar:
    total = ZERO
    for a, b, w in zip(u, v, metric):
        if a and b:
            total = total + a * b * w
    return total


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Simple roots, the finite vector set they generate, and positive roots.

    ``vectors`` is the orbit of the simple roots under the reflection group
    (exactly the root system when no simple root has been rescaled);
    ``coeffs[k]`` is the coefficient vector of ``vectors[k]`` in the simple
    basis.  ``positive`` indexes one positive vector per root direction.
    """

    diagram: Optional[CoxeterDiagram]
    simple: Tuple[Tuple[Scalar, ...], ...]
    metric: Tuple[Scalar, ...]
    vectors: Tuple[Tuple[Scalar, ...], ...]
    coeffs: Tuple[Tuple[Scalar, ...], ...]
    positive: Tuple[int, ...]
    name: str = ""

    @property
    def rank(self) -> int:
        return len(self.simple)

    @property
    def ambient_dim(self) -> int:
        return len(self.metric)

    @property
    def full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    @property
    def positive_roots(self) -> List[Tuple[Scalar, ...]]:
        return [self.vectors[k] for k in self.positive]

    def inner(self, u, v) -> Scalar:
        return metric_inner(u, v, self.metric)

    @cached_property
    def gram(self):
        return tuple(tuple(self.inner(a, b) for b in self.simple) for a in self.simple)

    @cached_property
    def gram_inverse(self):
        return inverse(self.gram)

    @cached_property
    def _coord_inverse(self):
        # inverse of simple^T: maps ambient vectors to simple-root coefficients
        if not self.full_rank:
            return None
        return inverse(transpose(self.simple))

    @cached_property
    def coweights(self) -> Tuple[Tuple[Scalar, ...], ...]:
        """Dual basis ``w_i`` with ``(w_i, a_j) = delta_ij``; rays of the chamber."""
        gi = self.gram_inverse
        out = []
        for i in range(self.rank):
            v = [ZERO] * self.ambient_dim
            for k in range(self.rank):
                if gi[i][k]:
                    v = [a + gi[i][k] * b for a, b in zip(v, self.simple[k])]
            out.append(tuple(v))
        return tuple(out)

    def degrees(self) -> Tuple[int, ...]:
        """Degrees of the diagram, padded with 1s up to the ambient dimension."""
        if self.diagram is None:
            raise ValueError("root system has no attached diagram")
        return (1,) * (self.ambient_dim - self.rank) + degrees(self.diagram)

    def scaled(self, factors: Sequence) -> "RootSystem":
        """Same reflection group with simple root ``i`` replaced by ``factors[i] * a_i``."""
        simple = tuple(
            tuple(scalar(f) * c for c in row) for f, row in zip(factors, self.simple)
        )
        if any(scalar(f).sign() <= 0 for f in factors):
            raise ValueError("scaling factors must be positive")
        return generate_roots(simple, self.metric, self.diagram, name=self.name)


def _ray_key(c):
    lead = next(x for x in c if x)
    inv = abs(lead).inverse()
    return tuple(x * inv for x in c)


def generate_roots(
    simple,
    metric=None,
    diagram: Optional[CoxeterDiagram] = None,
    *,
    name: str = "",
    max_vectors: int = DEFAULT_VECTOR_CAP,
) -> RootSystem:
    """Close the simple roots under their own reflections (breadth first)."""
    simple = tuple(vector(r) for r in simple)
    dim = len(simple[0])
    metric = tuple(ONE for _ in range(dim)) if metric is None else vector(metric)
    n = len(simple)
    if rank(simple) != n:
        raise ValueError("simple roots must be linearly independent")
    gram = [[metric_inner(a, b, metric) for b in simple] for a in simple]
    # coroot pairing of coefficient vector c with a_i: 2 (c . gram[:, i]) / gram[i][i]
    two_over = [Scalar(2) / gram[i][i] for i in range(n)]

    def unit(i):
        return tuple(ONE if k == i else ZERO for k in range(n))

    coeffs = [unit(i) for i in range(n)]
    index = {c: k for k, c in enumerate(coeffs)}
    head = 0
    while head < len(coeffs):
        c = coeffs[head]
        head += 1
        for i in range(n):
            pair = ZERO
            for k in range(n):
                if c[k] and gram[k][i]:
                    pair = pair + c[k] * gram[k][i]
            if not pair:
                continue
            w = list(c)
            w[i] = w[i] - pair * two_over[i]
            w = tuple(w)
            if w not in index:
                index[w] = len(coeffs)
                coeffs.append(w)
                if len(coeffs) > max_vectors:
                    raise NotFiniteError(
                        f"more than {max_vectors} roots generated; input is not of finite type"
                    )
    vectors = []
    for c in coeffs:
        v = [ZERO] * dim
        for k in range(n):
            if c[k]:
                v = [a + c[k] * b for a, b in zip(v, simple[k])]
        vectors.append(tuple(v))
    positive, seen = [], set()
    for k, c in enumerate(coeffs):
        if all(x.sign() >= 0 for x in c):
            key = _ray_key(c)
            if key not in seen:
                seen.add(key)
                positive.append(k)
    return RootSystem(diagram, simple, metric, tuple(vectors), tuple(coeffs), tuple(positive), name)


def root_system(family: str, rank: int, dihedral_label: Optional[int] = None) -> RootSystem:
    """Realize and generate the root system of a catalog type."""
    d = build_diagram(family, rank, dihedral_label)
    real = simple_roots(d)
    name = f"I2({dihedral_label})" if family.upper() == "I2" else f"{family.upper()}{rank}"
    return generate_roots(real.simple, real.metric, d, name=name)


def root_system_from_diagram(d: CoxeterDiagram, name: str = "") -> RootSystem:
    real = simple_roots(d)
    return generate_roots(real.simple, real.metric, d, name=name)


def root_system_from_gram(gram, name: str = "") -> RootSystem:
    from .coxeter import ldl_realization

    real = ldl_realization(gram)
    return generate_roots(real.simple, real.metric, diagram_from_gram(gram), name=name)


# reflection group


@dataclass(frozen=True, eq=False)
class ReflectionGroup:
    """All elements of W as permutations of ``rs.vectors``.

    ``perms[g][k]`` is the index of ``g(vectors[k])``; element 0 is the
    identity and ``inverse_index[g]`` gives the index of ``g^-1``.
    """

    rs: RootSystem
    perms: Tuple[Tuple[int, ...], ...]
    inverse_index: Tuple[int, ...]
    identity_index: int = 0

    def __len__(self):
        return len(self.perms)

    def act(self, g: int, x) -> Tuple[Scalar, ...]:
        """``g(x)`` for an ambient vector ``x`` in the span of the simple roots."""
        rs = self.rs
        y = cone_coefficients(rs, x)
        if y is None:
            raise ValueError("act() needs a full-rank root system")
        p = self.perms[g]
        out = [ZERO] * rs.ambient_dim
        for j in range(rs.rank):
            if y[j]:
                img = rs.vectors[p[j]]
                out = [a + y[j] * b for a, b in zip(out, img)]
        return tuple(out)

    def matrix(self, g: int):
        """Exact ambient matrix of element ``g`` (fixes the orthogonal
        complement of the simple roots pointwise)."""
        rs = self.rs
        p = self.perms[g]
        weighted = [tuple(c * w for c, w in zip(row, rs.metric)) for row in rs.simple]
        comp = list(nullspace(weighted, rs.ambient_dim)) if not rs.full_rank else []
        basis = list(rs.simple) + comp
        images = [rs.vectors[p[j]] for j in range(rs.rank)] + comp
        # M B^T = I^T  =>  M = I^T (B^T)^-1
        binv = inverse(transpose(basis))
        img_t = transpose(images)
        return tuple(
            tuple(
                sum((img_t[r][k] * binv[k][c] for k in range(len(basis))), ZERO)
                for c in range(rs.ambient_dim)
            )
            for r in range(rs.ambient_dim)
        )


def _reflection_perm(rs: RootSystem, i: int) -> Tuple[int, ...]:
    gram = rs.gram
    n = rs.rank
    index = {c: k for k, c in enumerate(rs.coeffs)}
    factor = Scalar(2) / gram[i][i]
    out = []
    for c in rs.coeffs:
        pair = ZERO
        for k in range(n):
            if c[k] and gram[k][i]:
                pair = pair + c[k] * gram[k][i]
        w = list(c)
        w[i] = w[i] - pair * factor
        out.append(index[tuple(w)])
    return tuple(out)


def generate_group(rs: RootSystem, cap: int = DEFAULT_GROUP_CAP) -> ReflectionGroup:
    """Enumerate W by closing the simple reflections under composition."""
    if rs.diagram is not None:
        expected = group_order(degrees(rs.diagram))
        if expected > cap:
            raise GroupTooLargeError(f"|W| = {expected} exceeds the cap {cap}")
    gens = [_reflection_perm(rs, i) for i in range(rs.rank)]
    ident = tuple(range(len(rs.vectors)))
    perms = [ident]
    index = {ident: 0}
    head = 0
    while head < len(perms):
        p = perms[head]
        head += 1
        for s in gens:
            q = tuple(s[k] for k in p)
            if q not in index:
                index[q] = len(perms)
                perms.append(q)
                if len(perms) > cap:
                    raise GroupTooLargeError(f"group has more than {cap} elements")
    inv = []
    for p in perms:
        pinv = [0] * len(p)
        for k, v in enumerate(p):
            pinv[v] = k
        inv.append(index[tuple(pinv)])
    return ReflectionGroup(rs, tuple(perms), tuple(inv))


# membership


def cone_coefficients(rs: RootSystem, x) -> Optional[Tuple[Scalar, ...]]:
    """Coefficients ``c`` with ``sum c_i a_i = x``; None when the simple
    roots do not form a basis of the ambient space."""
    if len(x) != rs.ambient_dim:
        raise ValueError(f"expected a vector of length {rs.ambient_dim}")
    m = rs._coord_inverse
    if m is None:
        return None
    x = vector(x)
    out = []
    for row in m:
        s = ZERO
        for a, b in zip(row, x):
            if a and b:
                s = s + a * b
        out.append(s)
    return tuple(out)


def in_open_cone(rs: RootSystem, x) -> bool:
    """Is ``x`` a strictly positive combination of the simple roots?"""
    m = rs._coord_inverse
    if m is None:
        return False
    for row in m:
        s = ZERO
        for a, b in zip(row, x):
            if a and b:
                s = s + a * b
        if s.sign() <= 0:
            return False
    return True


def in_fundamental_chamber(rs: RootSystem, x) -> bool:
    return all(rs.inner(x, a).sign() > 0 for a in rs.simple)


def _coatom_normals(rs: RootSystem):
    """Vectors spanning the lines cut out by rank-(n-1) sets of roots.

    ``x`` lies in a hyperplane spanned by roots iff it is orthogonal to one
    of these.  Cached on the root system.
    """
    cached = rs.__dict__.get("_coatom_normals")
    if cached is not None:
        return cached
    from .arrangement import intersection_lattice, reflection_arrangement

    arr = reflection_arrangement(rs)
    lat = intersection_lattice(arr)
    out = tuple(lat.subspace(f)[0] for f in lat.by_rank(rs.ambient_dim - 1))
    rs.__dict__["_coatom_normals"] = out
    return out


def genericity_certificate(rs: RootSystem) -> str:
    """'exact' when every root-spanned hyperplane is checked, else
    'hyperplanes-only' (reflecting hyperplanes checked, nothing more)."""
    if (
        rs.full_rank
        and len(rs.positive) <= GENERIC_MAX_HYPERPLANES
        and rs.ambient_dim <= GENERIC_MAX_RANK
    ):
        return "exact"
    return "hyperplanes-only"


def is_generic(rs: RootSystem, x) -> bool:
    """True iff ``x`` avoids every reflecting hyperplane and every
    hyperplane spanned by roots."""
    if not rs.full_rank:
        raise ValueError("is_generic needs rank equal to the ambient dimension")
    x = vector(x)
    for k in rs.positive:
        if not rs.inner(x, rs.vectors[k]):
            return False
    if genericity_certificate(rs) != "exact":
        return True
    for u in _coatom_normals(rs):
        if not rs.inner(x, u):
            return False
    return True


@dataclass(frozen=True)
class SamplePoint:
    x: Tuple[Scalar, ...]
    certificate: str
    rejected: int = 0

    def as_strings(self) -> List[str]:
        return [str(c) for c in self.x]


def _draw(rng: random.Random, dim: int, bound: int):
    return tuple(
        Scalar(Fraction(rng.randint(-bound, bound), rng.randint(1, bound))) for _ in range(dim)
    )


def random_generic_point(
    rs: RootSystem, seed=None, coordinate_bound: int = 100, *, rng=None, max_tries: int = 10_000
) -> SamplePoint:
    """Rejection-sample a generic point with bounded rational coordinates."""
    if rng is None:
        rng = random.Random(seed)
    cert = genericity_certificate(rs)
    for tries in range(max_tries):
        x = _draw(rng, rs.ambient_dim, coordinate_bound)
        if is_generic(rs, x):
            return SamplePoint(x, cert, tries)
    raise SamplingError(f"no generic point in {max_tries} draws (bound {coordinate_bound})")


def generic_points(rs: RootSystem, count: int, seed, coordinate_bound: int = 100) -> List[SamplePoint]:
    rng = random.Random(seed)
    return [random_generic_point(rs, rng=rng, coordinate_bound=coordinate_bound) for _ in range(count)]


# the two counting routes


def _x_of(x):
    return x.x if isinstance(x, SamplePoint) else vector(x)


def cone_membership_flags(rs: RootSystem, W: ReflectionGroup, x, elements=None) -> List[bool]:
    """Per element g: is ``g^-1 x`` in the open cone of the simple roots?"""
    x = _x_of(x)
    y = cone_coefficients(rs, x)
    if y is None:
        raise ValueError("counting needs a full-rank root system")
    elements = range(len(W)) if elements is None else elements
    vecs, n, dim = rs.vectors, rs.rank, rs.ambient_dim
    out = []
    for g in elements:
        p = W.perms[W.inverse_index[g]]
        v = [ZERO] * dim
        for j in range(n):
            img = vecs[p[j]]
            yj = y[j]
            v = [a + yj * b if b else a for a, b in zip(v, img)]
        out.append(in_open_cone(rs, v))
    return out


def bounded_flags(rs: RootSystem, W: ReflectionGroup, x, elements=None) -> List[bool]:
    """Per element g: is ``(g w_i, x) > 0`` for every coweight ``w_i``?

    These are the g whose chamber ``g C`` lies on the positive side of x,
    i.e. whose slice by the affine hyperplane normal to x is bounded.
    """
    x = _x_of(x)
    table = [rs.inner(x, v) for v in rs.vectors]
    gi = rs.gram_inverse
    n = rs.rank
    elements = range(len(W)) if elements is None else elements
    out = []
    for g in elements:
        p = W.perms[g]
        ok = True
        for i in range(n):
            s = ZERO
            row = gi[i]
            for k in range(n):
                if row[k]:
                    s = s + row[k] * table[p[k]]
            if s.sign() <= 0:
                ok = False
                break
        out.append(ok)
    return out


def _partitioned(fn, rs, W, x, threads: int) -> List[bool]:
    if threads <= 1:
        return fn(rs, W, x)
    from concurrent.futures import ThreadPoolExecutor

    size = len(W)
    step = -(-size // threads)
    chunks = [range(s, min(s + step, size)) for s in range(0, size, step)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda c: fn(rs, W, x, c), chunks))
    return [f for part in parts for f in part]


def count_containing_cones(rs: RootSystem, W: ReflectionGroup, x, threads: int = 1) -> int:
    """``#{g in W : x in g sigma}``, counted via ``g^-1 x`` in the open cone."""
    return sum(_partitioned(cone_membership_flags, rs, W, x, threads))


def bounded_orbit_count(rs: RootSystem, W: ReflectionGroup, x, threads: int = 1) -> int:
    """``#{g in W : (g y, x) > 0 for all y in the fundamental chamber}``."""
    return sum(_partitioned(bounded_flags, rs, W, x, threads))


def chamber_element(rs: RootSystem, W: ReflectionGroup, x) -> List[int]:
    """Elements g with ``g^-1 x`` in the open fundamental chamber."""
    x = _x_of(x)
    table = [rs.inner(x, v) for v in rs.vectors]
    hits = []
    for g in range(len(W)):
        p = W.perms[g]
        # (g^-1 x, a_j) = (x, g a_j)
        if all(table[p[j]].sign() > 0 for j in range(rs.rank)):
            hits.append(g)
    return hits


def highest_root(rs: RootSystem) -> Tuple[Scalar, ...]:
    """The positive root of greatest height (crystallographic, irreducible)."""
    best, best_h = None, None
    for k in rs.positive:
        h = sum(rs.coeffs[k], ZERO)
        if best_h is None or h > best_h:
            best, best_h = k, h
    ties = [k for k in rs.positive if sum(rs.coeffs[k], ZERO) == best_h]
    if len(ties) != 1:
        raise ValueError("highest root is not unique; is the system irreducible?")
    return rs.vectors[best]
