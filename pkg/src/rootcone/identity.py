"""The affine identity sum over node deletions of an extended Dynkin diagram,
its alcove picture, and the search over one-vertex extensions of H3 and H4.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np

from .coxeter import (
    CRYSTALLOGRAPHIC,
    CoxeterDiagram,
    NotCrystallographicError,
    TypeDecomposition,
    build_diagram,
    classify_finite,
    degrees,
    delete_node,
    diagram_from_edges,
    diagram_from_gram,
    extended_diagram,
    format_diagram,
)
from .exact import ZERO, Scalar, inverse, transpose
from .roots import RootSystem, generic_points, highest_root, metric_inner
from .volume import cone_volume_exact, fraction_str


class PartitionViolation(AssertionError):
    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class DeletionRecord:
    index: int
    decomposition: TypeDecomposition
    degrees: Tuple[int, ...]
    term: Optional[Fraction]

    def to_json(self) -> dict:
        return {
            "node": self.index,
            "type": self.decomposition.name,
            "degrees": list(self.degrees),
            "term": None if self.term is None else fraction_str(self.term),
        }


@dataclass(frozen=True)
class IdentityReport:
    """Terms ``prod_j (d_j - 1)/d_j`` for each node deletion and their sum.

    ``total`` is None when some deletion is not of finite type; then
    ``bad_deletion`` names the first such node.
    """

    diagram: CoxeterDiagram
    records: Tuple[DeletionRecord, ...]
    total: Optional[Fraction]
    name: str = ""
    bad_deletion: Optional[int] = None

    @property
    def admissible(self) -> bool:
        return self.total is not None

    @property
    def terms(self) -> List[Fraction]:
        return [r.term for r in self.records]

    def to_json(self) -> dict:
        return {
            "type": self.name,
            "diagram": format_diagram(self.diagram),
            "admissible": self.admissible,
            "per_deletion": [r.to_json() for r in self.records],
            "sum": None if self.total is None else fraction_str(self.total),
        }


def formal_identity_sum(d: CoxeterDiagram, name: str = "") -> IdentityReport:
    """Sum over vertex deletions of the volume-formula value of the rest."""
    records = []
    bad = None
    for i in range(d.n):
        sub = delete_node(d, i)
        td = classify_finite(sub)
        if not td.finite:
            records.append(DeletionRecord(i, td, (), None))
            if bad is None:
                bad = i
            continue
        degs = degrees(td)
        records.append(DeletionRecord(i, td, degs, cone_volume_exact(degs)))
    total = None if bad is not None else sum((r.term for r in records), Fraction(0))
    return IdentityReport(d, tuple(records), total, name, bad)


def curious_identity(family: str, rank: int) -> IdentityReport:
    """The identity sum for an irreducible crystallographic type."""
    ext = extended_diagram(family, rank)
    return formal_identity_sum(ext.full, f"{family.upper()}{rank}")


ALL_CRYSTALLOGRAPHIC = (
    [("A", n) for n in range(1, 9)]
    + [("B", n) for n in range(2, 6)]
    + [("C", n) for n in range(2, 6)]
    + [("D", n) for n in range(4, 7)]
    + [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]
)


# alcove geometry


def affine_simple_roots(rs: RootSystem) -> Tuple[Tuple[Scalar, ...], ...]:
    """``(a_0, a_1, ..., a_n)`` with ``a_0`` the negated highest root."""
    theta = highest_root(rs)
    return (tuple(-c for c in theta),) + tuple(rs.simple)


def vertex_cone_bases(rs: RootSystem):
    """For each node i, the vectors spanning the normal cone at vertex ``v_i``."""
    aff = affine_simple_roots(rs)
    return [tuple(a for j, a in enumerate(aff) if j != i) for i in range(len(aff))]


def _open_cone_test(basis, x) -> Optional[bool]:
    inv = inverse(transpose(basis))
    if inv is None:
        return None
    for row in inv:
        s = ZERO
        for a, b in zip(row, x):
            if a and b:
                s = s + a * b
        if s.sign() <= 0:
            return False
    return True


@dataclass
class AlcoveReport:
    type: str
    trials: int
    seed: int
    counts: List[int] = field(default_factory=list)
    cone_hits: List[int] = field(default_factory=list)  # points per vertex cone
    status: str = "PASS"


def alcove_partition_check(rs: RootSystem, trials: int, seed: int) -> AlcoveReport:
    """Each generic point lies in exactly one vertex normal cone of the
    fundamental alcove (cones spanned by all but one affine simple root)."""
    if not rs.full_rank:
        raise ValueError("alcove check needs rank equal to the ambient dimension")
    cones = vertex_cone_bases(rs)
    report = AlcoveReport(rs.name, trials, seed, cone_hits=[0] * len(cones))
    for k, pt in enumerate(generic_points(rs, trials, seed)):
        neg = tuple(-c for c in pt.x)
        hits = [i for i, b in enumerate(cones) if _open_cone_test(b, neg)]
        report.counts.append(len(hits))
        for i in hits:
            report.cone_hits[i] += 1
        if len(hits) != 1:
            report.status = "FAIL"
            raise PartitionViolation(
                f"{rs.name}: point in {len(hits)} vertex cones",
                {"index": k, "x": pt.as_strings(), "cones": hits},
            )
    return report


def vertex_cone_diagrams(rs: RootSystem) -> List[CoxeterDiagram]:
    """Coxeter diagrams read off the Gram matrices of the vertex cones."""
    out = []
    for basis in vertex_cone_bases(rs):
        gram = tuple(tuple(metric_inner(a, b, rs.metric) for b in basis) for a in basis)
        out.append(diagram_from_gram(gram))
    return out


# extensions of H3 / H4


@dataclass(frozen=True)
class ExtensionCandidate:
    base: str
    labels: Tuple[int, ...]
    diagram: CoxeterDiagram
    admissible: bool
    finite_total: bool
    formal: Optional[IdentityReport]

    @property
    def sum(self) -> Optional[Fraction]:
        return None if self.formal is None else self.formal.total

    @property
    def label3_path_extension(self) -> bool:
        """One edge, label 3, attached to an end of the base path."""
        edges = [(i, m) for i, m in enumerate(self.labels) if m != 2]
        return len(edges) == 1 and edges[0][1] == 3 and edges[0][0] in (0, len(self.labels) - 1)

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "labels": list(self.labels),
            "diagram": format_diagram(self.diagram),
            "admissible": self.admissible,
            "finite_total": self.finite_total,
            "label3_path_extension": self.label3_path_extension,
            "per_deletion": [] if self.formal is None else [r.to_json() for r in self.formal.records],
            "sum": None if self.sum is None else fraction_str(self.sum),
        }


def extend(base: CoxeterDiagram, labels: Sequence[int]) -> CoxeterDiagram:
    """Add a vertex joined to base node ``i`` with label ``labels[i]``."""
    n = base.n
    edges = list(base.edges()) + [(i, n, m) for i, m in enumerate(labels) if m != 2]
    return diagram_from_edges(n + 1, edges)


def _base_diagram(base: str) -> CoxeterDiagram:
    base = base.upper()
    if base not in ("H3", "H4"):
        raise ValueError("base must be H3 or H4")
    return build_diagram("H", int(base[1]))


def enumerate_extensions(base: str, max_label: int = 5) -> List[ExtensionCandidate]:
    """Every label vector in ``{2..max_label}^rank``, lexicographic order."""
    d0 = _base_diagram(base)
    out = []
    for labels in itertools.product(range(2, max_label + 1), repeat=d0.n):
        d = extend(d0, labels)
        deletions = [classify_finite(delete_node(d, i)) for i in range(d.n)]
        admissible = all(td.finite for td in deletions)
        finite_total = classify_finite(d).finite
        formal = formal_identity_sum(d, base.upper()) if admissible else None
        out.append(ExtensionCandidate(base.upper(), labels, d, admissible, finite_total, formal))
    return out


def search_h_extensions(
    base: str, require_nonfinite_total: bool = True, max_label: int = 5
) -> List[ExtensionCandidate]:
    """Admissible one-vertex extensions of H3 or H4 with their formal sums.

    A label of 6 or more on the new vertex's edge to ``u`` forms, together
    with ``u``'s neighbour in the base path, a rank-3 subdiagram [m, k] with
    k >= 3, which is infinite; so ``max_label = 5`` loses nothing.
    """
    keep = []
    for c in enumerate_extensions(base, max_label):
        if not c.admissible:
            continue
        if require_nonfinite_total and c.finite_total:
            continue
        keep.append(c)
    return keep


def _positive_definite(m: np.ndarray) -> bool:
    cos = np.where(m == 1, -1.0, np.cos(np.pi / np.where(m == 0, 1, m)))
    b = -cos
    np.fill_diagonal(b, 1.0)
    return bool(np.linalg.eigvalsh(b).min() > 1e-9)


def brute_force_admissible(
    base: str, require_nonfinite_total: bool = True, max_label: int = 7
) -> Set[Tuple[int, ...]]:
    """Independent admissibility pass: a Coxeter diagram is of finite type
    iff its cosine form ``-cos(pi/m_ij)`` is positive definite."""
    d0 = _base_diagram(base)
    n = d0.n
    core = np.array(d0.m, dtype=float)
    found = set()
    for labels in itertools.product(range(2, max_label + 1), repeat=n):
        full = np.ones((n + 1, n + 1))
        full[:n, :n] = core
        full[n, :n] = full[:n, n] = labels
        ok = True
        for drop in range(n + 1):
            keep = [k for k in range(n + 1) if k != drop]
            if not _positive_definite(full[np.ix_(keep, keep)]):
                ok = False
                break
        if not ok:
            continue
        if require_nonfinite_total and _positive_definite(full):
            continue
        found.add(tuple(labels))
    return found


def check_not_crystallographic(family: str) -> None:
    if family.upper() not in CRYSTALLOGRAPHIC:
        raise NotCrystallographicError(
            f"{family} is not crystallographic; the identity needs an extended Dynkin diagram"
        )
