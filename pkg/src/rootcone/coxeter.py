"""Coxeter diagrams: the finite-type catalog, classification and degrees.

Diagrams are stored as Coxeter matrices with 0-based node indices.  The
label 0 (``INF``) encodes an edge marked infinity.  Node numbering of the
catalog follows Bourbaki, except that G2 puts the long root first so the
extended G2 diagram reads ``0 -3- 1 -6- 2``.

Text format (shared with the CLI): ``n; i j m; i j m; ...`` with 1-based
node indices, ``m`` an integer >= 3 or ``inf``; unlisted pairs get label 2.
Example: ``4; 1 2 5; 2 3 3; 3 4 3`` is H4.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import PHI, ZERO, Scalar, scalar

INF = 0

FAMILIES = ("A", "B", "C", "D", "E", "F", "G", "H", "I2")
CRYSTALLOGRAPHIC = ("A", "B", "C", "D", "E", "F", "G")


class DiagramError(ValueError):
    """Invalid family/rank combination or malformed diagram."""


class NotFiniteError(ValueError):
    """The diagram is not of finite type."""


class UnsupportedLabelError(ValueError):
    """A label whose cosine lies outside Q(sqrt 5) with rational scaling."""


class NotCrystallographicError(ValueError):
    pass


@dataclass(frozen=True)
class CoxeterDiagram:
    """Symmetric Coxeter matrix; ``lengths`` holds optional squared root lengths."""

    m: Tuple[Tuple[int, ...], ...]
    lengths: Optional[Tuple[Fraction, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.m)
        for i in range(n):
            if len(self.m[i]) != n:
                raise DiagramError("Coxeter matrix must be square")
            if self.m[i][i] != 1:
                raise DiagramError(f"diagonal entry m[{i}][{i}] must be 1")
            for j in range(n):
                if i != j:
                    mij = self.m[i][j]
                    if mij != self.m[j][i]:
                        raise DiagramError("Coxeter matrix must be symmetric")
                    if mij != INF and mij < 2:
                        raise DiagramError(f"label m[{i}][{j}] = {mij} < 2")
        if self.lengths is not None and len(self.lengths) != n:
            raise DiagramError("lengths must have one entry per node")

    @property
    def n(self) -> int:
        return len(self.m)

    def edges(self) -> List[Tuple[int, int, int]]:
        return [
            (i, j, self.m[i][j])
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if self.m[i][j] != 2
        ]

    def neighbors(self, i: int) -> List[int]:
        return [j for j in range(self.n) if j != i and self.m[i][j] != 2]

    def induced(self, nodes: Sequence[int]) -> "CoxeterDiagram":
        m = tuple(tuple(self.m[i][j] for j in nodes) for i in nodes)
        lengths = None if self.lengths is None else tuple(self.lengths[i] for i in nodes)
        return CoxeterDiagram(m, lengths)

    def components(self) -> List[List[int]]:
        seen = set()
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            stack, comp = [s], []
            seen.add(s)
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.neighbors(v):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def permuted(self, perm: Sequence[int]) -> "CoxeterDiagram":
        """Relabel so new node ``k`` is old node ``perm[k]``."""
        return self.induced(perm)

    def __str__(self):
        return format_diagram(self)


def diagram_from_edges(n: int, edges, lengths=None) -> CoxeterDiagram:
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i, j, label in edges:
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise DiagramError(f"bad edge ({i}, {j})")
        m[i][j] = m[j][i] = label
    lengths = None if lengths is None else tuple(Fraction(x) for x in lengths)
    return CoxeterDiagram(tuple(map(tuple, m)), lengths)


def parse_diagram(text: str) -> CoxeterDiagram:
    """Parse ``"n; i j m; ..."`` (1-based nodes, ``m`` int or ``inf``)."""
    parts = [p.strip() for p in text.replace("\n", ";").split(";") if p.strip()]
    if not parts:
        raise DiagramError("empty diagram text")
    try:
        n = int(parts[0])
    except ValueError:
        raise DiagramError(f"first field must be the node count, got {parts[0]!r}") from None
    edges = []
    for p in parts[1:]:
        fields = p.split()
        if len(fields) != 3:
            raise DiagramError(f"edge line must be 'i j m', got {p!r}")
        i, j = int(fields[0]) - 1, int(fields[1]) - 1
        label = INF if fields[2].lower() in ("inf", "oo", "∞") else int(fields[2])
        if label != INF and label < 2:
            raise DiagramError(f"label must be >= 2 or inf, got {fields[2]}")
        edges.append((i, j, label))
    return diagram_from_edges(n, edges)


def format_diagram(d: CoxeterDiagram) -> str:
    items = [str(d.n)]
    for i, j, label in d.edges():
        items.append(f"{i + 1} {j + 1} {'inf' if label == INF else label}")
    return "; ".join(items)


# catalog


def _path(n: int, labels: Sequence[int]) -> List[Tuple[int, int, int]]:
    return [(i, i + 1, labels[i]) for i in range(n - 1)]


def build_diagram(family: str, rank: int, dihedral_label: Optional[int] = None) -> CoxeterDiagram:
    """Coxeter diagram of a finite irreducible type, Bourbaki numbering."""
    family = family.upper()
    n = rank
    if family == "A" and n >= 1:
        return diagram_from_edges(n, _path(n, [3] * (n - 1)), [1] * n)
    if family == "B" and n >= 2:
        return diagram_from_edges(n, _path(n, [3] * (n - 2) + [4]), [2] * (n - 1) + [1])
    if family == "C" and n >= 2:
        return diagram_from_edges(n, _path(n, [3] * (n - 2) + [4]), [1] * (n - 1) + [2])
    if family == "D" and n >= 4:
        edges = _path(n - 1, [3] * (n - 2)) + [(n - 3, n - 1, 3)]
        return diagram_from_edges(n, edges, [1] * n)
    if family == "E" and n in (6, 7, 8):
        edges = [(0, 2, 3), (1, 3, 3)] + [(k, k + 1, 3) for k in range(2, n - 1)]
        return diagram_from_edges(n, edges, [1] * n)
    if family == "F" and n == 4:
        return diagram_from_edges(4, _path(4, [3, 4, 3]), [2, 2, 1, 1])
    if family == "G" and n == 2:
        return diagram_from_edges(2, [(0, 1, 6)], [3, 1])
    if family == "H" and n in (3, 4):
        return diagram_from_edges(n, _path(n, [5] + [3] * (n - 2)), [1] * n)
    if family == "I2" and n == 2:
        if dihedral_label is None or dihedral_label < 3:
            raise DiagramError("I2 needs a dihedral label >= 3")
        return diagram_from_edges(2, [(0, 1, dihedral_label)])
    raise DiagramError(f"no finite type {family}{rank}")


def _extended_edges(family: str, n: int) -> List[Tuple[int, int, int]]:
    """Edges touching the affine node 0 (base nodes shifted to 1..n)."""
    if family == "A":
        return [(0, 1, INF)] if n == 1 else [(0, 1, 3), (0, n, 3)]
    if family == "B":
        return [(0, 2, 3 if n >= 3 else 4)]
    if family == "C":
        return [(0, 1, 4)]
    if family == "D":
        return [(0, 2, 3)]
    if family == "E":
        return {6: [(0, 2, 3)], 7: [(0, 1, 3)], 8: [(0, 8, 3)]}[n]
    if family == "F":
        return [(0, 1, 3)]
    if family == "G":
        return [(0, 1, 3)]
    raise NotCrystallographicError(f"{family}{n} has no extended Dynkin diagram")


@dataclass(frozen=True)
class ExtendedDiagram:
    family: str
    rank: int
    base: CoxeterDiagram
    full: CoxeterDiagram  # node 0 is the affine node, base node k is node k+1

    affine_node = 0


def extended_diagram(family: str, rank: int) -> ExtendedDiagram:
    family = family.upper()
    if family not in CRYSTALLOGRAPHIC:
        raise NotCrystallographicError(f"{family}{rank} is not crystallographic")
    base = build_diagram(family, rank)
    n = rank
    edges = [(i + 1, j + 1, label) for i, j, label in base.edges()]
    edges += _extended_edges(family, n)
    long_len = max(base.lengths)
    full = diagram_from_edges(n + 1, edges, (long_len,) + base.lengths)
    return ExtendedDiagram(family, rank, base, full)


def delete_node(e, i: int) -> CoxeterDiagram:
    """Induced diagram on all nodes except ``i``."""
    d = e.full if isinstance(e, ExtendedDiagram) else e
    if not 0 <= i < d.n:
        raise IndexError(f"node {i} out of range 0..{d.n - 1}")
    return d.induced([k for k in range(d.n) if k != i])


# classification


@dataclass(frozen=True)
class FiniteType:
    family: str
    rank: int
    label: Optional[int] = None

    @property
    def name(self) -> str:
        if self.family == "I2":
            return f"I2({self.label})"
        return f"{self.family}{self.rank}"

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class TypeDecomposition:
    components: Tuple[FiniteType, ...]
    finite: bool
    reason: str = ""

    @property
    def name(self) -> str:
        if not self.finite:
            return "not-finite"
        if not self.components:
            return "empty"
        return "x".join(c.name for c in self.components)

    def __str__(self):
        return self.name


def _tree_code(d: CoxeterDiagram, nodes: Sequence[int]) -> Optional[str]:
    """Canonical string of a labelled tree on ``nodes``; None if not a tree."""
    nodeset = set(nodes)
    adj = {v: [w for w in d.neighbors(v) if w in nodeset] for v in nodes}
    n_edges = sum(len(a) for a in adj.values()) // 2
    if n_edges != len(nodes) - 1:
        return None

    def enc(v, parent):
        kids = sorted(f"{d.m[v][w]}{enc(w, v)}" for w in adj[v] if w != parent)
        return "(" + ",".join(kids) + ")"

    return min(enc(r, None) for r in nodes)


_CATALOG_CODES: Dict[Tuple[int, str], FiniteType] = {}


def _catalog_for_rank(n: int) -> None:
    if (n, "") in _CATALOG_CODES:
        return
    _CATALOG_CODES[(n, "")] = FiniteType("", 0)
    candidates = [("A", n), ("B", n), ("D", n), ("E", n), ("F", n), ("H", n)]
    if n == 2:
        candidates = [("A", 2), ("B", 2), ("G", 2)]
    for fam, r in candidates:
        try:
            d = build_diagram(fam, r)
        except DiagramError:
            continue
        _CATALOG_CODES[(n, _tree_code(d, range(n)))] = FiniteType(fam, r)


def _classify_component(d: CoxeterDiagram, nodes: Sequence[int]) -> Optional[FiniteType]:
    n = len(nodes)
    labels = [d.m[i][j] for i in nodes for j in nodes if i < j and d.m[i][j] != 2]
    if INF in labels:
        return None
    if n == 1:
        return FiniteType("A", 1)
    if n == 2:
        m = labels[0]
        named = {3: "A", 4: "B", 6: "G"}
        return FiniteType(named[m], 2) if m in named else FiniteType("I2", 2, m)
    code = _tree_code(d, nodes)
    if code is None:
        return None
    _catalog_for_rank(n)
    return _CATALOG_CODES.get((n, code))


def _sort_key(t: FiniteType):
    return (-t.rank, FAMILIES.index(t.family), t.label or 0)


def classify_finite(d: CoxeterDiagram) -> TypeDecomposition:
    """Decompose into irreducible finite types, or report not-finite."""
    comps = []
    for nodes in d.components():
        t = _classify_component(d, nodes)
        if t is None:
            sub = "; ".join(str(k + 1) for k in nodes)
            return TypeDecomposition((), False, f"component on nodes {sub} is not of finite type")
        comps.append(t)
    return TypeDecomposition(tuple(sorted(comps, key=_sort_key)), True)


def is_finite(d: CoxeterDiagram) -> bool:
    return classify_finite(d).finite


def brute_force_canonical(d: CoxeterDiagram) -> Tuple[Tuple[int, ...], ...]:
    """Lexicographically least Coxeter matrix over all node permutations."""
    best = None
    for perm in itertools.permutations(range(d.n)):
        key = tuple(tuple(d.m[perm[i]][perm[j]] for j in range(d.n)) for i in range(d.n))
        if best is None or key < best:
            best = key
    return best


# degrees


def type_degrees(t: FiniteType) -> List[int]:
    n = t.rank
    fam = t.family
    if fam == "A":
        return list(range(2, n + 2))
    if fam in ("B", "C"):
        return list(range(2, 2 * n + 1, 2))
    if fam == "D":
        return sorted(list(range(2, 2 * n - 1, 2)) + [n])
    if fam == "E":
        return {
            6: [2, 5, 6, 8, 9, 12],
            7: [2, 6, 8, 10, 12, 14, 18],
            8: [2, 8, 12, 14, 18, 20, 24, 30],
        }[n]
    if fam == "F":
        return [2, 6, 8, 12]
    if fam == "G":
        return [2, 6]
    if fam == "H":
        return {3: [2, 6, 10], 4: [2, 12, 20, 30]}[n]
    if fam == "I2":
        return [2, t.label]
    raise DiagramError(f"unknown type {t}")


def degrees(d) -> Tuple[int, ...]:
    """Sorted degree multiset of a finite-type diagram (union over components)."""
    td = d if isinstance(d, TypeDecomposition) else classify_finite(d)
    if not td.finite:
        raise NotFiniteError(td.reason or "diagram is not of finite type")
    out = []
    for t in td.components:
        out.extend(type_degrees(t))
    return tuple(sorted(out))


def group_order(degs: Sequence[int]) -> int:
    out = 1
    for x in degs:
        out *= x
    return out


# realization

# cos^2(pi/m) for the labels with a realization over Q(sqrt 5)
_COS2 = {
    2: Scalar(0),
    3: Scalar(Fraction(1, 4)),
    4: Scalar(Fraction(1, 2)),
    5: Scalar(Fraction(3, 8), Fraction(1, 8)),
    6: Scalar(Fraction(3, 4)),
}
_LENGTH_RATIO = {3: 1, 5: 1, 4: 2, 6: 3}


def _default_lengths(d: CoxeterDiagram) -> Tuple[Fraction, ...]:
    lengths: List[Optional[Fraction]] = [None] * d.n
    for comp in d.components():
        lengths[comp[0]] = Fraction(1)
        stack = [comp[0]]
        while stack:
            v = stack.pop()
            for w in d.neighbors(v):
                if lengths[w] is None:
                    lengths[w] = lengths[v] * _LENGTH_RATIO.get(d.m[v][w], 1)
                    stack.append(w)
        low = min(lengths[k] for k in comp)
        for k in comp:
            lengths[k] /= low
    return tuple(lengths)


def gram_matrix(d: CoxeterDiagram):
    """Exact Gram matrix ``-cos(pi/m_ij) |a_i| |a_j|`` of the simple roots.

    Squared lengths come from ``d.lengths`` or are chosen so every entry is
    in Q(sqrt 5): labels 3 and 5 join equal lengths, 4 and 6 join lengths in
    ratio 2 and 3.
    """
    for i, j, label in d.edges():
        if label not in _COS2:
            raise UnsupportedLabelError(f"label {'inf' if label == INF else label} has no realization over Q(sqrt5)")
    lengths = d.lengths if d.lengths is not None else _default_lengths(d)
    g = [[ZERO] * d.n for _ in range(d.n)]
    for i in range(d.n):
        g[i][i] = scalar(lengths[i])
    for i, j, label in d.edges():
        li, lj = lengths[i], lengths[j]
        lo, hi = min(li, lj), max(li, lj)
        if hi != lo * _LENGTH_RATIO[label]:
            raise UnsupportedLabelError(
                f"lengths {li}, {lj} are inconsistent with label {label} on edge {i + 1}-{j + 1}"
            )
        if label == 3:
            v = -scalar(lo) / 2
        elif label == 5:
            v = -(PHI * scalar(lo)) / 2
        elif label == 4:
            v = -scalar(lo)
        else:
            v = -scalar(lo) * Fraction(3, 2)
        g[i][j] = g[j][i] = v
    return tuple(tuple(r) for r in g)


@dataclass(frozen=True)
class Realization:
    """Simple roots as rows of ``simple`` in a space with inner product
    ``(u, v) = sum metric[k] u[k] v[k]``."""

    simple: Tuple[Tuple[Scalar, ...], ...]
    metric: Tuple[Scalar, ...]


def ldl_realization(gram) -> Realization:
    """Rows of the unit lower-triangular factor of ``gram = L D L^T``.

    Avoids square roots, so the coordinates stay in the field of ``gram``.
    """
    gram = [[scalar(c) for c in row] for row in gram]
    n = len(gram)
    low = [[ZERO] * n for _ in range(n)]
    diag = [ZERO] * n
    for k in range(n):
        s = gram[k][k]
        for j in range(k):
            if low[k][j]:
                s = s - low[k][j] * low[k][j] * diag[j]
        if s.sign() <= 0:
            raise NotFiniteError("Gram matrix is not positive definite")
        diag[k] = s
        low[k][k] = Scalar(1)
        for i in range(k + 1, n):
            t = gram[i][k]
            for j in range(k):
                if low[i][j] and low[k][j]:
                    t = t - low[i][j] * low[k][j] * diag[j]
            low[i][k] = t / s
    return Realization(tuple(tuple(r) for r in low), tuple(diag))


def simple_roots(d: CoxeterDiagram) -> Realization:
    """Realize the simple roots of a finite-type diagram over Q(sqrt 5)."""
    td = classify_finite(d)
    if not td.finite:
        raise NotFiniteError(td.reason)
    return ldl_realization(gram_matrix(d))


def diagram_from_gram(gram) -> CoxeterDiagram:
    """Recover Coxeter labels (and squared lengths) from a Gram matrix."""
    gram = [[scalar(c) for c in row] for row in gram]
    n = len(gram)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            gij = gram[i][j]
            if not gij:
                continue
            if gij.sign() > 0:
                raise DiagramError(f"obtuse-angle condition fails at ({i + 1}, {j + 1})")
            c2 = gij * gij / (gram[i][i] * gram[j][j])
            label = next((m for m, v in _COS2.items() if v == c2), None)
            if label is None:
                raise UnsupportedLabelError(f"angle between nodes {i + 1}, {j + 1} is not pi/m for m <= 6")
            edges.append((i, j, label))
    lengths = None
    if all(gram[k][k].is_rational for k in range(n)):
        lengths = [gram[k][k].to_fraction() for k in range(n)]
    return diagram_from_edges(n, edges, lengths)
