"""Exact arithmetic in Q(sqrt 5) and small dense linear algebra over it.

Vectors are tuples of :class:`Scalar`; matrices are tuples of row tuples.
Everything here is immutable and side-effect free.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Iterable, Optional, Sequence, Tuple

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "PHI",
    "SQRT5",
    "DimensionError",
    "scalar",
    "vector",
    "matrix",
    "inner_product",
    "mat_vec",
    "mat_mul",
    "transpose",
    "identity",
    "determinant",
    "rank",
    "rref",
    "solve_linear",
    "inverse",
    "nullspace",
]

_SQRT5_FLOAT = math.sqrt(5.0)


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


def _sign_p_q(p: int, q: int) -> int:
    # sign of p + q*sqrt(5) using integers only
    if q == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return (q > 0) - (q < 0)
    if (p > 0) == (q > 0):
        return 1 if p > 0 else -1
    if p * p > 5 * q * q:
        return 1 if p > 0 else -1
    return 1 if q > 0 else -1


@total_ordering
class Scalar:
    """An element ``a + b*sqrt(5)`` with rational ``a`` and ``b``.

    Stored internally as integers ``(p, q, d)`` with value ``(p + q*sqrt5)/d``,
    ``d > 0`` and ``gcd(p, q, d) == 1``, so equal values have equal
    representations.
    """

    __slots__ = ("_p", "_q", "_d")

    def __init__(self, a=0, b=0):
        if isinstance(a, Scalar):
            if b:
                raise TypeError("cannot combine a Scalar with a sqrt5 part")
            self._p, self._q, self._d = a._p, a._q, a._d
            return
        if isinstance(a, str):
            a = Fraction(a)
        if isinstance(b, str):
            b = Fraction(b)
        if not isinstance(a, Rational) or not isinstance(b, Rational):
            raise TypeError(f"expected rationals, got {type(a).__name__}, {type(b).__name__}")
        fa, fb = Fraction(a), Fraction(b)
        d = fa.denominator * fb.denominator // math.gcd(fa.denominator, fb.denominator)
        p = fa.numerator * (d // fa.denominator)
        q = fb.numerator * (d // fb.denominator)
        self._set(p, q, d)

    def _set(self, p: int, q: int, d: int) -> None:
        if d < 0:
            p, q, d = -p, -q, -d
        g = math.gcd(p, q, d)
        if g > 1:
            p, q, d = p // g, q // g, d // g
        self._p, self._q, self._d = p, q, d

    @classmethod
    def _raw(cls, p: int, q: int, d: int) -> "Scalar":
        s = object.__new__(cls)
        s._set(p, q, d)
        return s

    @property
    def a(self) -> Fraction:
        """Rational part."""
        return Fraction(self._p, self._d)

    @property
    def b(self) -> Fraction:
        """Coefficient of sqrt(5)."""
        return Fraction(self._q, self._d)

    @property
    def is_rational(self) -> bool:
        return self._q == 0

    def integer_form(self) -> Tuple[int, int, int]:
        """``(p, q, d)`` with value ``(p + q*sqrt5)/d`` in lowest terms."""
        return self._p, self._q, self._d

    def to_fraction(self) -> Fraction:
        if self._q:
            raise ValueError(f"{self} is irrational")
        return Fraction(self._p, self._d)

    def sign(self) -> int:
        return _sign_p_q(self._p, self._q)

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self._p, -self._q, self._d)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 5 b^2``."""
        return Fraction(self._p * self._p - 5 * self._q * self._q, self._d * self._d)

    # arithmetic

    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self._d == o._d:
            return Scalar._raw(self._p + o._p, self._q + o._q, self._d)
        return Scalar._raw(
            self._p * o._d + o._p * self._d,
            self._q * o._d + o._q * self._d,
            self._d * o._d,
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self._p, -self._q, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        p1, q1, p2, q2 = self._p, self._q, o._p, o._q
        if q1 == 0 and q2 == 0:
            return Scalar._raw(p1 * p2, 0, self._d * o._d)
        return Scalar._raw(p1 * p2 + 5 * q1 * q2, p1 * q2 + q1 * p2, self._d * o._d)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        n = self._p * self._p - 5 * self._q * self._q
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return Scalar._raw(self._d * self._p, -self._d * self._q, n)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # comparison

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._p == o._p and self._q == o._q and self._d == o._d

    def __lt__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return (self - o).sign() < 0

    def __hash__(self):
        if self._q == 0:
            return hash(Fraction(self._p, self._d))
        return hash((self._p, self._q, self._d))

    def __bool__(self):
        return self._p != 0 or self._q != 0

    def __float__(self):
        if self._q == 0:
            return float(Fraction(self._p, self._d))
        return float(Fraction(self._p, self._d)) + float(Fraction(self._q, self._d)) * _SQRT5_FLOAT

    def __repr__(self):
        if self._q == 0:
            return f"Scalar({str(self.a)!r})"
        return f"Scalar({str(self.a)!r}, {str(self.b)!r})"

    def __str__(self):
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        rad = "√5" if abs(b) == 1 else f"{abs(b)}√5"
        if a == 0:
            return ("-" if b < 0 else "") + rad
        return f"{a}{'-' if b < 0 else '+'}{rad}"


def _coerce(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar._raw(x, 0, 1)
    if isinstance(x, Rational):
        return Scalar._raw(x.numerator, 0, x.denominator)
    return NotImplemented


ZERO = Scalar(0)
ONE = Scalar(1)
SQRT5 = Scalar(0, 1)
PHI = Scalar(Fraction(1, 2), Fraction(1, 2))


def scalar(x) -> Scalar:
    """Coerce an int, Fraction, string or Scalar into a Scalar."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return Scalar(Fraction(x))
    s = _coerce(x)
    if s is NotImplemented:
        raise TypeError(f"cannot make a Scalar from {x!r}")
    return s


def vector(xs: Iterable) -> Tuple[Scalar, ...]:
    return tuple(scalar(x) for x in xs)


def matrix(rows: Iterable[Iterable]) -> Tuple[Tuple[Scalar, ...], ...]:
    return tuple(vector(r) for r in rows)


def inner_product(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    """Euclidean pairing ``sum u_i v_i``."""
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")
    total = ZERO
    for a, b in zip(u, v):
        if a and b:
            total = total + a * b
    return total


def transpose(m):
    return tuple(zip(*m)) if m else ()


def identity(n: int):
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def mat_vec(m, v):
    return tuple(inner_product(row, v) for row in m)


def mat_mul(a, b):
    if a and len(a[0]) != len(b):
        raise DimensionError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x?")
    cols = transpose(b)
    return tuple(tuple(inner_product(row, c) for c in cols) for row in a)


def _bareiss(rows):
    """Fraction-free forward elimination in place; returns (rank, sign, rows)."""
    m = [list(r) for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    prev = ONE
    sign = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        pv = m[r][c]
        for i in range(r + 1, n_rows):
            f = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, n_cols):
                row_i[j] = (pv * row_i[j] - f * row_r[j]) / prev
            row_i[c] = ZERO
        prev = pv
        r += 1
    return r, sign, m


def rank(m) -> int:
    """Exact rank via fraction-free (Bareiss) elimination."""
    if not m or not m[0]:
        return 0
    return _bareiss(m)[0]


def determinant(m) -> Scalar:
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    r, sign, red = _bareiss(m)
    if r < n:
        return ZERO
    return red[n - 1][n - 1] if sign > 0 else -red[n - 1][n - 1]


def solve_linear(m, b) -> Optional[Tuple[Scalar, ...]]:
    """Solve ``m x = b`` exactly; ``None`` when ``m`` is singular."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionError("solve_linear needs a square matrix")
    if len(b) != n:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {n}")
    aug = [tuple(row) + (scalar(bi),) for row, bi in zip(m, b)]
    r, _, red = _bareiss(aug)
    if any(not red[i][i] for i in range(min(r, n))) or r < n:
        return None
    x = [ZERO] * n
    for i in range(n - 1, -1, -1):
        s = red[i][n]
        for j in range(i + 1, n):
            if red[i][j]:
                s = s - red[i][j] * x[j]
        x[i] = s / red[i][i]
    return tuple(x)


def rref(m) -> Tuple[Tuple[Tuple[Scalar, ...], ...], Tuple[int, ...]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns.

    The result depends only on the row space, so it serves as a canonical
    key for subspaces.
    """
    rows = [list(r) for r in m]
    n_cols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def inverse(m):
    n = len(m)
    cols = []
    for k in range(n):
        e = tuple(ONE if i == k else ZERO for i in range(n))
        x = solve_linear(m, e)
        if x is None:
            return None
        cols.append(x)
    return transpose(cols)


def nullspace(m, n_cols: Optional[int] = None):
    """Basis of ``{x : m x = 0}`` (rows of the result)."""
    if n_cols is None:
        n_cols = len(m[0])
    if not m:
        return identity(n_cols)
    red, pivots = rref(m)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * n_cols
        x[f] = ONE
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return tuple(basis)
