"""Exact integer and rational linear algebra for lattice computations.

Everything works over arbitrary-precision integers and ``fractions.Fraction``;
no floating point enters any computation. The only float in the module is the
``INFINITE_INDEX`` sentinel returned by :func:`lattice_index` for
rank-deficient generating sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DimensionError,
    InvalidWeightError,
    InvariantViolation,
    SingularMatrixError,
)

IntVector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]

#: Distinguished value returned by :func:`lattice_index` when the given
#: vectors do not span the ambient space (deliberately not 0, which is never
#: a lattice index and would be too easy to conflate with index 1 after
#: arithmetic slips).
INFINITE_INDEX = float("inf")


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``a*x + b*y = g``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


@dataclass(frozen=True)
class IntMatrix:
    """Immutable arbitrary-precision integer matrix, row-major."""

    rows: int
    cols: int
    entries: tuple[IntVector, ...]

    def __post_init__(self) -> None:
        if self.rows != len(self.entries):
            raise DimensionError("row count does not match entries")
        if any(len(r) != self.cols for r in self.entries):
            raise DimensionError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise DimensionError("matrix must be nonempty")
        return cls(len(data), len(data[0]), data)

    @classmethod
    def from_columns(cls, cols: Iterable[Sequence[int]]) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in col) for col in cols)
        if not data or not data[0]:
            raise DimensionError("matrix must be nonempty")
        return cls.from_rows(tuple(zip(*data)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> IntVector:
        return self.entries[i]

    def column(self, j: int) -> IntVector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

    def mat_vec(self, v: Sequence[int]) -> IntVector:
        if len(v) != self.cols:
            raise DimensionError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError("inner dimensions do not match")
        cols = [other.column(j) for j in range(other.cols)]
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.entries
        )
        return IntMatrix(self.rows, other.cols, data)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(-x for x in r) for r in self.entries))


def determinant(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination.

    Intermediate values stay integral (each division below is exact), which
    keeps the entries polynomially bounded instead of exploding the way naive
    integer cross-multiplication would.
    """
    if not m.is_square:
        raise DimensionError("determinant requires a square matrix")
    n = m.rows
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i = a[i]
            row_k = a[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def solve_rational(a: IntMatrix, b: Sequence[int]) -> RationalVector:
    """Solve ``a @ x = b`` exactly over the rationals.

    Raises ``SingularMatrixError`` when ``det(a) = 0``.
    """
    if not a.is_square:
        raise DimensionError("solve_rational requires a square matrix")
    n = a.rows
    if len(b) != n:
        raise DimensionError("right-hand side has wrong length")
    aug = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(a.entries, b)]
    for col in range(n):
        pivot_row = next((i for i in range(col, n) if aug[i][col]), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return tuple(aug[i][n] for i in range(n))


def scaled_inverse(m: IntMatrix) -> tuple[IntMatrix, int]:
    """Return ``(adj, d)`` with ``adj @ m = m @ adj = d * identity`` and ``d = det(m)``.

    This gives the exact inverse as the integer pair ``adj / d`` without any
    rational objects in downstream hot loops.
    """
    d = determinant(m)
    if d == 0:
        raise SingularMatrixError("matrix is singular")
    n = m.rows
    cols = []
    for j in range(n):
        e_j = tuple(1 if i == j else 0 for i in range(n))
        x = solve_rational(m, e_j)
        col = []
        for value in x:
            scaled = value * d
            if scaled.denominator != 1:
                raise InvariantViolation("scaled inverse is not integral")
            col.append(scaled.numerator)
        cols.append(tuple(col))
    return IntMatrix.from_columns(cols), d


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(u, d, v)`` with ``u @ m @ v = d``.

    ``u`` and ``v`` are unimodular, ``d`` is diagonal with nonnegative entries
    satisfying ``d[0] | d[1] | ...``. Pivoting is by repeated gcd reduction,
    which is plenty for the tiny matrices this package ever sees.
    """
    rows, cols = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src: int, dst: int, k: int) -> None:
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src: int, dst: int, k: int) -> None:
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        candidates = [
            (abs(a[i][j]), i, j)
            for i in range(t, rows)
            for j in range(t, cols)
            if a[i][j] != 0
        ]
        if not candidates:
            break
        _, pi, pj = min(candidates)
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            # Clear the pivot column with Euclidean row steps.
            dirty = False
            for i in range(t + 1, rows):
                while a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                while a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # Enforce divisibility of the trailing block by the pivot.
            offender = None
            pivot = a[t][t]
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % pivot != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    u_m = IntMatrix.from_rows(u)
    d_m = IntMatrix.from_rows(a)
    v_m = IntMatrix.from_rows(v)
    return u_m, d_m, v_m


def _row_hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form (row space preserved, canonical basis).

    Pivots are positive, entries above each pivot lie in ``[0, pivot)``.
    """
    h = [list(r) for r in rows]
    if not h:
        return h
    n = len(h[0])
    r = 0
    for col in range(n):
        if r >= len(h):
            break
        while True:
            nz = [i for i in range(r, len(h)) if h[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(h[i][col]), i))
            h[r], h[i0] = h[i0], h[r]
            reduced = True
            for i in range(r + 1, len(h)):
                if h[i][col] != 0:
                    q = h[i][col] // h[r][col]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    if h[i][col] != 0:
                        reduced = False
            if reduced:
                break
        if r < len(h) and h[r][col] != 0:
            if h[r][col] < 0:
                h[r] = [-x for x in h[r]]
            for i in range(r):
                q = h[i][col] // h[r][col]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
            r += 1
    return h


def unimodular_completion(q: Sequence[int]) -> IntMatrix:
    """Unimodular ``u`` with ``u @ q`` equal to the last standard basis vector.

    Requires ``gcd(q) = 1``. The first ``len(q) - 1`` rows of the result are
    the canonical Hermite basis of the sublattice orthogonal to ``q``, which
    keeps the entries (and hence all downstream vertex coordinates) small.
    """
    vec = tuple(int(x) for x in q)
    if not vec:
        raise InvalidWeightError("empty vector")
    if math.gcd(*vec) != 1:
        raise InvalidWeightError("entries must have gcd 1")
    n1 = len(vec)
    u = [[1 if i == j else 0 for j in range(n1)] for i in range(n1)]
    x = list(vec)
    for i in range(n1 - 1):
        a, b = x[i], x[i + 1]
        if a == 0:
            continue
        g, s, t = _egcd(a, b)
        row_i, row_j = u[i], u[i + 1]
        new_j = [s * p + t * r for p, r in zip(row_i, row_j)]
        new_i = [-(b // g) * p + (a // g) * r for p, r in zip(row_i, row_j)]
        u[i], u[i + 1] = new_i, new_j
        x[i], x[i + 1] = 0, g
    if x[-1] == -1:
        u[-1] = [-y for y in u[-1]]
        x[-1] = 1
    if x[-1] != 1:
        raise InvariantViolation("gcd chain did not end at 1")
    top = _row_hnf(u[:-1]) if n1 > 1 else []
    u = top + [u[-1]]
    result = IntMatrix.from_rows(u)
    if result.mat_vec(vec) != tuple(1 if i == n1 - 1 else 0 for i in range(n1)):
        raise InvariantViolation("completion does not map q to e_last")
    if abs(determinant(result)) != 1:
        raise InvariantViolation("completion is not unimodular")
    return result


def lattice_index(vectors: Sequence[Sequence[int]]) -> int | float:
    """Index in the ambient lattice of the sublattice the vectors generate.

    Returns ``INFINITE_INDEX`` when the vectors do not span the ambient
    space, otherwise the product of the nonzero Smith diagonal entries.
    """
    m = IntMatrix.from_rows(vectors)
    _, d, _ = smith_normal_form(m)
    diag = [d.entries[i][i] for i in range(min(d.rows, d.cols))]
    rank = sum(1 for x in diag if x != 0)
    if rank < m.cols:
        return INFINITE_INDEX
    index = 1
    for x in diag:
        if x:
            index *= x
    return index
