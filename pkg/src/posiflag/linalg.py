"""Exact linear algebra over arbitrary-precision rationals.

Everything in this module computes with `fractions.Fraction`; no floating
point ever enters.  Square matrices are immutable, entries are stored
reduced, and all public indices are 1-based: rows and columns are numbered
1..d, and a minor is addressed by strictly increasing 1-based row and
column tuples.

Determinants follow a two-route contract: integral matrices go through
fraction-free (Bareiss) elimination in plain integer arithmetic, everything
else through rational Gaussian elimination.  Both are exact; tests compare
them against each other and against cofactor expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    BadParameters,
    DimensionMismatch,
    IndexOutOfRange,
    NotUnipotent,
    SingularMatrix,
)

Scalar = Fraction


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise BadParameters(f"entries must be integers or rationals, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# grid helpers: plain tuples of tuples of Fraction, any shape, 0-based.
# Used internally for rectangular work (kernels of stacked frames, ranks of
# concatenated column blocks); the public Matrix type below is square only.


def _rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rref rows, pivot column list)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def _grid_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(_rref(rows)[1])


def _grid_kernel(rows: Sequence[Sequence[Fraction]]) -> list[tuple[Fraction, ...]]:
    """Canonical kernel basis of a rectangular grid (free column = 1)."""
    if not rows:
        return []
    ncols = len(rows[0])
    rref, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -rref[ri][fc]
        basis.append(tuple(v))
    return basis


def _det_bareiss_int(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer grid.

    One-step Bareiss elimination: every interior division is exact, so the
    whole computation stays in plain (arbitrary-precision) integers.
    """
    n = len(rows)
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = None
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    swap = i
                    break
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _det_rational(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by rational Gaussian elimination with row swaps."""
    n = len(rows)
    a = [list(r) for r in rows]
    det = Fraction(1)
    for c in range(n):
        pivot_row = None
        for r in range(c, n):
            if a[r][c] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            a[c], a[pivot_row] = a[pivot_row], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = a[r][c] / a[c][c]
                for j in range(c, n):
                    a[r][j] -= f * a[c][j]
    return det


def _grid_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    if all(x.denominator == 1 for r in rows for x in r):
        return Fraction(_det_bareiss_int([[x.numerator for x in r] for r in rows]))
    return _det_rational(rows)


# ---------------------------------------------------------------------------


def is_consecutive(indices: Sequence[int]) -> bool:
    """True when the tuple is i, i+1, ..., i+k-1."""
    return all(b == a + 1 for a, b in zip(indices, indices[1:]))


@dataclass(frozen=True)
class MinorIndex:
    """Address of a minor: strictly increasing 1-based row/column tuples.

    `nontrivial` means every row index is at most the matching column index
    (the minors that are not forced to vanish for an upper-triangular
    matrix); `consecutive` means both tuples are runs of consecutive
    integers.
    """

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        cols = tuple(self.cols)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        if not rows or len(rows) != len(cols):
            raise BadParameters("row and column tuples must be nonempty and of equal size")
        for tup in (rows, cols):
            if any(i < 1 for i in tup):
                raise IndexOutOfRange(f"indices are 1-based, got {tup}")
            if any(b <= a for a, b in zip(tup, tup[1:])):
                raise BadParameters(f"index tuple must be strictly increasing, got {tup}")

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def nontrivial(self) -> bool:
        return all(i <= j for i, j in zip(self.rows, self.cols))

    @property
    def consecutive(self) -> bool:
        return is_consecutive(self.rows) and is_consecutive(self.cols)


class Matrix:
    """Immutable square matrix with exact rational entries."""

    __slots__ = ("_rows", "dim")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(_to_fraction(x) for x in row) for row in rows)
        if not data:
            raise BadParameters("matrix must have at least one row")
        d = len(data)
        if any(len(r) != d for r in data):
            raise DimensionMismatch("matrix must be square")
        object.__setattr__(self, "_rows", data)
        object.__setattr__(self, "dim", d)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, d: int) -> "Matrix":
        if d < 1:
            raise BadParameters("dimension must be positive")
        return cls([[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def diagonal(cls, entries: Sequence) -> "Matrix":
        es = [_to_fraction(x) for x in entries]
        d = len(es)
        return cls([[es[i] if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def elementary(cls, d: int, i: int, j: int, t) -> "Matrix":
        """Identity plus t in position (i, j), 1-based, i != j."""
        if not (1 <= i <= d and 1 <= j <= d) or i == j:
            raise IndexOutOfRange(f"bad elementary position ({i}, {j}) for dim {d}")
        rows = [[Fraction(1) if a == b else Fraction(0) for b in range(d)] for a in range(d)]
        rows[i - 1][j - 1] = _to_fraction(t)
        return cls(rows)

    @classmethod
    def reversal(cls, d: int) -> "Matrix":
        """Antidiagonal permutation matrix (column k is e_{d-k+1})."""
        return cls([[1 if i + j == d - 1 else 0 for j in range(d)] for i in range(d)])

    # -- access -------------------------------------------------------------

    def entry(self, i: int, j: int) -> Fraction:
        """Entry at 1-based position (i, j)."""
        if not (1 <= i <= self.dim and 1 <= j <= self.dim):
            raise IndexOutOfRange(f"entry ({i}, {j}) out of range for dim {self.dim}")
        return self._rows[i - 1][j - 1]

    def row(self, i: int) -> tuple[Fraction, ...]:
        if not 1 <= i <= self.dim:
            raise IndexOutOfRange(f"row {i} out of range")
        return self._rows[i - 1]

    def column(self, j: int) -> tuple[Fraction, ...]:
        if not 1 <= j <= self.dim:
            raise IndexOutOfRange(f"column {j} out of range")
        return tuple(r[j - 1] for r in self._rows)

    def rows_tuple(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self._rows for x in r)

    # -- algebra ------------------------------------------------------------

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.dim != other.dim:
            raise DimensionMismatch(f"cannot multiply dim {self.dim} by dim {other.dim}")
        o_cols = list(zip(*other._rows))
        return Matrix(
            [[sum(a * b for a, b in zip(row, col)) for col in o_cols] for row in self._rows]
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.dim != other.dim:
            raise DimensionMismatch("dimension mismatch in addition")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.dim != other.dim:
            raise DimensionMismatch("dimension mismatch in subtraction")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def scaled(self, t) -> "Matrix":
        f = _to_fraction(t)
        return Matrix([[f * x for x in r] for r in self._rows])

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self._rows)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"Matrix[{body}]"

    # -- decompositions and invariants --------------------------------------

    def det(self) -> Fraction:
        """Exact determinant.

        Integral matrices use fraction-free (Bareiss) elimination, others
        rational Gaussian elimination.
        """
        return _grid_det(self._rows)

    def rank(self) -> int:
        return _grid_rank(self._rows)

    def inverse(self) -> "Matrix":
        d = self.dim
        aug = [list(r) + [Fraction(1) if i == j else Fraction(0) for j in range(d)]
               for i, r in enumerate(self._rows)]
        rref, pivots = _rref(aug)
        if pivots[:d] != list(range(d)):
            raise SingularMatrix("matrix is not invertible")
        return Matrix([r[d:] for r in rref[:d]])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        """Square submatrix selected by 1-based index tuples."""
        if len(rows) != len(cols):
            raise DimensionMismatch("row and column selections must have equal size")
        for tup in (rows, cols):
            if any(not 1 <= i <= self.dim for i in tup):
                raise IndexOutOfRange(f"indices {tup} out of range for dim {self.dim}")
        return Matrix([[self._rows[i - 1][j - 1] for j in cols] for i in rows])

    def minor(self, index: MinorIndex) -> Fraction:
        """Exact value of the minor addressed by `index`."""
        return self.submatrix(index.rows, index.cols).det()

    def power(self, t: int) -> "Matrix":
        """Non-negative integer matrix power by repeated squaring."""
        if t < 0:
            raise BadParameters("power must be non-negative")
        result = Matrix.identity(self.dim)
        base = self
        while t:
            if t & 1:
                result = result @ base
            base = base @ base if t > 1 else base
            t >>= 1
        return result

    def kernel_basis(self) -> list[tuple[Fraction, ...]]:
        """Canonical basis of the null space (free variable set to 1)."""
        return _grid_kernel(self._rows)


def mat_pow(m: Matrix, t: int) -> Matrix:
    return m.power(t)


def minor(m: Matrix, index: MinorIndex) -> Fraction:
    return m.minor(index)


def jordan_block_sizes(u: Matrix) -> tuple[int, ...]:
    """Jordan block sizes of a unipotent matrix, sorted descending.

    Derived from the rank sequence r_m = rank((u - I)^m): the number of
    blocks of size at least m is r_{m-1} - r_m.  Raises NotUnipotent when
    (u - I)^dim is nonzero.
    """
    d = u.dim
    n = u - Matrix.identity(d)
    ranks = [d]
    p = Matrix.identity(d)
    for _ in range(d):
        p = p @ n
        ranks.append(p.rank())
    if ranks[-1] != 0:
        raise NotUnipotent("matrix is not unipotent: (u - I)^dim != 0")
    at_least = [ranks[m - 1] - ranks[m] for m in range(1, d + 1)]
    sizes: list[int] = []
    for m in range(1, d + 1):
        exactly = at_least[m - 1] - (at_least[m] if m < d else 0)
        sizes.extend([m] * exactly)
    return tuple(sorted(sizes, reverse=True))
