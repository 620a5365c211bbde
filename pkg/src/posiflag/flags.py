"""Complete flags, transversality, adapted bases, and unipotent transporters.

A complete flag in Q^d is stored as an invertible frame: column k of the
frame spans the new direction of the k-dimensional piece, so the k-th
subspace is the span of the first k columns.  Frames are not canonical;
equality compares the subspaces themselves by rank tests, and the group
acts by plain matrix multiplication on frames.

The transporter of two flags H, G relative to a base flag F is the unique
unipotent upper-triangular matrix (in a basis adapted to the pair (F, H))
whose ambient conjugate fixes F and carries H to G.  Its total positivity
is exactly what the tuple-positivity certificates in this package test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    NotSingleJordanBlock,
    NotTransverse,
    SingularMatrix,
)
from .linalg import Matrix, _grid_det, _grid_kernel, _grid_rank, jordan_block_sizes


def _column_grid(cols: list[tuple[Fraction, ...]]) -> tuple[tuple[Fraction, ...], ...]:
    """Assemble column vectors into a row-major grid."""
    d = len(cols[0])
    return tuple(tuple(c[i] for c in cols) for i in range(d))


class Flag:
    """Complete flag presented by an invertible frame.

    subspace k = span of the first k frame columns.  Two flags compare
    equal when all their subspaces coincide, regardless of frames.
    """

    __slots__ = ("frame", "dim")

    def __init__(self, frame: Matrix):
        if frame.det() == 0:
            raise SingularMatrix("flag frame must be invertible")
        self.frame = frame
        self.dim = frame.dim

    def column(self, k: int) -> tuple[Fraction, ...]:
        return self.frame.column(k)

    def apply(self, g: Matrix) -> "Flag":
        """Image flag under an invertible matrix."""
        return Flag(g @ self.frame)

    def contains(self, v: tuple[Fraction, ...], k: int) -> bool:
        """Membership of a vector in the k-th subspace, by a rank test."""
        cols = [self.frame.column(i) for i in range(1, k + 1)] + [tuple(v)]
        return _grid_rank(_column_grid(cols)) == k

    def __eq__(self, other) -> bool:
        if not isinstance(other, Flag):
            return NotImplemented
        if self.dim != other.dim:
            return False
        d = self.dim
        for k in range(1, d):
            cols = [self.frame.column(i) for i in range(1, k + 1)]
            cols += [other.frame.column(i) for i in range(1, k + 1)]
            if _grid_rank(_column_grid(cols)) != k:
                return False
        return True

    def __repr__(self) -> str:
        return f"Flag({self.frame!r})"


def standard_flags(d: int) -> tuple[Flag, Flag]:
    """The ascending and descending coordinate flags.

    Ascending: k-th subspace spanned by e_1..e_k; descending: by e_d
    down to e_{d-k+1}.
    """
    return Flag(Matrix.identity(d)), Flag(Matrix.reversal(d))


def transverse(f: Flag, g: Flag) -> bool:
    """Whether every k-th subspace of f is complementary to the (d-k)-th of g."""
    if f.dim != g.dim:
        raise DimensionMismatch(f"flag dims differ: {f.dim} vs {g.dim}")
    d = f.dim
    for k in range(1, d):
        cols = [f.frame.column(i) for i in range(1, k + 1)]
        cols += [g.frame.column(i) for i in range(1, d - k + 1)]
        if _grid_det(_column_grid(cols)) == 0:
            return False
    return True


@dataclass(frozen=True)
class AdaptedBasis:
    """Basis adapted to a transverse flag pair.

    Column k of `matrix` spans the line F^k intersect H^{d-k+1}; the
    scale is fixed by making the k-th coordinate of that column in F's
    frame equal to 1 (that coordinate is nonzero by transversality, the
    earlier ones need not be).  In these coordinates F becomes the
    ascending coordinate flag and H the descending one.
    """

    matrix: Matrix
    source: tuple[Flag, Flag]


def adapted_basis(f: Flag, h: Flag) -> AdaptedBasis:
    if not transverse(f, h):
        raise NotTransverse("flags are not transverse; no adapted basis exists")
    d = f.dim
    out_cols: list[tuple[Fraction, ...]] = []
    for k in range(1, d + 1):
        # kernel of [F cols 1..k | H cols 1..d-k+1] is one line by transversality
        cols = [f.frame.column(i) for i in range(1, k + 1)]
        cols += [h.frame.column(i) for i in range(1, d - k + 2)]
        kern = _grid_kernel(_column_grid(cols))
        assert len(kern) == 1, "transverse pair must give a one-dimensional kernel"
        coeffs = kern[0][:k]
        lead = coeffs[k - 1]
        assert lead != 0, "intersection line cannot sit in the smaller subspace"
        vec = tuple(
            sum((coeffs[i] * f.frame.entry(r, i + 1) for i in range(k)), Fraction(0)) / lead
            for r in range(1, d + 1)
        )
        out_cols.append(vec)
    return AdaptedBasis(Matrix(_column_grid(out_cols)), (f, h))


def transporter(f: Flag, h: Flag, g: Flag) -> Matrix:
    """Unipotent matrix carrying h to g while fixing f, in (f, h)-adapted coordinates.

    Writes g's frame in the adapted coordinates and reduces it to reverse
    column-echelon form: the column for g's m-th subspace gets pivot 1 at
    coordinate d-m+1 and zeros below, and becomes column d-m+1 of the
    result.  Requires transverse(f, h) and transverse(f, g); g need not
    be transverse to h, and the degenerate positions of the output encode
    exactly how transversality of (g, h) fails.
    """
    if f.dim != h.dim or f.dim != g.dim:
        raise DimensionMismatch("flag dims differ")
    if not transverse(f, g):
        raise NotTransverse("base flag and target flag are not transverse")
    p = adapted_basis(f, h).matrix
    d = f.dim
    p_inv = p.inverse()
    c = p_inv @ g.frame
    placed: list[tuple[int, list[Fraction]]] = []  # (pivot row, column)
    out: dict[int, list[Fraction]] = {}
    for m in range(1, d + 1):
        col = list(c.column(m))
        for pivot_row, prior in placed:
            factor = col[pivot_row - 1]
            if factor:
                for r in range(d):
                    col[r] -= factor * prior[r]
        pivot_row = d - m + 1
        lead = col[pivot_row - 1]
        assert lead != 0, "pivot guaranteed by transversality of f and g"
        col = [x / lead for x in col]
        placed.append((pivot_row, col))
        out[pivot_row] = col
    u = Matrix(_column_grid([tuple(out[j]) for j in range(1, d + 1)]))
    # postconditions: shape, and both flag conditions in ambient coordinates
    for i in range(1, d + 1):
        assert u.entry(i, i) == 1
        for j in range(1, i):
            assert u.entry(i, j) == 0
    ambient = p @ u @ p_inv
    assert h.apply(ambient) == g, "transporter must carry h to g"
    assert f.apply(ambient) == f, "transporter must fix f"
    return u


def unipotent_fixed_flag(u: Matrix) -> Flag:
    """The full fixed flag of a unipotent matrix with one Jordan block.

    Subspace k is the kernel of (u - I)^k; the single-block condition
    makes each kernel exactly one dimension larger than the last, so the
    kernels assemble into a complete flag (the unique u-invariant one).
    """
    d = u.dim
    if jordan_block_sizes(u) != (d,):
        raise NotSingleJordanBlock(
            "fixed flag construction needs a single Jordan block"
        )
    n = u - Matrix.identity(d)
    cols: list[tuple[Fraction, ...]] = []
    power = Matrix.identity(d)
    for k in range(1, d + 1):
        power = power @ n
        kern = power.kernel_basis()
        for cand in kern:
            if _grid_rank(_column_grid(cols + [cand])) == len(cols) + 1:
                cols.append(cand)
                break
        assert len(cols) == k
    return Flag(Matrix(_column_grid(cols)))
