"""Dynamics at desk scale: power thresholds, SVD flags, singular profiles.

The exact side: for a unipotent u with a single Jordan block and a flag G
transverse to u's fixed flag, the triple (F, u^t G, G) becomes positive
for every large enough integer t; the threshold search finds the first
such t exactly.

The float side: powers of a hyperbolic 2x2 element pushed through the
reducible block family develop widening singular-value gaps, the flag of
left singular vectors converges to the family's flag at the attracting
fixed point, and the gap ratios follow a two-branch prediction.
Measurements are taken in a weighted version of the interleaved basis
(each block's monomial vector scaled by the square root of its binomial
coefficient) in which rotation-like elements act by isometries; in the
plain basis the clean ratio formula simply does not hold.  Blocks are
scaled to unit determinant so representatives of the same projective
element measure alike.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    CapExceeded,
    NotHyperbolic,
    NotSingleJordanBlock,
    NotTransverse,
    RationalEigenlineRequired,
    SingularGapTooSmall,
    ZeroSuperdiagonal,
)
from .flags import Flag, transverse, unipotent_fixed_flag
from .linalg import Matrix, jordan_block_sizes
from .reps import BarbotSpec, MoebiusElement, ProjectivePoint, barbot_flag, sym_power
from .tuples import is_positive_triple


@dataclass(eq=False)
class FloatFlag:
    """Flag presented by an orthonormal float frame.

    min_gap records the smallest singular value ratio seen when the flag
    came out of an SVD, as a certificate of how well-separated (hence how
    canonical) the frame is.
    """

    frame: np.ndarray
    dim: int
    min_gap: float | None = None


@dataclass(frozen=True)
class SingularProfile:
    """Singular values in decreasing order, with their consecutive ratios."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = self.values
        assert all(a >= b for a, b in zip(vals, vals[1:])), "values must decrease"
        assert all(v > 0 for v in vals), "values must be positive"

    @property
    def gaps(self) -> tuple[float, ...]:
        return tuple(a / b for a, b in zip(self.values, self.values[1:]))


def float_flag(f: Flag) -> FloatFlag:
    """Orthonormalized float copy of an exact flag."""
    arr = np.array(
        [[float(f.frame.entry(i, j)) for j in range(1, f.dim + 1)] for i in range(1, f.dim + 1)]
    )
    q, _ = np.linalg.qr(arr)
    return FloatFlag(q, f.dim)


def svd_flag(g, gap_tol: float = 1e-8) -> FloatFlag:
    """Flag of left singular vectors, defined when all gaps are clear.

    Requires every ratio of consecutive singular values to be at least
    1 + gap_tol; otherwise the subspaces are not canonical and
    SingularGapTooSmall reports the narrowest gap.
    """
    arr = np.asarray(g, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("svd_flag needs a square matrix")
    u, s, _ = np.linalg.svd(arr)
    gaps = [s[i] / s[i + 1] if s[i + 1] > 0 else math.inf for i in range(len(s) - 1)]
    min_gap = min(gaps, default=math.inf)
    if min_gap < 1 + gap_tol:
        raise SingularGapTooSmall(
            f"singular value ratio {min_gap:.3e} below 1 + {gap_tol:.1e}; "
            "flag of singular vectors is not canonical",
            min_gap=min_gap,
        )
    return FloatFlag(u, arr.shape[0], min_gap)


def flag_distance(a: FloatFlag, b: FloatFlag) -> float:
    """Largest principal angle between corresponding subspaces, over all depths."""
    if a.dim != b.dim:
        raise ValueError("flag dims differ")
    worst = 0.0
    for k in range(1, a.dim):
        overlap = a.frame[:, :k].T @ b.frame[:, :k]
        smallest = min(np.linalg.svd(overlap, compute_uv=False))
        worst = max(worst, math.acos(min(1.0, max(-1.0, smallest))))
    return worst


def power_positivity_threshold(u: Matrix, g: Flag, cap: int = 100_000) -> int:
    """Smallest t >= 1 with (F, u^t G, G) a positive triple, F = fixed flag of u.

    u must be unipotent with one Jordan block and G transverse to F.
    Scans t = 1, 2, ... exactly; a non-positive or degenerate triple at
    some t just moves the scan on.  Reaching the cap raises CapExceeded
    rather than returning anything.
    """
    d = u.dim
    if jordan_block_sizes(u) != (d,):
        raise NotSingleJordanBlock("threshold search needs a single Jordan block")
    fixed = unipotent_fixed_flag(u)
    if not transverse(fixed, g):
        raise NotTransverse("flag must be transverse to the fixed flag")
    acc = Matrix.identity(d)
    for t in range(1, cap + 1):
        acc = acc @ u
        try:
            verdict, _ = is_positive_triple(fixed, g.apply(acc), g)
        except (NotTransverse, ZeroSuperdiagonal):
            continue
        if verdict.is_positive:
            return t
    raise CapExceeded(f"no positive power found for t in [1, {cap}]", cap=cap)


def attracting_fixed_point(g: MoebiusElement) -> ProjectivePoint:
    """Eigenline of the larger eigenvalue, as an exact projective point.

    Only hyperbolic elements qualify, and the eigenvalues must be
    rational (the discriminant a rational square); otherwise the fixed
    point does not live on the rational projective line this package
    works with, and RationalEigenlineRequired says so.
    """
    if not g.is_hyperbolic:
        raise NotHyperbolic("attracting fixed point needs a hyperbolic element")
    tr = g.trace
    disc = tr**2 - 4 * g.det
    rn = math.isqrt(disc.numerator)
    rd = math.isqrt(disc.denominator)
    if rn * rn != disc.numerator or rd * rd != disc.denominator:
        raise RationalEigenlineRequired(
            "eigenvalues are irrational; no rational eigenline exists"
        )
    root = Fraction(rn, rd)
    lam = (tr + root) / 2 if tr > 0 else (tr - root) / 2
    m = g.matrix
    a, b = m.entry(1, 1), m.entry(1, 2)
    c, e = m.entry(2, 1), m.entry(2, 2)
    if b != 0:
        v = (b, lam - a)
    elif c != 0:
        v = (lam - e, c)
    else:
        v = (Fraction(1), Fraction(0)) if a == lam else (Fraction(0), Fraction(1))
    scale = v[0].denominator * v[1].denominator
    return ProjectivePoint(int(v[0] * scale), int(v[1] * scale))


def _weights(spec: BarbotSpec) -> np.ndarray:
    """Per-coordinate weights making rotations act by isometries blockwise."""
    m1 = spec.d - spec.j
    w = np.empty(spec.d)
    for t, e_idx in enumerate(spec.perm):
        if e_idx <= m1:
            m, i = m1, e_idx
        else:
            m, i = spec.j, e_idx - m1
        w[t] = math.sqrt(math.comb(m - 1, i - 1))
    return w


def _tau_hat(spec: BarbotSpec, g: MoebiusElement, n: int) -> np.ndarray:
    """Float matrix of the block family at g^n: det-normalized, weighted basis."""
    m1 = spec.d - spec.j
    gn = g.power(n)
    absdet = abs(float(g.det)) ** n
    big = np.array(
        [[float(x) for x in row] for row in sym_power(gn, m1).rows_tuple()]
    ) / absdet ** ((m1 - 1) / 2)
    small = np.array(
        [[float(x) for x in row] for row in sym_power(gn, spec.j).rows_tuple()]
    ) / absdet ** ((spec.j - 1) / 2)
    block = np.zeros((spec.d, spec.d))
    block[:m1, :m1] = big
    block[m1:, m1:] = small
    idx = np.array(spec.perm) - 1
    permuted = block[np.ix_(idx, idx)]
    w = _weights(spec)
    return permuted * w[None, :] / w[:, None]


def singular_ratio_profile(
    spec: BarbotSpec, g: MoebiusElement, n: int
) -> list[tuple[int, float, float]]:
    """Measured vs predicted singular value ratios of the block family at g^n.

    Prediction: with r the top singular ratio of g^n itself, gap i is r
    for i <= k-1 or i >= d-k+1, and sqrt(r) for the middle indices.
    Returns (i, measured, predicted) for i = 1..d-1.
    """
    if not g.is_hyperbolic:
        raise NotHyperbolic("singular ratio profile needs a hyperbolic element")
    sig = np.linalg.svd(_tau_hat(spec, g, n), compute_uv=False)
    profile = SingularProfile(tuple(sig))
    g_arr = np.array(
        [[float(x) for x in row] for row in g.power(n).matrix.rows_tuple()]
    )
    s2 = np.linalg.svd(g_arr, compute_uv=False)
    r = s2[0] / s2[1]
    d, k = spec.d, spec.k
    out = []
    for i, measured in zip(range(1, d), profile.gaps):
        predicted = r if (i <= k - 1 or i >= d - k + 1) else math.sqrt(r)
        out.append((i, measured, predicted))
    return out


@dataclass(frozen=True)
class LimitEntry:
    """One step of the convergence series; skipped means gaps were too narrow."""

    n: int
    distance: float | None
    min_gap: float
    skipped: bool


def limit_convergence(
    spec: BarbotSpec, g: MoebiusElement, n_max: int, gap_tol: float = 1e-8
) -> list[LimitEntry]:
    """Distance series from the SVD flag of the family at g^n to its limit.

    The limit is the family's flag at the attracting fixed point of g.
    Entries where the singular gaps are below tolerance are marked
    skipped instead of carrying a meaningless distance.
    """
    if not g.is_hyperbolic:
        raise NotHyperbolic("limit convergence needs a hyperbolic element")
    x_plus = attracting_fixed_point(g)
    target = barbot_flag(spec, x_plus)
    w = _weights(spec)
    target_arr = np.array(
        [
            [float(target.frame.entry(i, j)) for j in range(1, spec.d + 1)]
            for i in range(1, spec.d + 1)
        ]
    )
    q, _ = np.linalg.qr(target_arr / w[:, None])
    target_w = FloatFlag(q, spec.d)
    series = []
    for n in range(1, n_max + 1):
        mat = _tau_hat(spec, g, n)
        try:
            fl = svd_flag(mat, gap_tol)
        except SingularGapTooSmall as exc:
            series.append(LimitEntry(n, None, exc.min_gap, True))
            continue
        series.append(
            LimitEntry(n, flag_distance(fl, target_w), fl.min_gap or math.inf, False)
        )
    return series
