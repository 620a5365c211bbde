"""Shared generators and independent oracles for the test suite.

The determinant and minor-scan oracles here are deliberately naive
(recursive cofactor expansion, direct enumeration) so that frozen test
values never depend on the code paths under test.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from posiflag import (
    Flag,
    Matrix,
    ProjectivePoint,
    Status,
    random_tp,
    standard_flags,
    tp_staged,
    transverse,
)
from posiflag.reps import MoebiusElement


def cofactor_det(grid: list[list[Fraction]]) -> Fraction:
    """Recursive first-row cofactor expansion; quadratic-free reference."""
    n = len(grid)
    if n == 1:
        return grid[0][0]
    total = Fraction(0)
    for j in range(n):
        if grid[0][j] == 0:
            continue
        sub = [row[:j] + row[j + 1:] for row in grid[1:]]
        total += (-1) ** j * grid[0][j] * cofactor_det(sub)
    return total


def naive_minor(m: Matrix, rows, cols) -> Fraction:
    grid = [[m.entry(i, j) for j in cols] for i in rows]
    return cofactor_det(grid)


def naive_scan(m: Matrix):
    """Reference three-state scan over all nontrivial minors.

    Returns (status_name, witness_index_or_None) with the witness the
    first non-positive nontrivial minor in (size, rows, cols) order.
    """
    d = m.dim
    first = None
    saw_negative = False
    for k in range(1, d + 1):
        for rows in combinations(range(1, d + 1), k):
            for cols in combinations(range(1, d + 1), k):
                if any(i > j for i, j in zip(rows, cols)):
                    continue
                val = naive_minor(m, rows, cols)
                if val <= 0 and first is None:
                    first = (rows, cols, val)
                if val < 0:
                    saw_negative = True
    if saw_negative:
        return "Outside", first
    if first is not None:
        return "NonnegativeBoundary", first
    return "Positive", None


def count_nontrivial(d: int) -> int:
    total = 0
    for k in range(1, d + 1):
        for rows in combinations(range(1, d + 1), k):
            for cols in combinations(range(1, d + 1), k):
                if all(i <= j for i, j in zip(rows, cols)):
                    total += 1
    return total


def gen_uniform(d: int, rng: random.Random) -> Matrix:
    """Upper unipotent with uniform small integer entries."""
    rows = []
    for i in range(d):
        row = [Fraction(0)] * i + [Fraction(1)]
        row += [Fraction(rng.randint(-3, 3)) for _ in range(d - i - 1)]
        rows.append(tuple(row))
    return Matrix(tuple(rows))


def gen_perturbed(d: int, rng: random.Random) -> Matrix:
    """Fully positive sample with one entry nudged by a small rational."""
    m = random_tp(d, rng.randint(0, 10**9))
    rows = [list(r) for r in m.rows_tuple()]
    i = rng.randrange(d - 1)
    j = rng.randrange(i + 1, d)
    rows[i][j] += Fraction(rng.randint(-2, 2), rng.randint(1, 5))
    return Matrix(tuple(tuple(r) for r in rows))


def gen_boundary(d: int, rng: random.Random) -> Matrix:
    """NonnegativeBoundary sample: staircase word with one zeroed parameter."""
    n_params = d * (d - 1) // 2
    while True:
        zero_at = rng.randrange(n_params)
        m = Matrix.identity(d)
        k = 0
        for stage in range(1, d):
            for i in range(stage, 0, -1):
                t = Fraction(0) if k == zero_at else Fraction(rng.randint(1, 9), rng.randint(1, 9))
                m = m @ Matrix.elementary(d, i, i + 1, t)
                k += 1
        if tp_staged(m).status is Status.NONNEGATIVE_BOUNDARY:
            return m


def poison_factor(u: Matrix, rng: random.Random) -> Matrix:
    """Force minor((1,2),(2,3)) negative while keeping superdiagonals positive."""
    rows = [list(r) for r in u.rows_tuple()]
    rows[0][2] = rows[0][1] * rows[1][2] + Fraction(rng.randint(1, 3))
    return Matrix(tuple(tuple(r) for r in rows))


def tuple_from_factors(d: int, factors: list[Matrix]) -> list[Flag]:
    """Assemble the flag tuple whose chain factorization is the given list."""
    asc, desc = standard_flags(d)
    n = len(factors) + 2
    cumulative = {n: Matrix.identity(d)}
    prod = Matrix.identity(d)
    for j in range(n - 1, 1, -1):
        prod = prod @ factors[j - 2]
        cumulative[j] = prod
    return [asc] + [desc.apply(cumulative[j]) for j in range(2, n)] + [desc]


def all_pairs_transverse(flags: list[Flag]) -> bool:
    return all(
        transverse(flags[i], flags[j])
        for i in range(len(flags))
        for j in range(i + 1, len(flags))
    )


def gen_positive_tuple(d: int, n: int, rng: random.Random) -> list[Flag]:
    while True:
        factors = [random_tp(d, rng.randint(0, 10**9)) for _ in range(n - 2)]
        flags = tuple_from_factors(d, factors)
        if all_pairs_transverse(flags):
            return flags


def gen_nonpositive_tuple(d: int, n: int, rng: random.Random) -> list[Flag]:
    while True:
        factors = [random_tp(d, rng.randint(0, 10**9)) for _ in range(n - 2)]
        idx = rng.randrange(len(factors))
        factors[idx] = poison_factor(factors[idx], rng)
        flags = tuple_from_factors(d, factors)
        if all_pairs_transverse(flags):
            return flags


def distinct_points(n: int, rng: random.Random) -> list[ProjectivePoint]:
    """n distinct projective points in strict cyclic order."""
    pts: set[ProjectivePoint] = set()
    while len(pts) < n:
        p, q = rng.randint(-9, 9), rng.randint(0, 9)
        if (p, q) != (0, 0):
            pts.add(ProjectivePoint(p, q))
    return sorted(pts, key=lambda x: x.angle_key)


# integer conjugates of mild rational diagonals: hyperbolic, rational
# eigenlines, and conditioned well enough that float SVD noise stays an
# order of magnitude under the 1e-8 comparisons they are used in
_CONJUGATORS = [
    ((1, 0), (0, 1)),
    ((1, 1), (0, 1)),
    ((1, 0), (1, 1)),
    ((3, 1), (2, 1)),
    ((2, 1), (1, 1)),
    ((1, 2), (1, 3)),
]
_STRETCHES = [
    Fraction(6, 5),
    Fraction(5, 4),
    Fraction(4, 3),
]


def random_mild_hyperbolic(rng: random.Random) -> MoebiusElement:
    s = rng.choice(_STRETCHES)
    h_rows = rng.choice(_CONJUGATORS)
    h = Matrix(tuple(tuple(Fraction(x) for x in row) for row in h_rows))
    core = Matrix(((s, Fraction(0)), (Fraction(0), 1 / s)))
    return MoebiusElement(h @ core @ h.inverse())
