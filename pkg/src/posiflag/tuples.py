"""Positivity certificates for ordered tuples of complete flags.

An ordered tuple (F_1, ..., F_n) of pairwise transverse flags is positive
when, in a basis adapted to (F_1, F_n), there are totally positive
unipotent factors u_2, ..., u_{n-1} with F_j = (u_{n-1} ... u_j) F_n for
every j.  The factors are pinned down by the cumulative transporters
c_j carrying F_n to F_j: c_n is the identity and c_j = c_{j+1} u_j, so
u_j = c_{j+1}^{-1} c_j.  The definition allows any adapted basis; the
only freedom that affects total positivity of the factors is a diagonal
sign flip, which is resolved here by conjugating every factor by the one
+-1 diagonal that makes u_{n-1}'s superdiagonal positive.

The quadruple route certifies an n-tuple by checking only its ordered
4-element subtuples, which suffices; both routes agree on every input.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import (
    BadParameters,
    DimensionMismatch,
    NotTransverse,
    NotUnipotentUpperTriangular,
    PreconditionViolated,
    ZeroSuperdiagonal,
)
from .flags import AdaptedBasis, Flag, adapted_basis, transporter, transverse
from .linalg import Matrix
from .positivity import PositivityVerdict, Status, is_upper_unipotent, tp_staged
from .reps import ProjectivePoint


def sign_normalize(u: Matrix) -> tuple[Matrix, Matrix]:
    """Conjugate a unipotent matrix into positive-superdiagonal form.

    Returns (D, D u D^-1) with D diagonal +-1, d_1 = +1, chosen so every
    superdiagonal entry of the conjugate is positive.  A zero
    superdiagonal entry is a zero nontrivial 1x1 minor, unfixable by any
    diagonal conjugation, so it is rejected: the input is certainly not
    conjugate into the fully positive set.
    """
    if not is_upper_unipotent(u):
        raise NotUnipotentUpperTriangular("sign normalization needs an upper unipotent input")
    d = u.dim
    signs = [1]
    for i in range(1, d):
        s = u.entry(i, i + 1)
        if s == 0:
            raise ZeroSuperdiagonal(
                f"superdiagonal entry ({i},{i + 1}) is zero; "
                "no sign conjugation can make it positive",
                position=i,
            )
        signs.append(signs[-1] * (1 if s > 0 else -1))
    dmat = Matrix.diagonal(signs)
    return dmat, dmat @ u @ dmat


@dataclass(frozen=True)
class TupleCertificate:
    """Factorization data behind a tuple-positivity verdict.

    `factors[i]` is u_{i+2} in the coordinates of `adapted.matrix` (plain,
    before sign conjugation); `verdicts[i]` is the staged verdict of the
    sign-conjugated factor sign @ factors[i] @ sign.  In the adapted
    coordinates the recorded factors replay the tuple exactly:
    F_j = (u_{n-1} ... u_j) F_n for every j.
    """

    adapted: AdaptedBasis
    sign: Matrix
    factors: tuple[Matrix, ...]
    verdicts: tuple[PositivityVerdict, ...]

    @property
    def frame(self) -> Matrix:
        """Frame of the sign-resolved basis in which the normalized factors act."""
        return self.adapted.matrix @ self.sign

    @property
    def normalized_factors(self) -> tuple[Matrix, ...]:
        return tuple(self.sign @ u @ self.sign for u in self.factors)

    def replays(self, flags: list[Flag]) -> bool:
        """Whether multiplying out the factors reproduces every flag of the tuple."""
        n = len(self.factors) + 2
        if len(flags) != n:
            return False
        p = self.adapted.matrix
        p_inv = p.inverse()
        last = flags[-1]
        prod = Matrix.identity(p.dim)
        for j in range(n - 1, 1, -1):
            prod = prod @ self.factors[j - 2]
            if last.apply(p @ prod @ p_inv) != flags[j - 1]:
                return False
        return True


def _require_all_transverse(flags: list[Flag]):
    """Check every pair, reporting the first failure by 1-based positions.

    Order: the anchor pair (1, n) first since the adapted basis needs it,
    then (1, j) for the transporter targets, then the remaining pairs.
    """
    n = len(flags)
    pairs = [(1, n)] + [(1, j) for j in range(2, n)]
    pairs += [
        (a, b)
        for a in range(2, n + 1)
        for b in range(a + 1, n + 1)
    ]
    for a, b in pairs:
        if not transverse(flags[a - 1], flags[b - 1]):
            raise NotTransverse(
                f"flags {a} and {b} are not transverse", pair=(a, b)
            )


def _aggregate(verdicts: tuple[PositivityVerdict, ...]) -> PositivityVerdict:
    for v in verdicts:
        if not v.is_positive:
            return v
    return PositivityVerdict(Status.POSITIVE, None, "staged")


def is_positive_tuple_chain(
    flags: list[Flag],
) -> tuple[PositivityVerdict, TupleCertificate]:
    """Certify a tuple by its full chain factorization.

    Computes the cumulative transporters c_j = transporter(F_1, F_n, F_j),
    peels the factors u_j = c_{j+1}^{-1} c_j, conjugates all of them by
    the sign normalization derived from u_{n-1}, and runs the staged scan
    on each.  The verdict is Positive iff every factor passes; otherwise
    it carries the status and witness of the first failing factor (the
    witness indexes into that factor, see the certificate's verdict list).
    """
    n = len(flags)
    if n < 3:
        raise BadParameters(f"tuple positivity needs at least 3 flags, got {n}")
    d = flags[0].dim
    for f in flags[1:]:
        if f.dim != d:
            raise DimensionMismatch("flags in a tuple must share one dimension")
    _require_all_transverse(flags)
    ab = adapted_basis(flags[0], flags[-1])
    cumulative = {n: Matrix.identity(d)}
    for j in range(2, n):
        cumulative[j] = transporter(flags[0], flags[-1], flags[j - 1])
    factors = tuple(
        cumulative[j + 1].inverse() @ cumulative[j] for j in range(2, n)
    )
    for u in factors:
        assert is_upper_unipotent(u), "chain factors are quotients of unipotents"
    dmat, _ = sign_normalize(factors[-1])
    verdicts = tuple(tp_staged(dmat @ u @ dmat) for u in factors)
    cert = TupleCertificate(ab, dmat, factors, verdicts)
    return _aggregate(verdicts), cert


def is_positive_triple(
    f1: Flag, f2: Flag, f3: Flag
) -> tuple[PositivityVerdict, TupleCertificate]:
    """Certify a triple: one transporter, sign-normalized and scanned.

    Transversality of (f1, f3) and (f1, f2) is structurally necessary;
    (f2, f3) is checked as well, and its failure is raised as
    NotTransverse with pair (2, 3) to keep it distinguishable.
    """
    return is_positive_tuple_chain([f1, f2, f3])


def is_positive_tuple_quad(flags: list[Flag]) -> PositivityVerdict:
    """Certify a tuple through its ordered 4-element subtuples.

    Equivalent to the chain route but quadratic instead of global: a
    tuple is positive iff every ordered quadruple inside it is.  Returns
    the verdict of the first failing quadruple (lexicographic order) or
    Positive.
    """
    n = len(flags)
    if n < 3:
        raise BadParameters(f"tuple positivity needs at least 3 flags, got {n}")
    if n == 3:
        verdict, _ = is_positive_triple(*flags)
        return verdict
    _require_all_transverse(flags)
    for sub in combinations(range(n), 4):
        verdict, _ = is_positive_tuple_chain([flags[i] for i in sub])
        if not verdict.is_positive:
            return verdict
    return PositivityVerdict(Status.POSITIVE, None, "staged")


@dataclass(frozen=True)
class FlagMapSample:
    """Finite sample of a circle-to-flags map.

    Points must be pairwise distinct and listed in strict cyclic order
    (some rotation of the list has strictly increasing angles in the
    fixed counterclockwise orientation); each point carries one flag.
    """

    points: tuple[ProjectivePoint, ...]
    flags: tuple[Flag, ...]

    def __post_init__(self):
        if len(self.points) != len(self.flags):
            raise PreconditionViolated(
                f"{len(self.points)} points but {len(self.flags)} flags"
            )
        if len(self.points) < 3:
            raise PreconditionViolated("a sample needs at least 3 points")
        if len(set(self.points)) != len(self.points):
            raise PreconditionViolated("sample points must be pairwise distinct")
        keys = [p.angle_key for p in self.points]
        start = keys.index(min(keys))
        rotated = keys[start:] + keys[:start]
        if any(a >= b for a, b in zip(rotated, rotated[1:])):
            raise PreconditionViolated("sample points are not in strict cyclic order")

    @classmethod
    def from_records(
        cls, records: list[tuple[tuple[int, int], Matrix]]
    ) -> "FlagMapSample":
        points = tuple(ProjectivePoint(p, q) for (p, q), _ in records)
        flags = tuple(Flag(frame) for _, frame in records)
        return cls(points, flags)


@dataclass(frozen=True)
class SampleReport:
    """Outcome of the sampled propagation check.

    status is "consistent" (a positive triple exists and every ordered
    quadruple is positive), "vacuously consistent, no positive triple",
    or "inconsistent" (a positive triple exists but some quadruple
    fails, recorded in failing_quad).  Indices are 1-based sample
    positions.
    """

    status: str
    positive_triple: tuple[int, int, int] | None
    failing_quad: tuple[int, int, int, int] | None
    triples_scanned: int
    quads_checked: int


def _tuple_positive(flags: list[Flag]) -> bool:
    """Chain verdict collapsed to a boolean; a zero superdiagonal means no."""
    try:
        verdict, _ = is_positive_tuple_chain(flags)
    except ZeroSuperdiagonal:
        return False
    return verdict.is_positive


def check_sampled_positivity(sample: FlagMapSample) -> SampleReport:
    """Finite-sample consistency check of positivity propagation.

    Verifies all pairs transverse (raising NotTransverse with the 1-based
    pair on failure), scans triples in lexicographic order for one
    positive triple, and if one exists asserts that every ordered
    quadruple of the sample is positive.  A finite check, not a proof.
    """
    flags = list(sample.flags)
    _require_all_transverse(flags)
    n = len(flags)
    positive_triple = None
    triples = 0
    for sub in combinations(range(n), 3):
        triples += 1
        if _tuple_positive([flags[i] for i in sub]):
            positive_triple = tuple(i + 1 for i in sub)
            break
    if positive_triple is None:
        return SampleReport(
            "vacuously consistent, no positive triple", None, None, triples, 0
        )
    quads = 0
    for sub in combinations(range(n), 4):
        quads += 1
        if not _tuple_positive([flags[i] for i in sub]):
            return SampleReport(
                "inconsistent",
                positive_triple,
                tuple(i + 1 for i in sub),
                triples,
                quads,
            )
    return SampleReport("consistent", positive_triple, None, triples, quads)
