"""Vector lex orderings of Z^n and the matrix action on them.

An ordering of Z^n is given by a flag of vectors u_1, ..., u_k with entries
in a real quadratic field: v is positive when the first nonzero inner product
<v, u_i> is positive.  The flag is total when no nonzero integer vector is
orthogonal to every u_i; that is an exact rank condition on the stacked
rational parts, checked at construction.

A matrix M in GL_n(Z) acts on Z^n by v -> v M (row convention) and pushes an
ordering forward so that the new sign of v is the old sign of v M^-1; on
flags that means replacing each u by M^-1 u (column convention).  In
particular M preserves the ordering of a one-vector flag u exactly when u is
an eigenvector of M with positive eigenvalue.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import Group, GroupAutomorphism, SignOracle
from .quadfield import QuadRat, UnsupportedFieldError, _square_free_part


class TotalityError(ValueError):
    """The flag fails totality: some nonzero lattice vector is orthogonal
    to every flag vector, so the sign map is not defined everywhere."""


class LatticeGroup(Group):
    """Z^n with elements as integer tuples and balls in the l1 norm."""

    def __init__(self, rank: int):
        super().__init__()
        if rank < 1:
            raise ValueError("rank must be at least 1")
        self.rank = rank
        self.name = f"Z^{rank}"

    @property
    def identity(self):
        return (0,) * self.rank

    def multiply(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def invert(self, g):
        return tuple(-a for a in g)

    def sort_key(self, g):
        letters = []
        for i, c in enumerate(g):
            if c:
                letters.extend([(i, 0 if c > 0 else 1)] * abs(c))
        return (sum(abs(c) for c in g), tuple(letters))

    def label(self, g):
        return "(" + ",".join(str(c) for c in g) + ")"

    def _ball_elements(self, radius):
        span = range(-radius, radius + 1)
        for v in itertools.product(span, repeat=self.rank):
            if sum(abs(c) for c in v) <= radius:
                yield v


@functools.cache
def lattice_group(rank: int) -> LatticeGroup:
    return LatticeGroup(rank)


# matrices are tuples of row tuples with int or Fraction entries

def mat_from_rows(rows) -> tuple:
    mat = tuple(tuple(Fraction(x) for x in row) for row in rows)
    n = len(mat)
    if n == 0 or any(len(row) != n for row in mat):
        raise ValueError("matrix must be square and nonempty")
    return mat


def mat_identity(n: int) -> tuple:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_mul(a, b) -> tuple:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n))


def row_times_mat(v, m) -> tuple:
    n = len(m)
    return tuple(sum(v[i] * m[i][j] for i in range(n)) for j in range(n))


def mat_times_col(m, u) -> tuple:
    n = len(m)
    return tuple(sum(m[i][j] * u[j] for j in range(n)) for i in range(n))


def mat_inverse(m) -> tuple:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def mat_det(m) -> Fraction:
    n = len(m)
    rows = [list(row) for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col]:
                factor = rows[r][col] / rows[col][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return det


def rational_rank(rows) -> int:
    """Row rank of a list of rational row vectors."""
    work = [list(map(Fraction, row)) for row in rows]
    if not work:
        return 0
    width = len(work[0])
    rank = 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        lead = work[rank][col]
        for r in range(rank + 1, len(work)):
            if work[r][col]:
                factor = work[r][col] / lead
                work[r] = [x - factor * y for x, y in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


@dataclass(frozen=True)
class FormFlag:
    """An ordered flag of Q(sqrt d) vectors defining a lex sign map."""

    vectors: tuple
    d: int = 2

    @classmethod
    def of(cls, vectors, d: int = 2) -> "FormFlag":
        coerced = tuple(
            tuple(x if isinstance(x, QuadRat) else QuadRat.of(x, 0, d) for x in vec)
            for vec in vectors)
        if not coerced or not coerced[0]:
            raise ValueError("flag needs at least one nonzero vector")
        for vec in coerced:
            for x in vec:
                if x.d != d:
                    raise UnsupportedFieldError(f"entry {x} lives in Q(sqrt {x.d}), not Q(sqrt {d})")
        return cls(coerced, d)

    @property
    def rank(self) -> int:
        return len(self.vectors[0])

    def form_sign(self, v) -> int:
        """Sign of the first nonzero <v, u_i>; 0 only when all vanish."""
        for u in self.vectors:
            total = QuadRat.of(0, 0, self.d)
            for c, x in zip(v, u):
                if c:
                    total = total + c * x
            s = total.sign()
            if s:
                return s
        return 0

    def is_total(self) -> bool:
        """Exact: no nonzero rational vector is orthogonal to the flag.

        <v, u> vanishes iff both the rational part and the sqrt-d part of the
        inner product vanish, so totality is a full-rank condition on the
        stacked parts.
        """
        rows = []
        for u in self.vectors:
            rows.append([x.a for x in u])
            rows.append([x.b for x in u])
        return rational_rank(rows) == self.rank

    def negated(self) -> "FormFlag":
        return FormFlag(tuple(tuple(-x for x in u) for u in self.vectors), self.d)

    def descriptor(self) -> str:
        body = ";".join("(" + ",".join(str(x) for x in u) + ")" for u in self.vectors)
        return f"flag[{body}]"

    def ordering(self, group: LatticeGroup) -> SignOracle:
        if group.rank != self.rank:
            raise ValueError(f"flag has rank {self.rank}, group is {group.name}")
        if not self.is_total():
            raise TotalityError(f"{self.descriptor()} is not total on {group.name}")
        return SignOracle(group=group, fn=self.form_sign, descriptor=self.descriptor())


def flag_ordering(group: LatticeGroup, vectors, d: int = 2) -> SignOracle:
    return FormFlag.of(vectors, d).ordering(group)


def matrix_automorphism(group: LatticeGroup, rows) -> GroupAutomorphism:
    """The automorphism v -> v M for M in GL_n(Z)."""
    m = mat_from_rows(rows)
    if len(m) != group.rank:
        raise ValueError(f"matrix is {len(m)}x{len(m)}, group is {group.name}")
    if any(x.denominator != 1 for row in m for x in row):
        raise ValueError("matrix must have integer entries")
    if abs(mat_det(m)) != 1:
        raise ValueError("matrix is not invertible over the integers")
    minv = mat_inverse(m)
    fwd = lambda v: tuple(int(x) for x in row_times_mat(v, m))
    bwd = lambda v: tuple(int(x) for x in row_times_mat(v, minv))
    body = ";".join("(" + ",".join(str(int(x)) for x in row) + ")" for row in m)
    return GroupAutomorphism(group=group, forward=fwd, backward=bwd,
                             descriptor=f"mat[{body}]")


def matrix_pushforward(rows, flag: FormFlag) -> FormFlag:
    """The flag of the pushforward ordering under v -> v M.

    The new sign of v is the old sign of v M^-1, and <v M^-1, u> = <v, M^-1 u>,
    so each flag vector u is replaced by M^-1 u.
    """
    m = mat_from_rows(rows)
    if len(m) != flag.rank:
        raise ValueError("matrix and flag ranks differ")
    minv = mat_inverse(m)
    return FormFlag(tuple(mat_times_col(minv, u) for u in flag.vectors), flag.d)


def positive_multiple(u, w) -> bool:
    """True iff w = c u for some positive scalar c in the field."""
    c = None
    for x, y in zip(u, w):
        xs, ys = x.sign(), y.sign()
        if (xs == 0) != (ys == 0):
            return False
        if xs == 0:
            continue
        ratio = y / x
        if c is None:
            c = ratio
        elif ratio != c:
            return False
    return c is not None and c.sign() > 0


def preserves(rows, flag: FormFlag, group: LatticeGroup | None = None,
              r_check: int = 24) -> bool:
    """Does v -> v M carry the flag ordering to itself?

    Exact fast path: if every pushed vector is a positive multiple of its
    original, the orderings agree everywhere.  Otherwise the two sign maps
    are compared on ball(r_check); a disagreement there settles the question,
    and agreement is reported as preservation at that resolution.
    """
    pushed = matrix_pushforward(rows, flag)
    if all(positive_multiple(u, w) for u, w in zip(flag.vectors, pushed.vectors)):
        return True
    if group is None:
        group = lattice_group(flag.rank)
    for v in group.ball(r_check):
        if flag.form_sign(v) != pushed.form_sign(v):
            return False
    return True


def sublattice_contains(basis, v) -> bool:
    """Is v in the sublattice spanned by the rows of the integer basis?"""
    coords = row_times_mat(v, mat_inverse(basis))
    return all(x.denominator == 1 for x in coords)


def _sublattice_basis(basis, rank: int):
    if basis is None:
        return None
    b = mat_from_rows(basis)
    if len(b) != rank:
        raise ValueError("sublattice basis has the wrong rank")
    if any(x.denominator != 1 for row in b for x in row):
        raise ValueError("sublattice basis must be integral")
    if mat_det(b) == 0:
        raise ValueError("sublattice basis is singular (index-zero sublattice)")
    return b


def vlo_equal(f1: FormFlag, f2: FormFlag, basis1=None, basis2=None,
              r_check: int = 24) -> tuple[bool, tuple | None]:
    """Do two flag orderings, carried by finite-index sublattices, agree
    as germs on the common sublattice?

    Each basis is an integer row matrix spanning the carrying sublattice;
    None means the full lattice.  Positively proportional flags are equal
    outright.  Otherwise signs are compared on every vector of the
    intersection inside ball(r_check), and the first disagreement is
    returned as witness.
    """
    if f1.rank != f2.rank:
        raise ValueError("flags have different ranks")
    b1 = _sublattice_basis(basis1, f1.rank)
    b2 = _sublattice_basis(basis2, f1.rank)
    if len(f1.vectors) == len(f2.vectors):
        if all(positive_multiple(u, w) for u, w in zip(f1.vectors, f2.vectors)):
            return (True, None)
    inv1 = mat_inverse(b1) if b1 is not None else None
    inv2 = mat_inverse(b2) if b2 is not None else None
    group = lattice_group(f1.rank)
    for v in group.ball(r_check):
        if not any(v):
            continue
        if inv1 is not None and not all(
                x.denominator == 1 for x in row_times_mat(v, inv1)):
            continue
        if inv2 is not None and not all(
                x.denominator == 1 for x in row_times_mat(v, inv2)):
            continue
        if f1.form_sign(v) != f2.form_sign(v):
            return (False, v)
    return (True, None)


ALL_ORDERINGS = "all"


def eigen_orderings(rows, d: int = 2):
    """The one-vector flags preserved by v -> v M, for 2x2 integer M.

    Flags come from column eigenvectors with positive eigenvalue, normalized
    so the last nonzero coordinate is 1, each paired with its negation.
    A positive scalar matrix preserves every ordering and returns the marker
    string "all"; a negative scalar preserves none and returns [].
    """
    m = mat_from_rows(rows)
    n = len(m)
    if all(m[i][j] == 0 for i in range(n) for j in range(n) if i != j) and \
            len({m[i][i] for i in range(n)}) == 1:
        return ALL_ORDERINGS if m[0][0] > 0 else []
    if n != 2:
        raise ValueError("eigen orderings are implemented for 2x2 matrices")
    trace = m[0][0] + m[1][1]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    disc = trace * trace - 4 * det
    if disc <= 0:
        return []
    if disc.denominator != 1:
        raise ValueError("matrix must have integer entries")
    root, part = _square_root_decomposition(int(disc))
    if part == 1:
        raise UnsupportedFieldError(
            "eigenvalues are rational; no irrational one-vector flag is preserved")
    if part != d:
        raise UnsupportedFieldError(
            f"eigenvalues live in Q(sqrt {part}); construct the flag with d={part}")
    flags = []
    for sign in (1, -1):
        lam = QuadRat(Fraction(trace, 2), Fraction(sign * root, 2), d)
        if lam.sign() <= 0:
            continue
        u = _eigenvector(m, lam, d)
        flags.append(FormFlag.of([u], d))
        flags.append(FormFlag.of([tuple(-x for x in u)], d))
    return flags


def _square_root_decomposition(value: int) -> tuple[int, int]:
    """value = root^2 * part with part square free; value must be positive."""
    part = _square_free_part(value)
    root = 1
    rest = value // part
    while root * root < rest:
        root += 1
    return root, part


def _eigenvector(m, lam: QuadRat, d: int) -> tuple:
    """A nonzero column eigenvector of 2x2 m for eigenvalue lam, with the
    last nonzero coordinate normalized to 1."""
    a, b = m[0][0], m[0][1]
    c, dd = m[1][0], m[1][1]
    one = QuadRat.of(1, 0, d)
    if b != 0:
        u = (b * one, lam - a)
    elif c != 0:
        u = (lam - dd, c * one)
    else:
        u = (one, QuadRat.of(0, 0, d)) if (lam - a).sign() == 0 else (QuadRat.of(0, 0, d), one)
    last = next(x for x in reversed(u) if x.sign() != 0)
    return tuple(x / last for x in u)


def is_scalar_star(rows) -> tuple[Fraction | None, tuple | None]:
    """The ratio p/q if M is a positive scalar matrix, else (None, witness).

    Positive scalars are exactly the matrices whose action v -> v M keeps
    every element on its own ray with a positive factor, the lattice form
    of the power-agreement property.  The probe set e_1, ..., e_n followed
    by the all-ones vector is decisive: fixing each axis ray forces a
    positive diagonal, and fixing the all-ones ray forces equal entries.
    The witness is the first probe carried off its ray.
    """
    m = mat_from_rows(rows)
    n = len(m)
    probes = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    probes.append((1,) * n)
    ratio = None
    for u in probes:
        w = row_times_mat(u, m)
        ratio = _rational_positive_multiple(u, w)
        if ratio is None:
            return (None, u)
    return (ratio, None)


def _rational_positive_multiple(u, w) -> Fraction | None:
    """The positive scalar c with w = c u, if one exists."""
    c = None
    for x, y in zip(u, w):
        if (x == 0) != (y == 0):
            return None
        if x == 0:
            continue
        ratio = Fraction(y) / Fraction(x)
        if c is None:
            c = ratio
        elif ratio != c:
            return None
    return c if c is not None and c > 0 else None


def probe_flags(n: int, d: int = 2) -> list[FormFlag]:
    """Standard test flags: both lex flags, plus the slope +-sqrt(d) lines
    when the rank is two."""
    basis = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    flags = [FormFlag.of(basis, d), FormFlag.of(list(reversed(basis)), d)]
    if n == 2:
        root = QuadRat.root(d)
        one = QuadRat.of(1, 0, d)
        flags.append(FormFlag.of([(root, one)], d))
        flags.append(FormFlag.of([(-root, one)], d))
    return flags


def comm_acts_trivially(rows, d: int = 2, r_check: int = 24) -> tuple[bool, FormFlag | None]:
    """Does the commensuration v -> v M act trivially on every vector
    lex ordering of every finite-index sublattice?

    True exactly for positive scalar matrices: those restrict to
    multiplication by p/q between finite-index sublattices and keep every
    sign map where it is.  Otherwise some probe flag is carried to an
    ordering that disagrees with it on the common domain, and the first
    moved probe is returned as witness.
    """
    m = mat_from_rows(rows)
    n = len(m)
    if mat_det(m) == 0:
        raise ValueError("commensuration matrix must be invertible")
    ratio, _ = is_scalar_star(m)
    if ratio is not None:
        return (True, None)
    k = math.lcm(*(x.denominator for row in m for x in row))
    basis1 = tuple(tuple(k * int(i == j) for i in range(n)) for j in range(n))
    basis2 = tuple(tuple(int(k * x) for x in row) for row in m)
    probes = probe_flags(n, d)
    probes.append(FormFlag.of([(1,) * n] + [tuple(int(i == j) for i in range(n))
                                            for j in range(n)], d))
    for flag in probes:
        pushed = matrix_pushforward(m, flag)
        equal, _ = vlo_equal(flag, pushed, basis1, basis2, r_check)
        if not equal:
            return (False, flag)
    raise RuntimeError(f"no probe flag moved within ball({r_check})")
