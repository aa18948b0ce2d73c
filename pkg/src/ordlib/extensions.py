"""Ordered split extensions by Z, at three sizes.

The Klein bottle group <x, y | x y x^-1 = y^-1> carries exactly four
left-orderings; they are realized here as parameterized sign maps together
with the automorphism family x -> x^e y^m, y -> y^d, whose action on the
four orderings has a large kernel.

K = Q^2 x| Z twists the rational plane by a fixed hyperbolic integer matrix
and is ordered quotient-first: the Z letter dominates, and the plane is read
through a form flag.  G = K x| Z twists K by the negated matrix and is
ordered kernel-first, which is legitimate only because that twist fixes the
K-ordering; the constructor checks this on a ball and refuses otherwise.
The refusal is not a formality: rebuilding the Klein group as <y> x| Z
trips it, since conjugation by x inverts y.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    NEGATIVE,
    POSITIVE,
    Group,
    GroupAutomorphism,
    IdentitySignError,
    RefusedConstructionError,
    SignOracle,
    act_automorphism,
    check_bi_invariance,
    least_positive_in_ball,
)
from .lattice import (
    FormFlag,
    TotalityError,
    eigen_orderings,
    mat_from_rows,
    mat_identity,
    mat_inverse,
    mat_mul,
    row_times_mat,
    vlo_equal,
)
from .magnus import free_group
from .quadfield import QuadRat


class KleinGroup(Group):
    """The Klein bottle group; elements are normal-form pairs (a, b)
    standing for y^a x^b, so x y x^-1 = y^-1 makes x-conjugation flip
    the sign of a."""

    name = "Klein"

    @property
    def identity(self):
        return (0, 0)

    def multiply(self, g, h):
        a, b = g
        c, d = h
        return (a + c if b % 2 == 0 else a - c, b + d)

    def invert(self, g):
        a, b = g
        return (-a if b % 2 == 0 else a, -b)

    def sort_key(self, g):
        # least geodesic spells the x-run first: y^a x^b = x^b y^{a'}
        # with a' = (-1)^b a
        a, b = g
        if b:
            ax = a if b % 2 == 0 else -a
            letters = ((0 if b > 0 else 1),) * abs(b) + ((2 if ax > 0 else 3),) * abs(ax)
        else:
            letters = ((2 if a > 0 else 3),) * abs(a)
        return (abs(a) + abs(b), letters)

    def label(self, g):
        a, b = g
        if a == 0 and b == 0:
            return "1"
        parts = []
        if a:
            parts.append("y" if a == 1 else f"y^{a}")
        if b:
            parts.append("x" if b == 1 else f"x^{b}")
        return " ".join(parts)

    def _ball_elements(self, radius):
        for a in range(-radius, radius + 1):
            rest = radius - abs(a)
            for b in range(-rest, rest + 1):
                yield (a, b)


@functools.cache
def klein_group() -> KleinGroup:
    return KleinGroup()


@dataclass(frozen=True)
class KleinOrderingParams:
    """Labels (s, t) of a Klein cone: s orients the x-direction and t the
    y-direction inside the kernel <y>."""

    s: int
    t: int

    def __post_init__(self):
        if self.s not in (1, -1) or self.t not in (1, -1):
            raise ValueError("signs must be +1 or -1")

    def descriptor(self) -> str:
        return "klein[{}{}]".format("+" if self.s > 0 else "-",
                                    "+" if self.t > 0 else "-")


KLEIN_PARAMS = tuple(KleinOrderingParams(s, t)
                     for s, t in ((1, 1), (1, -1), (-1, 1), (-1, -1)))


def klein_sign(params: KleinOrderingParams, g) -> int:
    """Sign of y^a x^b: a nonzero x-exponent decides through s, and inside
    the kernel the y-exponent decides through t."""
    a, b = g
    if b:
        return POSITIVE if params.s * b > 0 else NEGATIVE
    if a:
        return POSITIVE if params.t * a > 0 else NEGATIVE
    raise IdentitySignError("the identity has no sign")


def klein_ordering(params: KleinOrderingParams,
                   group: KleinGroup | None = None) -> SignOracle:
    if group is None:
        group = klein_group()
    return SignOracle(
        group=group,
        fn=lambda g: 0 if g == (0, 0) else klein_sign(params, g),
        descriptor=params.descriptor())


def klein_orderings(group: KleinGroup | None = None) -> list:
    return [klein_ordering(p, group) for p in KLEIN_PARAMS]


@dataclass(frozen=True)
class KleinAut:
    """The endomorphism x -> x^eps y^m, y -> y^delta; a bijection for
    eps, delta in {1, -1}, and the whole automorphism family arises
    this way."""

    eps: int
    delta: int
    m: int

    def __post_init__(self):
        if self.eps not in (1, -1) or self.delta not in (1, -1):
            raise ValueError("eps and delta must be +1 or -1")
        group = klein_group()
        fx, fy = self.apply((0, 1)), self.apply((1, 0))
        word = group.multiply(group.multiply(group.multiply(fx, fy), group.invert(fx)), fy)
        if word != group.identity:
            raise ValueError("the defining relation is not preserved")

    def apply(self, g):
        # y^a x^b maps to y^{da} (x^e y^m)^b; squares of x^e y^m shed the
        # tail, so only the parity of b sees m
        a, b = g
        return (self.delta * a - self.m * (b % 2), self.eps * b)

    def compose(self, other: "KleinAut") -> "KleinAut":
        """self after other."""
        return KleinAut(self.eps * other.eps, self.delta * other.delta,
                        self.m + self.delta * other.m)

    def inverse(self) -> "KleinAut":
        return KleinAut(self.eps, self.delta, -self.delta * self.m)

    def action_on_labels(self, params: KleinOrderingParams) -> KleinOrderingParams:
        """Where the pushforward sends the cone P_(s,t); m drops out."""
        return KleinOrderingParams(params.s * self.eps, params.t * self.delta)

    def descriptor(self) -> str:
        return f"klein-aut[{self.eps},{self.delta},{self.m}]"

    def to_automorphism(self, group: KleinGroup | None = None) -> GroupAutomorphism:
        if group is None:
            group = klein_group()
        inv = self.inverse()
        return GroupAutomorphism(group=group, forward=self.apply,
                                 backward=inv.apply, descriptor=self.descriptor())


def klein_aut_apply(phi: KleinAut, g):
    """Image of a normal-form pair under a family member."""
    return phi.apply(g)


def klein_inner(g) -> KleinAut:
    """Conjugation by y^a x^b as a member of the family."""
    a, b = g
    return KleinAut(1, -1 if b % 2 else 1, -2 * a)


def klein_family(m_bound: int):
    """All family members with |m| <= m_bound, in canonical order."""
    for eps in (1, -1):
        for delta in (1, -1):
            for m in range(-m_bound, m_bound + 1):
                yield KleinAut(eps, delta, m)


def klein_action_kernel(m_bound: int, radius: int = 8) -> list:
    """Family members fixing all four orderings, checked sign by sign on
    ball(radius).  Contains every (1, 1, m), inner-by-y among them, which
    is why the action on the ordering space is not faithful."""
    if m_bound < 1:
        raise ValueError("m_bound must be at least 1")
    group = klein_group()
    ball = [g for g in group.ball(radius) if g != group.identity]
    orderings = klein_orderings(group)
    kernel = []
    for phi in klein_family(m_bound):
        auto = phi.to_automorphism(group)
        if all(act_automorphism(auto, ordering).sign(g) == ordering.sign(g)
               for ordering in orderings for g in ball):
            kernel.append(phi)
    return kernel


def klein_action_witness(phi: KleinAut, radius: int = 2):
    """The first (ordering, element) the pushforward moves, scanning
    orderings and the ball in canonical order; None on the kernel."""
    group = klein_group()
    auto = phi.to_automorphism(group)
    for ordering in klein_orderings(group):
        moved = act_automorphism(auto, ordering)
        for g in group.ball(radius):
            if g == group.identity:
                continue
            if moved.sign(g) != ordering.sign(g):
                return (ordering, g)
    return None


class RationalPlaneGroup(Group):
    """Q^2 as an additive group, exhausted by weighted balls.

    A coordinate p/q in lowest terms has weight |p| + q - 1, so 0 is free,
    integers cost their absolute value, and denominators up to r + 1 appear
    in ball(r).  The weight of a coordinate equals that of its negative,
    which keeps the balls inverse-closed.
    """

    name = "Q^2"
    rank = 2

    @property
    def identity(self):
        return (Fraction(0), Fraction(0))

    def multiply(self, g, h):
        return (g[0] + h[0], g[1] + h[1])

    def invert(self, g):
        return (-g[0], -g[1])

    def weight(self, g) -> int:
        return sum(abs(c.numerator) + c.denominator - 1 for c in g)

    def sort_key(self, g):
        return (self.weight(g), g)

    def label(self, g):
        return f"({g[0]}, {g[1]})"

    def _ball_elements(self, radius):
        for w1 in range(radius + 1):
            for c1 in _weighted_rationals(w1):
                for w2 in range(radius + 1 - w1):
                    for c2 in _weighted_rationals(w2):
                        yield (c1, c2)


@functools.cache
def _weighted_rationals(w: int) -> tuple:
    """All rationals of weight exactly w, i.e. |p| + q - 1 = w in lowest
    terms."""
    if w == 0:
        return (Fraction(0),)
    out = []
    for q in range(1, w + 2):
        p = w + 1 - q
        if p and Fraction(p, q).denominator == q:
            out.append(Fraction(p, q))
            out.append(Fraction(-p, q))
    return tuple(out)


@functools.cache
def rational_plane() -> RationalPlaneGroup:
    return RationalPlaneGroup()


def plane_flag_oracle(flag: FormFlag,
                      group: RationalPlaneGroup | None = None) -> SignOracle:
    """A form-flag ordering read on exact rational coordinates."""
    if group is None:
        group = rational_plane()
    if not flag.is_total():
        raise TotalityError(f"{flag.descriptor()} is not total")
    return SignOracle(group=group, fn=flag.form_sign, descriptor=flag.descriptor())


class ZExtensionGroup(Group):
    """A split extension base x| Z; elements are pairs (b, c), and moving
    the Z letter past a base element applies the twist c times."""

    def __init__(self, base: Group, twist, twist_inv, name: str, twist_power=None):
        super().__init__()
        self.base = base
        self.twist = twist
        self.twist_inv = twist_inv
        self.name = name
        self._twist_power = twist_power

    @property
    def identity(self):
        return (self.base.identity, 0)

    def twist_apply(self, c: int, b):
        if c == 0:
            return b
        if self._twist_power is not None:
            return self._twist_power(c)(b)
        f = self.twist if c > 0 else self.twist_inv
        for _ in range(abs(c)):
            b = f(b)
        return b

    def multiply(self, g, h):
        (b1, c1), (b2, c2) = g, h
        return (self.base.multiply(b1, self.twist_apply(c1, b2)), c1 + c2)

    def invert(self, g):
        b, c = g
        return (self.twist_apply(-c, self.base.invert(b)), -c)

    def weight(self, g) -> int:
        b, c = g
        return self.base.sort_key(b)[0] + abs(c)

    def sort_key(self, g):
        b, c = g
        return (self.weight(g), abs(c), 0 if c >= 0 else 1, self.base.sort_key(b))

    def label(self, g):
        b, c = g
        return f"({self.base.label(b)}, {c})"

    def _ball_elements(self, radius):
        # twisting can push an inverse past the weight bound, so the
        # weight-graded set is symmetrized to stay inverse-closed
        seen = set()
        for c in range(-radius, radius + 1):
            for b in self.base.ball(radius - abs(c)):
                for g in ((b, c), self.invert((b, c))):
                    if g not in seen:
                        seen.add(g)
                        yield g


def twist_automorphism(ext: ZExtensionGroup) -> GroupAutomorphism:
    """Conjugation by the positive Z letter, restricted to the base."""
    return GroupAutomorphism(group=ext.base, forward=ext.twist,
                             backward=ext.twist_inv,
                             descriptor=f"twist[{ext.name}]")


HYPERBOLIC_MATRIX = ((1, 2), (1, 1))


@functools.cache
def _hyperbolic_power(c: int, negated: bool) -> tuple:
    mat = mat_from_rows(HYPERBOLIC_MATRIX)
    if negated:
        mat = tuple(tuple(-x for x in row) for row in mat)
    if c == 0:
        return mat_identity(2)
    if c < 0:
        return mat_inverse(_hyperbolic_power(-c, negated))
    return mat_mul(_hyperbolic_power(c - 1, negated), mat)


def _plane_matrix_power(negated: bool):
    def power(c: int):
        mat = _hyperbolic_power(c, negated)
        return lambda v: row_times_mat(v, mat)
    return power


@functools.cache
def k_group() -> ZExtensionGroup:
    """K = Q^2 x| Z: the Z letter acts on row vectors by the fixed
    hyperbolic matrix."""
    power = _plane_matrix_power(False)
    return ZExtensionGroup(rational_plane(), power(1), power(-1), "K",
                           twist_power=power)


@functools.cache
def g_group() -> ZExtensionGroup:
    """G = K x| Z: the new letter t acts on K through the negated matrix,
    which commutes with K's own twist."""
    plane_power = _plane_matrix_power(True)

    def power(m: int):
        f = plane_power(m)
        return lambda g: (f(g[0]), g[1])

    return ZExtensionGroup(k_group(), power(1), power(-1), "G", twist_power=power)


@functools.cache
def k_eigen_flag() -> FormFlag:
    """The flag (-sqrt2, 1): the negated matrix scales it by sqrt2 - 1 > 0,
    so the G-twist fixes the K-ordering built on it."""
    return FormFlag.of([(-QuadRat.root(2), QuadRat.of(1, 0, 2))])


def k_ordering_sign(u: FormFlag, g) -> int:
    """Quotient-dominant sign on K: the Z exponent decides, and the plane
    part is read through the form flag when it is zero."""
    v, c = g
    if c:
        return POSITIVE if c > 0 else NEGATIVE
    s = u.form_sign(v)
    if s == 0:
        raise IdentitySignError("the identity has no sign")
    return s


def k_ordering(u: FormFlag, group: ZExtensionGroup | None = None) -> SignOracle:
    if group is None:
        group = k_group()
    if not u.is_total():
        raise TotalityError(f"{u.descriptor()} is not total")

    def fn(g):
        return 0 if g == group.identity else k_ordering_sign(u, g)

    return SignOracle(group=group, fn=fn, descriptor=f"k-lex[{u.descriptor()}]")


def conjugation_preserves(pk: SignOracle, t_action: GroupAutomorphism,
                          radius: int):
    """None when the action fixes every sign on ball(radius) of the base;
    otherwise the first flipped element in canonical order."""
    group = pk.group
    for g in group.ball(radius):
        if group.is_identity(g):
            continue
        if pk.sign(t_action.forward(g)) != pk.sign(g):
            return g
    return None


def lex_extension_sign(pk: SignOracle, g) -> int:
    """Kernel-dominant sign on base x| Z: a nontrivial base part decides,
    and pure powers of the new letter take the sign of the exponent."""
    b, n = g
    if not pk.group.is_identity(b):
        return pk.sign(b)
    if n:
        return POSITIVE if n > 0 else NEGATIVE
    raise IdentitySignError("the identity has no sign")


def lex_extension(pk: SignOracle, ext: ZExtensionGroup,
                  r_check: int = 6) -> SignOracle:
    """Order base x| Z with the base dominant.

    Left-invariance needs conjugation by the Z letter to fix the base
    cone; that is checked on ball(r_check) of the base and the
    construction is refused, with the moved element as witness, when it
    fails.  The Z letter comes out as the least positive element.
    """
    if ext.base is not pk.group:
        raise ValueError("the ordering and the extension have different bases")
    witness = conjugation_preserves(pk, twist_automorphism(ext), r_check)
    if witness is not None:
        raise RefusedConstructionError(
            f"conjugation by the Z letter moves {ext.base.label(witness)} "
            "across the cone", witness=witness)

    def fn(g):
        return 0 if g == ext.identity else lex_extension_sign(pk, g)

    return SignOracle(group=ext, fn=fn, descriptor=f"lex[{pk.descriptor}]")


@functools.cache
def g_ordering(r_check: int = 6) -> SignOracle:
    """The lexicographic ordering of G over the eigenvector flag; t is its
    least positive element."""
    return lex_extension(k_ordering(k_eigen_flag()), g_group(), r_check)


def klein_as_extension() -> ZExtensionGroup:
    """The Klein group rebuilt as <y> x| Z, where conjugation by the Z
    letter inverts y; ordering it kernel-first is impossible, and
    lex_extension refuses with witness y."""
    base = free_group(1, ("y",))
    return ZExtensionGroup(base, base.invert, base.invert, "Klein-ext")


@dataclass(frozen=True)
class ExtensionEvidence:
    """Why no left-ordering of G is conjugation-invariant."""

    eigen_a: tuple
    eigen_neg_a: tuple
    common: tuple
    bi_invariance_witness: tuple | None


def g_not_biorderable_evidence(radius: int = 3) -> ExtensionEvidence:
    """The plane orderings preserved by the matrix and by its negation
    share nothing, and the constructed G-ordering shows an explicit
    conjugation flip inside ball(radius)."""
    eigen_a = tuple(eigen_orderings(HYPERBOLIC_MATRIX))
    neg = tuple(tuple(-x for x in row) for row in HYPERBOLIC_MATRIX)
    eigen_neg = tuple(eigen_orderings(neg))
    common = tuple(f for f in eigen_a
                   if any(vlo_equal(f, h)[0] for h in eigen_neg))
    witness = check_bi_invariance(g_ordering(), g_group(), radius)
    return ExtensionEvidence(eigen_a, eigen_neg, common, witness)


def g_least_positive(radius: int = 3):
    """The least positive element of the G-ordering in ball(radius)."""
    return least_positive_in_ball(g_ordering(), g_group(), radius)
