"""Left-orderings of concrete groups as computable sign oracles.

An ordering is represented by its positive cone: a total sign function
``sign: G \\ {1} -> {+1, -1}`` with ``sign(g^-1) = -sign(g)`` and with the
positives closed under multiplication.  ``g < h`` means ``sign(g^-1 h) = +1``.
All checks here are desk scale: they quantify over finite balls that every
concrete group exposes.

Ball conventions.  ``ball(r)`` always contains the identity, is closed under
inversion, and is nested in ``ball(r+1)``.  Elements are listed in canonical
order: sorted by (length, letter key) where positive letters precede negative
ones and lower generator indices come first.  Witness searches walk that order,
so results are deterministic.
"""

from __future__ import annotations

import functools
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

LT, EQ, GT = -1, 0, 1
POSITIVE, NEGATIVE = 1, -1

DEFAULT_POWER_BOUND = 8


class BudgetExceededError(RuntimeError):
    """A rewriting budget ran out before the computation settled."""


class SizeLimitError(RuntimeError):
    """A search exceeded its configured node or ball-size limit."""


class InconclusiveTruncationError(RuntimeError):
    """A truncated expansion stayed zero up to the escalation cap."""


class IdentitySignError(ValueError):
    """Sign was queried at the identity; callers must filter it out."""


class NoPositiveError(ValueError):
    """A least-element search found no positive elements in the ball."""


class RefusedConstructionError(ValueError):
    """A construction precondition failed; carries the witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class BallData:
    """A ball with its membership index and a lazily built product table."""

    def __init__(self, group: "Group", radius: int, elements: list):
        self.group = group
        self.radius = radius
        self.elements = elements
        self.pos = {g: i for i, g in enumerate(elements)}
        self.identity_index = self.pos[group.identity]
        self._inverse: list[int] | None = None
        self._products: list[list[int]] | None = None

    def index_of(self, g) -> Optional[int]:
        return self.group.locate(self, g)

    def inverse_index(self) -> list[int]:
        if self._inverse is None:
            grp = self.group
            inv = []
            for g in self.elements:
                j = self.index_of(grp.invert(g))
                if j is None:
                    raise SizeLimitError(
                        f"ball({self.radius}) of {grp.name} is not closed under inversion")
                inv.append(j)
            self._inverse = inv
        return self._inverse

    def product_table(self) -> list[list[int]]:
        """table[i][j] = index of elements[i]*elements[j] in the ball, or -1."""
        if self._products is None:
            grp = self.group
            elems = self.elements
            locate = grp.locate
            mul = grp.multiply
            table = []
            for g in elems:
                row = []
                for h in elems:
                    k = locate(self, mul(g, h))
                    row.append(-1 if k is None else k)
                table.append(row)
            self._products = table
        return self._products


class Group(ABC):
    """A concrete group with hashable normal-form elements and graded balls."""

    name: str = "group"

    @property
    @abstractmethod
    def identity(self):
        ...

    @abstractmethod
    def multiply(self, g, h):
        ...

    @abstractmethod
    def invert(self, g):
        ...

    @abstractmethod
    def sort_key(self, g) -> tuple:
        """Canonical order key: (length, letter key), deterministic."""

    @abstractmethod
    def _ball_elements(self, radius: int) -> Iterable:
        """All elements of ball(radius), deduplicated, any order."""

    def __init__(self):
        self._balls: dict[int, BallData] = {}

    def same(self, g, h) -> bool:
        return g == h

    def is_identity(self, g) -> bool:
        return self.same(g, self.identity)

    def label(self, g) -> str:
        return str(g)

    def power(self, g, k: int):
        if k < 0:
            return self.power(self.invert(g), -k)
        acc = self.identity
        for _ in range(k):
            acc = self.multiply(acc, g)
        return acc

    def ball(self, radius: int) -> list:
        return self.ball_data(radius).elements

    def ball_data(self, radius: int) -> BallData:
        if radius not in self._balls:
            elems = sorted(self._ball_elements(radius), key=self.sort_key)
            data = BallData(self, radius, elems)
            self._augment_ball(data)
            self._balls[radius] = data
        return self._balls[radius]

    def _augment_ball(self, data: BallData) -> None:
        """Hook for subclasses that need extra membership structure."""

    def locate(self, data: BallData, g) -> Optional[int]:
        """Index of g in the ball, or None.  g may be any representative."""
        return data.pos.get(g)


@dataclass(frozen=True)
class SignOracle:
    """A total, computable positive cone on a group."""

    group: Group
    fn: Callable
    descriptor: str

    def sign(self, g) -> int:
        s = self.fn(g)
        if s == 0:
            raise IdentitySignError(
                f"sign({self.group.label(g)}) queried at the identity under {self.descriptor}")
        return s

    def __repr__(self):
        return f"SignOracle({self.descriptor})"


@dataclass(frozen=True)
class GroupAutomorphism:
    """An automorphism with explicit forward and backward maps."""

    group: Group
    forward: Callable
    backward: Callable
    descriptor: str

    def __repr__(self):
        return f"GroupAutomorphism({self.descriptor})"


def compose_automorphisms(phi: GroupAutomorphism, psi: GroupAutomorphism) -> GroupAutomorphism:
    """phi after psi (forward = phi.forward of psi.forward)."""
    return GroupAutomorphism(
        group=phi.group,
        forward=lambda g: phi.forward(psi.forward(g)),
        backward=lambda g: psi.backward(phi.backward(g)),
        descriptor=f"{phi.descriptor}*{psi.descriptor}",
    )


def inner_automorphism(group: Group, g) -> GroupAutomorphism:
    ginv = group.invert(g)
    return GroupAutomorphism(
        group=group,
        forward=lambda h: group.multiply(group.multiply(g, h), ginv),
        backward=lambda h: group.multiply(group.multiply(ginv, h), g),
        descriptor=f"inner[{group.label(g)}]",
    )


@dataclass
class AxiomReport:
    passed: bool
    violations: list = field(default_factory=list)

    def __str__(self):
        if self.passed:
            return "passed"
        head = ", ".join(f"{kind}{tuple(map(str, w))}" for kind, w in self.violations[:3])
        return f"failed ({len(self.violations)} violations: {head})"


def compare(oracle: SignOracle, g, h) -> int:
    """LT, EQ or GT for g versus h; left-invariant by construction."""
    grp = oracle.group
    if grp.same(g, h):
        return EQ
    sign = oracle.sign(grp.multiply(grp.invert(g), h))
    return LT if sign == POSITIVE else GT


def verify_cone_axioms(oracle: SignOracle, group: Group, radius: int,
                       max_violations: int = 100) -> AxiomReport:
    """Check the cone axioms on ball(radius).

    Every nonidentity g must satisfy sign(g^-1) = -sign(g), and the product
    of any two positives from the ball must be positive.  Products are
    signed directly by the oracle, so closure is not clipped to the ball;
    a product of positives collapsing to the identity is caught the same
    way.  Violations carry their witnesses.
    """
    violations = []
    positives = []
    for g in group.ball(radius):
        if group.is_identity(g):
            continue
        s = oracle.sign(g)
        if oracle.fn(group.invert(g)) != -s:
            violations.append(("inverse-sign", (g,)))
            if len(violations) >= max_violations:
                return AxiomReport(False, violations)
        if s == POSITIVE:
            positives.append(g)
    for g in positives:
        for h in positives:
            if oracle.fn(group.multiply(g, h)) != POSITIVE:
                violations.append(("closure", (g, h)))
                if len(violations) >= max_violations:
                    return AxiomReport(False, violations)
    return AxiomReport(not violations, violations)


def act_automorphism(phi: GroupAutomorphism, oracle: SignOracle) -> SignOracle:
    """Pushforward ordering: the new sign of g is the old sign of phi^-1(g)."""
    return SignOracle(
        group=oracle.group,
        fn=lambda g: oracle.fn(phi.backward(g)),
        descriptor=f"{phi.descriptor}.{oracle.descriptor}",
    )


def conjugate_ordering(g, oracle: SignOracle) -> SignOracle:
    """The ordering g(P): new sign of h is the old sign of g^-1 h g."""
    grp = oracle.group
    ginv = grp.invert(g)
    return SignOracle(
        group=grp,
        fn=lambda h: oracle.fn(grp.multiply(grp.multiply(ginv, h), g)),
        descriptor=f"conj[{grp.label(g)}].{oracle.descriptor}",
    )


def check_bi_invariance(oracle: SignOracle, group: Group, radius: int):
    """None if conjugation preserves signs on the ball, else the first (g, p)
    in canonical order with sign(p) = + and sign(g p g^-1) = -."""
    ball = group.ball(radius)
    ident = group.identity
    psigns = {}
    for p in ball:
        if not group.same(p, ident):
            psigns[p] = oracle.sign(p)
    for g in ball:
        if group.same(g, ident):
            continue
        ginv = group.invert(g)
        for p in ball:
            if group.same(p, ident) or psigns[p] != POSITIVE:
                continue
            conj = group.multiply(group.multiply(g, p), ginv)
            if oracle.sign(conj) == NEGATIVE:
                return (g, p)
    return None


def least_positive_in_ball(oracle: SignOracle, group: Group, radius: int):
    """The minimum, under the ordering, of the positive elements of the ball."""
    ident = group.identity
    best = None
    for g in group.ball(radius):
        if group.same(g, ident) or oracle.sign(g) != POSITIVE:
            continue
        if best is None or compare(oracle, g, best) == LT:
            best = g
    if best is None:
        raise NoPositiveError(f"no positive elements in ball({radius}) of {group.name}")
    return best


def certify_least_positive(oracle: SignOracle, group: Group, radius: int, candidate) -> bool:
    """True iff candidate is positive and <= every positive element of the ball."""
    if oracle.sign(candidate) != POSITIVE:
        return False
    ident = group.identity
    for g in group.ball(radius):
        if group.same(g, ident) or oracle.sign(g) != POSITIVE:
            continue
        if compare(oracle, candidate, g) == GT:
            return False
    return True


def check_convex_in_ball(member: Callable, oracle: SignOracle, group: Group, radius: int):
    """None if the subgroup looks convex on the ball, else a witness (g, f, h)
    with g, h in the subgroup, f outside, and g < f < h.

    ``member`` must describe a subgroup: it is validated for closure under
    inversion and under in-ball products before the convexity scan.
    """
    ball = group.ball(radius)
    data = group.ball_data(radius)
    flags = [bool(member(g)) for g in ball]
    if not flags[data.identity_index]:
        raise ValueError("subgroup predicate rejects the identity")
    inv = data.inverse_index()
    for i, g in enumerate(ball):
        if flags[i] and not flags[inv[i]]:
            raise ValueError(f"subgroup predicate not closed under inversion at {group.label(g)}")
    table = data.product_table()
    for i in range(len(ball)):
        if not flags[i]:
            continue
        row = table[i]
        for j in range(len(ball)):
            if flags[j] and row[j] >= 0 and not flags[row[j]]:
                raise ValueError(
                    f"subgroup predicate not closed under products at "
                    f"{group.label(ball[i])}*{group.label(ball[j])}")
    # order the ball, then look for an outsider strictly between two members
    key = functools.cmp_to_key(lambda a, b: compare(oracle, ball[a], ball[b]))
    order = sorted(range(len(ball)), key=key)
    member_positions = [p for p, i in enumerate(order) if flags[i]]
    if len(member_positions) < 2:
        return None
    lo, hi = member_positions[0], member_positions[-1]
    candidates = [order[p] for p in range(lo + 1, hi) if not flags[order[p]]]
    if not candidates:
        return None
    f_idx = min(candidates, key=lambda i: group.sort_key(ball[i]))
    fpos = order.index(f_idx)
    g_idx = next(order[p] for p in range(fpos - 1, -1, -1) if flags[order[p]])
    h_idx = next(order[p] for p in range(fpos + 1, len(order)) if flags[order[p]])
    return (ball[g_idx], ball[f_idx], ball[h_idx])


def power_equates(phi: GroupAutomorphism, group: Group, g, bound: int,
                  negative: bool = False) -> Optional[tuple[int, int]]:
    """Search n, m in [1, bound] with phi(g)^n = g^m (or g^-m if negative)."""
    image = phi.forward(g)
    img_pow = image
    for n in range(1, bound + 1):
        base = group.invert(g) if negative else g
        gp = base
        for m in range(1, bound + 1):
            if group.same(img_pow, gp):
                return (n, m)
            gp = group.multiply(gp, base)
        img_pow = group.multiply(img_pow, image)
    return None


def distinguishing_witness(phi: GroupAutomorphism, catalog: list[SignOracle],
                           group: Group, radius: int,
                           power_bound: int = DEFAULT_POWER_BOUND):
    """First (oracle, g) in catalog-then-ball order with sign(g) = + and
    sign(phi(g)) = -, certifying that phi moves that ordering.

    A bounded power check runs first: if phi(g)^n equals g^-m, any ordering
    with g positive must push phi(g) negative, so the oracle call is skipped.
    """
    ball = group.ball(radius)
    ident = group.identity
    flips = {}
    for P in catalog:
        for g in ball:
            if group.same(g, ident):
                continue
            if P.sign(g) != POSITIVE:
                continue
            if g not in flips:
                flips[g] = power_equates(phi, group, g, power_bound, negative=True) is not None
            if flips[g] or P.sign(phi.forward(g)) == NEGATIVE:
                return (P, g)
    return None


def separating_element(o1, o2, group: Group, radius: int):
    """First ball element where the two orderings disagree, or None.

    Accepts anything with a ``sign`` method defined on the ball, so partial
    cones work as well as full oracles.
    """
    ident = group.identity
    for g in group.ball(radius):
        if group.same(g, ident):
            continue
        if o1.sign(g) != o2.sign(g):
            return g
    return None


def orderings_agree_on_ball(o1, o2, group: Group, radius: int) -> bool:
    return separating_element(o1, o2, group, radius) is None
