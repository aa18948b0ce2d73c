"""Finite shadows of the space of left-orderings.

A partial cone assigns a sign to every nonidentity element of a ball so
that inverses get opposite signs and products of positives landing inside
the ball are positive.  Restrictions of genuine orderings are partial
cones; enumerating all of them and searching for extensions to larger
balls gives desk-scale evidence about the full ordering space, such as the
Klein group's four orderings exhausting what radius-6 data allows.

Enumeration is a small backtracking solver: one boolean per inverse pair,
three-literal clauses from the ball's product table, unit propagation, and
positive-first branching so the output comes back in a canonical order.

Isolator membership and the power-agreement condition are bounded searches
and say so: a failed search reports not-found-within-bound rather than a
definitive no, except on lattice groups where parallelism decides exactly.
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass

from .core import (
    NEGATIVE,
    POSITIVE,
    Group,
    IdentitySignError,
    SignOracle,
    SizeLimitError,
    separating_element,
)
from .lattice import LatticeGroup

__all__ = [
    "PartialCone",
    "enumerate_partial_cones",
    "extend_partial_cone",
    "separating_element",
    "isolator_member",
    "isolator_dichotomy_check",
    "condition_star_check",
    "NOT_FOUND",
]

DEFAULT_NODE_LIMIT = 2_000_000
MAX_BALL = 5000

NOT_FOUND = "not-found-within-bound"


def _node_limit(node_limit):
    if node_limit is not None:
        return node_limit
    env = os.environ.get("ORD_MAX_NODES")
    return int(env) if env else DEFAULT_NODE_LIMIT


@dataclass(frozen=True)
class PartialCone:
    """A consistent sign assignment on ball(radius) minus the identity,
    stored as (element, sign) pairs in canonical ball order."""

    group: Group
    radius: int
    signs: tuple

    @functools.cached_property
    def _by_element(self) -> dict:
        return dict(self.signs)

    def sign(self, g) -> int:
        s = self._by_element.get(g)
        if s is None:
            if self.group.is_identity(g):
                raise IdentitySignError("the identity has no sign")
            raise KeyError(f"{self.group.label(g)} is outside the cone's ball")
        return s

    def elements(self) -> tuple:
        return tuple(g for g, _ in self.signs)

    def restricted(self, radius: int) -> "PartialCone":
        if radius > self.radius:
            raise ValueError("restriction radius exceeds the cone's radius")
        inner = set(self.group.ball(radius))
        kept = tuple((g, s) for g, s in self.signs if g in inner)
        return PartialCone(self.group, radius, kept)

    @classmethod
    def from_oracle(cls, oracle: SignOracle, group: Group, radius: int) -> "PartialCone":
        signs = tuple((g, oracle.sign(g)) for g in group.ball(radius)
                      if not group.is_identity(g))
        return cls(group, radius, signs)

    def serialize(self) -> str:
        return "\n".join(
            "{}:{}".format(self.group.label(g), "+" if s > 0 else "-")
            for g, s in self.signs)


class _ConeSearch:
    """Clause solver over inverse-pair variables for one ball."""

    def __init__(self, group: Group, radius: int, node_limit: int):
        data = group.ball_data(radius)
        elems = data.elements
        if len(elems) > MAX_BALL:
            raise SizeLimitError(
                f"ball({radius}) of {group.name} has {len(elems)} elements")
        self.group = group
        self.elements = elems
        self.identity = data.identity_index
        inv = data.inverse_index()
        self.impossible = any(
            inv[i] == i for i in range(len(elems)) if i != self.identity)
        # element index -> signed 1-based variable literal meaning "positive"
        self.lit_of = {}
        self.reps = []
        for i in range(len(elems)):
            if i == self.identity or i in self.lit_of:
                continue
            v = len(self.reps) + 1
            self.lit_of[i] = v
            self.lit_of[inv[i]] = -v
            self.reps.append(i)
        self.clauses = self._build_clauses(data)
        self.adj = [[] for _ in range(len(self.reps))]
        for ci, clause in enumerate(self.clauses):
            for lit in clause:
                self.adj[abs(lit) - 1].append(ci)
        self.limit = node_limit
        self.nodes = 0
        self.assign = [0] * len(self.reps)
        self.trail = []

    def _build_clauses(self, data) -> list:
        # positives g, h with gh in the ball force gh positive:
        # (not g+) or (not h+) or (gh)+
        table = data.product_table()
        ident = self.identity
        out = set()
        for i in range(len(self.elements)):
            if i == ident:
                continue
            row = table[i]
            li = self.lit_of[i]
            for j in range(len(self.elements)):
                k = row[j]
                if j == ident or k < 0 or k == ident:
                    continue
                clause = (-li, -self.lit_of[j], self.lit_of[k])
                if len({abs(x) for x in clause}) < 3:
                    seen = set(clause)
                    if any(-x in seen for x in clause):
                        continue
                out.add(tuple(sorted(set(clause))))
        return sorted(out)

    def _propagate(self, pending: list) -> bool:
        while pending:
            v, val = pending.pop()
            cur = self.assign[v]
            if cur:
                if cur != val:
                    return False
                continue
            self.nodes += 1
            if self.nodes > self.limit:
                raise SizeLimitError(
                    f"cone search exceeded {self.limit} nodes")
            self.assign[v] = val
            self.trail.append(v)
            for ci in self.adj[v]:
                if not self._scan_clause(ci, pending):
                    return False
        return True

    def _scan_clause(self, ci: int, pending: list) -> bool:
        free = None
        for lit in self.clauses[ci]:
            val = self.assign[abs(lit) - 1]
            if val == 0:
                if free is not None:
                    return True
                free = lit
            elif (val > 0) == (lit > 0):
                return True
        if free is None:
            return False
        pending.append((abs(free) - 1, 1 if free > 0 else -1))
        return True

    def solutions(self, preset, max_results=None) -> list:
        if self.impossible:
            return []
        out = []
        if self._propagate(list(preset)):
            self._dfs(0, out, max_results)
        return out

    def _dfs(self, start: int, out: list, max_results):
        v = start
        while v < len(self.reps) and self.assign[v]:
            v += 1
        if v == len(self.reps):
            out.append(tuple(self.assign))
            return
        for val in (1, -1):
            mark = len(self.trail)
            if self._propagate([(v, val)]):
                self._dfs(v + 1, out, max_results)
            while len(self.trail) > mark:
                self.assign[self.trail.pop()] = 0
            if max_results is not None and len(out) >= max_results:
                return

    def cone(self, assignment: tuple, radius: int) -> PartialCone:
        signs = []
        for i, g in enumerate(self.elements):
            if i == self.identity:
                continue
            lit = self.lit_of[i]
            val = assignment[abs(lit) - 1]
            signs.append((g, val if lit > 0 else -val))
        return PartialCone(self.group, radius, tuple(signs))


def enumerate_partial_cones(group: Group, radius: int,
                            node_limit: int | None = None) -> list:
    """All partial cones on ball(radius), in canonical order."""
    search = _ConeSearch(group, radius, _node_limit(node_limit))
    return [search.cone(a, radius) for a in search.solutions(())]


def extend_partial_cone(cone: PartialCone, group: Group, radius2: int,
                        max_results: int | None = None,
                        node_limit: int | None = None) -> list:
    """All completions of the cone to ball(radius2); an empty list
    certifies that no ordering-restriction through radius2 agrees with it.
    max_results stops the search early once enough completions exist."""
    if radius2 <= cone.radius:
        raise ValueError("extension radius must exceed the cone's radius")
    search = _ConeSearch(group, radius2, _node_limit(node_limit))
    data = group.ball_data(radius2)
    preset = []
    for g, s in cone.signs:
        idx = group.locate(data, g)
        if idx is None:
            raise ValueError(
                f"cone element {group.label(g)} is missing from ball({radius2})")
        lit = search.lit_of[idx]
        preset.append((abs(lit) - 1, s if lit > 0 else -s))
    return [search.cone(a, radius2) for a in search.solutions(preset, max_results)]


def isolator_member(group: Group, h, g, bound: int = 8):
    """Is h in the isolator of <g>?

    Exact on lattice groups, where membership is rational parallelism.
    Elsewhere a bounded search for h^k landing on a power of g, reporting
    True or not-found-within-bound.
    """
    if group.is_identity(g):
        raise ValueError("the isolator of the identity is not considered")
    if group.is_identity(h):
        return True
    if isinstance(group, LatticeGroup):
        # parallel iff every 2x2 minor of the stacked pair vanishes
        n = group.rank
        return all(h[i] * g[j] == h[j] * g[i]
                   for i in range(n) for j in range(i + 1, n))
    g_powers = []
    p = g
    for _ in range(bound):
        g_powers.append(p)
        p = group.multiply(p, g)
    hk = h
    for _ in range(bound):
        if any(group.same(hk, q) or group.same(group.invert(hk), q)
               for q in g_powers):
            return True
        hk = group.multiply(hk, h)
    return NOT_FOUND


def isolator_dichotomy_check(group: Group, g, h, radius: int, bound: int = 8):
    """Either the two isolators share only the identity, or their detected
    memberships agree on ball(radius); returns None, or the violating
    element."""
    if group.is_identity(g) or group.is_identity(h):
        raise ValueError("isolator arguments must be nonidentity")
    ball = [f for f in group.ball(radius) if not group.is_identity(f)]
    in_g = {i for i, f in enumerate(ball)
            if isolator_member(group, f, g, bound) is True}
    in_h = {i for i, f in enumerate(ball)
            if isolator_member(group, f, h, bound) is True}
    if not (in_g & in_h):
        return None
    for i in sorted(in_g ^ in_h):
        return ball[i]
    return None


def condition_star_check(phi, group: Group, radius: int, bound: int = 8):
    """Bounded check of power agreement: every g in ball(radius) needs
    n, m in [1, bound] with phi(g)^n = g^m.  Returns None when it holds up
    to the bound, else the first g with no solution.

    phi may be a GroupAutomorphism, or any callable on elements, so
    commensuration representatives that leave the group (scalar maps on a
    lattice) probe as well.
    """
    fwd = getattr(phi, "forward", phi)
    for g in group.ball(radius):
        if group.is_identity(g):
            continue
        image = fwd(g)
        g_powers = []
        p = g
        for _ in range(bound):
            g_powers.append(p)
            p = group.multiply(p, g)
        ok = False
        q = image
        for _ in range(bound):
            if any(group.same(q, gp) for gp in g_powers):
                ok = True
                break
            q = group.multiply(q, image)
        if not ok:
            return g
    return None
