"""Free groups ordered through truncated power-series expansions.

A reduced word maps to a series in noncommuting variables by sending each
generator x to 1 + X and each inverse to the alternating geometric series,
truncated at a fixed total degree.  The word's sign is the sign of the
coefficient on the smallest surviving monomial in (degree, lex) order; the
expansion of a nontrivial word is eventually nonzero, so a truncation that
sees nothing escalates its degree before giving up.  The resulting ordering
of the free group is invariant under conjugation on both sides.

A second family of orderings is not: close one generator into its normal
closure N, a free group on the shifted conjugates x_i = y^i x y^-i, and let N
dominate.  A word is positive when its N-part is series-positive, or when the
N-part is trivial and the leftover power of y is positive.  Conjugating by y
shifts the x_i and preserves signs, but conjugating by x can move a positive
word onto a pure negative power of y.
"""

from __future__ import annotations

import functools
import itertools
import re

from .core import Group, GroupAutomorphism, InconclusiveTruncationError, SignOracle

DEFAULT_DEGREE = 8
ESCALATION_CAP = 32

_INT_TOKEN = re.compile(r"[+-]?\d+")


def reduce_word(letters) -> tuple:
    """Freely reduce a sequence of signed generator indices."""
    out = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


class FreeGroup(Group):
    """A finite-rank free group; elements are reduced signed-index tuples."""

    def __init__(self, rank: int, names: tuple = ()):
        super().__init__()
        if rank < 1:
            raise ValueError("rank must be at least 1")
        if not names:
            names = tuple("xyzuvw"[:rank]) if rank <= 6 else tuple(f"x{i}" for i in range(1, rank + 1))
        if len(names) != rank:
            raise ValueError("need one name per generator")
        self.rank = rank
        self.names = tuple(names)
        self.name = f"F({','.join(self.names)})"

    @property
    def identity(self):
        return ()

    def multiply(self, g, h):
        return reduce_word(itertools.chain(g, h))

    def invert(self, g):
        return tuple(-a for a in reversed(g))

    def generator(self, index: int) -> tuple:
        if not 1 <= index <= self.rank:
            raise ValueError(f"generator index out of range: {index}")
        return (index,)

    def sort_key(self, g):
        return (len(g), tuple((abs(a) - 1, 0 if a > 0 else 1) for a in g))

    def label(self, g):
        if not g:
            return "1"
        parts = []
        for a, run in itertools.groupby(g):
            k = sum(1 for _ in run) * (1 if a > 0 else -1)
            name = self.names[abs(a) - 1]
            parts.append(name if k == 1 else f"{name}^{k}")
        return " ".join(parts)

    def exponent_sum(self, g, index: int) -> int:
        return sum(1 if a == index else -1 if a == -index else 0 for a in g)

    def _ball_elements(self, radius):
        words = [()]
        yield ()
        for _ in range(radius):
            grown = []
            for w in words:
                for i in range(1, self.rank + 1):
                    for a in (i, -i):
                        if w and w[-1] == -a:
                            continue
                        grown.append(w + (a,))
            yield from grown
            words = grown


@functools.cache
def free_group(rank: int, names: tuple = ()) -> FreeGroup:
    return FreeGroup(rank, names)


def parse_word(group: FreeGroup, text: str) -> tuple:
    """Parse 'x y^-1 x^2' (spaces or * between factors) into a reduced word.

    When every generator name is a single lowercase letter, a compact run
    like 'xyX' is also accepted, uppercase meaning the inverse.  Signed
    generator indices like '1 2 -1' work as well.
    """
    text = text.strip()
    if text in ("", "1"):
        return ()
    tokens = text.replace(",", " ").split()
    if tokens and all(_INT_TOKEN.fullmatch(t) for t in tokens):
        letters = [int(t) for t in tokens]
        if any(a == 0 or abs(a) > len(group.names) for a in letters):
            raise ValueError(f"generator index out of range in {text!r}")
        return reduce_word(letters)
    by_name = {n: i + 1 for i, n in enumerate(group.names)}
    compact_ok = all(len(n) == 1 and n.islower() for n in group.names)
    letters = []
    for token in text.replace("*", " ").split():
        if "^" in token:
            name, _, exp = token.partition("^")
            k = int(exp)
        elif token in by_name:
            name, k = token, 1
        elif compact_ok and all(c.lower() in by_name for c in token):
            for c in token:
                i = by_name[c.lower()]
                letters.append(i if c.islower() else -i)
            continue
        else:
            raise ValueError(f"unknown factor {token!r}")
        if name not in by_name:
            raise ValueError(f"unknown generator {name!r}")
        i = by_name[name]
        letters.extend([i if k > 0 else -i] * abs(k))
    return reduce_word(letters)


class TruncSeries:
    """A power series in noncommuting variables, truncated by total degree.

    Terms map monomials, stored as tuples of comparable variable labels, to
    integer coefficients.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict):
        self.degree = degree
        self.terms = terms

    @classmethod
    def unit(cls, degree: int) -> "TruncSeries":
        return cls(degree, {(): 1})

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        cap = self.degree
        out: dict = {}
        for m1, c1 in self.terms.items():
            room = cap - len(m1)
            for m2, c2 in other.terms.items():
                if len(m2) > room:
                    continue
                key = m1 + m2
                acc = out.get(key, 0) + c1 * c2
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
        return TruncSeries(cap, out)

    def minimal_term(self):
        """The least nonconstant monomial in (degree, lex) order, with its
        coefficient, or None if the series is 1 + O(degree+1)."""
        best = None
        for mono in self.terms:
            if mono and (best is None or (len(mono), mono) < (len(best), best)):
                best = mono
        return None if best is None else (best, self.terms[best])


@functools.cache
def _letter_series(label, e: int, degree: int) -> TruncSeries:
    # x -> 1 + X, x^-1 -> 1 - X + X^2 - ... up to the truncation degree
    if e == 1:
        return TruncSeries(degree, {(): 1, (label,): 1})
    terms = {(label,) * j: (-1) ** j for j in range(degree + 1)}
    return TruncSeries(degree, terms)


@functools.cache
def _expand_prefix(pairs: tuple, degree: int) -> TruncSeries:
    if not pairs:
        return TruncSeries.unit(degree)
    label, e = pairs[-1]
    return _expand_prefix(pairs[:-1], degree) * _letter_series(label, e, degree)


def expand_letters(pairs, degree: int) -> TruncSeries:
    """Expand a word given as (label, sign) pairs.

    Prefixes are cached, so the many overlapping words of a ball scan share
    their expansion work.  Callers must not mutate the returned terms.
    """
    return _expand_prefix(tuple(pairs), degree)


def series_sign(pairs, degree: int = DEFAULT_DEGREE, cap: int = ESCALATION_CAP) -> int:
    """Sign of the least surviving monomial's coefficient, escalating the
    truncation degree by doubling until something survives."""
    pairs = tuple(pairs)
    if not pairs:
        return 0
    d = degree
    while True:
        term = expand_letters(pairs, d).minimal_term()
        if term is not None:
            coeff = term[1]
            return 1 if coeff > 0 else -1
        if d >= cap:
            raise InconclusiveTruncationError(
                f"expansion is trivial up to degree {d}; the word may need a larger cap")
        d = min(2 * d, cap)


def _word_pairs(word):
    return tuple((abs(a), 1 if a > 0 else -1) for a in word)


def magnus_sign(word, degree: int = DEFAULT_DEGREE, cap: int = ESCALATION_CAP) -> int:
    return series_sign(_word_pairs(word), degree, cap)


def magnus_oracle(group: FreeGroup, degree: int = DEFAULT_DEGREE,
                  cap: int = ESCALATION_CAP) -> SignOracle:
    """The series ordering of a free group; invariant under conjugation."""
    return SignOracle(
        group=group,
        fn=lambda w: series_sign(_word_pairs(w), degree, cap),
        descriptor=f"series[deg{degree}]",
    )


def closure_rewrite(group: FreeGroup, word, closed: int):
    """Rewrite a word of the normal closure of generator ``closed`` in terms
    of the conjugate generators x_i = y^i x y^-i, as (i, sign) pairs.

    The word must have zero exponent sum in the other generator.
    """
    other = 3 - closed
    t = 0
    pairs = []
    for a in word:
        if abs(a) == other:
            t += 1 if a > 0 else -1
        else:
            pairs.append((t, 1 if a > 0 else -1))
    if t != 0:
        raise ValueError("word is not in the normal closure")
    return tuple(pairs)


def closure_lex_sign(group: FreeGroup, word, closed: int = 1,
                     degree: int = DEFAULT_DEGREE, cap: int = ESCALATION_CAP) -> int:
    if group.rank != 2:
        raise ValueError("closure ordering is defined for rank 2")
    other = 3 - closed
    e = group.exponent_sum(word, other)
    kpart = group.multiply(word, (other,) * (-e) if e < 0 else (-other,) * e)
    if not kpart:
        return 0 if e == 0 else (1 if e > 0 else -1)
    return series_sign(closure_rewrite(group, kpart, closed), degree, cap)


def closure_lex_oracle(group: FreeGroup, closed: int = 1,
                       degree: int = DEFAULT_DEGREE, cap: int = ESCALATION_CAP) -> SignOracle:
    """The normal-closure-dominant ordering of a rank 2 free group.

    Positive words have a series-positive part in the closure of the chosen
    generator, or a trivial part and a positive power of the other one.  The
    ordering is left-invariant but not invariant under conjugation.
    """
    if group.rank != 2:
        raise ValueError("closure ordering is defined for rank 2")
    name = group.names[closed - 1]
    return SignOracle(
        group=group,
        fn=lambda w: closure_lex_sign(group, w, closed, degree, cap),
        descriptor=f"nclex[{name}]",
    )


def substitute(group: FreeGroup, word, images: dict) -> tuple:
    """Apply a generator-image map to a word and reduce."""
    out = []
    for a in word:
        img = images[abs(a)]
        out.extend(img if a > 0 else group.invert(img))
    return reduce_word(out)


def free_automorphism(group: FreeGroup, images: dict, inverse_images: dict,
                      name: str) -> GroupAutomorphism:
    """An automorphism from generator images, with its inverse supplied and
    checked on the generators."""
    for i in range(1, group.rank + 1):
        gen = group.generator(i)
        if substitute(group, substitute(group, gen, images), inverse_images) != gen:
            raise ValueError(f"maps are not mutually inverse at generator {i}")
        if substitute(group, substitute(group, gen, inverse_images), images) != gen:
            raise ValueError(f"maps are not mutually inverse at generator {i}")
    return GroupAutomorphism(
        group=group,
        forward=lambda w: substitute(group, w, images),
        backward=lambda w: substitute(group, w, inverse_images),
        descriptor=name,
    )


def swap_generators(group: FreeGroup) -> GroupAutomorphism:
    if group.rank != 2:
        raise ValueError("swap is defined for rank 2")
    images = {1: (2,), 2: (1,)}
    return free_automorphism(group, images, images, "swap")


def invert_first(group: FreeGroup) -> GroupAutomorphism:
    images = {i: (i,) for i in range(1, group.rank + 1)}
    images[1] = (-1,)
    return free_automorphism(group, images, dict(images), "invert-first")


def shear_first(group: FreeGroup) -> GroupAutomorphism:
    """x -> x y, all other generators fixed."""
    if group.rank < 2:
        raise ValueError("shear needs rank at least 2")
    images = {i: (i,) for i in range(1, group.rank + 1)}
    inverse = dict(images)
    images[1] = (1, 2)
    inverse[1] = (1, -2)
    return free_automorphism(group, images, inverse, "shear")
