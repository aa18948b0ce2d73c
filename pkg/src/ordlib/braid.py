"""Braid groups ordered by lowest-generator sign.

Words are tuples of nonzero ints: i stands for the i-th Artin generator,
-i for its inverse.  A handle is a subword s1^e ... s1^-e with no other
occurrence of the first generator between the pair; deleting the pair and
replacing every s2^d inside by s2^-e s1^d s2^e yields the same braid.
Handle reduction terminates and leaves a word whose first-generator letters
all share one sign; that sign orders the group once words with no first
generator at all are handled recursively, shifting every index down one.

The resulting ordering has the last generator as its least positive element.
Composing with the index-reversing flip gives the mirror ordering, whose
least positive element is the first generator, and grafting the plain
ordering onto the flip ordering's convex chain of prefix parabolic subgroups
produces one ordering per generator, each with that generator least.
"""

from __future__ import annotations

import functools
import itertools
from collections import deque

from .core import BudgetExceededError, Group, GroupAutomorphism, SignOracle

DEFAULT_BUDGET = 10 ** 6


def reduce_free(letters) -> tuple:
    out = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def _reduce_main(word, budget: list) -> list:
    """Reduce handles until the lowest generator is sign definite.

    One stack of letter positions per generator index: an arriving letter
    first tries to cancel freely, then closes the innermost handle of its
    own index, but only when no lower-index letter sits inside the pair;
    such a letter would invalidate the rewriting, so the pair is left in
    place instead.  The conjugated interior goes back on the pending queue
    for reprocessing.  Fired handles therefore never contain a live handle
    of the next generator up, which is what makes the loop terminate, and
    handles of generator 1 are never blocked, so the result has all its
    first-generator letters of one sign.  budget is a one-cell list
    counting remaining handle reductions.
    """
    pending = deque(word)
    out: list = []
    stacks: dict[int, list] = {}
    while pending:
        a = pending.popleft()
        j = abs(a)
        if out and out[-1] == -a:
            top = stacks.get(j)
            if top and top[-1] == len(out) - 1:
                top.pop()
            out.pop()
            continue
        stack = stacks.setdefault(j, [])
        if stack and out[stack[-1]] == -a and not any(
                s and s[-1] > stack[-1]
                for k, s in stacks.items() if k < j):
            start = stack.pop()
            inner = out[start + 1:]
            del out[start:]
            for s in stacks.values():
                while s and s[-1] >= start:
                    s.pop()
            budget[0] -= 1
            if budget[0] < 0:
                raise BudgetExceededError("handle reduction budget exhausted")
            e = 1 if a < 0 else -1
            step = j + 1
            repl = []
            for b in inner:
                if abs(b) == step:
                    repl.extend((-e * step, j if b > 0 else -j, e * step))
                else:
                    repl.append(b)
            pending.extendleft(reversed(repl))
        else:
            stack.append(len(out))
            out.append(a)
    return out


def handle_reduce(word, budget: int = DEFAULT_BUDGET) -> tuple:
    """Reduce every handle of the first generator, returning the final word."""
    return tuple(_reduce_main(reduce_free(word), [budget]))


def sign_cascade(word, budget: int = DEFAULT_BUDGET):
    """(sign, level) of a word: after reducing handles of the lowest
    generator, its letters share one sign, which decides; a word free of the
    lowest generator recurses one level up.  The trivial word gives (0, 0).
    """
    box = [budget]
    w: list | tuple = reduce_free(word)
    level = 1
    while True:
        w = _reduce_main(w, box)
        if not w:
            return (0, 0)
        lowest = [a for a in w if abs(a) == 1]
        if lowest:
            return ((1 if lowest[0] > 0 else -1), level)
        w = [(abs(a) - 1) * (1 if a > 0 else -1) for a in w]
        level += 1


def dehornoy_sign(word, budget: int = DEFAULT_BUDGET) -> int:
    return sign_cascade(word, budget)[0]


def flip_word(n: int, word) -> tuple:
    return tuple((1 if a > 0 else -1) * (n - abs(a)) for a in word)


def permutation_of(n: int, word) -> tuple:
    perm = list(range(n))
    for a in word:
        i = abs(a) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return tuple(perm)


def exponent_sum(word) -> int:
    return sum(1 if a > 0 else -1 for a in word)


def crossing_profile(n: int, word) -> tuple:
    """Signed crossing counts per strand pair, strands labeled by start.

    Both braid relations preserve the profile, so together with the
    permutation it separates braids far beyond the exponent sum (which is
    its total).  Pairs (p, q), p < q, are indexed in lex order.
    """
    arr = list(range(n))
    counts = [0] * (n * (n - 1) // 2)
    for a in word:
        i = abs(a) - 1
        p, q = arr[i], arr[i + 1]
        if p > q:
            p, q = q, p
        counts[p * (2 * n - p - 1) // 2 + (q - p - 1)] += 1 if a > 0 else -1
        arr[i], arr[i + 1] = arr[i + 1], arr[i]
    return tuple(counts)


class BraidGroup(Group):
    """The braid group on n strands; elements are reduced words, compared
    through the sign cascade.  Ball elements carry their least geodesic word.
    """

    def __init__(self, strands: int, budget: int = DEFAULT_BUDGET):
        super().__init__()
        if strands < 2:
            raise ValueError("need at least 2 strands")
        self.strands = strands
        self.budget = budget
        self.name = f"B{strands}"
        self._id_key = (tuple(range(strands)), (0,) * (strands * (strands - 1) // 2))

    @property
    def identity(self):
        return ()

    def multiply(self, g, h):
        return reduce_free(itertools.chain(g, h))

    def invert(self, g):
        return tuple(-a for a in reversed(g))

    def generator(self, index: int) -> tuple:
        if not 1 <= index < self.strands:
            raise ValueError(f"generator index out of range: {index}")
        return (index,)

    def invariant_key(self, g) -> tuple:
        """(permutation, crossing profile): equal on equal braids, and the
        pair is a homomorphism image, so unequal keys prove inequality."""
        return (permutation_of(self.strands, g), crossing_profile(self.strands, g))

    def is_identity(self, g) -> bool:
        if not g:
            return True
        if self.invariant_key(g) != self._id_key:
            return False
        return dehornoy_sign(g, self.budget) == 0

    def same(self, g, h) -> bool:
        if g == h:
            return True
        if self.invariant_key(g) != self.invariant_key(h):
            return False
        return dehornoy_sign(self.multiply(g, self.invert(h)), self.budget) == 0

    def sort_key(self, g):
        return (len(g), tuple((abs(a) - 1, 0 if a > 0 else 1) for a in g))

    def label(self, g):
        if not g:
            return "1"
        parts = []
        for a, run in itertools.groupby(g):
            k = sum(1 for _ in run) * (1 if a > 0 else -1)
            parts.append(f"s{abs(a)}" if k == 1 else f"s{abs(a)}^{k}")
        return " ".join(parts)

    def _letters(self):
        for i in range(1, self.strands):
            yield i
            yield -i

    def _ball_elements(self, radius):
        # BFS by length; scanning parents and letters in canonical order
        # makes the first word reaching an element its least geodesic.
        buckets: dict = {self._id_key: [()]}
        level = [()]
        yield ()
        for _ in range(radius):
            grown = []
            for w in level:
                for a in self._letters():
                    if w and w[-1] == -a:
                        continue
                    c = w + (a,)
                    known = buckets.setdefault(self.invariant_key(c), [])
                    if any(self.same(c, v) for v in known):
                        continue
                    known.append(c)
                    grown.append(c)
                    yield c
            level = grown

    def _augment_ball(self, data):
        buckets: dict = {}
        for idx, w in enumerate(data.elements):
            buckets.setdefault(self.invariant_key(w), []).append(idx)
        data.buckets = buckets

    def locate(self, data, g):
        idx = data.pos.get(g)
        if idx is not None:
            return idx
        bucket = data.buckets.get(self.invariant_key(g))
        if not bucket:
            return None
        for idx in bucket:
            if self.same(g, data.elements[idx]):
                return idx
        return None


@functools.cache
def braid_group(strands: int) -> BraidGroup:
    return BraidGroup(strands)


def dehornoy_oracle(group: BraidGroup, budget: int = DEFAULT_BUDGET) -> SignOracle:
    """The lowest-generator sign ordering; its least positive element is the
    last generator."""
    return SignOracle(
        group=group,
        fn=lambda w: dehornoy_sign(w, budget),
        descriptor="dehornoy",
    )


def flip_automorphism(group: BraidGroup) -> GroupAutomorphism:
    n = group.strands
    fn = lambda w: flip_word(n, w)
    return GroupAutomorphism(group=group, forward=fn, backward=fn, descriptor="flip")


def invert_generators(group: BraidGroup) -> GroupAutomorphism:
    fn = lambda w: tuple(-a for a in w)
    return GroupAutomorphism(group=group, forward=fn, backward=fn, descriptor="invert-gens")


def parabolic_strands(group: BraidGroup, word, budget: int = DEFAULT_BUDGET) -> int:
    """Strand count of the smallest prefix parabolic subgroup containing the
    word: the subgroup generated by the first (count - 1) generators.

    Running the cascade on the flipped word finds the highest generator the
    element genuinely needs; flipping back turns that into a prefix bound.
    The trivial word reports 1.
    """
    n = group.strands
    s, level = sign_cascade(flip_word(n, word), budget)
    if s == 0:
        return 1
    return n - level + 1


def ordering_oracle(group: BraidGroup, index: int, budget: int = DEFAULT_BUDGET) -> SignOracle:
    """The ordering whose least positive element is the generator s_index.

    Elements of the prefix parabolic on (index + 1) strands are compared by
    the plain cascade; everything else by the cascade of the flipped word.
    The parabolic is a convex subgroup, lowest in the ordering's chain.
    """
    n = group.strands
    if not 1 <= index < n:
        raise ValueError(f"generator index out of range: {index}")

    def sign_fn(w):
        s_flip, level = sign_cascade(flip_word(n, w), budget)
        if s_flip == 0:
            return 0
        if n - level + 1 <= index + 1:
            return dehornoy_sign(w, budget)
        return s_flip

    return SignOracle(group=group, fn=sign_fn, descriptor=f"least[s{index}]")


def flipped_dehornoy_oracle(group: BraidGroup, budget: int = DEFAULT_BUDGET) -> SignOracle:
    """The mirror ordering: the plain ordering pushed through the flip.  Its
    least positive element is the first generator, and it coincides with
    ordering_oracle(group, 1)."""
    n = group.strands
    return SignOracle(
        group=group,
        fn=lambda w: dehornoy_sign(flip_word(n, w), budget),
        descriptor="flip-dehornoy",
    )


def braid_ordering_catalog(group: BraidGroup, budget: int = DEFAULT_BUDGET) -> list:
    """One ordering per generator, least-positive s1 through s(n-1)."""
    return [ordering_oracle(group, i, budget) for i in range(1, group.strands)]


def random_word(rng, strands: int, length: int) -> tuple:
    letters = [a for i in range(1, strands) for a in (i, -i)]
    return reduce_free(rng.choice(letters) for _ in range(length))
