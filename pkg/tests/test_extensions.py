"""Klein bottle orderings, the automorphism family, and the two towers."""

import itertools
from fractions import Fraction

import pytest

from ordlib.core import (
    IdentitySignError,
    RefusedConstructionError,
    act_automorphism,
    certify_least_positive,
    check_bi_invariance,
    check_convex_in_ball,
    orderings_agree_on_ball,
    separating_element,
    verify_cone_axioms,
)
from ordlib.extensions import (
    KLEIN_PARAMS,
    KleinAut,
    KleinOrderingParams,
    conjugation_preserves,
    g_group,
    g_least_positive,
    g_not_biorderable_evidence,
    g_ordering,
    k_group,
    k_ordering,
    klein_action_kernel,
    klein_action_witness,
    klein_as_extension,
    klein_family,
    klein_group,
    klein_inner,
    klein_ordering,
    klein_orderings,
    klein_sign,
    lex_extension,
    k_eigen_flag,
    rational_plane,
    twist_automorphism,
)
from ordlib.lattice import FormFlag
from ordlib.magnus import free_group, magnus_oracle

KLEIN = klein_group()
X = (0, 1)
Y = (1, 0)


def _kq(p, q):
    return (Fraction(p), Fraction(q))


def test_klein_relation_and_arithmetic():
    conj = KLEIN.multiply(KLEIN.multiply(X, Y), KLEIN.invert(X))
    assert conj == KLEIN.invert(Y)
    ball = KLEIN.ball(2)
    for g, h, k in itertools.islice(itertools.product(ball, repeat=3), 0, None, 7):
        left = KLEIN.multiply(KLEIN.multiply(g, h), k)
        right = KLEIN.multiply(g, KLEIN.multiply(h, k))
        assert left == right
    for g in ball:
        assert KLEIN.multiply(g, KLEIN.invert(g)) == KLEIN.identity


def test_klein_labels_and_ball():
    assert KLEIN.label((0, 0)) == "1"
    assert KLEIN.label(Y) == "y"
    assert KLEIN.label((2, -1)) == "y^2 x^-1"
    assert [len(KLEIN.ball(r)) for r in range(3)] == [1, 5, 13]


def test_klein_signs():
    pp = KLEIN_PARAMS[0]
    assert (pp.s, pp.t) == (1, 1)
    assert klein_sign(pp, X) == 1
    assert klein_sign(pp, Y) == 1
    assert klein_sign(pp, (-1, 1)) == 1
    assert klein_sign(KleinOrderingParams(1, -1), Y) == -1
    assert klein_sign(KleinOrderingParams(-1, 1), X) == -1
    with pytest.raises(IdentitySignError):
        klein_sign(pp, (0, 0))
    with pytest.raises(ValueError):
        KleinOrderingParams(2, 1)


def test_four_orderings_are_orderings_and_distinct():
    orderings = klein_orderings(KLEIN)
    assert [o.descriptor for o in orderings] == [
        "klein[++]", "klein[+-]", "klein[-+]", "klein[--]"]
    for oracle in orderings:
        assert verify_cone_axioms(oracle, KLEIN, 4).passed
    for o1, o2 in itertools.combinations(orderings, 2):
        assert separating_element(o1, o2, KLEIN, 1) is not None


def test_kernel_subgroup_is_convex_in_all_four():
    member = lambda g: g[1] == 0
    for oracle in klein_orderings(KLEIN):
        assert check_convex_in_ball(member, oracle, KLEIN, 4) is None


def test_klein_aut_family():
    phi = KleinAut(1, 1, 3)
    assert phi.apply(X) == (-3, 1)
    assert phi.apply(Y) == Y
    assert phi.apply((0, 2)) == (0, 2)
    with pytest.raises(ValueError):
        KleinAut(2, 1, 0)
    assert phi.compose(phi.inverse()) == KleinAut(1, 1, 0)
    auto = phi.to_automorphism(KLEIN)
    for g in KLEIN.ball(3):
        assert auto.backward(auto.forward(g)) == g
    assert len(list(klein_family(2))) == 20


def test_inner_automorphisms_sit_in_the_family():
    assert klein_inner(Y) == KleinAut(1, 1, -2)
    assert klein_inner(X) == KleinAut(1, -1, 0)
    for g in ((1, 0), (0, 1), (2, 1), (-1, 2)):
        phi = klein_inner(g)
        ginv = KLEIN.invert(g)
        for h in KLEIN.ball(3):
            assert phi.apply(h) == KLEIN.multiply(KLEIN.multiply(g, h), ginv)


def test_label_action_matches_pushforward():
    for phi in (KleinAut(-1, 1, 0), KleinAut(1, -1, 2), KleinAut(-1, -1, 1)):
        auto = phi.to_automorphism(KLEIN)
        for params in KLEIN_PARAMS:
            pushed = act_automorphism(auto, klein_ordering(params, KLEIN))
            target = klein_ordering(phi.action_on_labels(params), KLEIN)
            assert orderings_agree_on_ball(pushed, target, KLEIN, 3)


def test_action_kernel():
    kernel = klein_action_kernel(2)
    assert kernel == [KleinAut(1, 1, m) for m in range(-2, 3)]
    assert klein_inner(Y) in klein_action_kernel(3)
    assert klein_inner(X) not in kernel


def test_action_witnesses():
    oracle, g = klein_action_witness(KleinAut(-1, 1, 0))
    assert oracle.descriptor == "klein[++]" and g == X
    oracle, g = klein_action_witness(KleinAut(1, -1, 2))
    assert oracle.descriptor == "klein[++]" and g == Y
    assert klein_action_witness(KleinAut(1, 1, 5)) is None


def test_rational_plane_balls():
    plane = rational_plane()
    ball = plane.ball(2)
    assert (Fraction(1, 2), Fraction(0)) in ball
    assert (Fraction(1, 3), Fraction(0)) in plane.ball(3)
    assert {plane.invert(g) for g in ball} == set(ball)
    assert plane.weight((Fraction(3, 2), Fraction(-1))) == 5


def test_k_group_conjugation_twists_by_the_matrix():
    K = k_group()
    t = (K.base.identity, 1)
    u = ((_kq(1, 0)), 0)
    conj = K.multiply(K.multiply(t, u), K.invert(t))
    assert conj == (_kq(1, 2), 0)
    ball = K.ball(2)
    assert {K.invert(g) for g in ball} == set(ball)
    for g, h in itertools.islice(itertools.product(ball, repeat=2), 0, None, 5):
        assert K.multiply(K.multiply(g, h), K.invert(h)) == g


def test_k_ordering_signs():
    pk = k_ordering(k_eigen_flag())
    K = k_group()
    assert pk.sign((K.base.identity, 1)) == 1
    assert pk.sign((K.base.identity, -3)) == -1
    assert pk.sign((_kq(1, 0), 0)) == -1
    assert pk.sign((_kq(0, 1), 0)) == 1
    assert pk.sign((_kq(1, 0), 2)) == 1
    assert verify_cone_axioms(pk, K, 3).passed


def test_g_twist_fixes_the_eigen_flag_ordering():
    pk = k_ordering(k_eigen_flag())
    assert conjugation_preserves(pk, twist_automorphism(g_group()), 4) is None


def test_g_ordering_and_least_element():
    G = g_group()
    pg = g_ordering()
    assert pg.descriptor == "lex[k-lex[flag[(-√2,1)]]]"
    assert verify_cone_axioms(pg, G, 3).passed
    t = (k_group().identity, 1)
    assert g_least_positive(3) == t
    assert certify_least_positive(pg, G, 3, t)
    assert G.label(t) == "(((0, 0), 0), 1)"


def test_wrong_flag_is_refused():
    lex1 = FormFlag.of([(1, 0), (0, 1)])
    with pytest.raises(RefusedConstructionError) as info:
        lex_extension(k_ordering(lex1), g_group())
    assert info.value.witness == (_kq(-1, 0), 0)


def test_klein_as_extension_is_refused():
    base = free_group(1, ("y",))
    with pytest.raises(RefusedConstructionError) as info:
        lex_extension(magnus_oracle(base), klein_as_extension())
    assert info.value.witness == (1,)
    assert "moves y across" in str(info.value)


def test_mismatched_base_is_rejected():
    with pytest.raises(ValueError):
        lex_extension(magnus_oracle(free_group(1, ("z",))), klein_as_extension())


def test_g_is_not_bi_orderable():
    witness = check_bi_invariance(g_ordering(), g_group(), 3)
    assert witness == (((_kq(-1, 0), 0), 0), ((_kq(-1, 0), 0), -1))
    ev = g_not_biorderable_evidence(3)
    assert [f.descriptor() for f in ev.eigen_a] == [
        "flag[(√2,1)]", "flag[(-√2,-1)]"]
    assert [f.descriptor() for f in ev.eigen_neg_a] == [
        "flag[(-√2,1)]", "flag[(√2,-1)]"]
    assert ev.common == ()
    assert ev.bi_invariance_witness == witness
