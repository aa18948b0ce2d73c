"""Flag orderings of Z^n and the matrix action on them."""

from fractions import Fraction

import pytest

from ordlib.core import act_automorphism, orderings_agree_on_ball
from ordlib.lattice import (
    ALL_ORDERINGS,
    FormFlag,
    TotalityError,
    comm_acts_trivially,
    eigen_orderings,
    flag_ordering,
    is_scalar_star,
    lattice_group,
    mat_det,
    mat_from_rows,
    mat_inverse,
    mat_mul,
    matrix_automorphism,
    matrix_pushforward,
    preserves,
    probe_flags,
    vlo_equal,
)
from ordlib.quadfield import QuadRat, UnsupportedFieldError

R2 = QuadRat.root(2)
Z2 = lattice_group(2)
A = ((1, 2), (1, 1))
LEX1 = FormFlag.of([(1, 0), (0, 1)])
LEX2 = FormFlag.of([(0, 1), (1, 0)])
PLUS = FormFlag.of([(R2, 1)])
MINUS = FormFlag.of([(-R2, 1)])


def test_form_sign_lex():
    assert LEX1.form_sign((0, 5)) == 1
    assert LEX1.form_sign((-3, 7)) == -1
    assert LEX1.form_sign((0, 0)) == 0
    assert LEX2.form_sign((-3, 7)) == 1


def test_form_sign_irrational_line():
    assert PLUS.form_sign((1, 1)) == 1
    assert PLUS.form_sign((-1, 1)) == -1
    assert PLUS.form_sign((1, -1)) == 1
    assert MINUS.form_sign((1, 0)) == -1
    assert MINUS.form_sign((1, 1)) == -1
    assert MINUS.form_sign((1, 2)) == 1


def test_descriptors():
    assert LEX1.descriptor() == "flag[(1,0);(0,1)]"
    assert MINUS.descriptor() == "flag[(-√2,1)]"


def test_totality():
    assert PLUS.is_total()
    assert not FormFlag.of([(1, 1)]).is_total()
    with pytest.raises(TotalityError):
        flag_ordering(Z2, [(1, 1)])
    oracle = flag_ordering(Z2, [(R2, 1)])
    assert oracle.sign((1, -1)) == 1


def test_mixed_field_entries_rejected():
    with pytest.raises(UnsupportedFieldError):
        FormFlag.of([(QuadRat.root(3), 1)], d=2)


def test_matrix_helpers():
    m = mat_from_rows(A)
    assert mat_det(m) == -1
    assert mat_mul(m, mat_inverse(m)) == mat_from_rows([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        mat_inverse(mat_from_rows([[1, 2], [2, 4]]))
    with pytest.raises(ValueError):
        mat_from_rows([[1, 2, 3], [4, 5, 6]])


def test_matrix_automorphism_requires_unimodular():
    with pytest.raises(ValueError):
        matrix_automorphism(Z2, [[2, 0], [0, 2]])
    with pytest.raises(ValueError):
        matrix_automorphism(Z2, [[Fraction(1, 2), 0], [0, 2]])
    phi = matrix_automorphism(Z2, A)
    assert phi.forward((1, 0)) == (1, 2)
    assert phi.backward(phi.forward((3, -5))) == (3, -5)


def test_pushforward_flag():
    swapped = matrix_pushforward([[0, 1], [1, 0]], LEX1)
    assert swapped.descriptor() == "flag[(0,1);(1,0)]"
    sheared = matrix_pushforward([[1, 1], [0, 1]], LEX1)
    assert sheared.descriptor() == "flag[(1,0);(-1,1)]"


def test_pushforward_matches_oracle_action():
    phi = matrix_automorphism(Z2, A)
    by_flag = matrix_pushforward(A, LEX1).ordering(Z2)
    by_action = act_automorphism(phi, LEX1.ordering(Z2))
    assert orderings_agree_on_ball(by_flag, by_action, Z2, 4)


def test_preserves():
    assert preserves([[1, 1], [0, 1]], LEX1)
    assert not preserves([[0, 1], [1, 0]], LEX1)
    assert preserves(A, PLUS)
    assert not preserves(A, MINUS)
    assert not preserves(A, LEX1)


def test_eigen_orderings_of_the_hyperbolic_matrix():
    flags = eigen_orderings(A)
    assert [f.descriptor() for f in flags] == [
        "flag[(√2,1)]", "flag[(-√2,-1)]"]
    neg = eigen_orderings([[-1, -2], [-1, -1]])
    assert [f.descriptor() for f in neg] == [
        "flag[(-√2,1)]", "flag[(√2,-1)]"]
    assert not {f.descriptor() for f in flags} & {f.descriptor() for f in neg}


def test_eigen_orderings_scalar_and_degenerate_cases():
    assert eigen_orderings([[2, 0], [0, 2]]) == ALL_ORDERINGS
    assert eigen_orderings([[-1, 0], [0, -1]]) == []
    assert eigen_orderings([[0, -1], [1, 0]]) == []
    assert eigen_orderings([[1, 1], [0, 1]]) == []
    with pytest.raises(UnsupportedFieldError):
        eigen_orderings([[0, 1], [1, 0]])
    with pytest.raises(UnsupportedFieldError):
        eigen_orderings([[1, 5], [1, 1]], d=2)


def test_eigen_orderings_other_field():
    flags = eigen_orderings([[1, 5], [1, 1]], d=5)
    assert [f.descriptor() for f in flags] == [
        "flag[(√5,1)]", "flag[(-√5,-1)]"]
    assert preserves([[1, 5], [1, 1]], flags[0])


def test_is_scalar_star():
    assert is_scalar_star([[2, 0], [0, 2]]) == (Fraction(2), None)
    half = Fraction(3, 2)
    assert is_scalar_star([[half, 0], [0, half]]) == (half, None)
    assert is_scalar_star([[1, 0], [0, 1]]) == (Fraction(1), None)
    assert is_scalar_star([[-1, 0], [0, -1]]) == (None, (1, 0))
    assert is_scalar_star([[3, 0], [0, 2]]) == (None, (1, 1))
    assert is_scalar_star([[1, 1], [0, 1]]) == (None, (1, 0))
    assert is_scalar_star(A) == (None, (1, 0))


def test_vlo_equal_basics():
    assert vlo_equal(LEX1, LEX1) == (True, None)
    assert vlo_equal(MINUS, LEX1) == (False, (1, 0))
    assert vlo_equal(LEX1, LEX2) == (False, (1, -1))


def test_vlo_equal_on_sublattices():
    two = [[2, 0], [0, 2]]
    assert vlo_equal(LEX1, LEX1, basis1=two) == (True, None)
    assert vlo_equal(LEX1, LEX2, basis1=two) == (False, (2, -2))
    scaled = FormFlag.of([(3, 0), (0, 3)])
    assert vlo_equal(LEX1, scaled) == (True, None)
    with pytest.raises(ValueError):
        vlo_equal(LEX1, LEX1, basis1=[[1, 2], [2, 4]])
    with pytest.raises(ValueError):
        vlo_equal(LEX1, LEX1, basis1=[[Fraction(1, 2), 0], [0, 1]])


def test_probe_flags():
    assert len(probe_flags(2)) == 4
    assert len(probe_flags(3)) == 2
    assert {f.descriptor() for f in probe_flags(2)} == {
        "flag[(1,0);(0,1)]", "flag[(0,1);(1,0)]",
        "flag[(√2,1)]", "flag[(-√2,1)]"}


def test_comm_acts_trivially():
    assert comm_acts_trivially([[2, 0], [0, 2]]) == (True, None)
    half = Fraction(1, 2)
    assert comm_acts_trivially([[half, 0], [0, half]]) == (True, None)
    moved, flag = comm_acts_trivially(A)
    assert moved is False and flag.descriptor() == "flag[(1,0);(0,1)]"
    moved, flag = comm_acts_trivially([[1, 1], [0, 1]])
    assert moved is False and flag.descriptor() == "flag[(0,1);(1,0)]"
    moved, flag = comm_acts_trivially([[-1, 0], [0, -1]])
    assert moved is False and flag.descriptor() == "flag[(1,0);(0,1)]"
    with pytest.raises(ValueError):
        comm_acts_trivially([[1, 1], [1, 1]])
