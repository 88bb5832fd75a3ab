from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from usolcp.exact import (
    SingularMatrixError,
    as_matrix,
    format_rational,
    identity,
    mat_mul,
    mat_vec,
    parse_rational,
    rat_det,
    rat_solve,
)
from usolcp.uso import morris_instance


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("7") == Fraction(7)
    for bad in ("3/-4", "1.5", "a", "--2", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_format_rational():
    assert format_rational(Fraction(3, 4)) == "3/4"
    assert format_rational(Fraction(-6, 8)) == "-3/4"
    assert format_rational(Fraction(5)) == "5"
    assert format_rational(Fraction(0)) == "0"


def test_rational_normalization_roundtrip():
    x = parse_rational("6/4")
    assert (x.numerator, x.denominator) == (3, 2)
    assert parse_rational(format_rational(x)) == x


def test_solve_identity():
    a = identity(3)
    b = (-1, -1, -1)
    assert rat_solve(a, b) == (Fraction(-1), Fraction(-1), Fraction(-1))


def test_solve_morris_empty_basis():
    inst = morris_instance(3)
    assert rat_solve(identity(3), inst.q) == inst.q


def test_solve_morris_full_basis_positive():
    inst = morris_instance(3)
    neg_m = tuple(tuple(-x for x in row) for row in inst.M)
    x = rat_solve(neg_m, (-1, -1, -1))
    assert all(xi > 0 for xi in x)
    assert x == (Fraction(1, 3),) * 3


def test_solve_verifies_by_substitution():
    a = as_matrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    b = (1, -2, 5)
    x = rat_solve(a, b)
    assert mat_vec(a, x) == tuple(Fraction(v) for v in b)


def test_solve_singular_reports_column():
    a = as_matrix([[1, 2, 3], [2, 4, 6], [0, 0, 1]])
    with pytest.raises(SingularMatrixError) as ei:
        rat_solve(a, (1, 1, 1))
    assert ei.value.pivot_column == 2


def test_det_identity():
    for n in (1, 2, 5):
        assert rat_det(identity(n)) == 1


def test_det_leading_block():
    assert rat_det(as_matrix([[1, 2], [0, 1]])) == 1


def test_det_morris_3():
    assert rat_det(morris_instance(3).M) == 9


def test_det_block_triangular_multiplicative():
    a = as_matrix([[2, 1], [1, 3]])
    d = as_matrix([[4, 1], [2, 2]])
    block = as_matrix(
        [
            [2, 1, 0, 0],
            [1, 3, 0, 0],
            [5, -7, 4, 1],
            [9, 2, 2, 2],
        ]
    )
    assert rat_det(block) == rat_det(a) * rat_det(d)


def test_det_rational_entries():
    a = as_matrix([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 5)]])
    assert rat_det(a) == Fraction(1, 10) - Fraction(1, 12)


small_int = st.integers(-6, 6)


@st.composite
def int_matrix_and_rhs(draw):
    n = draw(st.integers(1, 5))
    a = [[draw(small_int) for _ in range(n)] for _ in range(n)]
    b = [draw(small_int) for _ in range(n)]
    return a, b


@settings(max_examples=60, deadline=None)
@given(int_matrix_and_rhs())
def test_solve_roundtrip_random(ab):
    a, b = ab
    m = as_matrix(a)
    if rat_det(m) == 0:
        with pytest.raises(SingularMatrixError):
            rat_solve(m, b)
        return
    x = rat_solve(m, b)
    assert mat_vec(m, x) == tuple(Fraction(v) for v in b)


@settings(max_examples=40, deadline=None)
@given(int_matrix_and_rhs())
def test_det_times_inverse_det_is_one(ab):
    a, _ = ab
    m = as_matrix(a)
    d = rat_det(m)
    if d == 0 or len(m) > 6:
        return
    n = len(m)
    cols = [rat_solve(m, tuple(Fraction(int(i == j)) for i in range(n))) for j in range(n)]
    inv = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    assert rat_det(inv) * d == 1
    assert mat_mul(m, inv) == identity(n)
