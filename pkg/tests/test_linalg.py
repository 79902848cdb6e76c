from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classtwo.errors import ClassTwoError, DimensionMismatch, NonSquare
from classtwo.linalg import (RatMatrix, det, format_rational, inverse, kernel, parse_rational,
                             rank, rref, solve)
from oracles import det_permutations, rank_minors

EXAMPLE_M1 = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
EXAMPLE_M2 = [[0, 0, 1, 0], [0, 0, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0]]

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=10)


@st.composite
def matrices(draw, max_rows=4, max_cols=4, square=False):
    r = draw(st.integers(1, max_rows))
    c = r if square else draw(st.integers(1, max_cols))
    entries = draw(st.lists(rationals, min_size=r * c, max_size=r * c))
    return RatMatrix(r, c, entries)


def test_parse_rational():
    assert parse_rational("-3/7") == Fraction(-3, 7)
    assert parse_rational("2") == 2
    assert parse_rational("+4/6") == Fraction(2, 3)
    for bad in ("1.5", "1/0", "a", "1/-2", ""):
        with pytest.raises(ClassTwoError):
            parse_rational(bad)
    assert format_rational(Fraction(-6, 4)) == "-3/2"


def test_rref_examples():
    i2 = RatMatrix.identity(2)
    assert rref(i2) == (i2, [0, 1])
    red, piv = rref(RatMatrix.from_rows([[1, 2], [2, 4]]))
    assert red == RatMatrix.from_rows([[1, 2], [0, 0]]) and piv == [0]


def test_rank_examples():
    assert rank(RatMatrix.zeros(3, 3)) == 0
    s4 = RatMatrix.from_rows(EXAMPLE_M1)  # S(4) block structure
    assert rank(s4) == 4
    assert rank(RatMatrix.from_rows(EXAMPLE_M2)) == 2
    # the contracted example form at l1 = 0, l2 = 1 is M2
    red, piv = rref(RatMatrix.from_rows(EXAMPLE_M2))
    assert len(piv) == rank_minors(EXAMPLE_M2) == 2


def test_kernel_examples():
    assert kernel(RatMatrix.identity(3)).cols == 0
    k = kernel(RatMatrix.from_rows([[1, 1]]))
    assert k.cols == 1 and k.col(0) == (-1, 1)


def test_kernel_random_rank_three():
    a = RatMatrix.from_rows([[1, 0, 2, 0, 1, 3], [0, 1, 1, 0, 2, 1], [0, 0, 0, 1, 1, 1]])
    m = RatMatrix.from_rows([[1, 2, 0], [3, -1, 1], [0, 1, 5], [2, 2, 2]]) @ a
    assert rank(m) == 3
    k = kernel(m)
    assert k.cols == 3 and rank(k) == 3
    assert (m @ k).is_zero()


def test_det_examples():
    for n in range(5):
        assert det(RatMatrix.identity(n)) == 1
    assert det(RatMatrix.from_rows(EXAMPLE_M1)) == 1
    assert det(RatMatrix.from_rows(EXAMPLE_M2)) == 0
    with pytest.raises(NonSquare):
        det(RatMatrix.zeros(2, 3))


def test_solve_examples():
    b = RatMatrix.column([3, Fraction(1, 2)])
    assert solve(RatMatrix.identity(2), b) == b
    m = RatMatrix.from_rows([[1, 2], [2, 4]])
    x = solve(m, RatMatrix.column([1, 2]))
    assert x is not None and m @ x == RatMatrix.column([1, 2])
    assert solve(m, RatMatrix.column([1, 0])) is None
    with pytest.raises(DimensionMismatch):
        solve(m, RatMatrix.column([1, 2, 3]))


def test_matrices_are_immutable():
    m = RatMatrix.identity(2)
    with pytest.raises(AttributeError):
        m.rows = 3
    rank(m), rref(m), kernel(m)
    assert m == RatMatrix.identity(2)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_rank_consistency(m):
    red, piv = rref(m)
    assert rank(red) == rank(m) == len(piv)
    assert rref(red) == (red, piv)
    k = kernel(m)
    assert k.cols == m.cols - rank(m)
    if k.cols:
        assert (m @ k).is_zero()
        assert rank(k) == k.cols


@settings(max_examples=150, deadline=None)
@given(matrices(square=True))
def test_det_matches_permutation_expansion(m):
    assert det(m) == det_permutations(m.to_rows())
    invertible = det(m) != 0
    assert invertible == (kernel(m).cols == 0) == (rank(m) == m.cols)
    if invertible:
        assert m @ inverse(m) == RatMatrix.identity(m.rows)


@settings(max_examples=100, deadline=None)
@given(matrices(max_rows=3, max_cols=4))
def test_rank_matches_minor_enumeration(m):
    assert rank(m) == rank_minors(m.to_rows())


@given(rationals, rationals)
def test_rational_round_trip(a, b):
    assert (a + b) - b == a
    if b:
        assert (a * b) / b == a
    assert parse_rational(format_rational(a)) == a


def test_large_coefficients_stay_exact():
    big = 10 ** 30 + 7
    m = RatMatrix.from_rows([[big, 1], [Fraction(1, big), Fraction(2, big * big)]])
    assert det(m) == det_permutations(m.to_rows())
