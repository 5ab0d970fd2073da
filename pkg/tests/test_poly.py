from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from envrad import RingContext
from envrad.errors import ContextMismatch
from envrad.parser import parse_session
from envrad.poly import Polynomial, monomial_compare, poly_arith

from helpers import P

R2 = RingContext(("x", "y"))
R3 = RingContext(("x", "y", "z"))


def test_cancellation():
    assert P(R2, "(x+y) + (x-y)") == P(R2, "2*x")


def test_zero_absorbs():
    p = P(R3, "x^2*y - 3/2*z + 1")
    assert (p * R3.const(0)).is_zero()


def test_difference_of_squares():
    # hand expansion: x^2 - xy + yx - y^2
    x, y = R2.gens()
    assert poly_arith(x + y, x - y, "mul") == R2.monomial((2, 0)) - R2.monomial((0, 2))


def test_mismatched_rings():
    with pytest.raises(ContextMismatch):
        R2.var("x") + R3.var("x")
    with pytest.raises(ContextMismatch):
        poly_arith(R2.var("x"), R3.var("x"), "add")


@pytest.mark.parametrize(
    "a, b, expected",
    [((2, 0), (1, 1), 1), ((1, 0), (0, 2), -1), ((1, 1), (1, 1), 0), ((0, 2), (1, 1), -1)],
)
def test_monomial_compare(a, b, expected):
    assert monomial_compare(a, b) == expected


def test_degrevlex_tie_break_three_vars():
    # x*z < y^2 in degrevlex: last variable z has the larger exponent in x*z
    assert monomial_compare((1, 0, 1), (0, 2, 0)) == -1
    assert monomial_compare((2, 0, 0), (0, 1, 1)) == 1


def test_terms_descending_and_no_zeros():
    p = Polynomial(R3, {(0, 0, 1): 1, (2, 0, 0): 3, (0, 1, 0): 0, (1, 1, 0): -1})
    mons = [m for m, _ in p.items()]
    assert mons == [(2, 0, 0), (1, 1, 0), (0, 0, 1)]
    assert all(c != 0 for _, c in p.items())


def test_exact_rationals():
    p = P(R2, "1/3*x") * 3
    assert p == R2.var("x")
    assert P(R2, "1/3") + P(R2, "1/6") == R2.const(Fraction(1, 2))


def test_printing():
    assert str(P(R3, "-x^2*y + 3/2*z - 1")) == "-x^2*y + 3/2*z - 1"
    assert str(R3.const(0)) == "0"


def test_ring_context_validation():
    with pytest.raises(ValueError):
        RingContext(("x", "x"))
    with pytest.raises(ValueError):
        RingContext(())
    with pytest.raises(ValueError):
        RingContext(("x",), order="lex")


exps3 = st.tuples(*[st.integers(0, 3)] * 3)
monos = exps3
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(exps3, coeffs, max_size=4).map(lambda d: Polynomial(R3, d))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == R3.const(0)


@settings(max_examples=200, deadline=None)
@given(monos, monos, monos)
def test_order_is_total_and_multiplicative(a, b, c):
    ab, ba = monomial_compare(a, b), monomial_compare(b, a)
    assert ab == -ba
    assert (ab == 0) == (a == b)
    ac = tuple(x + y for x, y in zip(a, c))
    bc = tuple(x + y for x, y in zip(b, c))
    assert monomial_compare(ac, bc) == ab


SESSION = parse_session("ring Q[x, y, z];\nfree 1;\n")


@settings(max_examples=100, deadline=None)
@given(polys)
def test_print_parse_round_trip(p):
    assert SESSION.parse_poly(str(p)) == p


def test_juxtaposition_and_star_agree():
    assert SESSION.parse_poly("x^2y^3") == SESSION.parse_poly("x^2*y^3")
    assert SESSION.parse_poly("3xyz") == SESSION.parse_poly("3*x*y*z")
