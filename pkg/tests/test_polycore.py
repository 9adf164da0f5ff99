from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import expand_coeffs, q
from relforge.polycore import (
    ONE,
    ONE_MINUS_Q,
    Q,
    ZERO,
    ZERO_DEGREE,
    Polynomial,
    add,
    binomial_poly,
    clear_compose,
    eval_rational,
    mul,
    pow_,
)

ints = st.integers(min_value=-10**6, max_value=10**6)
polys = st.lists(ints, max_size=8).map(Polynomial)
rationals = st.fractions(min_value=-3, max_value=3, max_denominator=50)

P = Polynomial


def test_canonical_trim_and_zero():
    assert P([1, 2, 0, 0]).coeffs == (1, 2)
    assert P([0, 0]) == ZERO == P()
    assert ZERO.coeffs == ()
    assert ZERO.degree() == ZERO_DEGREE
    assert ZERO.degree() < 0 < ONE.degree() + 1
    assert P([3, 0, 5]).degree() == 2


def test_add_examples():
    assert add(ONE_MINUS_Q, Q) == ONE
    x = P([4, -1, 9])
    assert add(ZERO, x) == x
    R5 = P([1, 0, 0, -2, -3, -6, 10, 30, -48, 18])
    S5 = P([0, 0, 0, 2, 0, 6, -14, -24, 54, -24])
    assert eval_rational(add(R5, S5.scale(8)), Fraction(0)) == 1


def test_mul_examples_match_sympy_expansion():
    assert mul(ONE_MINUS_Q, P([1, 1])) == P([1, 0, -1])
    r5 = mul(pow_(ONE_MINUS_Q, 4), P([1, 4, 10, 18, 24, 18]))
    assert list(r5.coeffs) == [1, 0, 0, -2, -3, -6, 10, 30, -48, 18]
    assert list(r5.coeffs) == expand_coeffs((1 - q) ** 4 * (18 * q**5 + 24 * q**4 + 18 * q**3 + 10 * q**2 + 4 * q + 1))
    s5 = mul(mul(P.monomial(3, 2), pow_(ONE_MINUS_Q, 3)), P([1, 3, 9, 12]))
    assert list(s5.coeffs) == [0, 0, 0, 2, 0, 6, -14, -24, 54, -24]
    assert list(s5.coeffs) == expand_coeffs(2 * q**3 * (1 - q) ** 3 * (12 * q**3 + 9 * q**2 + 3 * q + 1))


def test_pow_examples():
    assert pow_(ONE_MINUS_Q, 0) == ONE
    assert pow_(P([1, 1]), 2) == P([1, 2, 1])
    assert list(pow_(ONE_MINUS_Q, 7).coeffs) == [1, -7, 21, -35, 35, -21, 7, -1]
    assert binomial_poly(7, -1) == pow_(ONE_MINUS_Q, 7)
    with pytest.raises(ValueError):
        pow_(Q, -1)


def test_eval_examples():
    c8 = mul(pow_(ONE_MINUS_Q, 7), P([1, 7]))
    assert eval_rational(c8, Fraction(-1, 7)) == 0
    assert eval_rational(c8, Fraction(0)) == 1
    r4 = P([1, 0, -2, -4, 9, -4])
    assert eval_rational(r4, Fraction(1)) == 0
    assert r4(Fraction(1, 2)) == eval_rational(r4, Fraction(1, 2))


def test_clear_compose_examples():
    F = P([1, 2])
    S = mul(P([0, 2]), ONE_MINUS_Q)
    R = pow_(ONE_MINUS_Q, 2)
    assert clear_compose(F, S, R, 2) == mul(pow_(ONE_MINUS_Q, 3), P([1, 3]))
    assert clear_compose(ONE, S, R, 3) == pow_(R, 3)
    assert clear_compose(P.monomial(3), S, R, 3) == pow_(S, 3)
    with pytest.raises(ValueError):
        clear_compose(P([1, 1, 1]), S, R, 1)


@settings(max_examples=1000, deadline=None)
@given(polys, polys, polys, rationals)
def test_ring_axioms(a, b, c, x):
    assert add(a, b) == add(b, a)
    assert mul(a, b) == mul(b, a)
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert eval_rational(mul(a, b), x) == eval_rational(a, x) * eval_rational(b, x)
    assert eval_rational(add(a, b), x) == eval_rational(a, x) + eval_rational(b, x)


@settings(max_examples=200, deadline=None)
@given(polys, polys)
def test_mul_degree(a, b):
    if a and b:
        assert mul(a, b).degree() == a.degree() + b.degree()
    else:
        assert mul(a, b) == ZERO


@settings(max_examples=300, deadline=None)
@given(st.lists(ints, max_size=5).map(Polynomial), polys, polys, st.integers(1, 6), rationals)
def test_clear_compose_matches_rational_evaluation(F, S, R, extra, x):
    m = max(F.degree(), 0) + extra - 1 if F else extra
    m = max(m, 1)
    if F.degree() > m:
        return
    r = eval_rational(R, x)
    if r == 0:
        return
    s = eval_rational(S, x)
    expected = r**m * sum(Fraction(fi) * (s / r) ** i for i, fi in enumerate(F.coeffs))
    assert eval_rational(clear_compose(F, S, R, m), x) == expected


@given(polys)
def test_json_round_trip(p):
    assert Polynomial.from_json(p.to_json()) == p
    assert all(isinstance(c, str) for c in p.to_json()["coeffs"])


@pytest.mark.parametrize(
    "bad",
    [{"coeffs": ["1", "0"]}, {"coeffs": [1]}, {"coeffs": ["x"]}, {}, {"coeffs": "12"}],
)
def test_json_rejects(bad):
    with pytest.raises((ValueError, KeyError, TypeError)):
        Polynomial.from_json(bad)
