from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hetg2.anomaly import lambda0_poly
from hetg2.scalars import (
    DEGREE_CAP, DELTA, EPS, K, M, DegreeCapError, ParamPoly, poly_arith, poly_eval,
)
from strategies import polys, small_rationals

points = st.tuples(small_rationals, small_rationals, small_rationals, small_rationals)


def test_additive_inverse():
    assert poly_arith(EPS, -EPS, "add") == ParamPoly()
    assert not (EPS - EPS)


def test_monomial_product():
    assert poly_arith(K * EPS, K * EPS, "mul") == K ** 2 * EPS ** 2


def test_lambda0_inner_factor_expansion():
    p = (1 - DELTA + M) * (K * (4 * DELTA ** 2 - (1 + DELTA) ** 2) - 3)
    # k(3d^2 - 2d - 1)(1 - d + m) - 3(1 - d + m), expanded by hand
    expected = (3 * K * DELTA ** 2 - 2 * K * DELTA - K
                - 3 * K * DELTA ** 3 + 2 * K * DELTA ** 2 + K * DELTA
                + 3 * K * M * DELTA ** 2 - 2 * K * M * DELTA - K * M
                - 3 + 3 * DELTA - 3 * M)
    assert p == expected
    assert len(p.terms) == 10


def test_eval_examples():
    pt = (1, 2, 1, 0)
    assert poly_eval(EPS, pt) == 1
    assert poly_eval(K ** 2 * EPS ** 2, pt) == 4
    assert poly_eval(lambda0_poly(), pt) == 64


def test_eval_by_name_and_float():
    p = 3 * EPS * K - DELTA
    assert p.eval({"eps": 1, "k": 2, "delta": 5, "m": 0}) == 1
    assert p.eval((0.5, 2.0, 1.0, 0.0)) == pytest.approx(2.0)


def test_subs_partial():
    p = EPS * K + DELTA * M
    assert p.subs(k=2, m=Fraction(1, 3)) == 2 * EPS + DELTA * Fraction(1, 3)


def test_degree_cap_is_an_error():
    with pytest.raises(DegreeCapError):
        EPS ** (DEGREE_CAP + 1)
    assert (EPS ** DEGREE_CAP).degree() == DEGREE_CAP


def test_render():
    assert (EPS * Fraction(6, 7)).render() == "(6/7)*eps"
    assert ParamPoly().render() == "0"


def test_no_zero_terms_stored():
    p = ParamPoly({0: 0})
    assert p.terms == {}


@settings(max_examples=1000)
@given(polys(max_exp=1), polys(max_exp=1), polys(max_exp=1))
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p
    assert p * q == q * p
    assert p + ParamPoly() == p
    assert p * 1 == p
    assert all(c != 0 for c in (p * q).terms.values())


@settings(max_examples=300)
@given(polys(max_exp=1), polys(max_exp=1), points)
def test_eval_is_a_homomorphism(p, q, pt):
    assert (p * q).eval(pt) == p.eval(pt) * q.eval(pt)
    assert (p + q).eval(pt) == p.eval(pt) + q.eval(pt)
