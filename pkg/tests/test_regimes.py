from fractions import Fraction

import pytest

from hetg2.anomaly import lambda0_poly
from hetg2.connections import residual_coefficients
from hetg2 import regimes
from hetg2.regimes import (
    EXACT_ZERO, FitError, InadmissibleError, case_point, custom_point, order_fit,
    parse_alpha_spec, sweep,
)

ALPHAS = [Fraction(1, 10 ** i) for i in range(1, 5)]


def test_case1_point():
    p = case_point(1, Fraction(1, 100), 1)
    assert p.k == 1000
    assert p.eps2 == Fraction(2, 10 ** 10)
    assert p.closure == 8
    assert 8 / (4 * p.eps2 * p.k2 ** 2) == Fraction(1, 100)


def test_case1_irrational_k():
    p = case_point(1, Fraction(1, 10), 2)
    assert p.k2 == 1000 and p.closure == 8
    assert isinstance(p.k, float)


def test_case3_lambda2_zero():
    assert case_point(3, Fraction(1, 10), 0).lambda2 == 0


@pytest.mark.parametrize("case,extra", [(1, -1), (1, 0), (2, -1), (2, 0), (3, -2), (3, -5)])
def test_inadmissible(case, extra):
    with pytest.raises(InadmissibleError):
        case_point(case, Fraction(1, 100), extra)


def test_case2_point():
    p = case_point(2, Fraction(1, 100), -2)
    assert p.lambda0 > 0 and p.closure == 8
    assert p.k == 10 ** 6


@pytest.mark.parametrize("case,extra", [(1, 1), (1, Fraction(1, 2)), (1, -3), (2, -2),
                                        (2, Fraction(-3, 2)), (3, 0), (3, 5)])
def test_closure_exact(case, extra):
    for a in [Fraction(1, 10 ** i) for i in range(1, 7)]:
        p = case_point(case, a, extra)
        assert p.closure == 8
        assert p.lambda0 > 0


def test_double_mode_closure():
    p = case_point(1, 0.01, 1.0, mode="double")
    assert abs(p.closure - 8) <= regimes.DOUBLE_TOL


def test_cross_validation_with_direct_formulas():
    p = case_point(2, Fraction(1, 10), -3)
    e2, k, d, m = p.eps2, p.k, p.delta, p.m
    lam1 = k * e2 * (6 * (1 - d + m) + k * (1 - d) * (1 + 3 * d)) / 4
    lam2 = k * k * e2 / 4 * (1 + m - 5 * d) * (1 + d)
    lam3 = k * k * e2 / 4 * (d * d - 2 * (2 + m) * d - 1)
    assert (p.lambda1, p.lambda2, p.lambda3) == (lam1, lam2, lam3)


def test_sweep_monotone():
    t = sweep(1, ALPHAS, 1)
    assert len(t) == 4
    for a, b in zip(t.rows, t.rows[1:]):
        assert b.eps2 < a.eps2 and b.k2 > a.k2


def test_empty_sweep():
    assert len(sweep(1, [], 1)) == 0


def test_sweep_rejects_increasing():
    with pytest.raises(ValueError):
        sweep(1, list(reversed(ALPHAS)), 1)


def test_order_fit_case1():
    fit = order_fit(sweep(1, ALPHAS, 1))
    assert fit["lambda1"] == EXACT_ZERO
    assert abs(fit["lambda2"] - 2) <= 1e-9
    assert abs(fit["lambda3"] - 2) <= 1e-9


def test_order_fit_case3_zero():
    assert order_fit(sweep(3, ALPHAS, 0))["lambda2"] == EXACT_ZERO


def test_order_fit_needs_three_rows():
    with pytest.raises(FitError):
        order_fit(sweep(1, ALPHAS[:2], 1))


def test_custom_point():
    p = custom_point(1, 2, 1, 0)
    assert p.lambda0 == 64 and p.alpha_prime == Fraction(1, 8)
    with pytest.raises(InadmissibleError):
        custom_point(1, 1, 0, 0)


def test_residual_values():
    assert regimes.residual_values(1, 1, 0, 0) == (Fraction(7, 4), Fraction(1, 4), Fraction(-1, 4))


def test_eval_squares_matches_direct():
    p = lambda0_poly()
    assert regimes.eval_squares(p, Fraction(1, 4), 9, 3, 1, 0) == p.eval((Fraction(1, 2), 3, 1, 0))
    r = residual_coefficients().lambda1
    with pytest.raises(ValueError):
        regimes.eval_squares(r, 1, 4, None, 0, 0)


def test_csv_and_json():
    t = sweep(1, ALPHAS, 1)
    fit = order_fit(t)
    text = t.to_csv(fit)
    lines = text.splitlines()
    assert lines[0].startswith("# slope lambda1: exact zero")
    assert lines[3] == ",".join(regimes.CSV_HEADER)
    assert len(lines) == 8
    d = t.to_dict(fit)
    assert d["case_id"] == 1 and len(d["rows"]) == 4


def test_parse_alpha_spec():
    assert parse_alpha_spec("1e-1:1e-4:log4") == ALPHAS
    assert parse_alpha_spec("0.1, 0.01") == ALPHAS[:2]
    assert parse_alpha_spec("0.5") == [Fraction(1, 2)]
    with pytest.raises(ValueError):
        parse_alpha_spec("1:2:lin3")


def test_physically_meaningful_flag():
    assert case_point(1, Fraction(1, 100), 1).physically_meaningful
