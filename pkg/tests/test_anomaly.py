"""Trace identities and the Chern-Simons defect.

The stated values of tr(Q+)^2, tr(Qm)^2 and the defect are asserted as given;
those assertions fail against the matrices (see the README).  The values the
matrices actually produce are pinned by separate tests.
"""

from fractions import Fraction

import pytest

from hetg2 import anomaly
from hetg2.connections import SYMBOLIC, ConnectionSpec, q_parts
from hetg2.exterior import Form, wedge
from hetg2.g2model import build_model
from hetg2.scalars import DELTA, EPS, K, M

OMEGA = build_model().omega
W2 = wedge(OMEGA, OMEGA)
STATED_WRONG = {"trace-Qplus-sq", "trace-Qdm-sq"}


@pytest.fixture(scope="module")
def suite():
    return {c.key: c for c in anomaly.trace_lemma_suite()}


@pytest.fixture(scope="module")
def defect():
    return anomaly.trace_defect(SYMBOLIC)


def test_suite_covers_every_case(suite):
    assert len(suite) == 17


@pytest.mark.parametrize("key", [k for k, *_ in anomaly.trace_lemma_cases()
                                 if k not in STATED_WRONG])
def test_trace_identity(suite, key):
    assert suite[key].ok, suite[key].residue.render()


def test_FA_Q_traces_need_the_ideal(suite):
    for key in ("trace-FA-Qplus", "trace-FA-Qzero", "trace-FA-Qdm"):
        assert suite[key].needed_ideal, key
    # these two already vanish in the free algebra
    assert not suite["trace-FA-omegaI"].needed_ideal
    assert not suite["trace-FA-Qminus"].needed_ideal


def test_trace_I_squared_is_free(suite):
    assert not suite["trace-I-squared"].needed_ideal


def test_trace_Qplus_squared_stated(suite):
    assert suite["trace-Qplus-sq"].ok, suite["trace-Qplus-sq"].residue.render()


def test_trace_Qdm_squared_stated(suite):
    assert suite["trace-Qdm-sq"].ok, suite["trace-Qdm-sq"].residue.render()


def test_trace_Qplus_squared_computed():
    _, qp, _, _ = q_parts()
    assert anomaly.tr_sq(qp) == W2 * (-16 * DELTA ** 2)


def test_trace_Qdm_squared_computed():
    _, _, _, qdm = q_parts()
    assert anomaly.tr_sq(qdm) == Form()


def test_defect_matches_derived_form(defect):
    assert defect.defect == anomaly.derived_defect(SYMBOLIC)


def test_defect_stated_closed_form(defect):
    assert defect.matches, (defect.defect - defect.closed_form).render()


def test_strict_mode():
    anomaly.trace_defect(ConnectionSpec(0, K, 0), strict=True)
    with pytest.raises(anomaly.DefectMismatch):
        anomaly.trace_defect(ConnectionSpec(1, K, 0), strict=True)


def test_defect_at_delta0_m0():
    res = anomaly.trace_defect(ConnectionSpec(0, K, 0))
    assert res.defect == W2 * (-(K ** 2) * EPS ** 4 * (K + 3) * Fraction(1, 2))
    assert res.matches


def test_defect_at_delta1_m0():
    res = anomaly.trace_defect(ConnectionSpec(1, K, 0))
    assert res.defect == W2 * (2 * K ** 4 * EPS ** 4)


def test_dH(defect):
    assert defect.dH == -W2 * EPS ** 2


def test_lambda0_polynomial():
    x = K ** 2 * DELTA ** 2 * (1 + DELTA) ** 2 + (1 - DELTA + M) * (
        K * (4 * DELTA ** 2 - (1 + DELTA) ** 2) - 3)
    assert anomaly.lambda0_poly() == K ** 2 * EPS ** 2 * x
    assert anomaly.lambda0_poly().eval((1, 2, 1, 0)) == 64


def test_cleared_identity_is_consistent_with_closed_form():
    # lambda0 dH + 2 defect = 0 must hold for the closed-form defect, and at
    # any point with lambda0 > 0 it reproduces alpha' = 8 / lambda0
    closed = anomaly.closed_form_defect()
    lam0 = anomaly.lambda0_poly()
    assert W2 * (-EPS ** 2) * lam0 + closed * 2 == Form()
    pt = {"eps": Fraction(1, 3), "k": 5, "delta": Fraction(1, 2), "m": 0}
    alpha = 8 / lam0.subs(**pt).constant()
    defect_pt = closed.subs(**pt)
    # dH = (alpha'/4)(tr F^2 - tr R^2) = -(alpha'/4) defect
    assert W2 * -pt["eps"] ** 2 == defect_pt * (-alpha / 4)


def test_bianchi_cleared_from_matrices(defect):
    r = anomaly.bianchi_cleared_residue(defect)
    assert r == Form(), r.render()


def test_derived_lambda0_vanishes_on_case1_line():
    # with m = delta - 1 the derived factor has (1 - delta + m) = 0
    y = anomaly.derived_defect_factor(ConnectionSpec(DELTA, K, DELTA - 1))
    assert not y
