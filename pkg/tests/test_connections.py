import random
from fractions import Fraction

import pytest

from hetg2 import connections as cn
from hetg2.exterior import COFRAME, Form, gens
from hetg2.formmatrix import (
    FormMatrix, block7, boxop, coframe_column, coframe_vectors, lwedge, mwedge,
)
from hetg2.g2model import build_model, flux
from hetg2.ideal import reduce_mod_ideal
from hetg2.scalars import DELTA, EPS, K, M

e0, e1, f1, e2, f2, e3, f3 = gens(*COFRAME)
OMEGA = build_model().omega
HALF = Fraction(1, 2)


def _reduce(x: FormMatrix) -> FormMatrix:
    return x.map(reduce_mod_ideal)


def test_base_matrix_layout():
    A, B, C, calI = cn.base_matrices()
    assert A[1, 2] == Form.gen("a12") and A[1, 4] == Form.gen("b11")
    assert A[4, 1] == -Form.gen("b11") and A[0, 3] == Form()
    assert B[0, 1] == f1 and B[0, 4] == -e1 and B[1, 4] == -e0
    _, e, je = coframe_vectors()
    c_display = block7(0, (je.T, -e.T), (-je, e),
                       ((-boxop(e), boxop(je)), (boxop(je), boxop(e))))
    assert C - c_display == -cn.e0_calI()
    assert calI[1, 4] == Form.const(-1) and calI[4, 1] == Form.const(1)


def test_levi_civita_matrix():
    A, B, _, _ = cn.base_matrices()
    assert A + B * (EPS * HALF) == cn.paper_levi_civita()


def test_levi_civita_torsion_free():
    conn = cn.build_connection(cn.LEVI_CIVITA)
    assert conn.torsion.is_zero()


def test_bismut_torsion_is_flux():
    conn = cn.build_connection(cn.BISMUT)
    assert conn.torsion == cn.flux_raised()
    assert cn.lower_index(conn.torsion) == flux().flux * 3


def test_hull_matrix():
    A, B, C, _ = cn.base_matrices()
    conn = cn.build_connection(cn.HULL)
    assert conn.matrix == A + (B - C) * (EPS * HALF)


def test_defining_relation_symbolic():
    conn = cn.build_connection(cn.SYMBOLIC)
    c = coframe_column()
    assert cn.d_matrix(c) + mwedge(conn.matrix, c) == conn.torsion
    assert conn.matrix.T == -conn.matrix


def test_dB_and_dC():
    _, B, C, calI = cn.base_matrices()
    wI = lwedge(OMEGA, calI)
    assert cn.covariant_anticommutator(B) == wI * EPS
    assert cn.covariant_anticommutator(C) == wI * -EPS


def test_curvature_of_A_is_FA():
    A = cn.base_matrices()[0]
    assert cn.curvature_matrix(A) == cn.curvature_FA()


def test_curvature_k():
    _, B, _, calI = cn.base_matrices()
    conn = cn.build_connection(cn.ConnectionSpec(0, K, 0))
    r = cn.curvature(conn).matrix
    assert r == (cn.curvature_FA() + lwedge(OMEGA, calI) * (K * EPS ** 2 * HALF)
                 + mwedge(B, B) * (K * K * EPS ** 2 * Fraction(1, 4)))


def test_q_decomposition():
    _, B, C, _ = cn.base_matrices()
    qm, qp, q0, qdm = cn.q_parts()
    bdc = B + C * DELTA
    assert mwedge(bdc, bdc) == qm * (1 - DELTA) + qp * (1 + DELTA) + q0 * DELTA ** 2
    assert qdm == qm * (1 - DELTA + M) + qp * (1 + DELTA) + q0 * DELTA ** 2


def test_full_curvature_closed_form():
    conn = cn.build_connection(cn.SYMBOLIC)
    assert cn.curvature(conn).matrix == cn.expected_curvature(cn.SYMBOLIC)


def test_FA_relations_in_ideal():
    r1, r2 = cn.fa_relations()
    assert not r1.is_zero() and not r2.is_zero()
    assert _reduce(r1).is_zero() and _reduce(r2).is_zero()
    m1, m2 = cn.fa_box_relations()
    assert _reduce(m1).is_zero() and _reduce(m2).is_zero()


def test_printed_box_relation_is_not_in_ideal():
    assert not _reduce(cn.fa_box_relation_as_printed()).is_zero()


def test_A_residual_vanishes_mod_ideal():
    curv = cn.Curvature(cn.curvature_FA())
    res = cn.instanton_residual(curv)
    assert not res.is_zero()
    assert _reduce(res).is_zero()


def test_residual_closed_form_symbolic():
    curv = cn.curvature(cn.build_connection(cn.SYMBOLIC))
    res = cn.instanton_residual(curv)
    assert _reduce(res - cn.residual_closed_form(cn.SYMBOLIC)).is_zero()
    got = cn.extract_coefficients(res)
    assert got.as_tuple() == cn.residual_coefficients().as_tuple()


def test_residual_bismut_family_has_no_calI_part():
    lam1, _, _ = cn.residual_coefficients(cn.ConnectionSpec(1, K, 0)).as_tuple()
    assert not lam1


def test_residual_coefficient_examples():
    co = cn.residual_coefficients()
    pt = (1, 2, 1, 0)
    assert tuple(c.eval(pt) for c in co.as_tuple()) == (0, -8, -4)
    assert not cn.residual_coefficients(cn.ConnectionSpec(-1, K, M)).lambda2
    pt = (1, 1, 0, 0)
    assert tuple(c.eval(pt) for c in co.as_tuple()) == (
        Fraction(7, 4), Fraction(1, 4), Fraction(-1, 4))


@pytest.mark.parametrize("spec,expected", [
    (cn.ConnectionSpec(1, 1, 0), True),
    (cn.ConnectionSpec(0, 2, -1), True),
    (cn.ConnectionSpec(0, 2, 0), False),
    (cn.ConnectionSpec(DELTA, 2, -1), True),
    (cn.ConnectionSpec(DELTA, K, M), False),
])
def test_skew_torsion(spec, expected):
    conn = cn.build_connection(spec)
    assert cn.skew_torsion_test(conn) is expected
    assert cn.skew_predicate(spec) is expected


def test_g2_valued():
    assert cn.g2_valued_test(cn.build_connection(cn.ConnectionSpec(1, K, 0)))
    assert not cn.g2_valued_test(cn.build_connection(cn.ConnectionSpec(-1, K, 0)))
    A = cn.base_matrices()[0]
    assert cn.g2_valued_test(cn.Connection(A, cn.torsion_of(A), "A"))


def test_twist_lemma_A():
    A = cn.base_matrices()[0]
    eI = cn.e0_calI()
    assert (mwedge(A, eI) + mwedge(eI, A)).is_zero()


def no_instanton_witness(seed=20261015, n=100):
    """(delta, m) pairs with k = eps = 1 at which every residual coefficient vanishes."""
    rng = random.Random(seed)
    co = cn.residual_coefficients()
    zeros = []
    for _ in range(n):
        delta = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        m = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        vals = [c.eval((1, 1, delta, m)) for c in co.as_tuple()]
        if not any(vals):
            zeros.append((delta, m))
    return zeros


def test_no_instanton_witness():
    assert no_instanton_witness() == []
