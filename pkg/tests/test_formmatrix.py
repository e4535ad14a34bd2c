import pytest
from hypothesis import given, settings, strategies as st

from hetg2.connections import base_matrices
from hetg2.exterior import COFRAME, Form, gens, wedge
from hetg2.formmatrix import (
    FormMatrix, block7, blocks_of, boxop, coframe_vectors, cross, mtrace, mwedge,
)
from hetg2.g2model import build_model
from hetg2.verifier import appendix_rule_residues
from strategies import homogeneous_forms

e0, e1, f1, e2, f2, e3, f3 = gens(*COFRAME)
_, E, JE = coframe_vectors()


def test_calI_squared():
    calI = base_matrices()[3]
    sq = mwedge(calI, calI)
    assert sq == FormMatrix.diag([0, -1, -1, -1, -1, -1, -1])
    assert mtrace(sq) == Form.const(-6)


def test_trace_of_zero():
    assert mtrace(FormMatrix.zeros(7)) == Form()


def test_trace_commutator_of_boxes():
    x = mwedge(boxop(E), boxop(JE)) - mwedge(boxop(JE), boxop(E))
    assert mtrace(x) == build_model().omega * -4


def test_row_times_column():
    assert mwedge(E.T, E) == FormMatrix([[Form()]])


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        mwedge(E, E)
    with pytest.raises(ValueError):
        mtrace(E)


def test_boxop_layout():
    assert boxop(E) == FormMatrix([[0, e3, -e2], [-e3, 0, e1], [e2, -e1, 0]])
    assert boxop(FormMatrix.zeros(3, 1)).is_zero()
    assert mwedge(boxop(E), E) == -cross(E, E)
    with pytest.raises(ValueError):
        boxop(FormMatrix.column([e1, e2]))


def test_cross_components():
    assert cross(E, JE)[0, 0] == wedge(e2, f3) - wedge(e3, f2)
    assert cross(E, E)[0, 0] == wedge(e2, e3) * 2
    assert cross(JE, E) == cross(E, JE)
    with pytest.raises(ValueError):
        cross(FormMatrix.column([wedge(e1, f1)] * 3), E)


def test_block7_roundtrip():
    assert block7(0, (None, None), (None, None), ((None, None), (None, None))).is_zero()
    A = base_matrices()[0]
    corner, rows, cols, blocks = blocks_of(A)
    assert block7(corner, rows, cols, blocks) == A
    (a, b), (mb, a2) = blocks
    assert a == a2 and mb == -b
    assert a[0, 1] == Form.gen("a12") and b[2, 2] == -Form.gen("b11") - Form.gen("b22")
    with pytest.raises(ValueError):
        block7(0, (E, None), (None, None), ((None, None), (None, None)))


def test_calI_layout():
    calI = base_matrices()[3]
    I3 = FormMatrix.identity(3)
    assert block7(0, (None, None), (None, None), ((None, -I3), (I3, None))) == calI


@pytest.mark.parametrize("pair", [("u", "v"), ("e", "f")])
def test_appendix_rules(pair):
    p, q = pair
    a = FormMatrix.column(gens(f"{p}1", f"{p}2", f"{p}3"))
    b = FormMatrix.column(gens(f"{q}1", f"{q}2", f"{q}3"))
    for label, r in appendix_rule_residues(a, b).items():
        assert r.is_zero(), label


@st.composite
def matrices(draw, r, c, degree):
    return FormMatrix([[draw(homogeneous_forms(degree, max_terms=2))[1] for _ in range(c)]
                       for _ in range(r)])


@settings(max_examples=60)
@given(st.data())
def test_mwedge_associative(data):
    x = data.draw(matrices(2, 3, 1))
    y = data.draw(matrices(3, 2, 1))
    z = data.draw(matrices(2, 2, 1))
    assert mwedge(mwedge(x, y), z) == mwedge(x, mwedge(y, z))


@settings(max_examples=60)
@given(st.integers(0, 2), st.integers(0, 2), st.data())
def test_transpose_of_product(p, q, data):
    x = data.draw(matrices(2, 3, p))
    y = data.draw(matrices(3, 2, q))
    assert mwedge(x, y).T == mwedge(y.T, x.T) * (-1) ** (p * q)
