import pytest

from hetg2.connections import fa_box_relations, fa_relations
from hetg2.exterior import COFRAME, Form, d, wedge
from hetg2.g2model import build_model
from hetg2.ideal import Reducer, build_ideal, d_squared_table, reduce_mod_ideal


def test_six_generators():
    ideal = build_ideal()
    assert len(ideal) == 6
    assert ideal.extra == ()
    assert ideal.names == tuple(f"d2{n}" for n in COFRAME[1:])
    for g in ideal.generators:
        assert g.is_homogeneous(3) and g.param_free()


def test_d_squared_table():
    table = d_squared_table()
    nonzero = {n for n, v in table.items() if v}
    assert nonzero == set(COFRAME[1:])


def test_generator_matches_FA_relation():
    (r1, r2) = fa_relations()
    ideal = build_ideal()
    assert ideal.generators[0] == r1[0, 0]
    assert ideal.generators[1] == r2[0, 0]
    assert -d(d(Form.gen("e1"))) == r1[0, 0]


def test_generators_reduce_to_zero():
    for g in build_ideal().generators:
        assert reduce_mod_ideal(g) == Form()


def test_box_relation_entry():
    m1, _ = fa_box_relations()
    x = m1[0, 1]
    assert x
    assert reduce_mod_ideal(x) == Form()


def test_omega_squared_is_not_in_ideal():
    w = build_model().omega
    w2 = wedge(w, w)
    assert reduce_mod_ideal(w2) == w2


def test_low_degree_unchanged():
    x = Form.gen("al12")
    assert reduce_mod_ideal(x) == x


def test_multiple_of_generator():
    g = build_ideal().generators[3]
    x = wedge(Form.gen("e0"), Form.gen("a12"), g) * 5
    assert reduce_mod_ideal(x) == Form()
    assert Reducer(support="full").is_zero(x)


def test_residue_is_certified():
    r = Reducer()
    g = build_ideal().generators[2]
    w = build_model().omega
    x = wedge(w, g) + wedge(w, w)
    res, used = r.reduce(x)
    assert used
    assert res == wedge(w, w)


def test_dropping_a_generator_breaks_membership():
    ideal = build_ideal()
    r = Reducer(ideal.without(0))
    assert not r.is_zero(ideal.generators[0])


def test_unknown_support():
    with pytest.raises(ValueError):
        Reducer(support="huge")
