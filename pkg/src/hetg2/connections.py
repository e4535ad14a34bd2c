"""Connection families A, theta^k, theta^{delta,k}, theta^{delta,k}_m on the coframe.

Conventions: for a 7x7 connection matrix theta and the coframe column
c = (e0, e, Je), the torsion is T = dc + theta ^ c (a column of 2-forms, index
raised).  Curvature is R = d theta + theta ^ theta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exterior import COFRAME, Form, block_generators, d, gens, wedge
from .formmatrix import (
    FormMatrix, anticommutator, block7, boxop, coframe_column, coframe_vectors, cross,
    lwedge, mwedge, outer, scalar_identity3,
)
from .g2model import G2Model, build_model
from .scalars import DELTA, EPS, K, M, ParamPoly

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ConnectionSpec:
    delta: object = DELTA
    k: object = K
    m: object = M

    def polys(self):
        return tuple(ParamPoly.lift(x) for x in (self.delta, self.k, self.m))

    def label(self) -> str:
        d_, k_, m_ = self.polys()
        return f"delta={d_}, k={k_}, m={m_}"

    def substitutions(self) -> dict:
        """Numeric parameters as a subs() mapping (symbolic ones omitted)."""
        out = {}
        for name, v in zip(("delta", "k", "m"), self.polys()):
            if v.is_constant():
                out[name] = v.constant()
        return out


SYMBOLIC = ConnectionSpec()
LEVI_CIVITA = ConnectionSpec(0, 1, 0)
BISMUT = ConnectionSpec(1, 1, 0)
HULL = ConnectionSpec(-1, 1, 0)


@dataclass(frozen=True)
class Connection:
    matrix: FormMatrix
    torsion: FormMatrix
    label: str
    spec: ConnectionSpec | None = None


@dataclass(frozen=True)
class Curvature:
    matrix: FormMatrix


@dataclass(frozen=True)
class ResidualCoefficients:
    lambda1: ParamPoly
    lambda2: ParamPoly
    lambda3: ParamPoly

    def as_tuple(self):
        return (self.lambda1, self.lambda2, self.lambda3)


def _m3(rows) -> FormMatrix:
    return FormMatrix(rows)


@lru_cache(maxsize=None)
def base_matrices():
    """(A, B, C, I) with the symmetry constraints on a, b already resolved."""
    a, b, _, _ = block_generators()
    a, b = _m3(a), _m3(b)
    e0, e, je = coframe_vectors()
    e0I = scalar_identity3(e0)
    I3 = FormMatrix.identity(3)
    A = block7(Form(), (None, None), (None, None), ((a, b), (-b, a)))
    B = block7(Form(), (je.T, -e.T), (-je, e), ((None, -e0I), (e0I, None)))
    C = block7(Form(), (je.T, -e.T), (-je, e),
               ((-boxop(e), e0I + boxop(je)), (-e0I + boxop(je), boxop(e))))
    calI = block7(Form(), (None, None), (None, None), ((None, -I3), (I3, None)))
    for x in (A, B, C):
        x.assert_degree(1)
    return A, B, C, calI


@lru_cache(maxsize=None)
def curvature_FA() -> FormMatrix:
    _, _, al, be = block_generators()
    al, be = _m3(al), _m3(be)
    return block7(Form(), (None, None), (None, None), ((al, be), (-be, al))).assert_degree(2)


def e0_calI() -> FormMatrix:
    _, _, _, calI = base_matrices()
    return lwedge(Form.gen("e0"), calI)


def connection_matrix(spec: ConnectionSpec) -> FormMatrix:
    A, B, C, _ = base_matrices()
    delta, k, m = spec.polys()
    return (A + B * (k * EPS * HALF) + C * (k * EPS * delta * HALF)
            + e0_calI() * (k * m * EPS * HALF))


def d_matrix(x: FormMatrix) -> FormMatrix:
    return x.map(d)


def torsion_of(theta: FormMatrix) -> FormMatrix:
    c = coframe_column()
    return d_matrix(c) + mwedge(theta, c)


def flux_raised() -> FormMatrix:
    """H with one index raised, as (eps/2) C ^ (e0, e, Je)."""
    _, _, C, _ = base_matrices()
    return mwedge(C, coframe_column()) * (EPS * HALF)


def flux_raised_explicit() -> FormMatrix:
    """Componentwise form of the raised flux."""
    e0, e1, f1, e2, f2, e3, f3 = gens(*COFRAME)
    w = wedge
    return FormMatrix.column([
        -(w(e1, f1) + w(e2, f2) + w(e3, f3)),
        w(e0, f1) + w(e2, e3) - w(f2, f3),
        w(e0, f2) + w(e3, e1) - w(f3, f1),
        w(e0, f3) + w(e1, e2) - w(f1, f2),
        -w(e0, e1) - w(e2, f3) + w(e3, f2),
        -w(e0, e2) - w(e3, f1) + w(e1, f3),
        -w(e0, e3) - w(e1, f2) + w(e2, f1),
    ]) * EPS


def lower_index(t: FormMatrix) -> Form:
    """sum_i c^i ^ T^i; equals 3 times the 3-form whose raised version is T."""
    c = coframe_column()
    return mwedge(c.T, t)[0, 0]


def expected_torsion(spec: ConnectionSpec) -> FormMatrix:
    delta, k, m = spec.polys()
    e0, e, je = coframe_vectors()
    omega = build_model().omega
    zero3 = [Form()] * 3
    w_e0 = FormMatrix.column([omega] + zero3 + zero3)
    raised_e0w = FormMatrix.column([omega] + [-wedge(e0, x) for x in je.vector()]
                                   + [wedge(e0, x) for x in e.vector()])
    return (w_e0 * ((1 - k - k * m * HALF) * EPS) + raised_e0w * (k * m * EPS * HALF)
            + flux_raised() * (k * delta))


def build_connection(spec: ConnectionSpec = SYMBOLIC, verify: bool = True) -> Connection:
    theta = connection_matrix(spec).assert_degree(1)
    t = torsion_of(theta)
    if verify:
        if not theta.T == -theta:
            raise AssertionError("connection matrix is not skew")
        if t != expected_torsion(spec):
            raise AssertionError(f"torsion mismatch for {spec.label()}")
    return Connection(theta, t, spec.label(), spec)


def curvature_matrix(theta: FormMatrix) -> FormMatrix:
    return d_matrix(theta) + mwedge(theta, theta)


def q_parts(spec: ConnectionSpec = SYMBOLIC):
    """(Q_minus, Q_plus, Q_0, Q_m)."""
    delta, _, m = spec.polys()
    e0, e, je = coframe_vectors()
    be, bje = boxop(e), boxop(je)
    one_d = 1 + delta
    qm_inner = block7(Form(), (e.T * one_d, je.T * one_d), (-e * one_d, -je * one_d),
                      ((bje * (-2 * delta), be * (-2 * delta)),
                       (be * (-2 * delta), bje * (2 * delta))))
    q_minus = lwedge(e0, qm_inner)
    exje = cross(e, je)
    exe_m = cross(e, e) - cross(je, je)
    q_plus = block7(Form(), (exje.T * (2 * delta), exe_m.T * delta),
                    (exje * (-2 * delta), exe_m * (-delta)),
                    ((outer(je, je) * (-one_d), outer(je, e) * one_d),
                     (outer(e, je) * one_d, outer(e, e) * (-one_d))))
    sym = boxop(cross(e, e) + cross(je, je))
    comm = mwedge(be, bje) - mwedge(bje, be)
    q0 = block7(Form(), (None, None), (None, None),
                ((-sym, comm * -2), (comm * 2, -sym))) * HALF
    q_dm = q_minus * (1 - delta + m) + q_plus * one_d + q0 * (delta * delta)
    return q_minus, q_plus, q0, q_dm


def expected_curvature(spec: ConnectionSpec) -> FormMatrix:
    delta, k, m = spec.polys()
    _, _, _, calI = base_matrices()
    omega = build_model().omega
    q_dm = q_parts(spec)[3]
    return (curvature_FA() + lwedge(omega, calI) * (k * EPS * EPS * (1 - delta + m) * HALF)
            + q_dm * (k * k * EPS * EPS * Fraction(1, 4)))


def curvature(conn: Connection, verify: bool = True) -> Curvature:
    r = curvature_matrix(conn.matrix).assert_degree(2)
    if verify and conn.spec is not None and r != expected_curvature(conn.spec):
        raise AssertionError(f"curvature mismatch for {conn.label}")
    return Curvature(r)


def residual_coefficients(spec: ConnectionSpec = SYMBOLIC) -> ResidualCoefficients:
    delta, k, m = spec.polys()
    k2e2 = k * k * EPS * EPS * Fraction(1, 4)
    lam1 = k * EPS * EPS * (6 * (1 - delta + m) + k * (1 - delta) * (1 + 3 * delta)) * Fraction(1, 4)
    lam2 = k2e2 * (1 + m - 5 * delta) * (1 + delta)
    lam3 = k2e2 * (delta * delta - 2 * (2 + m) * delta - 1)
    return ResidualCoefficients(lam1, lam2, lam3)


def residual_closed_form(spec: ConnectionSpec, model: G2Model | None = None) -> FormMatrix:
    model = model or build_model()
    lam1, lam2, lam3 = residual_coefficients(spec).as_tuple()
    _, _, _, calI = base_matrices()
    e0, e, je = coframe_vectors()
    be, bje = boxop(e), boxop(je)
    inner = block7(Form(), (e.T * lam2, je.T * lam2), (-e * lam2, -je * lam2),
                   ((bje * lam3, be * lam3), (be * lam3, bje * -lam3)))
    return (lwedge(model.omega3_sixth, calI) * lam1
            + lwedge(wedge(e0, model.omega2_half), inner))


def instanton_residual(curv: Curvature, model: G2Model | None = None) -> FormMatrix:
    model = model or build_model()
    return curv.matrix.map(lambda x: wedge(x, model.psi))


def extract_coefficients(residual: FormMatrix, model: G2Model | None = None):
    """Read (lambda1, lambda2, lambda3) off pure-coframe entries of R ^ psi.

    The alpha/beta parts of R ^ psi lie in other graded pieces, so the
    coefficients of these coframe monomials do not depend on ideal reduction.
    """
    model = model or build_model()
    e0, e1, f3 = gens("e0", "e1", "f3")
    w2 = model.omega2_half
    lam1 = residual[4, 1].coefficient(model.omega3_sixth)
    lam2 = residual[0, 1].coefficient(wedge(e0, w2, e1))
    lam3 = residual[1, 2].coefficient(wedge(e0, w2, f3))
    return ResidualCoefficients(lam1, lam2, lam3)


def torsion_tensor(t: FormMatrix) -> dict:
    """T_{ijk} (index lowered by the identity) as {(i, j, k): ParamPoly}."""
    frame = coframe_column().vector()
    out = {}
    for i in range(7):
        ti = t[i, 0]
        if not ti.is_coframe():
            raise ValueError("torsion must be a coframe form")
        for j in range(7):
            for k in range(7):
                if j == k:
                    continue
                c = ti.coefficient(wedge(frame[j], frame[k])) if j < k else \
                    -ti.coefficient(wedge(frame[k], frame[j]))
                if c:
                    out[(i, j, k)] = c
    return out


def skew_torsion_test(conn: Connection) -> bool:
    """True iff T_{ijk} is totally antisymmetric (as a polynomial identity)."""
    tt = torsion_tensor(conn.torsion)
    for (i, j, k), c in tt.items():
        if tt.get((j, i, k), ParamPoly()) != -c:
            return False
    return True


def skew_predicate(spec: ConnectionSpec) -> bool:
    _, k, m = spec.polys()
    return (1 - k * (1 + m * HALF)).is_zero()


def g2_valued_test(conn: Connection, model: G2Model | None = None) -> bool:
    """Split theta by 1-form direction; each direction's 2-form must wedge psi to 0."""
    model = model or build_model()
    frame = coframe_column().vector()
    th = conn.matrix
    directions: dict = {}
    for i in range(7):
        for j in range(i + 1, 7):
            for (key, p), c in th[i, j].items():
                directions.setdefault(key, {})
                directions[key][(i, j)] = directions[key].get((i, j), ParamPoly()) + \
                    ParamPoly._raw({p: c})
    for key, coeffs in directions.items():
        sigma = Form()
        for (i, j), c in coeffs.items():
            sigma = sigma + wedge(frame[i], frame[j]) * c
        if wedge(sigma, model.psi):
            return False
    return True


def covariant_anticommutator(x: FormMatrix) -> FormMatrix:
    """dX + A^X + X^A."""
    A = base_matrices()[0]
    return d_matrix(x) + anticommutator(A, x)


def paper_levi_civita() -> FormMatrix:
    """The explicit Levi-Civita matrix in block form, built entry by entry."""
    a, b, _, _ = block_generators()
    a, b = _m3(a), _m3(b)
    e0, e, je = coframe_vectors()
    h = EPS * HALF
    e0I = scalar_identity3(e0)
    return block7(Form(), (je.T * h, e.T * -h), (je * -h, e * h),
                  ((a, b - e0I * h), (-b + e0I * h, a)))


def str_eqs_2_residues():
    """d([e]) and d([Je]) minus their structure-equation expansions."""
    a, b, _, _ = block_generators()
    a, b = _m3(a), _m3(b)
    _, e, je = coframe_vectors()
    be, bje = boxop(e), boxop(je)
    r1 = d_matrix(be) - (-mwedge(a, be) - mwedge(be, a) + mwedge(b, bje) - mwedge(bje, b))
    r2 = d_matrix(bje) - (-mwedge(a, bje) - mwedge(bje, a) - mwedge(b, be) + mwedge(be, b))
    return r1, r2


def fa_relations():
    """alpha^e + beta^Je and alpha^Je - beta^e (3-vectors of 3-forms)."""
    _, _, al, be = block_generators()
    al, be = _m3(al), _m3(be)
    _, e, je = coframe_vectors()
    return mwedge(al, e) + mwedge(be, je), mwedge(al, je) - mwedge(be, e)


def fa_box_relations():
    """The two 3x3 matrices combining alpha, beta with [e], [Je].

    Both lie in the ideal: a commutator in alpha and an anticommutator in beta.
    The sign pattern of the second is fixed by differentiating d([Je]).
    """
    _, _, al, be = block_generators()
    al, be = _m3(al), _m3(be)
    _, e, je = coframe_vectors()
    bx, bjx = boxop(e), boxop(je)
    m1 = mwedge(al, bx) - mwedge(bx, al) - mwedge(be, bjx) - mwedge(bjx, be)
    m2 = mwedge(al, bjx) - mwedge(bjx, al) + mwedge(be, bx) + mwedge(bx, be)
    return m1, m2


def fa_box_relation_as_printed() -> FormMatrix:
    """The second box relation with the printed signs (+[Je]^alpha, -[e]^beta)."""
    _, _, al, be = block_generators()
    al, be = _m3(al), _m3(be)
    _, e, je = coframe_vectors()
    bx, bjx = boxop(e), boxop(je)
    return mwedge(al, bjx) + mwedge(bjx, al) + mwedge(be, bx) - mwedge(bx, be)
