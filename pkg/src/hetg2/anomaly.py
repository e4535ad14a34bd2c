"""Chern-Simons defect tr(R^2 - F_A^2), the trace lemmas, and lambda0.

The heterotic Bianchi identity here reads dH = (alpha'/4)(tr F_A^2 - tr R^2)
with dH = -eps^2 omega^2.  Writing defect = tr(R^2 - F_A^2) and
alpha' = 8/lambda0 it becomes dH = -(2/lambda0) defect, which is stored in
the denominator-free form

    lambda0 * dH + 2 * defect = 0.

With defect = (eps^2 lambda0 / 2) omega^2 this is a polynomial identity, and
alpha' never appears symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .connections import (
    ConnectionSpec, SYMBOLIC, base_matrices, build_connection, curvature, curvature_FA,
    q_parts,
)
from .exterior import Form, d, wedge
from .formmatrix import FormMatrix, lwedge, mtrace, mwedge
from .g2model import build_model, flux
from .ideal import Reducer, default_reducer
from .scalars import EPS, ParamPoly


@dataclass(frozen=True)
class AnomalyResult:
    defect: Form          # tr(R^2 - F_A^2), reduced modulo the ideal
    raw_defect: Form      # before reduction
    lambda0: ParamPoly
    dH: Form
    closed_form: Form

    @property
    def matches(self) -> bool:
        return self.defect == self.closed_form


def defect_factor(spec: ConnectionSpec = SYMBOLIC) -> ParamPoly:
    """X = k^2 delta^2 (1+delta)^2 + (1-delta+m)(k(4 delta^2 - (1+delta)^2) - 3)."""
    delta, k, m = spec.polys()
    return (k * k * delta * delta * (1 + delta) * (1 + delta)
            + (1 - delta + m) * (k * (4 * delta * delta - (1 + delta) * (1 + delta)) - 3))


def derived_defect_factor(spec: ConnectionSpec = SYMBOLIC) -> ParamPoly:
    """Y = (1-delta+m)(k(4 delta^2 - (1+delta)^2) - 3(1-delta+m)).

    This is what the matrices actually give: tr(R^2 - F_A^2) = (k^2 eps^4 Y / 2) w^2.
    It differs from X in two places: tr(Q+)^2 is -16 delta^2 w^2, which makes
    tr(Qm)^2 vanish, and the tr(I^2) term carries (1-delta+m)^2.
    """
    delta, k, m = spec.polys()
    u = 1 - delta + m
    return u * (k * (4 * delta * delta - (1 + delta) * (1 + delta)) - 3 * u)


def derived_defect(spec: ConnectionSpec = SYMBOLIC) -> Form:
    _, k, _ = spec.polys()
    omega = build_model().omega
    return wedge(omega, omega) * (k * k * EPS ** 4 * derived_defect_factor(spec) * Fraction(1, 2))


def lambda0_poly(spec: ConnectionSpec = SYMBOLIC) -> ParamPoly:
    _, k, _ = spec.polys()
    return k * k * EPS * EPS * defect_factor(spec)


def closed_form_defect(spec: ConnectionSpec = SYMBOLIC) -> Form:
    _, k, _ = spec.polys()
    omega = build_model().omega
    return wedge(omega, omega) * (k * k * EPS ** 4 * defect_factor(spec) * Fraction(1, 2))


def tr_sq(x: FormMatrix) -> Form:
    return mtrace(mwedge(x, x))


def tr_anti(x: FormMatrix, y: FormMatrix) -> Form:
    return mtrace(mwedge(x, y) + mwedge(y, x))


class DefectMismatch(AssertionError):
    pass


def trace_defect(spec: ConnectionSpec = SYMBOLIC, reducer: Reducer | None = None,
                 strict: bool = False) -> AnomalyResult:
    """tr(R^2) - tr(F_A^2) from the raw curvature matrices, reduced modulo the ideal.

    With ``strict`` a mismatch against the closed form raises DefectMismatch;
    otherwise inspect ``result.matches``.
    """
    reducer = reducer or default_reducer()
    conn = build_connection(spec)
    r = curvature(conn).matrix
    raw = tr_sq(r) - tr_sq(curvature_FA())
    reduced, _ = reducer.reduce(raw)
    res = AnomalyResult(
        defect=reduced,
        raw_defect=raw,
        lambda0=lambda0_poly(spec),
        dH=d(flux().flux),
        closed_form=closed_form_defect(spec),
    )
    if strict and not res.matches:
        diff = reducer.reduce(res.defect - res.closed_form)[0]
        raise DefectMismatch(f"defect differs from the closed form by {diff.render()}")
    return res


def bianchi_cleared_residue(res: AnomalyResult) -> Form:
    """lambda0 * dH + 2 * defect; zero exactly when alpha' = 8/lambda0 solves the identity."""
    return res.dH * res.lambda0 + res.defect * 2


def omega_calI() -> FormMatrix:
    _, _, _, calI = base_matrices()
    return lwedge(build_model().omega, calI)


def trace_lemma_cases(spec: ConnectionSpec = SYMBOLIC):
    """[(key, description, lhs, rhs)] for every trace identity of the anomaly computation."""
    delta = spec.polys()[0]
    omega = build_model().omega
    w2 = wedge(omega, omega)
    _, _, _, calI = base_matrices()
    wI = omega_calI()
    fa = curvature_FA()
    qm, qp, q0, qdm = q_parts(spec)
    zero = Form()
    return [
        ("trace-I-squared", "tr I^2 = -6", mtrace(mwedge(calI, calI)), Form.const(-6)),
        ("trace-FA-omegaI", "tr(F_A ^ wI + wI ^ F_A) = 0", tr_anti(fa, wI), zero),
        ("trace-QI-minus", "tr(wI ^ Q- + Q- ^ wI) = 0", tr_anti(wI, qm), zero),
        ("trace-QI-plus", "tr(wI ^ Q+ + Q+ ^ wI) = -4(1+delta) w^2", tr_anti(wI, qp),
         w2 * (-4 * (1 + delta))),
        ("trace-QI-zero", "tr(wI ^ Q0 + Q0 ^ wI) = 16 w^2", tr_anti(wI, q0), w2 * 16),
        ("trace-QI-dm", "tr(wI ^ Qm + Qm ^ wI) = 4(4 delta^2 - (1+delta)^2) w^2",
         tr_anti(wI, qdm), w2 * (4 * (4 * delta * delta - (1 + delta) * (1 + delta)))),
        ("trace-FA-Qminus", "tr(F_A ^ Q- + Q- ^ F_A) = 0", tr_anti(fa, qm), zero),
        ("trace-FA-Qplus", "tr(F_A ^ Q+ + Q+ ^ F_A) = 0", tr_anti(fa, qp), zero),
        ("trace-FA-Qzero", "tr(F_A ^ Q0 + Q0 ^ F_A) = 0", tr_anti(fa, q0), zero),
        ("trace-FA-Qdm", "tr(F_A ^ Qm + Qm ^ F_A) = 0", tr_anti(fa, qdm), zero),
        ("trace-Qminus-sq", "tr(Q-)^2 = 0", tr_sq(qm), zero),
        ("trace-Qplus-sq", "tr(Q+)^2 = -8 delta^2 w^2", tr_sq(qp), w2 * (-8 * delta * delta)),
        ("trace-Qzero-sq", "tr(Q0)^2 = 0", tr_sq(q0), zero),
        ("trace-Qminus-Qplus", "tr(Q- ^ Q+ + Q+ ^ Q-) = 0", tr_anti(qm, qp), zero),
        ("trace-Qminus-Qzero", "tr(Q- ^ Q0 + Q0 ^ Q-) = 0", tr_anti(qm, q0), zero),
        ("trace-Qplus-Qzero", "tr(Q+ ^ Q0 + Q0 ^ Q+) = 16(1+delta) w^2", tr_anti(qp, q0),
         w2 * (16 * (1 + delta))),
        ("trace-Qdm-sq", "tr(Qm)^2 = 8 delta^2 (1+delta)^2 w^2", tr_sq(qdm),
         w2 * (8 * delta * delta * (1 + delta) * (1 + delta))),
    ]


@dataclass(frozen=True)
class TraceCheck:
    key: str
    description: str
    residue: Form
    needed_ideal: bool

    @property
    def ok(self) -> bool:
        return self.residue.is_zero()


def trace_lemma_suite(spec: ConnectionSpec = SYMBOLIC, reducer: Reducer | None = None,
                      keys=None) -> list:
    reducer = reducer or default_reducer()
    out = []
    for key, desc, lhs, rhs in trace_lemma_cases(spec):
        if keys is not None and key not in keys:
            continue
        free = lhs - rhs
        residue = reducer.reduce(free)[0] if free else free
        out.append(TraceCheck(key, desc, residue, bool(free)))
    return out


__all__ = [
    "AnomalyResult", "TraceCheck", "trace_defect", "trace_lemma_suite", "trace_lemma_cases",
    "lambda0_poly", "defect_factor", "closed_form_defect", "bianchi_cleared_residue",
    "derived_defect_factor", "derived_defect", "DefectMismatch", "omega_calI", "tr_sq", "tr_anti",
]
