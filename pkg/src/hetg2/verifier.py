"""Named check registry, run harness, and JSON/text reports.

Every check collects a list of residues (Forms, matrices of Forms, scalar
polynomials or booleans) and passes iff all of them are exactly zero, either
in the free algebra or after reduction modulo the relation ideal.
"""

from __future__ import annotations

import json
import os
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import anomaly, connections as cn
from .exterior import (
    COFRAME, FORMAL_EVEN, FORMAL_ODD, Form, NAMES, TEST_GENS, d, gens, wedge,
)
from .formmatrix import (
    FormMatrix, block7, boxop, coframe_column, coframe_vectors, cross, lwedge, mwedge, outer,
)
from .g2model import (
    build_model, expected_flux, expected_tau3, flux, imomega_identities, psi_frame,
    reconstruct_residues, torsion_forms, type_checks,
)
from .ideal import RelationIdeal, Reducer, build_ideal, default_reducer, reduce_mod_ideal
from .scalars import DEGREE_CAP, DELTA, EPS, K, M, PARAMS, ParamPoly

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

LAMBDA_NOTE = (
    "lambda discrepancy: the torsion forms give lambda = (7/3) tau0 = 2*eps, while the "
    "theorem statement lists the scalar field as eps/2; the engine reports 2*eps."
)


# -- results ---------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    paper_label: str
    status: str                  # pass | fail | error
    needed_ideal: bool
    elapsed_ms: float
    detail: str | None = None

    def as_dict(self) -> dict:
        out = asdict(self)
        out["elapsed_ms"] = round(self.elapsed_ms, 3)
        if self.detail is None:
            out.pop("detail")
        return out


@dataclass
class Report:
    checks: list
    engine: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "error": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def ok(self) -> bool:
        s = self.summary
        return s["fail"] == 0 and s["error"] == 0

    def to_dict(self, timings: bool = True) -> dict:
        checks = [c.as_dict() for c in self.checks]
        if not timings:
            for c in checks:
                c["elapsed_ms"] = 0.0
        return {"engine": self.engine, "checks": checks, "summary": self.summary,
                "notes": list(self.notes)}

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2)

    def to_text(self, timings: bool = True) -> str:
        w = max([len(c.name) for c in self.checks] + [4])
        lines = []
        for c in self.checks:
            t = f"{c.elapsed_ms:9.1f} ms" if timings else ""
            ideal = "ideal" if c.needed_ideal else "free "
            lines.append(f"{c.name:<{w}}  {c.status.upper():<5}  {ideal}  {t}  {c.paper_label}".rstrip())
            if c.detail:
                for dl in c.detail.splitlines():
                    lines.append(f"    {dl}")
        s = self.summary
        lines.append(f"summary: {s['pass']} pass, {s['fail']} fail, {s['error']} error")
        for n in self.notes:
            lines.append(f"note: {n}")
        return "\n".join(lines)


def engine_metadata() -> dict:
    return {
        "name": "hetg2",
        "generators": list(NAMES),
        "coframe": list(COFRAME),
        "formal_odd": list(FORMAL_ODD),
        "formal_even": list(FORMAL_EVEN),
        "test_generators": list(TEST_GENS),
        "parameters": list(PARAMS),
        "max_form_degree": 7,
        "param_degree_cap": DEGREE_CAP,
        "ideal_generators": list(build_ideal().names),
    }


# -- residue collection ----------------------------------------------------

class _Ctx:
    def __init__(self, reducer: Reducer):
        self.reducer = reducer
        self.used_ideal = False
        self.items: list = []

    def zero(self, label: str, x, ideal: bool = False):
        """Record x as a residue that must vanish (modulo the ideal if asked)."""
        if isinstance(x, bool):
            x = Form() if x else Form.const(1)
        if isinstance(x, ParamPoly):
            x = Form.const(x)
        if isinstance(x, FormMatrix):
            entries = [(f"{label}[{i},{j}]", v) for (i, j), v in x.nonzero_entries()]
        else:
            entries = [(label, x)] if x else []
        for lab, v in entries:
            if ideal:
                v, used = self.reducer.reduce(v)
                self.used_ideal = self.used_ideal or used
            if v:
                self.items.append((lab, v))

    def eq(self, label, lhs, rhs, ideal: bool = False):
        self.zero(label, lhs - rhs, ideal)

    def failures(self):
        return self.items


def _detail(items, limit: int = 400) -> str:
    lines = []
    for lab, v in items:
        r = v.render()
        if len(r) > limit:
            r = r[:limit] + " ..."
        lines.append(f"{lab}: {r}")
    return "\n".join(lines)


# -- shared pieces ---------------------------------------------------------

def _omega_I():
    _, _, _, calI = cn.base_matrices()
    return lwedge(build_model().omega, calI)


def _bb_expected():
    e0, e, je = coframe_vectors()
    top = lwedge(e0, block7(Form(), (e.T, je.T), (-e, -je), ((None, None), (None, None))))
    mid = block7(Form(), (None, None), (None, None),
                 ((-outer(je, je), outer(je, e)), (outer(e, je), -outer(e, e))))
    return top + mid


def _q0_display():
    _, e, je = coframe_vectors()
    be, bje = boxop(e), boxop(je)
    sym = boxop(cross(e, e) + cross(je, je))
    comm = mwedge(be, bje) - mwedge(bje, be)
    return block7(Form(), (None, None), (None, None), ((-sym, comm * -2), (comm * 2, -sym))) * HALF


# -- the checks ------------------------------------------------------------

def c01(ctx):
    mdl = build_model()
    ctx.eq("dphi", d(mdl.phi), wedge(mdl.omega, mdl.omega) * EPS)
    ctx.zero("dpsi", d(mdl.psi))


def c02(ctx):
    mdl = build_model()
    tf = torsion_forms(mdl)
    ctx.eq("tau0", tf.tau0, EPS * Fraction(6, 7))
    ctx.zero("tau1", tf.tau1)
    ctx.zero("tau2", tf.tau2)
    ctx.eq("tau3", tf.tau3, expected_tau3(mdl))
    r1, r2 = reconstruct_residues(mdl, tf)
    ctx.zero("dphi reconstruction", r1)
    ctx.zero("dpsi reconstruction", r2)


def c03(ctx):
    mdl = build_model()
    g = flux(mdl)
    ctx.eq("H", g.flux, expected_flux(mdl))
    ctx.eq("dH", d(g.flux), -wedge(mdl.omega, mdl.omega) * (EPS * EPS))
    ctx.eq("lambda", g.lam, 2 * EPS)
    ctx.zero("mu", g.mu)


def c04(ctx):
    ctx.eq("psi", build_model().psi, psi_frame())


def c05(ctx):
    for label, ok in type_checks().items():
        ctx.zero(label, bool(ok))


def c06(ctx):
    c = coframe_column()
    ctx.eq("d(e0,e,Je)", cn.d_matrix(c), -mwedge(cn.paper_levi_civita(), c))


def c07(ctx):
    r1, r2 = cn.str_eqs_2_residues()
    ctx.zero("d[e]", r1)
    ctx.zero("d[Je]", r2)


def c08(ctx):
    A, B, _, _ = cn.base_matrices()
    lc = cn.paper_levi_civita()
    ctx.eq("A + (eps/2)B", A + B * (EPS * HALF), lc)
    ctx.zero("skew", lc + lc.T)
    ctx.zero("torsion", cn.torsion_of(lc))


def c09(ctx):
    conn = cn.build_connection(cn.ConnectionSpec(0, K, 0), verify=False)
    omega = build_model().omega
    ctx.eq("T", conn.torsion, FormMatrix.column([omega] + [Form()] * 6) * ((1 - K) * EPS))


def c10(ctx):
    conn = cn.build_connection(cn.ConnectionSpec(0, K, 0), verify=False)
    r = cn.curvature_matrix(conn.matrix)
    _, B, _, _ = cn.base_matrices()
    ctx.eq("R", r, cn.curvature_FA() + _omega_I() * (K * EPS * EPS * HALF)
           + mwedge(B, B) * (K * K * EPS * EPS * QUARTER))


def c11(ctx):
    _, B, C, _ = cn.base_matrices()
    ctx.eq("dB + AB + BA", cn.covariant_anticommutator(B), _omega_I() * EPS)
    ctx.eq("dC + AC + CA", cn.covariant_anticommutator(C), _omega_I() * -EPS)


def c12(ctx):
    _, B, _, _ = cn.base_matrices()
    ctx.eq("B^B", mwedge(B, B), _bb_expected())


def c13(ctx):
    r1, r2 = cn.fa_relations()
    ctx.zero("alpha^e + beta^Je", r1, ideal=True)
    ctx.zero("alpha^Je - beta^e", r2, ideal=True)


def c14(ctx):
    m1, m2 = cn.fa_box_relations()
    ctx.zero("alpha^[e] - [e]^alpha - beta^[Je] - [Je]^beta", m1, ideal=True)
    ctx.zero("alpha^[Je] - [Je]^alpha + beta^[e] + [e]^beta", m2, ideal=True)


def c15(ctx):
    ctx.eq("(eps/2) C ^ c", cn.flux_raised(), cn.flux_raised_explicit())
    ctx.eq("lowered", cn.lower_index(cn.flux_raised()), flux().flux * 3)


def c16(ctx):
    spec = cn.ConnectionSpec(DELTA, K, 0)
    conn = cn.build_connection(spec, verify=False)
    omega = build_model().omega
    w_e0 = FormMatrix.column([omega] + [Form()] * 6)
    ctx.eq("T", conn.torsion, w_e0 * ((1 - K) * EPS) + cn.flux_raised() * (K * DELTA))


def c17(ctx):
    spec = cn.ConnectionSpec(DELTA, K, 0)
    conn = cn.build_connection(spec, verify=False)
    r = cn.curvature_matrix(conn.matrix)
    _, B, C, _ = cn.base_matrices()
    bdc = B + C * DELTA
    q_delta = mwedge(bdc, bdc)
    qm, qp, q0, _ = cn.q_parts(spec)
    ctx.eq("(B+dC)^2", q_delta, qm * (1 - DELTA) + qp * (1 + DELTA) + q0 * (DELTA * DELTA))
    ctx.eq("R", r, cn.curvature_FA() + _omega_I() * (K * EPS * EPS * (1 - DELTA) * HALF)
           + q_delta * (K * K * EPS * EPS * QUARTER))


def c18(ctx):
    _, B, C, _ = cn.base_matrices()
    e0, e, je = coframe_vectors()
    be, bje = boxop(e), boxop(je)
    q0 = _q0_display()
    exje, exm = cross(e, je), cross(e, e) - cross(je, je)
    plus = block7(Form(), (exje.T * 2, exm.T), (exje * -2, -exm),
                  ((outer(je, je) * -2, outer(je, e) * 2),
                   (outer(e, je) * 2, outer(e, e) * -2))) * 2 + q0
    minus = lwedge(e0, block7(Form(), (None, None), (None, None),
                              ((bje, be), (be, -bje)))) * 4 + q0
    ctx.eq("(B+C)^2", mwedge(B + C, B + C), plus)
    ctx.eq("(B-C)^2", mwedge(B - C, B - C), minus)
    e2 = EPS * EPS
    bis = cn.curvature_matrix(cn.build_connection(cn.BISMUT, verify=False).matrix)
    hull = cn.curvature_matrix(cn.build_connection(cn.HULL, verify=False).matrix)
    ctx.eq("R+", bis, cn.curvature_FA() + plus * (e2 * QUARTER))
    ctx.eq("R-", hull, cn.curvature_FA() + _omega_I() * e2 + minus * (e2 * QUARTER))


def c19(ctx):
    conn = cn.build_connection(cn.ConnectionSpec(1, K, 0), verify=False)
    ctx.zero("theta^{+,k} in g2", cn.g2_valued_test(conn))
    a = cn.base_matrices()[0]
    ctx.zero("A in g2", cn.g2_valued_test(cn.Connection(a, cn.torsion_of(a), "A")))


def c20(ctx):
    A, B, C, _ = cn.base_matrices()
    e0, e, je = coframe_vectors()
    be, bje = boxop(e), boxop(je)
    eI = cn.e0_calI()
    top = block7(Form(), (e.T, je.T), (-e, -je), ((None, None), (None, None)))
    mid = block7(Form(), (None, None), (None, None), ((bje * -2, be * -2), (be * -2, bje * 2)))
    ctx.zero("A", mwedge(A, eI) + mwedge(eI, A))
    ctx.eq("B", mwedge(B, eI) + mwedge(eI, B), lwedge(e0, top))
    ctx.eq("C", mwedge(C, eI) + mwedge(eI, C), lwedge(e0, top + mid))


def c21(ctx):
    spec = cn.SYMBOLIC
    conn = cn.build_connection(spec, verify=False)
    omega = build_model().omega
    e0, e, je = coframe_vectors()
    zero3 = [Form()] * 3
    w_e0 = FormMatrix.column([omega] + zero3 + zero3)
    # e0 ^ omega with one index raised
    e0w = FormMatrix.column([omega] + [-wedge(e0, x) for x in je.vector()]
                            + [wedge(e0, x) for x in e.vector()])
    t = (w_e0 * ((1 - K - K * M * HALF) * EPS) + e0w * (K * M * EPS * HALF)
         + cn.flux_raised() * (K * DELTA))
    ctx.eq("T", conn.torsion, t)
    ctx.eq("lowered e0^omega", cn.lower_index(e0w), wedge(e0, omega) * 3)
    ctx.eq("R", cn.curvature_matrix(conn.matrix), cn.expected_curvature(spec))


SKEW_SPECS = (
    cn.ConnectionSpec(1, 1, 0), cn.ConnectionSpec(-1, 1, 0), cn.ConnectionSpec(0, 1, 0),
    cn.ConnectionSpec(0, 2, -1), cn.ConnectionSpec(DELTA, 2, -1), cn.ConnectionSpec(0, 2, 0),
    cn.ConnectionSpec(DELTA, Fraction(2, 3), 1), cn.ConnectionSpec(DELTA, K, M),
    cn.ConnectionSpec(0, Fraction(1, 2), 2),
)


def c22(ctx):
    for spec in SKEW_SPECS:
        conn = cn.build_connection(spec, verify=False)
        ctx.zero(f"skew iff [{spec.label()}]",
                 cn.skew_torsion_test(conn) == cn.skew_predicate(spec))


def c23(ctx):
    for label, r in imomega_identities().items():
        ctx.zero(label, r)


def _residual_delta_k_display():
    mdl = build_model()
    _, _, _, calI = cn.base_matrices()
    e0, e, je = coframe_vectors()
    be, bje = boxop(e), boxop(je)
    p = (1 - 5 * DELTA) * (1 + DELTA)
    q = DELTA * DELTA - 4 * DELTA - 1
    inner = block7(Form(), (e.T * p, je.T * p), (-e * p, -je * p),
                   ((bje * q, be * q), (be * q, bje * -q)))
    lam1 = K * EPS * EPS * (1 - DELTA) * (6 + K * (1 + 3 * DELTA)) * QUARTER
    return (lwedge(mdl.omega3_sixth, calI) * lam1
            + lwedge(wedge(e0, mdl.omega2_half), inner) * (K * K * EPS * EPS * QUARTER))


def c24(ctx):
    spec = cn.ConnectionSpec(DELTA, K, 0)
    curv = cn.curvature(cn.build_connection(spec, verify=False), verify=False)
    ctx.eq("R^psi", cn.instanton_residual(curv), _residual_delta_k_display(), ideal=True)


def c25(ctx):
    spec = cn.SYMBOLIC
    curv = cn.curvature(cn.build_connection(spec, verify=False), verify=False)
    res = cn.instanton_residual(curv)
    ctx.eq("R^psi", res, cn.residual_closed_form(spec), ideal=True)
    got = cn.extract_coefficients(res)
    want = cn.residual_coefficients(spec)
    for i, (g, w) in enumerate(zip(got.as_tuple(), want.as_tuple()), 1):
        ctx.eq(f"lambda{i}", g, w)


def _traces(*keys):
    def run(ctx):
        # trace lemmas that do not involve F_A never touch the ideal
        needs = any("FA" in k for k in keys)
        for key, desc, lhs, rhs in anomaly.trace_lemma_cases(cn.SYMBOLIC):
            if key in keys:
                ctx.eq(desc, lhs, rhs, ideal=needs)
    return run


def c32(ctx):
    res = anomaly.trace_defect(cn.SYMBOLIC, ctx.reducer)
    ctx.used_ideal = True
    ctx.eq("tr(R^2 - F_A^2)", res.defect, res.closed_form, ideal=True)


def c33(ctx):
    res = anomaly.trace_defect(cn.SYMBOLIC, ctx.reducer)
    ctx.used_ideal = True
    ctx.zero("lambda0 dH + 2 defect", anomaly.bianchi_cleared_residue(res), ideal=True)


def appendix_rule_residues(a: FormMatrix, b: FormMatrix) -> dict:
    """Residues of the five computational rules for 3-vectors of 1-forms a, b."""
    s = Form()
    for x, y in zip(a.vector(), b.vector()):
        s = s + wedge(x, y)
    ba, bb = boxop(a), boxop(b)
    return {
        "[a]^b = -a x b": mwedge(ba, b) + cross(a, b),
        "a^T^[b] = -(a x b)^T": mwedge(a.T, bb) + cross(a, b).T,
        "[a]^[b] + [b]^[a] = -[a x b]": mwedge(ba, bb) + mwedge(bb, ba) + boxop(cross(a, b)),
        "[a]^[b] - [b]^[a] = a^bT - b^aT - 2 I sum a_j^b_j":
            mwedge(ba, bb) - mwedge(bb, ba) - outer(a, b) + outer(b, a)
            + FormMatrix.diag([s * 2] * 3),
        "[a]^[a] = -a^aT = -(1/2)[a x a]":
            (mwedge(ba, ba) + outer(a, a)) + (outer(a, a) - boxop(cross(a, a)) * HALF),
        "b x a = a x b": cross(b, a) - cross(a, b),
    }


def c34(ctx):
    u = FormMatrix.column(gens("u1", "u2", "u3"))
    v = FormMatrix.column(gens("v1", "v2", "v3"))
    for label, r in appendix_rule_residues(u, v).items():
        ctx.zero(label, r)
    _, e, je = coframe_vectors()
    for label, r in appendix_rule_residues(e, je).items():
        ctx.zero(f"(e, Je) {label}", r)


def c35(ctx):
    ideal = build_ideal()
    ctx.zero("extra d^2 generators", not ideal.extra)
    ctx.zero("six ideal generators", len(ideal) == 6)
    for g in ideal.generators:
        ctx.zero("generator is a parameter-free 3-form", g.is_homogeneous(3) and g.param_free())
    for n in NAMES[:23]:
        dd = d(d(Form.gen(n)))
        if n in COFRAME[1:]:
            ctx.zero(f"d^2 {n} nonzero", bool(dd))
            ctx.zero(f"d^2 {n}", dd, ideal=True)
        else:
            ctx.zero(f"d^2 {n}", dd)


# (name, paper label, function)
REGISTRY = (
    ("C01 dphi-dpsi", "eq:diff.eps", c01),
    ("C02 torsion-forms", "lem:torsion.eps", c02),
    ("C03 flux", "lem:flux", c03),
    ("C04 psi-frame", "eq:psi.eps.frame", c04),
    ("C05 basic-types", "lem:basic", c05),
    ("C06 structure-eqs-matrix", "eq:str.eqs.matrix", c06),
    ("C07 d-box-eqs", "eq:str.eqs.2", c07),
    ("C08 levi-civita", "cor:conn.eps", c08),
    ("C09 squash-torsion", "dfn:theta.eps.k remark", c09),
    ("C10 curv-k", "R.eps.k proposition", c10),
    ("C11 dAB", "eq:dAB", c11),
    ("C12 BwedgeB", "eq:BwedgeB", c12),
    ("C13 FA-relations", "eq: F ^ e and Je", c13),
    ("C14 FA-box-relations", "eq:F.wedge.e.Je.2", c14),
    ("C15 H-raised", "prop:H.torsion", c15),
    ("C16 conn-delta-k-torsion", "eq:H.k.delta.eps", c16),
    ("C17 curv-delta-k", "eq:R.delta.k / eq:BdeltaC2", c17),
    ("C18 bismut-hull", "eq:R.+ / eq:R.- / eq:BdeltaC2.+ / eq:BdeltaC2.-", c18),
    ("C19 g2-valued-bismut", "dfn:Bismut.k", c19),
    ("C20 twist-lemma", "lem:twist", c20),
    ("C21 twist-curvature", "prop:twist.curvature", c21),
    ("C22 skew-iff", "skew-torsion corollary", c22),
    ("C23 imomega-identities", "lem:ImOmega.identities", c23),
    ("C24 residual-delta-k", "eq:G2.inst.delta.eps.k", c24),
    ("C25 residual-delta-m-k", "eq:G2.inst.eps.delta.m.k", c25),
    ("C26 trace-I", "eq:trace.I.1", _traces("trace-I-squared", "trace-FA-omegaI")),
    ("C27 trace-QI", "eq:tr.Q.I.delta.m",
     _traces("trace-QI-minus", "trace-QI-plus", "trace-QI-zero", "trace-QI-dm")),
    ("C28 FA-linear-traces", "lem:Qdelta.pm.FA / lem:tr.FA.Q0",
     _traces("trace-FA-Qminus", "trace-FA-Qplus", "trace-FA-Qzero", "trace-FA-Qdm")),
    ("C29 Q-squares", "lem:nonlinear.1",
     _traces("trace-Qminus-sq", "trace-Qplus-sq", "trace-Qzero-sq")),
    ("C30 Q-cross", "lem:nonlinear.2/3/4",
     _traces("trace-Qminus-Qplus", "trace-Qminus-Qzero", "trace-Qplus-Qzero")),
    ("C31 tr-Qdm-squared", "cor:tr.Qdeltam", _traces("trace-Qdm-sq")),
    ("C32 trace-defect", "eq:trace.4", c32),
    ("C33 bianchi-cleared", "eq:anomaly.eps.delta.m.k", c33),
    ("C34 appendix-rules", "lem: computational rules", c34),
    ("C35 d-squared-audit", "ideal construction audit", c35),
)

CHECK_NAMES = tuple(n for n, _, _ in REGISTRY)


class UnknownCheck(KeyError):
    pass


def select(selection=None) -> list:
    """Registry entries matching ``selection``.

    ``selection`` may be None (all), a string or an iterable of strings; each
    item matches a check by id ("C26"), full name, or short name ("trace-I").
    """
    if selection is None:
        return list(REGISTRY)
    items = [selection] if isinstance(selection, str) else list(selection)
    chosen = []
    for item in items:
        for part in str(item).split(","):
            part = part.strip()
            if not part:
                continue
            hits = [r for r in REGISTRY
                    if part in (r[0], r[0].split()[0], r[0].split(" ", 1)[1])]
            if not hits:
                raise UnknownCheck(f"unknown check {part!r}")
            for h in hits:
                if h not in chosen:
                    chosen.append(h)
    return sorted(chosen, key=lambda r: r[0])


def run_one(entry, reducer: Reducer | None = None) -> CheckResult:
    name, label, fn = entry
    reducer = reducer or default_reducer()
    ctx = _Ctx(reducer)
    t0 = time.perf_counter()
    try:
        fn(ctx)
    except Exception as exc:   # an engine fault must not abort the run
        ms = (time.perf_counter() - t0) * 1000
        tb = traceback.format_exception_only(type(exc), exc)[-1].strip()
        return CheckResult(name, label, "error", ctx.used_ideal, ms, tb)
    ms = (time.perf_counter() - t0) * 1000
    fails = ctx.failures()
    if fails:
        return CheckResult(name, label, "fail", ctx.used_ideal, ms, _detail(fails))
    return CheckResult(name, label, "pass", ctx.used_ideal, ms)


def thread_count() -> int:
    raw = os.environ.get("HETG2_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def run_checks(selection=None, support: str = "restricted", threads: int | None = None,
               ideal: RelationIdeal | None = None) -> Report:
    entries = select(selection)
    reducer = default_reducer(support) if ideal is None else Reducer(ideal, support)
    n = threads or thread_count()
    if n > 1 and len(entries) > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(lambda e: run_one(e, reducer), entries))
    else:
        results = [run_one(e, reducer) for e in entries]
    results.sort(key=lambda r: r.name)
    return Report(results, engine_metadata(), [LAMBDA_NOTE])


AUDIT_CHECKS = ("C13", "C14", "C28")


def audit_minimality(support: str = "restricted") -> dict:
    """Drop each ideal generator in turn; report which of C13/C14/C28 then fail."""
    full = build_ideal()
    out = {}
    for i, name in enumerate(full.names):
        report = run_checks(AUDIT_CHECKS, support=support, threads=1, ideal=full.without(i))
        out[name] = [c.name for c in report.checks if c.status != "pass"]
    return out


__all__ = [
    "CheckResult", "Report", "REGISTRY", "CHECK_NAMES", "UnknownCheck", "LAMBDA_NOTE",
    "build_ideal", "reduce_mod_ideal", "run_checks", "run_one", "select", "audit_minimality",
    "engine_metadata", "appendix_rule_residues", "thread_count",
]
