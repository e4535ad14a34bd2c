"""The cocalibrated G2-structure on the local coframe: forms, torsion, flux."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exterior import Form, d, gens, jmap, star, wedge
from .formmatrix import FormMatrix, boxop, cross, mwedge
from .scalars import EPS, ParamPoly


@dataclass(frozen=True)
class G2Model:
    omega: Form
    re_omega: Form
    im_omega: Form
    phi: Form
    psi: Form
    vol: Form

    @property
    def omega2_half(self) -> Form:
        return wedge(self.omega, self.omega) * Fraction(1, 2)

    @property
    def omega3_sixth(self) -> Form:
        return wedge(self.omega, self.omega, self.omega) * Fraction(1, 6)


@dataclass(frozen=True)
class TorsionForms:
    tau0: ParamPoly
    tau1: Form
    tau2: Form
    tau3: Form


@dataclass(frozen=True)
class GeoFields:
    lam: ParamPoly
    mu: ParamPoly
    flux: Form


_MODEL = None


def build_model() -> G2Model:
    global _MODEL
    if _MODEL is not None:
        return _MODEL
    e0, e1, f1, e2, f2, e3, f3 = gens("e0", "e1", "f1", "e2", "f2", "e3", "f3")
    omega = wedge(e1, f1) + wedge(e2, f2) + wedge(e3, f3)
    re_omega = (wedge(e1, e2, e3) - wedge(e1, f2, f3) - wedge(e2, f3, f1)
                - wedge(e3, f1, f2))
    im_omega = (wedge(f1, e2, e3) + wedge(f2, e3, e1) + wedge(f3, e1, e2)
                - wedge(f1, f2, f3))
    phi = wedge(e0, omega) + re_omega
    psi = wedge(omega, omega) * Fraction(1, 2) - wedge(e0, im_omega)
    vol = wedge(e0, omega, omega, omega) * Fraction(1, 6)
    _MODEL = G2Model(omega, re_omega, im_omega, phi, psi, vol)
    return _MODEL


def psi_frame() -> Form:
    """The explicit eight-term expansion of psi in the coframe."""
    e0, e1, f1, e2, f2, e3, f3 = gens("e0", "e1", "f1", "e2", "f2", "e3", "f3")
    return (wedge(e1, f1, e2, f2) + wedge(e1, f1, e3, f3) + wedge(e2, f2, e3, f3)
            - wedge(e0, f1, e2, e3) - wedge(e0, f2, e3, e1) - wedge(e0, f3, e1, e2)
            + wedge(e0, f1, f2, f3))


def scalar_multiple(x: Form, basis: Form) -> ParamPoly:
    """Return c with x = c * basis, where basis is a single rational monomial."""
    ((key, p), c), = basis.items()
    if p:
        raise ValueError("basis must have a rational coefficient")
    coeff = x.coefficient(key) * (Fraction(1) / c)
    if x - Form.from_mono(key, coeff * c) != Form():
        raise ValueError(f"{x.render()} is not a multiple of {basis.render()}")
    return coeff


def torsion_forms(model: G2Model | None = None) -> TorsionForms:
    model = model or build_model()
    dphi = d(model.phi)
    dpsi = d(model.psi)
    # 7 tau0 vol = dphi ^ phi
    tau0 = scalar_multiple(wedge(dphi, model.phi), model.vol) * Fraction(1, 7)
    if dpsi:
        raise ValueError(f"psi is not closed: {dpsi.render()}")
    # dpsi = 4 tau1 ^ psi + tau2 ^ phi = 0 forces tau1 = 0, and then tau2 ^ phi = 0
    # forces tau2 = 0 on the 14-dimensional component.
    tau1 = Form()
    tau2 = Form()
    tau3 = star(dphi - model.psi * tau0)
    return TorsionForms(tau0, tau1, tau2, tau3)


def reconstruct_residues(model: G2Model, tf: TorsionForms):
    """(dphi - tau0 psi - 3 tau1^phi - *tau3, dpsi - 4 tau1^psi - tau2^phi)."""
    r1 = (d(model.phi) - model.psi * tf.tau0 - wedge(tf.tau1, model.phi) * 3
          - star(tf.tau3))
    r2 = d(model.psi) - wedge(tf.tau1, model.psi) * 4 - wedge(tf.tau2, model.phi)
    return r1, r2


def flux(model: G2Model | None = None, tf: TorsionForms | None = None) -> GeoFields:
    model = model or build_model()
    tf = tf or torsion_forms(model)
    h = model.phi * (tf.tau0 * Fraction(1, 6)) - tf.tau3
    lam = tf.tau0 * Fraction(7, 3)
    return GeoFields(lam=lam, mu=ParamPoly(), flux=h)


def expected_tau3(model: G2Model) -> Form:
    e0 = Form.gen("e0")
    return (wedge(e0, model.omega) * Fraction(8, 7) - model.re_omega * Fraction(6, 7)) * EPS


def expected_flux(model: G2Model) -> Form:
    e0 = Form.gen("e0")
    return (model.re_omega - wedge(e0, model.omega)) * EPS


def basic_vectors():
    e1, f1, e2, f2, e3, f3 = gens("e1", "f1", "e2", "f2", "e3", "f3")
    return FormMatrix.column([e1, e2, e3]), FormMatrix.column([f1, f2, f3])


def type_checks(model: G2Model | None = None) -> dict:
    """Type (2,0)+(0,2) / primitive (1,1) claims about the basic 2-forms."""
    model = model or build_model()
    e, je = basic_vectors()
    om2 = wedge(model.omega, model.omega)
    exje = cross(e, je).vector()
    exe_m = (cross(e, e) - cross(je, je)).vector()
    exe_p = (cross(e, e) + cross(je, je)).vector()
    comm = mwedge(boxop(e), boxop(je)) - mwedge(boxop(je), boxop(e))
    off = [comm[i, j] for i in range(3) for j in range(3) if i != j]
    diag = [comm[i, i] for i in range(3)]
    e1f1, e2f2, e3f3 = (wedge(e[i, 0], je[i, 0]) for i in range(3))
    out = {
        "e x Je is (2,0)+(0,2)": all(jmap(x) == -x for x in exje),
        "e x e - Je x Je is (2,0)+(0,2)": all(jmap(x) == -x for x in exe_m),
        "e x e + Je x Je is primitive (1,1)":
            all(jmap(x) == x and not wedge(x, om2) for x in exe_p),
        "off-diagonal of [e][Je]-[Je][e] is primitive (1,1)":
            all(jmap(x) == x and not wedge(x, om2) for x in off),
        "diagonal of [e][Je]-[Je][e] is (1,1)": all(jmap(x) == x for x in diag),
        "diagonal of [e][Je]-[Je][e] equals -2 diag(...)":
            diag == [(e2f2 + e3f3) * -2, (e3f3 + e1f1) * -2, (e1f1 + e2f2) * -2],
    }
    return out


def imomega_identities(model: G2Model | None = None) -> dict:
    """Coframe identities for wedging with Im(Omega) and omega^2/2.

    Each entry maps a label to the residue matrix (lhs - rhs); all must vanish.
    """
    model = model or build_model()
    e, je = basic_vectors()
    im = model.im_omega
    w2 = model.omega2_half
    w3 = model.omega3_sixth
    I3 = FormMatrix.identity(3)

    def r(mat, f):
        return mat.map(lambda x: wedge(x, f))

    def outer(a, b):
        return mwedge(a, b.transpose())

    be, bje = boxop(e), boxop(je)
    comm = mwedge(be, bje) - mwedge(bje, be)
    sym = boxop(cross(e, e) + cross(je, je))
    return {
        "2(e x Je)^ImOmega = 4e^w2": r(cross(e, je) * 2, im) - r(e * 4, w2),
        "(e x e - Je x Je)^ImOmega = 4Je^w2":
            r(cross(e, e) - cross(je, je), im) - r(je * 4, w2),
        "e^eT^ImOmega = [Je]^w2": r(outer(e, e), im) - r(bje, w2),
        "Je^JeT^ImOmega = -[Je]^w2": r(outer(je, je), im) + r(bje, w2),
        "[e x e + Je x Je]^ImOmega = 0": r(sym, im),
        "([e][Je]-[Je][e])^ImOmega = 0": r(comm, im),
        "[e x e + Je x Je]^w2 = 0": r(sym, w2),
        "([e][Je]-[Je][e])^w2 = -4 w3 I": r(comm, w2) + r(I3 * 4, w3),
        "e^JeT^ImOmega = [e]^w2": r(outer(e, je), im) - r(be, w2),
        "e^JeT^w2 = w3 I": r(outer(e, je), w2) - r(I3, w3),
        "Je^eT^ImOmega = [e]^w2": r(outer(je, e), im) - r(be, w2),
        "Je^eT^w2 = -w3 I": r(outer(je, e), w2) + r(I3, w3),
    }
