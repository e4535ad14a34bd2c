"""Exact exterior-algebra checks for the heterotic G2 system on contact Calabi-Yau 7-manifolds."""

from .scalars import DEGREE_CAP, DELTA, EPS, K, M, ParamPoly
from .exterior import Form, d, gens, jmap, star, wedge
from .formmatrix import FormMatrix, mtrace, mwedge
from .g2model import G2Model, build_model, flux, torsion_forms
from .connections import (
    BISMUT, HULL, LEVI_CIVITA, SYMBOLIC, ConnectionSpec, build_connection, curvature,
    residual_coefficients,
)
from .ideal import RelationIdeal, build_ideal, reduce_mod_ideal
from .anomaly import AnomalyResult, lambda0_poly, trace_defect, trace_lemma_suite
from .verifier import Report, run_checks
from .regimes import RegimePoint, SweepTable, case_point, order_fit, sweep

__version__ = "0.1.0"

__all__ = [
    "DEGREE_CAP", "DELTA", "EPS", "K", "M", "ParamPoly",
    "Form", "d", "gens", "jmap", "star", "wedge",
    "FormMatrix", "mtrace", "mwedge",
    "G2Model", "build_model", "flux", "torsion_forms",
    "BISMUT", "HULL", "LEVI_CIVITA", "SYMBOLIC", "ConnectionSpec", "build_connection",
    "curvature", "residual_coefficients",
    "RelationIdeal", "build_ideal", "reduce_mod_ideal",
    "AnomalyResult", "lambda0_poly", "trace_defect", "trace_lemma_suite",
    "Report", "run_checks",
    "RegimePoint", "SweepTable", "case_point", "order_fit", "sweep",
]
