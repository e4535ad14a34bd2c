"""Numeric parameter regimes: lambda0 / alpha', the three case Ansaetze, sweeps, slope fits.

Case 1 fixes k^2 rather than k, so k is generally irrational.  Points therefore
carry k^2 and eps^2 exactly and every lambda is evaluated from those squares;
k itself is only needed for odd powers of k, which the substitutions cancel in
Case 1 and which are rational in Cases 2 and 3.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .anomaly import lambda0_poly
from .connections import ConnectionSpec, residual_coefficients
from .scalars import ParamPoly, rational_str, unpack

CSV_HEADER = ("alpha_prime", "eps", "k", "delta", "m", "lambda0", "lambda1", "lambda2", "lambda3")
DOUBLE_TOL = 1e-12


class InadmissibleError(ValueError):
    """Parameters violate a case's sign or exclusion condition."""


class FitError(ValueError):
    pass


def _exact_sqrt(q: Fraction):
    """Rational square root if there is one, else None."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def _num(x, mode: str):
    if mode == "double":
        return float(x)
    if isinstance(x, float):
        # decimal shortest repr, so 0.01 means 1/100
        return Fraction(repr(x))
    return Fraction(x)


def _root(sq, mode: str):
    if mode == "double":
        return math.sqrt(sq)
    r = _exact_sqrt(sq)
    return r if r is not None else math.sqrt(sq)


def eval_squares(p: ParamPoly, eps2, k2, k=None, delta=0, m=0):
    """Evaluate p at (eps, k, delta, m) using eps^2 and k^2.

    Odd powers of eps are rejected; odd powers of k use ``k`` (exact if it
    is rational) and raise if ``k`` is not available.
    """
    if isinstance(eps2, float) or isinstance(k2, float):
        kk = float(k) if k is not None else math.sqrt(k2)
        return float(p.eval((math.sqrt(eps2), kk, float(delta), float(m))))
    q = p.subs(delta=delta, m=m)
    total = 0
    for key, c in q.items():
        e, kk, _, _ = unpack(key)
        if e % 2:
            raise ValueError("odd power of eps in a regime polynomial")
        v = c * eps2 ** (e // 2)
        v = v * k2 ** (kk // 2)
        if kk % 2:
            if k is None:
                raise ValueError("odd power of k needs k itself")
            v = v * k
        total = total + v
    return total


@dataclass(frozen=True)
class RegimePoint:
    alpha_prime: object
    eps2: object
    k2: object
    delta: object
    m: object
    lambda0: object
    lambda1: object
    lambda2: object
    lambda3: object
    k_value: object = None
    mode: str = "rational"
    case_id: object = "custom"

    @property
    def eps(self):
        return _root(self.eps2, self.mode)

    @property
    def k(self):
        return self.k_value if self.k_value is not None else _root(self.k2, self.mode)

    @property
    def lambdas(self):
        return (self.lambda1, self.lambda2, self.lambda3)

    @property
    def closure(self):
        """alpha' * lambda0 (8 when the Bianchi identity holds)."""
        return self.alpha_prime * self.lambda0

    @property
    def physically_meaningful(self) -> bool:
        return float(self.eps2) < 1 and float(self.k2) > 1

    def row(self) -> list:
        return [self.alpha_prime, self.eps, self.k, self.delta, self.m,
                self.lambda0, self.lambda1, self.lambda2, self.lambda3]

    def as_dict(self) -> dict:
        out = {h: fmt(v) for h, v in zip(CSV_HEADER, self.row())}
        out["eps_sq"] = fmt(self.eps2)
        out["k_sq"] = fmt(self.k2)
        out["alpha_lambda0"] = fmt(self.closure)
        out["physically_meaningful"] = self.physically_meaningful
        return out


def fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, (int, Fraction)):
        return rational_str(Fraction(x))
    return str(x)


def _check_closure(p: RegimePoint):
    if p.mode == "double":
        if abs(p.closure - 8) > DOUBLE_TOL:
            raise AssertionError(f"alpha' * lambda0 = {p.closure!r}, expected 8")
    elif p.closure != 8:
        raise AssertionError(f"alpha' * lambda0 = {p.closure}, expected 8")


def _lambdas(eps2, k2, k, delta, m):
    spec = ConnectionSpec()
    lam0 = eval_squares(lambda0_poly(spec), eps2, k2, k, delta, m)
    res = [eval_squares(x, eps2, k2, k, delta, m) for x in residual_coefficients(spec).as_tuple()]
    return lam0, res


def case_point(case_id: int, alpha_prime, extra, mode: str = "rational") -> RegimePoint:
    """One point of Case 1 (extra = delta), Case 2 (extra = m) or Case 3 (extra = m)."""
    if mode not in ("rational", "double"):
        raise ValueError(f"unknown numeric mode {mode!r}")
    a = _num(alpha_prime, mode)
    x = _num(extra, mode)
    if a <= 0:
        raise InadmissibleError("alpha' must be positive")
    k = None
    if case_id == 1:
        delta, m = x, x - 1
        if delta == 0 or delta == -1:
            raise InadmissibleError("Case 1 needs delta != 0, -1")
        k2 = 1 / a ** 3
        eps2 = 8 / (delta ** 2 * (1 + delta) ** 2) * a ** 5
    elif case_id == 2:
        delta, m = _num(0, mode), x
        k = 1 / a ** 3
        k2 = k * k
        if not (1 + m) * (k + 3) < 0:
            raise InadmissibleError("Case 2 needs (1+m)(k+3) < 0, i.e. m < -1")
        # (1+m) < 0 here, so the sign makes eps^2 positive
        eps2 = -8 / ((1 + m) * (1 + 3 * a ** 3)) * a ** 8
    elif case_id == 3:
        delta, m = _num(-1, mode), x
        k = 1 / a ** 3
        k2 = k * k
        if not (2 + m) * (4 * k - 3) > 0:
            raise InadmissibleError("Case 3 needs (2+m)(4k-3) > 0")
        eps2 = 8 / ((2 + m) * (4 - 3 * a ** 3)) * a ** 8
    else:
        raise ValueError(f"unknown case {case_id!r}")
    lam0, (l1, l2, l3) = _lambdas(eps2, k2, k, delta, m)
    if not lam0 > 0:
        raise InadmissibleError(f"lambda0 = {fmt(lam0)} is not positive")
    p = RegimePoint(a, eps2, k2, delta, m, lam0, l1, l2, l3, k, mode, case_id)
    _check_closure(p)
    return p


def custom_point(eps, k, delta, m, mode: str = "rational") -> RegimePoint:
    """Point at arbitrary parameters; alpha' = 8/lambda0 requires lambda0 > 0."""
    e, kk, dl, mm = (_num(v, mode) for v in (eps, k, delta, m))
    lam0, (l1, l2, l3) = _lambdas(e * e, kk * kk, kk, dl, mm)
    if not lam0 > 0:
        raise InadmissibleError(f"lambda0 = {fmt(lam0)} is not positive; no alpha' > 0")
    a = 8 / lam0
    p = RegimePoint(a, e * e, kk * kk, dl, mm, lam0, l1, l2, l3, kk, mode, "custom")
    _check_closure(p)
    return p


def residual_values(eps, k, delta, m):
    """(lambda1, lambda2, lambda3) at a parameter point, no admissibility needed."""
    point = tuple(_num(v, "rational") if not isinstance(v, float) else v
                  for v in (eps, k, delta, m))
    return tuple(x.eval(point) for x in residual_coefficients().as_tuple())


@dataclass
class SweepTable:
    rows: list
    case_id: object = "custom"
    extra: object = None
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.rows)

    def to_csv(self, fit: dict | None = None) -> str:
        buf = io.StringIO()
        if fit is not None:
            for name, v in fit.items():
                buf.write(f"# slope {name}: {fit_str(v)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for p in self.rows:
            w.writerow([fmt(v) for v in p.row()])
        return buf.getvalue()

    def to_dict(self, fit: dict | None = None) -> dict:
        out = {"case_id": self.case_id, "extra": fmt(self.extra) if self.extra is not None else None,
               "rows": [p.as_dict() for p in self.rows]}
        if fit is not None:
            out["order_fit"] = {k: fit_str(v) for k, v in fit.items()}
        return out

    def to_json(self, fit: dict | None = None) -> str:
        return json.dumps(self.to_dict(fit), indent=2)


def sweep(case_id: int, alpha_list, extra, mode: str = "rational") -> SweepTable:
    alphas = [_num(a, mode) for a in alpha_list]
    if any(a <= 0 for a in alphas):
        raise InadmissibleError("alpha' values must be positive")
    if any(b >= a for a, b in zip(alphas, alphas[1:])):
        raise ValueError("alpha' values must be strictly decreasing")
    rows = [case_point(case_id, a, extra, mode) for a in alphas]
    for p, q in zip(rows, rows[1:]):
        if not (q.eps2 < p.eps2 and q.k2 > p.k2):
            raise AssertionError("expected eps decreasing and k increasing along the sweep")
    return SweepTable(rows, case_id, _num(extra, mode))


EXACT_ZERO = "exact zero"


def order_fit(table: SweepTable) -> dict:
    """Least-squares slope of log|lambda_i| against log alpha' for i = 1, 2, 3."""
    if len(table.rows) < 3:
        raise FitError("order_fit needs at least 3 rows")
    x = np.log([float(p.alpha_prime) for p in table.rows])
    out = {}
    for i in range(3):
        vals = [p.lambdas[i] for p in table.rows]
        if all(v == 0 for v in vals):
            out[f"lambda{i + 1}"] = EXACT_ZERO
            continue
        if any(v == 0 for v in vals) or len({v > 0 for v in vals}) > 1:
            raise FitError(f"lambda{i + 1} changes sign or vanishes along the sweep")
        y = np.log([abs(float(v)) for v in vals])
        slope, _ = np.polyfit(x, y, 1)
        out[f"lambda{i + 1}"] = float(slope)
    return out


def fit_str(v) -> str:
    return v if isinstance(v, str) else f"{v:.12f}"


def parse_alpha_spec(text: str, mode: str = "rational") -> list:
    """``A:B:logN`` (N log-uniform points from A down to B), a comma list, or one value."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3 or not parts[2].startswith("log"):
            raise ValueError(f"bad range {text!r}; expected A:B:logN")
        a, b = float(parts[0]), float(parts[1])
        n = int(parts[2][3:])
        if n < 1 or a <= 0 or b <= 0:
            raise ValueError(f"bad range {text!r}")
        if n == 1:
            vals = [a]
        else:
            la, lb = math.log10(a), math.log10(b)
            vals = [10 ** (la + (lb - la) * i / (n - 1)) for i in range(n)]
        if mode == "double":
            return vals
        return [Fraction(f"{v:.12g}") for v in vals]
    items = [t for t in text.split(",") if t.strip()]
    if mode == "double":
        return [float(t) for t in items]
    return [Fraction(t.strip()) for t in items]


__all__ = [
    "RegimePoint", "SweepTable", "InadmissibleError", "FitError", "CSV_HEADER", "EXACT_ZERO",
    "case_point", "custom_point", "sweep", "order_fit", "parse_alpha_spec", "residual_values",
    "eval_squares", "fmt", "fit_str",
]
