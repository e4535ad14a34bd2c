"""Command-line front end: verify, regime, sweep, eval."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import anomaly, connections as cn, regimes, verifier
from .exterior import d
from .g2model import build_model, flux, torsion_forms
from .scalars import ParamPoly

EXIT_OK, EXIT_FAIL, EXIT_ERROR, EXIT_USAGE, EXIT_INADMISSIBLE = 0, 1, 2, 64, 65

DEFAULTS = {
    "only": None, "format": None, "output": None, "support": "restricted", "timings": False,
    "audit": False, "case": None, "alpha": None, "delta": None, "m": None, "k": None,
    "eps": None, "mode": "rational",
}

QUANTITIES = ("phi", "psi", "tau0", "tau1", "tau2", "tau3", "flux", "dflux", "lambda",
              "theta", "torsion", "curvature", "residual", "defect", "lambda0")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hetg2", description="Exact checks and regime tables for the heterotic G2 "
                "system on contact Calabi-Yau 7-manifolds.")
    p.add_argument("--config", help="JSON file with option values (command-line flags win)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    v = sub.add_parser("verify", help="run the symbolic check registry")
    v.add_argument("--only", help="comma-separated check ids or names, e.g. C26,trace-QI")
    v.add_argument("--format", choices=("text", "json"))
    v.add_argument("--support", choices=("restricted", "full"),
                   help="multiplier support for ideal reduction")
    v.add_argument("--timings", action="store_true", default=None,
                   help="include per-check timings (output is then not byte-stable)")
    v.add_argument("--audit", action="store_true", default=None,
                   help="also run the ideal minimality audit")

    for name, helptext in (("regime", "one case point"), ("sweep", "a table of case points")):
        r = sub.add_parser(name, help=helptext)
        r.add_argument("--case", type=int, choices=(1, 2, 3))
        r.add_argument("--alpha", help="alpha' value" + (
            "s: A:B:logN, a comma list, or one value" if name == "sweep" else ""))
        r.add_argument("--delta", help="Case 1 parameter")
        r.add_argument("--m", help="Case 2 / Case 3 parameter")
        r.add_argument("--mode", choices=("rational", "double"))
        r.add_argument("--format", choices=("text", "json", "csv"))

    e = sub.add_parser("eval", help="render a named quantity")
    e.add_argument("quantity", help=", ".join(QUANTITIES))
    for name in ("eps", "k", "delta", "m"):
        e.add_argument(f"--{name}", help=f"numeric value for {name} (symbolic if omitted)")
    e.add_argument("--format", choices=("text", "json"))

    for sp in sub.choices.values():
        sp.add_argument("--output", help="write output to this file")
    return p


def _merge(args, config: dict) -> dict:
    opts = dict(DEFAULTS)
    for key, val in config.items():
        key = key.replace("-", "_")
        if key in ("command", "quantity"):
            continue
        if key not in DEFAULTS:
            raise UsageError(f"unknown config key {key!r}")
        opts[key] = val
    for key, val in vars(args).items():
        if val is not None and key not in ("config",):
            opts[key] = val
    return opts


def _load_config(path) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    return data


def _emit(text: str, opts: dict):
    if not text.endswith("\n"):
        text += "\n"
    if opts.get("output"):
        with open(opts["output"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rational(text, name):
    if text is None:
        return None
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--{name}: not a number: {text!r}") from exc


# -- commands --------------------------------------------------------------

def cmd_verify(opts: dict) -> int:
    try:
        report = verifier.run_checks(opts["only"], support=opts["support"])
    except verifier.UnknownCheck as exc:
        raise UsageError(exc.args[0]) from exc
    timings = bool(opts["timings"])
    fmt = opts["format"] or "text"
    if fmt == "json":
        data = report.to_dict(timings)
        if opts["audit"]:
            data["audit"] = verifier.audit_minimality(opts["support"])
        text = json.dumps(data, indent=2)
    else:
        text = report.to_text(timings)
        if opts["audit"]:
            for gen, failing in verifier.audit_minimality(opts["support"]).items():
                text += f"\naudit: without {gen}: {', '.join(failing) or 'nothing fails'}"
    _emit(text, opts)
    s = report.summary
    if s["error"]:
        return EXIT_ERROR
    return EXIT_FAIL if s["fail"] else EXIT_OK


def _case_extra(opts: dict):
    case = opts["case"]
    if case is None:
        raise UsageError("--case is required")
    if opts["alpha"] is None:
        raise UsageError("--alpha is required")
    key = "delta" if int(case) == 1 else "m"
    if opts[key] is None:
        raise UsageError(f"Case {case} needs --{key}")
    return int(case), str(opts[key])


def _point_text(p: regimes.RegimePoint) -> str:
    d_ = p.as_dict()
    lines = [f"case: {p.case_id}"]
    lines += [f"{k} = {d_[k]}" for k in regimes.CSV_HEADER]
    lines += [f"eps^2 = {d_['eps_sq']}", f"k^2 = {d_['k_sq']}",
              f"alpha' * lambda0 = {d_['alpha_lambda0']}",
              f"physically meaningful (eps < 1, k > 1): {d_['physically_meaningful']}"]
    return "\n".join(lines)


def cmd_regime(opts: dict) -> int:
    case, extra = _case_extra(opts)
    mode = opts["mode"]
    alpha = str(opts["alpha"])
    point = regimes.case_point(case, alpha if mode == "rational" else float(alpha), extra, mode)
    fmt = opts["format"] or "text"
    if fmt == "json":
        text = json.dumps(point.as_dict(), indent=2)
    elif fmt == "csv":
        text = regimes.SweepTable([point], case).to_csv()
    else:
        text = _point_text(point)
    _emit(text, opts)
    return EXIT_OK


def cmd_sweep(opts: dict) -> int:
    case, extra = _case_extra(opts)
    mode = opts["mode"]
    try:
        alphas = regimes.parse_alpha_spec(str(opts["alpha"]), mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    table = regimes.sweep(case, alphas, extra, mode)
    if len(table) >= 3:
        fit = regimes.order_fit(table)
    else:
        fit = {f"lambda{i}": "n/a" for i in (1, 2, 3)}
    fmt = opts["format"] or "csv"
    if fmt == "json":
        text = table.to_json(fit)
    elif fmt == "csv":
        text = table.to_csv(fit)
    else:
        text = "\n\n".join(_point_text(p) for p in table.rows)
        text += "\n" + "\n".join(f"slope {k}: {regimes.fit_str(v)}" for k, v in fit.items())
    _emit(text, opts)
    return EXIT_OK


def _spec(values: dict) -> cn.ConnectionSpec:
    return cn.ConnectionSpec(*(values.get(n, ParamPoly.var(n)) for n in ("delta", "k", "m")))


def _render(x, values: dict) -> str:
    """Render a Form, FormMatrix or ParamPoly after substituting ``values``."""
    return (x.subs(**values) if values else x).render()


def evaluate(quantity: str, values: dict) -> str:
    """Render ``quantity`` with the given numeric parameter values substituted."""
    q = quantity.lower()
    if q not in QUANTITIES:
        raise UsageError(f"unknown quantity {quantity!r}; choose from {', '.join(QUANTITIES)}")
    mdl = build_model()
    if q in ("phi", "psi"):
        return _render(getattr(mdl, q), values)
    if q.startswith("tau"):
        return _render(getattr(torsion_forms(mdl), q), values)
    if q == "flux":
        return _render(flux(mdl).flux, values)
    if q == "dflux":
        return _render(d(flux(mdl).flux), values)
    if q == "lambda":
        return _render(flux(mdl).lam, values)
    spec = _spec(values)
    rest = {k: v for k, v in values.items() if k == "eps"}
    if q == "theta":
        return _render(cn.build_connection(spec).matrix, rest)
    if q == "torsion":
        return _render(cn.build_connection(spec).torsion, rest)
    if q == "curvature":
        return _render(cn.curvature(cn.build_connection(spec)).matrix, rest)
    if q == "residual":
        coeffs = cn.residual_coefficients(spec).as_tuple()
        return "\n".join(f"lambda{i} = {_render(c, rest)}" for i, c in enumerate(coeffs, 1))
    if q == "defect":
        return _render(anomaly.trace_defect(spec).defect, rest)
    return _render(anomaly.lambda0_poly(spec), rest)


def cmd_eval(opts: dict) -> int:
    values = {}
    for n in ("eps", "k", "delta", "m"):
        v = _rational(opts.get(n), n)
        if v is not None:
            values[n] = v
    text = evaluate(opts["quantity"], values)
    if (opts["format"] or "text") == "json":
        text = json.dumps({"quantity": opts["quantity"],
                           "parameters": {k: str(v) for k, v in values.items()},
                           "value": text}, indent=2)
    _emit(text, opts)
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "regime": cmd_regime, "sweep": cmd_sweep, "eval": cmd_eval}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:   # --help or a usage error from argparse
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        opts = _merge(args, _load_config(args.config))
        opts["quantity"] = getattr(args, "quantity", None)
        return COMMANDS[args.command](opts)
    except UsageError as exc:
        print(f"hetg2: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except regimes.InadmissibleError as exc:
        print(f"hetg2: inadmissible: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except (regimes.FitError, ValueError) as exc:
        print(f"hetg2: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
