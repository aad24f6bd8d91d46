"""Command-line interface: ``korenblum <command> ...``.

Commands: certify, search, eval, scan, verify, check-pair.  Output is
human-readable text by default, or JSON / CSV with ``--format``.

Exit codes: 0 success (certificate passes, all claims hold, pair
consistent); 1 a certificate fails, a claim is violated, or a pair
contradicts the maximum principle; 2 invalid input or computation error;
3 (check-pair only) the pair does not satisfy the hypothesis.
"""

import argparse
import csv
import io
import json
import math
import re
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import bounds, certification, claims, kernels, oracles, schema, tolerances as tols
from .annulus import TruncationPolicy, cstar_annulus_eval, cstar_circle
from .errors import KorenblumError

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"(?P<re>[+-]?{_NUM})(?P<im>[+-](?:{_NUM})?)i"
    rf"|(?P<re_only>[+-]?{_NUM})"
    rf"|(?P<im_only>[+-]?(?:{_NUM})?)i"
)


def _imag(text):
    if text in ("", "+"):
        return 1.0
    if text == "-":
        return -1.0
    return float(text)


def parse_complex(text):
    """Parse ``a``, ``bi``, ``a+bi``, ``a-bi``, ``i``, ``-i`` strictly (no inner spaces, no ``j``)."""
    m = _COMPLEX_RE.fullmatch(text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")
    if m.group("re") is not None:
        return complex(float(m.group("re")), _imag(m.group("im")))
    if m.group("re_only") is not None:
        return complex(float(m.group("re_only")), 0.0)
    return complex(0.0, _imag(m.group("im_only")))


def _positive(text):
    v = float(text)
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _float_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from None


def _common_parser():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--tol", type=_positive, default=tols.QUAD_TOL, help="quadrature tolerance (absolute)")
    g.add_argument("--trunc-eps", type=_positive, default=tols.TRUNC_EPSILON, help="product truncation epsilon")
    g.add_argument("--format", choices=("text", "json", "csv"), default="text")
    g.add_argument("--out", default=None, help="write output here instead of standard output")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--threads", type=int, default=1)
    return p


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="korenblum", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s (kernels: {kernels.BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", parents=[common], help="evaluate the criterion at one constant")
    p.add_argument("space", choices=certification.SPACES)
    p.add_argument("--c", type=float, required=True)

    p = sub.add_parser("search", parents=[common], help="largest constant the criterion certifies")
    p.add_argument("space", choices=certification.SPACES)
    p.add_argument("--lo", type=float, required=True)
    p.add_argument("--hi", type=float, required=True)
    p.add_argument("--width", type=_positive, default=tols.BISECTION_WIDTH, help="bisection width")
    p.add_argument("--scan-points", type=int, default=tols.SEARCH_SCAN_POINTS)

    p = sub.add_parser("eval", parents=[common], help="evaluate one quantity at a point")
    p.add_argument("what", choices=("cstar", "cstar-lower", "f-bound", "gamma", "integrand"))
    p.add_argument("--c", type=float, default=0.21)
    p.add_argument("--a", type=parse_complex, help="base point (cstar)")
    p.add_argument("--z", type=parse_complex, help="second point (cstar)")
    p.add_argument("--rho", type=float)
    p.add_argument("--space", choices=certification.SPACES, default="bergman")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--restarts", type=int, default=20)

    p = sub.add_parser("scan", parents=[common], help="tabulate a quantity over a range")
    p.add_argument("what", choices=("criterion", "f-bound", "gamma", "integrand", "cstar-circle"))
    p.add_argument("--space", choices=certification.SPACES, default="bergman")
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--step", type=float)
    p.add_argument("--c", type=float, default=0.21)
    p.add_argument("--rho", type=float, help="fixed radius (cstar-circle)")
    p.add_argument("--steps", type=int, default=200)

    p = sub.add_parser("verify", parents=[common], help="check the inequalities the bound rests on")
    p.add_argument("claims", nargs="*", metavar="CLAIM", help=f"one of: {', '.join(claims.ALL_CLAIMS)}")
    p.add_argument("--all", action="store_true")
    p.add_argument("--c", type=_float_list, action="append", help="c values for grid claims")
    p.add_argument("--rho-steps", type=int)
    p.add_argument("--theta-steps", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--samples", type=int, help="sample count for randomized claims")

    p = sub.add_parser("check-pair", parents=[common], help="test the maximum principle on a pair")
    p.add_argument("file", help="JSON with Laurent functions under 'f' and 'g'")
    p.add_argument("--space", choices=certification.SPACES, help="default: the file's 'space', else bergman")
    p.add_argument("--c", type=float, help="default: the file's 'c'")
    p.add_argument("--grid", type=int, default=64, help="circles and angles per circle")
    return parser


class Output:
    """What a command produced: a JSON object, CSV rows, and text lines."""

    def __init__(self, json_obj, rows, text, code=0):
        self.json_obj = json_obj
        self.rows = rows
        self.text = text
        self.code = code

    def render(self, fmt):
        if fmt == "json":
            return json.dumps(self.json_obj, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            fields = list(self.rows[0].keys()) if self.rows else []
            w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
            w.writeheader()
            for row in self.rows:
                w.writerow({k: "" if v is None else v for k, v in row.items()})
            return buf.getvalue()
        return "\n".join(self.text) + "\n"


def _fmt(x, spec=".10g"):
    return "-" if x is None else format(x, spec)


def _cert_row(cert):
    return {
        "space": cert.space, "c": cert.c, "numerator": cert.numerator,
        "denominator": cert.denominator.value,
        "denominator_error": cert.denominator.abs_error_estimate,
        "evaluations": cert.denominator.evaluations, "converged": cert.denominator.converged,
        "criterion": cert.criterion, "error_budget": cert.error_budget, "pass": cert.passed,
        "clamped_fraction": cert.clamped_fraction,
    }


def _cert_text(cert):
    d = cert.denominator
    lines = [
        f"space             {cert.space}",
        f"c                 {cert.c:g}",
        f"numerator         {cert.numerator:.12g}",
        f"denominator       {d.value:.12g} +/- {d.abs_error_estimate:.2e} "
        f"({d.evaluations} evaluations{'' if d.converged else ', NOT converged'})",
        f"criterion         {cert.criterion:.12g}",
        f"error budget      {cert.error_budget:.3e}",
    ]
    if cert.clamped_fraction is not None:
        lines.append(f"F >= 1 on         {cert.clamped_fraction:.4%} of (c, 1)")
    verdict = "PASS" if cert.passed else "FAIL"
    lines.append(f"result            {verdict} (criterion + budget {'<' if cert.passed else '>='} 1; "
                 "certified numerically, not proved)")
    return lines


def cmd_certify(args, trunc):
    cert = certification.certify(args.space, args.c, args.tol, trunc)
    return Output(schema.to_dict(cert), [_cert_row(cert)], _cert_text(cert), 0 if cert.passed else 1)


def cmd_search(args, trunc):
    res = certification.search_max_constant(
        args.space, args.lo, args.hi, args.width, args.tol, trunc,
        scan_points=args.scan_points, workers=args.threads)
    row = {"space": res.space, "c_max": res.c_max, "bracket_lo": res.bracket[0],
           "bracket_hi": res.bracket[1], "iterations": res.iterations}
    text = [
        f"space        {res.space}",
        f"c_max        {res.c_max:.6f}",
        f"bracket      [{res.bracket[0]:.6f}, {res.bracket[1]:.6f}]",
        f"iterations   {res.iterations}",
        "scan         " + " ".join(f"{c:.4f}:{'P' if ok else 'F'}" for c, ok in res.scan),
    ]
    for label, cert in zip(("lo", "hi"), res.certificates_at_endpoints):
        if cert is None:
            text.append(f"criterion@{label}  degenerate (denominator vanishes)")
        else:
            text.append(f"criterion@{label}  {cert.criterion:.10g} (budget {cert.error_budget:.2e})")
    return Output(schema.to_dict(res), [row], text)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise KorenblumError("missing required option(s): " + ", ".join("--" + n for n in missing))


def cmd_eval(args, trunc):
    info = {"what": args.what, "c": args.c}
    note = None
    extra = {}
    if args.what in ("cstar", "cstar-lower"):
        base = args.a if args.a is not None else (None if args.rho is None else complex(args.rho))
        if base is None:
            raise KorenblumError("missing required option: --a")
        _need(args, "z")
        info.update(a=[base.real, base.imag], z=[args.z.real, args.z.imag])
        if args.what == "cstar":
            ev = cstar_annulus_eval(base, args.z, args.c, trunc)
            value = ev.value
            extra = {"truncation_bound": ev.truncation_bound, "terms_used": ev.terms_used,
                     "clamped": ev.clamped}
        else:
            value = oracles.cstar_lower_bound(base, args.z, args.c, args.degree, args.restarts, args.seed)
            extra = {"degree": args.degree, "restarts": args.restarts, "seed": args.seed}
    else:
        _need(args, "rho")
        info["rho"] = args.rho
        if args.what == "f-bound":
            value = bounds.F_bound(args.rho, args.c)
            if value >= 1:
                note = "F >= 1: boundary layer, the bound on the extremal quotient is vacuous here"
        elif args.what == "gamma":
            info["space"] = args.space
            if args.space == "bergman":
                value = bounds.gamma_upper(args.rho, args.c)
            else:
                value = certification.fock_gamma_upper(args.rho, args.c)
        else:
            value = certification.bergman_integrand(args.rho, args.c, trunc)
            if value == 0:
                note = "F >= 1 here: integrand clamped to 0"
    unbounded = math.isinf(value)
    obj = {"schema": schema.SCHEMA, "kind": "eval", **info,
           "value": None if unbounded else value, "unbounded": unbounded, **extra, "note": note}
    row = {k: v for k, v in obj.items() if k not in ("schema", "kind")}
    row = {k: (json.dumps(v) if isinstance(v, list) else v) for k, v in row.items()}
    text = [f"{args.what} = {'unbounded' if unbounded else format(value, '.15g')}"]
    text += [f"  {k} = {v}" for k, v in extra.items()]
    if note:
        text.append(f"  note: {note}")
    return Output(obj, [row], text)


def _range(start, stop, step):
    if start is None or stop is None or step is None:
        raise KorenblumError("criterion scans need --start, --stop and --step")
    if not step > 0 or stop < start:
        raise KorenblumError(f"empty range: start={start}, stop={stop}, step={step}")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(n)]


def _parallel_map(fn, items, threads):
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def cmd_scan(args, trunc):
    if args.what == "criterion":
        cs = _range(args.start, args.stop, args.step)

        def row_for(c):
            try:
                cert = certification.certify(args.space, c, args.tol, trunc)
            except certification.DegenerateCriterionError:
                return {"c": c, "criterion": None, "error_budget": None, "pass": False}
            return {"c": c, "criterion": cert.criterion, "error_budget": cert.error_budget,
                    "pass": cert.passed}

        rows = _parallel_map(row_for, cs, args.threads)
        columns = ["c", "criterion", "error_budget", "pass"]
    else:
        if args.steps < 1:
            raise KorenblumError("--steps must be at least 1")
        if args.what == "cstar-circle":
            _need(args, "rho")
            thetas = np.linspace(0.0, math.pi, args.steps)
            rows = [{"theta": float(t), "value": cstar_circle(args.rho, t, args.c, trunc)} for t in thetas]
            columns = ["theta", "value"]
        else:
            if not 0 < args.c < 1:
                raise KorenblumError(f"need 0 < c < 1, got {args.c}")
            rhos = np.linspace(args.c, 1.0, args.steps + 2)[1:-1]
            if args.what == "f-bound":
                vals = bounds.F_bound(rhos, args.c)
            elif args.what == "gamma":
                vals = bounds.gamma_upper(rhos, args.c)
            else:
                vals = certification.bergman_integrand(rhos, args.c, trunc)
            rows = [{"rho": float(r), "value": None if math.isinf(v) else float(v)} for r, v in zip(rhos, vals)]
            columns = ["rho", "value"]
    obj = {"schema": schema.SCHEMA, "kind": "scan", "what": args.what, "columns": columns,
           "rows": [[r[k] for k in columns] for r in rows]}
    text = ["  ".join(f"{c:>16}" for c in columns)]
    for r in rows:
        text.append("  ".join(f"{_fmt(r[k]) if not isinstance(r[k], bool) else str(r[k]):>16}" for k in columns))
    return Output(obj, rows, text)


def cmd_verify(args, trunc):
    names = list(claims.ALL_CLAIMS) if args.all else list(dict.fromkeys(args.claims))
    if not names:
        raise KorenblumError("name at least one claim, or pass --all")
    unknown = [n for n in names if n not in claims.ALL_CLAIMS]
    if unknown:
        raise KorenblumError(f"unknown claim(s): {', '.join(unknown)}")
    c_values = [c for group in (args.c or []) for c in group] or None

    def run(name):
        return claims.run_claim(name, c_values=c_values, rho_steps=args.rho_steps,
                                theta_steps=args.theta_steps, n_max=args.n_max,
                                samples=args.samples, seed=args.seed)

    reports = _parallel_map(run, names, args.threads)
    ok = all(r.passed for r in reports)
    obj = {"schema": schema.SCHEMA, "kind": "verify", "pass": ok,
           "claims": [schema.to_dict(r) for r in reports]}
    rows = [{"claim_id": r.claim_id, "pass": r.passed, "max_violation": r.max_violation,
             "tolerance": r.tolerance, "points": r.points, "low_density": r.low_density,
             "worst_point": json.dumps(r.worst_point)} for r in reports]
    text = []
    for r in reports:
        flag = " [low-density]" if r.low_density else ""
        text.append(f"{'PASS' if r.passed else 'FAIL'}  {r.claim_id:<18} max_violation={r.max_violation:+.3e}"
                    f"  tol={r.tolerance:.0e}  points={r.points}{flag}")
        if not r.passed and r.worst_point:
            text.append(f"      worst at {r.worst_point}")
    text.append(f"{sum(r.passed for r in reports)}/{len(reports)} claims hold")
    return Output(obj, rows, text, 0 if ok else 1)


def load_pair(path):
    """Read a pair file; returns ``(f, g, data)`` with the raw JSON object."""
    try:
        with open(path) as fh:
            data = json.load(fh)
        f = oracles.LaurentFunction.from_json(data["f"])
        g = oracles.LaurentFunction.from_json(data["g"])
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise KorenblumError(f"cannot read pair file {path!r}: {exc}") from exc
    return f, g, data


def cmd_check_pair(args, trunc):
    f, g, data = load_pair(args.file)
    space = args.space or data.get("space", "bergman")
    c = args.c if args.c is not None else data.get("c")
    if space not in certification.SPACES:
        raise KorenblumError(f"unknown space {space!r} in {args.file!r}")
    if not isinstance(c, (int, float)) or isinstance(c, bool):
        raise KorenblumError("no radius: pass --c or put 'c' in the pair file")
    rep = oracles.check_pair(f, g, float(c), space, args.grid)
    if not rep.hypothesis_holds:
        code = 3
    else:
        code = 0 if rep.conclusion_holds else 1
    text = [
        f"space              {rep.space}",
        f"c                  {rep.c:g}",
        f"hypothesis margin  {rep.hypothesis_margin:.6g} ({'holds' if rep.hypothesis_holds else 'FAILS'}, "
        f"{rep.samples} samples)",
        f"||f||^2            {rep.norm_f_sq:.12g}",
        f"||g||^2            {rep.norm_g_sq:.12g}",
        f"conclusion         {'holds' if rep.conclusion_holds else 'FAILS'}",
    ] + [f"note: {n}" for n in rep.notes]
    row = schema.pair_to_dict(rep)
    row["notes"] = "; ".join(row["notes"])
    return Output(schema.to_dict(rep), [row], text, code)


COMMANDS = {
    "certify": cmd_certify,
    "search": cmd_search,
    "eval": cmd_eval,
    "scan": cmd_scan,
    "verify": cmd_verify,
    "check-pair": cmd_check_pair,
}

_VALUE_OPTIONS = {"--a", "--z", "--rho", "--c", "--lo", "--hi", "--start", "--stop", "--step"}


def _join_negative_values(argv):
    """Rewrite ``--z -0.4+0.2i`` as ``--z=-0.4+0.2i`` so argparse accepts it."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            try:
                parse_complex(argv[i + 1])
            except argparse.ArgumentTypeError:
                pass
            else:
                out.append(f"{tok}={argv[i + 1]}")
                i += 2
                continue
        out.append(tok)
        i += 1
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.threads < 1:
            raise KorenblumError("--threads must be at least 1")
        trunc = TruncationPolicy(args.trunc_eps)
        result = COMMANDS[args.command](args, trunc)
    except (KorenblumError, ValueError, ArithmeticError) as exc:
        print(f"korenblum {args.command}: error: {exc}", file=sys.stderr)
        return 2
    text = result.render(args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
