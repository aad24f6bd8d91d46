"""JSON forms of the report types (schema ``korenblum-certifier/1``).

``dumps`` / ``loads`` round-trip exactly: ``loads(dumps(x)) == x`` for
certificates, search results, claim reports and pair reports.
"""

import json

from .annulus import TruncationPolicy
from .bounds import ClaimReport, GridSpec
from .certification import Certificate, SearchResult
from .oracles import PairReport
from .quadrature import QuadratureEstimate

SCHEMA = "korenblum-certifier/1"


def _quad(q):
    return {"value": q.value, "abs_error_estimate": q.abs_error_estimate,
            "evaluations": q.evaluations, "converged": q.converged}


def _trunc(t):
    return {"epsilon": t.epsilon, "max_terms": t.max_terms}


def _grid(g):
    if g is None:
        return None
    return {"c_values": list(g.c_values), "rho_steps": g.rho_steps,
            "theta_steps": g.theta_steps, "n_range": list(g.n_range)}


def certificate_to_dict(cert):
    return {
        "space": cert.space,
        "c": cert.c,
        "numerator": cert.numerator,
        "denominator": _quad(cert.denominator),
        "criterion": cert.criterion,
        "error_budget": cert.error_budget,
        "pass": cert.passed,
        "truncation_policy": _trunc(cert.truncation_policy),
        "clamped_fraction": cert.clamped_fraction,
    }


def certificate_from_dict(d):
    return Certificate(
        d["space"], d["c"], d["numerator"], QuadratureEstimate(**d["denominator"]),
        d["criterion"], d["error_budget"], d["pass"],
        TruncationPolicy(**d["truncation_policy"]), d["clamped_fraction"],
    )


def search_to_dict(res):
    return {
        "space": res.space,
        "c_max": res.c_max,
        "bracket": list(res.bracket),
        "iterations": res.iterations,
        "certificates_at_endpoints": [
            None if c is None else certificate_to_dict(c) for c in res.certificates_at_endpoints
        ],
        "scan": [[c, ok] for c, ok in res.scan],
    }


def search_from_dict(d):
    return SearchResult(
        d["space"], d["c_max"], tuple(d["bracket"]), d["iterations"],
        tuple(None if c is None else certificate_from_dict(c) for c in d["certificates_at_endpoints"]),
        tuple((c, ok) for c, ok in d["scan"]),
    )


def claim_to_dict(rep):
    return {
        "claim_id": rep.claim_id,
        "grid": _grid(rep.grid),
        "max_violation": rep.max_violation,
        "worst_point": rep.worst_point,
        "pass": rep.passed,
        "tolerance": rep.tolerance,
        "points": rep.points,
        "low_density": rep.low_density,
        "notes": list(rep.notes),
    }


def claim_from_dict(d):
    grid = None if d["grid"] is None else GridSpec(
        tuple(d["grid"]["c_values"]), d["grid"]["rho_steps"], d["grid"]["theta_steps"],
        tuple(d["grid"]["n_range"]))
    return ClaimReport(d["claim_id"], grid, d["max_violation"], d["worst_point"], d["pass"],
                       d["tolerance"], d["points"], d["low_density"], list(d["notes"]))


def pair_to_dict(rep):
    return {
        "space": rep.space,
        "c": rep.c,
        "hypothesis_margin": rep.hypothesis_margin,
        "norm_f_sq": rep.norm_f_sq,
        "norm_g_sq": rep.norm_g_sq,
        "conclusion_holds": rep.conclusion_holds,
        "samples": rep.samples,
        "notes": list(rep.notes),
    }


def pair_from_dict(d):
    return PairReport(d["space"], d["c"], d["hypothesis_margin"], d["norm_f_sq"], d["norm_g_sq"],
                      d["conclusion_holds"], d["samples"], list(d["notes"]))


_WRITERS = {
    Certificate: ("certificate", certificate_to_dict),
    SearchResult: ("search", search_to_dict),
    ClaimReport: ("claim", claim_to_dict),
    PairReport: ("pair", pair_to_dict),
}
_READERS = {
    "certificate": certificate_from_dict,
    "search": search_from_dict,
    "claim": claim_from_dict,
    "pair": pair_from_dict,
}


def to_dict(obj):
    kind, fn = _WRITERS[type(obj)]
    return {"schema": SCHEMA, "kind": kind, **fn(obj)}


def from_dict(d):
    if d.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {d.get('schema')!r}")
    body = {k: v for k, v in d.items() if k not in ("schema", "kind")}
    return _READERS[d["kind"]](body)


def dumps(obj, indent=2):
    return json.dumps(to_dict(obj), indent=indent)


def loads(text):
    return from_dict(json.loads(text))
