"""Assemble JSON-ready reports from module operations.

Nothing here does mathematics beyond calling the engines; the functions
only pick fields and render them canonically.
"""

from __future__ import annotations

import json
from typing import Optional

from .betti import betti_compare, betti_semigroup, graded_betti_of_tangent_cone
from .binomial import Binomial, gastinger_check, toric_ideal
from .config import DEFAULT_LIMITS, Limits
from .extensions import (
    extension_sequence,
    geometric_corpus,
    geometric_semigroup,
    is_complete_intersection,
    nice_extension,
    projective_closure,
    verify_extension_theorems,
)
from .local import cm_check, homogeneity_gb_check, standard_basis
from .semigroup import (
    AffineSemigroup,
    apery_set,
    default_degree_bound,
    is_homogeneous_semigroup,
    order_obstructions,
    verify_reduction,
)

SCHEMA_VERSION = 1


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def binomial_json(f: Binomial) -> dict:
    out = f.to_json()
    out["text"] = f.render()
    return out


def semigroup_json(S: AffineSemigroup) -> dict:
    return {
        "dim": S.dim,
        "generators": [list(g) for g in S.generators],
        "extremal_rays": [list(g) for g in S.extremal_rays],
    }


def apery_json(S, limits) -> dict:
    ap = apery_set(S, limits)
    hv = is_homogeneous_semigroup(S, limits)
    return {
        "elements": [list(e) for e in ap.elements],
        "lengths": [sorted(ap.lengths[e]) for e in ap.elements],
        "size": len(ap),
        "homogeneous": hv.homogeneous,
        "witness": None if hv.witness is None else list(hv.witness),
    }


def ideal_json(S, limits) -> dict:
    T = toric_ideal(S, limits)
    return {
        "generators": [binomial_json(f) for f in T],
        "count": len(T),
        "complete_intersection": is_complete_intersection(S, limits).to_json(),
    }


def stdbasis_json(S, limits) -> dict:
    sb = standard_basis(toric_ideal(S, limits), S.n, limits)
    return {
        "basis": [binomial_json(f) for f in sb.basis],
        "leading_monomials": [list(m) for m in sb.leading_monomials],
        "homogeneous_part": list(sb.homogeneous_part),
        "nonhomogeneous_part": list(sb.nonhomogeneous_part),
        "tangent_cone_generators": [binomial_json(f) for f in sb.tangent_cone_generators],
        "spairs": sb.spairs,
    }


def cm_json(S, limits, degree_bound: Optional[int]) -> dict:
    sb = standard_basis(toric_ideal(S, limits), S.n, limits)
    red = verify_reduction(S, limits.n_max)
    v = cm_check(sb, S.dim, red.certified)
    bound = default_degree_bound(S, limits) if degree_bound is None else degree_bound
    obs = order_obstructions(S, bound, limits)
    return {
        "cm": v.is_cm,
        "offending": [[j + 1, i + 1] for j, i in v.offending],
        "reduction": {"certified": red.certified, "n": red.n, "n_max": red.n_max},
        "hypothesis_uncertified": not red.certified,
        "obstruction_bound": bound,
        "obstructions": [{"b": list(w.b), "ray": w.i + 1, "ord_b": w.ord_b, "ord_b_plus": w.ord_b_plus}
                         for w in obs[:20]],
        "obstruction_count": len(obs),
    }


def homogeneous_json(S, limits) -> dict:
    sb = standard_basis(toric_ideal(S, limits), S.n, limits)
    hv = is_homogeneous_semigroup(S, limits)
    gb = homogeneity_gb_check(sb, S, limits)
    return {
        "homogeneous": hv.homogeneous,
        "witness": None if hv.witness is None else {"element": list(hv.witness), "lengths": list(hv.witness_lengths)},
        "gb_verdict": gb.verdict,
        "gb_support_variable": None if gb.j is None else gb.j + 1,
        "gb_rewritten": [i + 1 for i in gb.rewritten],
        "gb_reason": gb.reason,
    }


def betti_json(S, limits) -> dict:
    return betti_compare(S, limits).to_json()


def analyze(S, limits: Limits = DEFAULT_LIMITS, degree_bound: Optional[int] = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "analyze",
        "semigroup": semigroup_json(S),
        "simplicial": True,
        "apery": apery_json(S, limits),
        "ideal": ideal_json(S, limits),
        "standard_basis": stdbasis_json(S, limits),
        "cm": cm_json(S, limits, degree_bound),
        "homogeneity": homogeneous_json(S, limits),
        "betti": betti_json(S, limits),
        "limits": limits_json(limits),
    }


def limits_json(limits: Limits) -> dict:
    return {
        "max_spairs": limits.max_spairs,
        "max_standard_monomials": limits.max_standard_monomials,
        "max_betti_degrees": limits.max_betti_degrees,
        "n_max": limits.n_max,
    }


def extend_json(S, b, lam, mu, alpha, limits, check_nice=True) -> dict:
    ext = nice_extension(S, b, lam, mu, alpha, check_nice=check_nice)
    rep = verify_extension_theorems(ext, limits)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "extend",
        "base": semigroup_json(S),
        "extension": semigroup_json(ext.result),
        "relation": binomial_json(ext.relation),
        "b": list(ext.b), "lambda": lam, "mu": mu, "alpha": list(ext.alpha),
        "checks": rep.to_json(),
    }


def sequence_json(d, steps, limits) -> dict:
    S, cert = extension_sequence(d, steps, limits)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "sequence",
        "semigroup": semigroup_json(S),
        "complete_intersection": cert.to_json(),
    }


def corpus_entry(a, b, r, limits) -> dict:
    g = geometric_semigroup(a, b, r)
    S = g.semigroup
    T = toric_ideal(S, limits)
    sb = standard_basis(T, S.n, limits)
    gas = gastinger_check(T, S, 0, limits)
    entry = g.to_json()
    entry["computed"] = {
        "basis": [binomial_json(f) for f in T],
        "leading_monomials": [list(m) for m in sb.leading_monomials],
        "cm": cm_check(sb, 1).is_cm,
        "gastinger": {"holds": gas.holds, "dimension": gas.dimension},
        "betti": list(betti_semigroup(S, limits).totals),
        "betti_gr": list(graded_betti_of_tangent_cone(S, limits).totals),
    }
    return entry


def corpus_json(limits, a=None, b=None, r=None) -> dict:
    if a is not None and b is not None and r is not None:
        entries = [corpus_entry(a, b, r, limits)]
    else:
        entries = [corpus_entry(g.a, g.b, g.r, limits) for g in geometric_corpus()]
    return {"schema_version": SCHEMA_VERSION, "command": "corpus", "fixtures": entries}


def closure_json(S, limits) -> dict:
    rep = projective_closure(S, limits)
    out = rep.to_json()
    out.update(schema_version=SCHEMA_VERSION, command="closure", semigroup=semigroup_json(S))
    return out


def to_text(obj, indent: int = 0) -> str:
    """Plain key/value rendering of a report."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, dict) and "text" in v:
                lines.append(f"{pad}{k}: {v['text']}")
            elif isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(to_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict) and "text" in v:
                lines.append(f"{pad}- {v['text']}")
            elif isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(to_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return "\n".join(lines)


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)
    return False


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)
