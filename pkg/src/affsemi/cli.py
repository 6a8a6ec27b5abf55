"""Command-line front end.

Exit codes: 0 success, 2 malformed input, 3 not simplicial, 4 resource bound
exceeded, 5 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import report
from .config import Limits
from .errors import AffsemiError, MalformedInput
from .extensions import Step
from .semigroup import detect_extremal_rays

COMMANDS = ("analyze", "apery", "ideal", "stdbasis", "cm", "homogeneous", "betti",
            "extend", "sequence", "corpus", "closure")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="affsemi", description="Analyze simplicial affine semigroups.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("inputs", nargs="*", help="JSON input files ('-' for stdin)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--n-max", type=int, default=8, help="reduction certification depth")
    p.add_argument("--degree-bound", type=int, default=None, help="order-obstruction search bound")
    p.add_argument("--char", choices=("0",), default="0", help="coefficient characteristic (fixed)")
    p.add_argument("--max-spairs", type=int, default=Limits.max_spairs)
    p.add_argument("--max-standard-monomials", type=int, default=Limits.max_standard_monomials)
    p.add_argument("--max-betti-degrees", type=int, default=Limits.max_betti_degrees)
    p.add_argument("--jobs", type=int, default=1, help="analyze several inputs in parallel")
    p.add_argument("--timing", action="store_true", help="add wall-clock seconds (breaks byte stability)")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--r", type=int)
    return p


def _parse_doc(text: str, source: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"{source}: invalid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise MalformedInput(f"{source}: top level must be an object")
    return doc


def _int_list(x, what):
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise MalformedInput(f"{what} must be a list of integers")
    return [int(v) for v in x]


def _semigroup(doc: dict):
    dim = doc.get("dim")
    gens = doc.get("generators")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise MalformedInput("'dim' must be a positive integer")
    if not isinstance(gens, list) or not gens:
        raise MalformedInput("'generators' must be a nonempty list")
    gens = [_int_list(g, "each generator") for g in gens]
    return detect_extremal_rays(gens, dim)


def run_one(command: str, doc: Optional[dict], limits: Limits, args) -> dict:
    if command == "corpus":
        return report.corpus_json(limits, args.a, args.b, args.r)
    if command == "sequence":
        d = doc.get("dim")
        if not isinstance(d, int) or d < 1:
            raise MalformedInput("'dim' must be a positive integer")
        steps = []
        for st in doc.get("steps", []):
            try:
                steps.append(Step(tuple(_int_list(st["b"], "b")), int(st["lambda"]), int(st["mu"]),
                                  tuple(_int_list(st["alpha"], "alpha")), bool(st.get("nice", True))))
            except (KeyError, TypeError) as e:
                raise MalformedInput(f"bad step {st!r}: {e}") from e
        return report.sequence_json(d, steps, limits)
    S = _semigroup(doc)
    head = {"schema_version": report.SCHEMA_VERSION, "command": command, "semigroup": report.semigroup_json(S)}
    if command == "analyze":
        return report.analyze(S, limits, args.degree_bound)
    if command == "apery":
        return {**head, "apery": report.apery_json(S, limits)}
    if command == "ideal":
        return {**head, "ideal": report.ideal_json(S, limits)}
    if command == "stdbasis":
        return {**head, "standard_basis": report.stdbasis_json(S, limits)}
    if command == "cm":
        return {**head, "cm": report.cm_json(S, limits, args.degree_bound)}
    if command == "homogeneous":
        return {**head, "homogeneity": report.homogeneous_json(S, limits)}
    if command == "betti":
        return {**head, "betti": report.betti_json(S, limits)}
    if command == "extend":
        try:
            return report.extend_json(S, _int_list(doc["b"], "b"), int(doc["lambda"]), int(doc["mu"]),
                                      _int_list(doc["alpha"], "alpha"), limits, bool(doc.get("nice", True)))
        except (KeyError, TypeError) as e:
            raise MalformedInput(f"extend needs b, lambda, mu, alpha: {e}") from e
    if command == "closure":
        return report.closure_json(S, limits)
    raise MalformedInput(f"unknown command {command}")


def _job(payload):
    command, doc, limits, args = payload
    t0 = time.perf_counter()
    try:
        out = run_one(command, doc, limits, args)
    except AffsemiError as e:
        return {"error": type(e).__name__, "message": str(e)}, e.exit_code
    except Exception as e:  # anything else is a bug
        return {"error": "InternalError", "message": f"{type(e).__name__}: {e}"}, 5
    if args.timing:
        out["timing_seconds"] = round(time.perf_counter() - t0, 6)
    return out, 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_intermixed_args(argv)
    limits = Limits(max_spairs=args.max_spairs, max_standard_monomials=args.max_standard_monomials,
                    max_betti_degrees=args.max_betti_degrees, n_max=args.n_max)
    docs = []
    try:
        if args.command == "corpus":
            docs = [None]
        else:
            sources = args.inputs or ["-"]
            for src in sources:
                text = sys.stdin.read() if src == "-" else open(src, encoding="utf-8").read()
                docs.append(_parse_doc(text, src))
    except (AffsemiError, OSError) as e:
        code = getattr(e, "exit_code", 2)
        print(f"error: {e}", file=sys.stderr)
        return code
    payloads = [(args.command, d, limits, args) for d in docs]
    if args.jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_job, payloads))
    else:
        results = [_job(p) for p in payloads]
    code = 0
    for out, c in results:
        if c:
            print(f"error: {out['error']}: {out['message']}", file=sys.stderr)
            code = code or c
    outputs = [out for out, _ in results]
    body = outputs[0] if len(outputs) == 1 else outputs
    if args.format == "json":
        sys.stdout.write(report.dumps(body))
    else:
        sys.stdout.write(report.to_text(body) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
