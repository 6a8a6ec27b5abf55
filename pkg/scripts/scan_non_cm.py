"""Exhaustive scan of 3-generated numerical semigroups for non-CM tangent cones.

Writes the lexicographically first non-CM instance to tests/fixtures/non_cm.json
and reports whether the leading-monomial test and the order-obstruction search
agree on every semigroup scanned.

    python3 scripts/scan_non_cm.py --max-gen 30
"""

import argparse
import itertools
import json
import math
import pathlib
import time

from affsemi.binomial import toric_ideal
from affsemi.errors import NonMinimalGenerator
from affsemi.local import cm_check, standard_basis
from affsemi.semigroup import detect_extremal_rays, order_obstructions

FIXTURE = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "non_cm.json"


def scan(max_gen: int):
    first, mismatches, total, non_cm = None, [], 0, 0
    for gens in itertools.combinations(range(2, max_gen + 1), 3):
        if math.gcd(*gens) != 1:
            continue
        try:
            S = detect_extremal_rays([[g] for g in gens], 1)
        except NonMinimalGenerator:
            continue
        total += 1
        cm = cm_check(standard_basis(toric_ideal(S), S.n), 1).is_cm
        obs = order_obstructions(S)
        if not cm:
            non_cm += 1
            if first is None:
                w = obs[0] if obs else None
                first = {"generators": list(gens), "witness": None if w is None else
                         {"b": list(w.b), "ray": w.i + 1, "ord_b": w.ord_b, "ord_b_plus": w.ord_b_plus}}
        if cm == bool(obs):
            mismatches.append(gens)
    return first, mismatches, total, non_cm


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-gen", type=int, default=30)
    ap.add_argument("--no-write", action="store_true")
    args = ap.parse_args()
    t0 = time.perf_counter()
    first, mismatches, total, non_cm = scan(args.max_gen)
    print(f"scanned {total} semigroups, {non_cm} non-CM, {len(mismatches)} disagreements "
          f"({time.perf_counter() - t0:.1f}s)")
    print("first non-CM:", first)
    if first is not None and not args.no_write:
        FIXTURE.parent.mkdir(parents=True, exist_ok=True)
        FIXTURE.write_text(json.dumps({"dim": 1, "generators": [[g] for g in first["generators"]],
                                       "witness": first["witness"], "scan_max_gen": args.max_gen},
                                      indent=2, sort_keys=True) + "\n")
        print("wrote", FIXTURE)


if __name__ == "__main__":
    main()
