"""Emit the geometric-sequence corpus, with computed artifacts, as JSON.

    python3 scripts/run_corpus.py --out corpus.json --jobs 4
"""

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from affsemi import report
from affsemi.config import DEFAULT_LIMITS
from affsemi.extensions import geometric_corpus


def _entry(abr):
    return report.corpus_entry(*abr, DEFAULT_LIMITS)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="-", help="output path, '-' for stdout")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--b-max", type=int, default=7)
    args = ap.parse_args()
    keys = [(g.a, g.b, g.r) for g in geometric_corpus(b_max=args.b_max)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            entries = list(ex.map(_entry, keys))  # map keeps input order
    else:
        entries = [_entry(k) for k in keys]
    text = report.dumps({"schema_version": report.SCHEMA_VERSION, "command": "corpus", "fixtures": entries})
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        bad = [e for e in entries if e["computed"]["betti"] != e["expected_betti"] or not e["computed"]["cm"]]
        print(f"wrote {len(entries)} fixtures to {args.out}; {len(bad)} disagree with the expected data")


if __name__ == "__main__":
    main()
