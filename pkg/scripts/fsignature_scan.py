#!/usr/bin/env python3
"""F-signature rows a_e = l(R/I_e) across the stock corpus (or one spec).

The normalized column a_e/q^dim heads to the F-signature: 1 on regular
rings, 0 on non-strongly-F-regular ones, strictly between otherwise.
"""

import argparse
import sys
import time

sys.path.insert(0, "src")

from frobinv.cli import parse_spec
from frobinv.corpus import corpus_names, corpus_text
from frobinv.frobenius import FrobeniusError
from frobinv.invariants import fsig_function


def scan(name, text, e_max):
    doc = parse_spec(text)
    try:
        rep = fsig_function(doc.ring, e_max)
    except FrobeniusError as exc:
        print("%-22s skipped (%s)" % (name, exc))
        return
    cells = "  ".join("a_%d=%d (%s)" % (e, a, norm)
                      for e, _, a, norm in rep.rows)
    print("%-22s %s" % (name, cells))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("spec", nargs="?", default=None,
                    help="ring script path (default: scan the corpus)")
    ap.add_argument("--emax", type=int, default=3)
    args = ap.parse_args()

    t0 = time.perf_counter()
    if args.spec:
        with open(args.spec, "r", encoding="utf-8") as fh:
            scan(args.spec, fh.read(), args.emax)
    else:
        for name in corpus_names():
            scan(name, corpus_text(name), args.emax)
    print("wall = %.1f s" % (time.perf_counter() - t0))
    return 0


if __name__ == "__main__":
    sys.exit(main())
