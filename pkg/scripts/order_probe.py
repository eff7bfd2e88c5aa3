#!/usr/bin/env python3
"""Try every elimination order on small inputs and report where results differ.

Differences up to renaming are reported; language agreement is checked too.
"""

from __future__ import annotations

import argparse
import sys

from slt.core import EMPTY, alpha_eq_decls
from slt.lightener import count_sites, lighten_all_orders
from slt.randgen import GenConfig, corpus
from slt.semantics import lang_eq
from slt.syntax import print_program


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=20241016)
    ap.add_argument("--max-sites", type=int, default=4)
    ap.add_argument("--show", type=int, default=1, help="print this many differing pairs in full")
    args = ap.parse_args(argv)

    probed = sensitive = lang_split = 0
    shown = 0
    for i, t in enumerate(corpus(args.seed, args.n, GenConfig())):
        if not 2 <= count_sites(t, EMPTY) <= args.max_sites:
            continue
        probed += 1
        (order0, base), *rest = lighten_all_orders(t)
        diff = next(((o, p) for o, p in rest if not alpha_eq_decls(*base, *p)), None)
        lang_split += sum(1 for _, p in rest if not lang_eq(*base, *p))
        if diff is None:
            continue
        sensitive += 1
        if shown < args.show:
            shown += 1
            order, other = diff
            print(f"== corpus[{i}]")
            print(print_program(t, EMPTY))
            print(f"-- order {[s for _, s in order0]}")
            print(print_program(*base))
            print(f"-- order {[s for _, s in order]}")
            print(print_program(*other))
    print(f"probed {probed}, order-sensitive {sensitive}, language disagreements {lang_split}")
    return 1 if lang_split else 0


if __name__ == "__main__":
    sys.exit(main())
