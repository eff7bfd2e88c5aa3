#!/usr/bin/env python3
"""Lighten a seeded random corpus and check trace-language preservation.

    python scripts/sweep.py --n 5000 --seed 7 --json sweep.json
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import asdict

from slt.core import EMPTY
from slt.lightener import FreshNamer, count_sites, descend, lighten_fully
from slt.randgen import GenConfig, corpus, random_program
from slt.semantics import lang_eq
from slt.syntax import print_program


def sweep_driver(types, dedup: bool) -> dict:
    stats = {"inputs": len(types), "with_sites": 0, "sites": 0, "decls_out": 0, "failures": []}
    for i, t in enumerate(types):
        n = count_sites(t, EMPTY)
        stats["with_sites"] += n > 0
        stats["sites"] += n
        out = lighten_fully(t, dedup=dedup)
        stats["decls_out"] += len(out.decls)
        res = lang_eq(t, EMPTY, *out)
        if not res:
            stats["failures"].append({"index": i, "witness": res.witness.render(), "input": print_program(t, EMPTY)})
    return stats


def sweep_descend(rng: random.Random, cfg: GenConfig, n: int) -> dict:
    failures = 0
    for _ in range(n):
        prog = random_program(rng, cfg)
        role = rng.choice(cfg.roles)
        res = descend(prog.main, role, FreshNamer(taken=set(prog.decls)))
        failures += not lang_eq(*prog, res.result, prog.decls.union(res.new_decls))
    return {"pairs": n, "failures": failures}


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=20241016)
    ap.add_argument("--max-depth", type=int, default=6)
    ap.add_argument("--roles", type=int, default=4)
    ap.add_argument("--branches", type=int, default=3)
    ap.add_argument("--recs", type=int, default=2)
    ap.add_argument("--dedup", action="store_true")
    ap.add_argument("--json", metavar="FILE", help="write the summary here as well")
    args = ap.parse_args(argv)

    cfg = GenConfig(max_depth=args.max_depth, n_roles=args.roles, max_branches=args.branches, max_recs=args.recs)
    start = time.perf_counter()
    driver = sweep_driver(corpus(args.seed, args.n, cfg), args.dedup)
    desc = sweep_descend(random.Random(args.seed + 1), cfg, args.n)
    elapsed = time.perf_counter() - start

    print(f"config        {asdict(cfg)}")
    print(f"inputs        {driver['inputs']} ({driver['with_sites']} with redundant interactions, {driver['sites']} sites)")
    print(f"declarations  {driver['decls_out']} produced")
    print(f"driver        {driver['inputs'] - len(driver['failures'])}/{driver['inputs']} language-preserving")
    print(f"descend       {desc['pairs'] - desc['failures']}/{desc['pairs']} language-preserving")
    print(f"elapsed       {elapsed:.2f} s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"config": asdict(cfg), "driver": driver, "descend": desc, "seconds": elapsed}, fh, indent=2)
    return 1 if driver["failures"] or desc["failures"] else 0


if __name__ == "__main__":
    sys.exit(main())
