"""Random minimal-entailment instances: search verdicts, proofs and countermodels vs. the oracle."""

import argparse
import random
import time
from collections import Counter

from mvme import builtin_logic, check_me_proof, decide_entailment
from mvme.corpus import RandomTheoryConfig, random_instance
from mvme.me import GENERAL, RELATIONS, SPECIALIZED
from mvme.oracle import minimal_entailment, minimal_models


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=1000, help="instances per relation")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--mode", choices=[SPECIALIZED, GENERAL], default=SPECIALIZED)
    ap.add_argument("--atoms", type=int, default=3)
    ap.add_argument("--depth", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for rel in sorted(RELATIONS):
        logic, mins = RELATIONS[rel]
        spec = builtin_logic(logic)
        conns = ("~", "&", "|") if logic == "LP" else ("~", "&", "->")
        cfg = RandomTheoryConfig(max_atoms=args.atoms, max_depth=args.depth, connectives=conns)
        stats = Counter()
        t = time.perf_counter()
        for _ in range(args.n):
            gamma, delta = random_instance(rng, spec, cfg)
            v = decide_entailment(gamma, delta, rel, mode=args.mode)
            stats["holds" if v.holds else "fails"] += 1
            stats["disagree"] += v.holds != minimal_entailment(gamma, delta, mins, spec)
            if v.holds:
                stats["bad proof"] += not check_me_proof(v.proof, args.mode)
                stats[f"root {v.proof.rule}"] += 1
            else:
                dom = v.countermodel.domain
                report = minimal_models(gamma, mins, dom, dom, spec, delta=delta)
                stats["bad countermodel"] += v.countermodel not in report.minimal_models
        summary = ", ".join(f"{k}={stats[k]}" for k in sorted(stats))
        print(f"{rel:4} {args.mode:11} {summary}  {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()
