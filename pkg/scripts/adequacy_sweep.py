"""Prover vs. brute-force oracle over the depth-2 consequence corpus.

Prints one line per (logic, calculus) with item count, discrepancies and time.
``--full-cross`` pairs every deep formula with every depth-1 conclusion.
"""

import argparse
import time

from mvme import builtin_logic, prove_sequent, refute
from mvme.corpus import consequence_pairs
from mvme.oracle import antisequent_refutable_bruteforce, sequent_valid_bruteforce
from mvme.rulegen import builtin_pair, generated_calculus
from mvme.sequent import build_consequence_antisequent, build_consequence_sequent


def sweep(logic, full_cross, sample, seed):
    spec = builtin_logic(logic)
    pairs = list(consequence_pairs(spec, sample=sample, seed=seed, full_cross=full_cross))
    t = time.perf_counter()
    truth = []
    for gamma, delta in pairs:
        valid = sequent_valid_bruteforce(build_consequence_sequent(gamma, delta, spec), spec)
        refutable = antisequent_refutable_bruteforce(build_consequence_antisequent(gamma, delta, spec), spec)
        truth.append((valid, refutable is not None))
    print(f"{logic:5} oracle     {len(pairs):8d} items  {time.perf_counter() - t:7.1f}s")
    for calc in (builtin_pair(logic), generated_calculus(spec)):
        t = time.perf_counter()
        bad = 0
        for (gamma, delta), (valid, refutable) in zip(pairs, truth):
            proved = prove_sequent(build_consequence_sequent(gamma, delta, spec), calc) is not None
            refuted = refute(build_consequence_antisequent(gamma, delta, spec), calc) is not None
            bad += (proved != valid) + (refuted != refutable)
        print(f"{logic:5} {calc.name:10} {len(pairs):8d} items  {bad} discrepancies  "
              f"{time.perf_counter() - t:7.1f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--logic", nargs="+", default=["P", "FOUR"])
    ap.add_argument("--full-cross", action="store_true")
    ap.add_argument("--sample", type=int, default=3000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for logic in args.logic:
        sweep(logic, args.full_cross, args.sample, args.seed)


if __name__ == "__main__":
    main()
