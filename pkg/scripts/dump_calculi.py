"""Write the built-in and generated rule sets of P, LP and FOUR as JSON files."""

import argparse
import json
from pathlib import Path

from mvme import builtin_logic
from mvme.rulegen import ANTISEQUENT, SEQUENT, builtin_pair, generated_calculus, rules_to_json


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="calculi")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for logic in ("P", "LP", "FOUR"):
        for source, calc in (("builtin", builtin_pair(logic)), ("generated", generated_calculus(builtin_logic(logic)))):
            for kind in (SEQUENT, ANTISEQUENT):
                doc = rules_to_json(calc, kind)
                path = out / f"{logic}_{source}_{kind}.json"
                path.write_text(json.dumps(doc, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
                print(f"{path}: {len(doc['rules'])} rules")


if __name__ == "__main__":
    main()
