"""``mvme`` command line: entailment, proof search, oracle runs, rule dumps, proof checks.

Exit status: 0 positive answer, 1 definite negative, 2 usage/parse/domain
error, 3 resource limit. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import oracle
from .derivation import (
    check_derivation,
    prove_sequent,
    refute,
    render_bussproofs,
    render_text,
    tree_from_json,
    tree_to_json,
)
from .errors import DomainError, MvmeError, ResourceLimitError
from .logic import builtin_logic, load_logic_spec
from .me import (
    GENERAL,
    SPECIALIZED,
    _VARIANTS,
    check_me_proof,
    decide_entailment,
    me_from_json,
    me_to_json,
    render_me_bussproofs,
    render_me_text,
)
from .parser import parse_inline_theory, parse_sequent, parse_theory
from .rulegen import ANTISEQUENT, SEQUENT, calculus_for, gen_min_operators, generated_calculus, rules_to_json

EXIT_POSITIVE, EXIT_NEGATIVE, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

_RELATION_MINS = {("LP", "m"): {"b"}, ("P", "m"): {"b"}, ("FOUR", "1"): {"b"}, ("FOUR", "2"): {"b", "n"}}


class UsageError(MvmeError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2)


def _spec(args):
    if getattr(args, "spec", None):
        return load_logic_spec(args.spec)
    if not args.logic:
        raise UsageError("one of --logic or --spec is required")
    return builtin_logic(args.logic)


def _theory(args, spec, inline_name, file_name=None):
    text = getattr(args, inline_name)
    path = getattr(args, file_name) if file_name else None
    out = frozenset()
    if path:
        with open(path, encoding="utf-8") as fh:
            out = parse_theory(fh.read(), spec)
    if text:
        out = out | parse_inline_theory(text, spec)
    return out


def _minimized(args, spec):
    if args.minimize is not None:
        names = frozenset(v.strip() for v in args.minimize.split(",") if v.strip())
        spec.indices(names)
        return names
    if getattr(args, "relation", None):
        key = (spec.name, args.relation)
        if key not in _RELATION_MINS:
            raise DomainError(f"relation {args.relation!r} is not defined for logic {spec.name}")
        return frozenset(_RELATION_MINS[key])
    return None


def _interp_json(interp):
    return None if interp is None else {a: v.name for a, v in interp.as_dict().items()}


# --- subcommands ----------------------------------------------------------------

def cmd_entail(args, out):
    spec = _spec(args)
    mins = _minimized(args, spec)
    if mins is None:
        raise UsageError("entail needs --relation or --minimize")
    mode = args.mode
    if mode == "auto":
        mode = SPECIALIZED if (spec.name, mins) in _VARIANTS else GENERAL
    gamma = _theory(args, spec, "gamma", "premises")
    delta = _theory(args, spec, "delta")
    verdict = decide_entailment(gamma, delta, (spec, mins), mode=mode)
    word = "HOLDS" if verdict.holds else "NOT-HOLDS"
    if args.proof == "json":
        doc = {"verdict": word, "relation": verdict.relation, "mode": mode,
               "proof": me_to_json(verdict.proof, verdict.relation, mode) if verdict.proof else None,
               "countermodel": _interp_json(verdict.countermodel)}
        out.write(_dump(doc) + "\n")
    else:
        out.write(word + "\n")
        if verdict.proof is not None and args.proof == "text":
            out.write(render_me_text(verdict.proof) + "\n")
        elif verdict.proof is not None and args.proof == "tree":
            out.write(render_me_bussproofs(verdict.proof) + "\n")
        if verdict.countermodel is not None and (args.countermodel or args.proof):
            out.write(f"countermodel: {verdict.countermodel}\n")
    return EXIT_POSITIVE if verdict.holds else EXIT_NEGATIVE


def _calculus(args, spec):
    if args.calculus == "generated":
        return generated_calculus(spec)
    return calculus_for(spec)


def _prove_or_refute(args, out, anti):
    spec = _spec(args)
    seq = parse_sequent(args.sequent, spec, anti=anti)
    calc = _calculus(args, spec)
    tree = (refute if anti else prove_sequent)(seq, calc, budget=args.budget)
    word = "PROVABLE" if tree is not None else "NOT-PROVABLE"
    if args.proof == "json":
        doc = {"verdict": word, "kind": ANTISEQUENT if anti else SEQUENT, "logic": spec.name,
               "calculus": args.calculus, "proof": tree_to_json(tree, spec) if tree else None}
        out.write(_dump(doc) + "\n")
    else:
        out.write(word + "\n")
        if tree is not None:
            out.write((render_bussproofs(tree) if args.proof == "tree" else render_text(tree)) + "\n")
    return EXIT_POSITIVE if tree is not None else EXIT_NEGATIVE


def cmd_prove(args, out):
    return _prove_or_refute(args, out, anti=False)


def cmd_refute(args, out):
    return _prove_or_refute(args, out, anti=True)


def cmd_oracle(args, out):
    spec = _spec(args)
    mins = _minimized(args, spec)
    gamma = _theory(args, spec, "gamma", "premises")
    delta = _theory(args, spec, "delta")
    if mins is None:
        holds = oracle.semantic_consequence(gamma, delta, spec, reading=args.reading, cap=args.cap)
        out.write(("HOLDS" if holds else "NOT-HOLDS") + "\n")
        return EXIT_POSITIVE if holds else EXIT_NEGATIVE
    domain = oracle.free_atoms(list(gamma) + list(delta))
    report = oracle.minimal_models(gamma, mins, domain, domain, spec, delta=delta, cap=args.cap)
    holds = report.counterexample is None
    out.write(("HOLDS" if holds else "NOT-HOLDS") + "\n")
    if args.minimal_models:
        for model in report.minimal_models:
            out.write(f"{model}\n")
    if not holds and args.countermodel:
        out.write(f"countermodel: {report.counterexample}\n")
    return EXIT_POSITIVE if holds else EXIT_NEGATIVE


def cmd_rulegen(args, out):
    spec = _spec(args)
    if args.minimize is not None:
        spec = gen_min_operators(spec, _minimized(args, spec))
    source = args.calculus
    if source == "auto":
        source = "builtin" if (not args.spec and args.minimize is None) else "generated"
    if source == "builtin":
        from .rulegen import builtin_pair

        calc = builtin_pair(spec.name)
    else:
        calc = generated_calculus(spec)
    text = _dump(rules_to_json(calc, args.kind)) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_POSITIVE


def cmd_check(args, out):
    try:
        with open(args.proof, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read proof file: {exc}") from None
    node = doc.get("proof", doc) if isinstance(doc, dict) else None
    if not isinstance(node, dict):
        raise UsageError("proof file holds no proof")
    spec = load_logic_spec(args.spec) if args.spec else None
    try:
        if node.get("kind") == "me":
            proof, mode = me_from_json(node, spec)
            res = check_me_proof(proof, mode)
        else:
            logic = doc.get("logic") or args.logic
            if spec is None:
                if not logic:
                    raise UsageError("derivation files need a logic (--logic, --spec or a 'logic' field)")
                spec = builtin_logic(logic)
            tree = tree_from_json(node, spec)
            calc = generated_calculus(spec) if doc.get("calculus", args.calculus) == "generated" else calculus_for(spec)
            res = check_derivation(tree, calc)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed proof: {exc}") from None
    if res:
        out.write("VALID\n")
        return EXIT_POSITIVE
    out.write(f"INVALID {res}\n")
    return EXIT_NEGATIVE


# --- argument parsing --------------------------------------------------------------

def _logic_args(p):
    p.add_argument("--logic", choices=["P", "LP", "F", "FOUR"], help="built-in logic")
    p.add_argument("--spec", metavar="FILE", help="logic spec JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mvme", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entail", help="decide minimal entailment and print a proof or countermodel")
    _logic_args(p)
    p.add_argument("--relation", choices=["m", "1", "2"], help="m for LP/P, 1 or 2 for FOUR")
    p.add_argument("--minimize", metavar="V1,V2", help="explicit minimized value set")
    p.add_argument("--premises", metavar="FILE", help="theory file, one formula per line")
    p.add_argument("--gamma", default="", help="premises separated by ';'")
    p.add_argument("--delta", default="", help="conclusions separated by ';'")
    p.add_argument("--mode", choices=["auto", GENERAL, SPECIALIZED], default="auto")
    p.add_argument("--proof", choices=["text", "json", "tree"])
    p.add_argument("--countermodel", action="store_true")
    p.set_defaults(func=cmd_entail)

    for name, func, helptext in (("prove", cmd_prove, "prove a many-sided sequent"),
                                 ("refute", cmd_refute, "prove an anti-sequent")):
        p = sub.add_parser(name, help=helptext)
        _logic_args(p)
        p.add_argument("--sequent", required=True, help='components like "[f: p][b: q]"')
        p.add_argument("--calculus", choices=["builtin", "generated"], default="builtin")
        p.add_argument("--proof", choices=["text", "json", "tree"], default="text")
        p.add_argument("--budget", type=int, default=200_000)
        p.set_defaults(func=func)

    p = sub.add_parser("oracle", help="brute-force consequence or minimal entailment")
    _logic_args(p)
    p.add_argument("--minimize", metavar="V1,V2")
    p.add_argument("--relation", choices=["m", "1", "2"])
    p.add_argument("--premises", metavar="FILE")
    p.add_argument("--gamma", default="")
    p.add_argument("--delta", default="")
    p.add_argument("--reading", choices=["modelwise", "pointwise"], default="modelwise")
    p.add_argument("--minimal-models", action="store_true")
    p.add_argument("--countermodel", action="store_true")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("rulegen", help="dump a calculus as JSON")
    _logic_args(p)
    p.add_argument("--kind", choices=[SEQUENT, ANTISEQUENT], required=True)
    p.add_argument("--calculus", choices=["auto", "builtin", "generated"], default="auto")
    p.add_argument("--minimize", metavar="V1,V2", help="add inc/ninc for this set (generated rules)")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_rulegen)

    p = sub.add_parser("check", help="check a JSON proof file")
    p.add_argument("--proof", required=True, metavar="FILE")
    _logic_args(p)
    p.add_argument("--calculus", choices=["builtin", "generated"], default="builtin")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except ResourceLimitError as exc:
        err.write(f"mvme: resource limit: {exc}\n")
        return EXIT_RESOURCE
    except (MvmeError, OSError) as exc:
        err.write(f"mvme: error: {exc}\n")
        return EXIT_USAGE


def entrypoint():
    sys.exit(main())
