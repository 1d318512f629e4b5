"""Acceptance criteria 1-8, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (the lines appear in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from pathlib import Path

import pytest

from mvme import builtin_logic, check_derivation, check_me_proof, decide_entailment, parse_formula
from mvme.corpus import RandomTheoryConfig, consequence_pairs, random_instance
from mvme.derivation import prove_sequent, refute, tree_digest
from mvme.formula import render
from mvme.me import RELATIONS, SPECIALIZED, me_digest, me_from_json, me_to_json
from mvme.oracle import (
    antisequent_refutable_bruteforce,
    minimal_entailment,
    minimal_models,
    semantic_consequence,
    sequent_valid_bruteforce,
)
from mvme.rulegen import builtin_pair, generated_calculus, rule_local_failures
from mvme.sequent import build_consequence_antisequent, build_consequence_sequent

FIXTURES = Path(__file__).parent / "fixtures"
REPORT: list = []  # (criterion, ok, detail, seconds), printed by conftest

ME_INSTANCES = 600
DIGEST_STRIDE = 25  # every 25th corpus item is re-proved for the determinism check


def record(n, ok, detail, seconds):
    REPORT.append((n, ok, detail, seconds))
    return ok


def report_lines():
    return [f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}  ({sec:.1f}s)"
            for n, ok, detail, sec in sorted(REPORT, key=lambda r: r[0])]


def _f(spec, *texts):
    return [parse_formula(t, spec) for t in texts]


def _fresh_caches(*calcs):
    for calc in calcs:
        calc.search_cache.clear()


# --- criterion 1 ----------------------------------------------------------------

def example1_verdicts():
    P, LP, F = builtin_logic("P"), builtin_logic("LP"), builtin_logic("FOUR")
    g = ("p", "~(p & ~q)")
    out = {
        "P |= q": semantic_consequence(_f(P, *g), _f(P, "q"), P),
        "F |= q": semantic_consequence(_f(F, *g), _f(F, "q"), F),
    }
    for rel, spec in (("Pm", P), ("F1", F), ("F2", F), ("LPm", LP)):
        out[f"{rel} q"] = decide_entailment(_f(spec, *g), _f(spec, "q"), rel).holds
        out[f"{rel} q (with ~q)"] = decide_entailment(_f(spec, *g, "~q"), _f(spec, "q"), rel).holds
    return out


EXAMPLE1_EXPECTED = {
    "P |= q": False, "F |= q": False,
    "Pm q": True, "F1 q": True, "F2 q": True, "LPm q": True,
    "Pm q (with ~q)": False, "F1 q (with ~q)": False, "F2 q (with ~q)": False, "LPm q (with ~q)": False,
}


def test_criterion_1_example1():
    t = time.perf_counter()
    got = example1_verdicts()
    sec = time.perf_counter() - t
    wrong = {k: v for k, v in got.items() if v != EXAMPLE1_EXPECTED[k]}
    ok = not wrong and sec < 1.0
    record(1, ok, f"{len(got)} verdicts, wrong={wrong or 'none'}, limit 1s", sec)
    assert not wrong
    assert sec < 1.0


# --- criterion 2 ----------------------------------------------------------------

def example2_proof():
    P = builtin_logic("P")
    return decide_entailment(_f(P, "p", "~(p & ~q)"), _f(P, "q"), "Pm")


def test_criterion_2_example2_golden():
    t = time.perf_counter()
    v = example2_proof()
    root = v.proof
    shape = (root.rule, root.atom, root.premises[0].rule, root.premises[1].rule)
    P = builtin_logic("P")
    p, q = _f(P, "p", "q")
    leaf = (frozenset({p, q}), frozenset({p, q}), frozenset())
    m1_tree = root.premises[0].premises[0]
    leaf_ok = any(lf.rule == "axiom" and lf.conclusion.components == leaf for lf in m1_tree.leaves())
    checked = bool(check_me_proof(root))
    fixture, mode = me_from_json(json.loads((FIXTURES / "example2_proof.json").read_text()))
    fixture_ok = bool(check_me_proof(fixture, mode))
    ok = v.holds and shape == ("m3", "p", "m1′", "m2′") and leaf_ok and checked and fixture_ok
    record(2, ok, f"skeleton={shape}, axiom leaf {{p,q}}|{{p,q}}|∅={leaf_ok}, "
                  f"checks={checked}, transcribed fixture checks={fixture_ok}", time.perf_counter() - t)
    assert ok


# --- criterion 3 ----------------------------------------------------------------

def example3_proof():
    F = builtin_logic("FOUR")
    return decide_entailment(_f(F, "p", "~(p & ~q)"), _f(F, "q"), "F1")


def test_criterion_3_example3_skeleton():
    t = time.perf_counter()
    v = example3_proof()
    root = v.proof
    shape = (root.rule, root.premises[0].rule, root.premises[1].rule)
    checked = bool(check_me_proof(root))
    beta, mode = me_from_json(json.loads((FIXTURES / "example3_beta.json").read_text()))
    res = check_me_proof(beta, mode)
    ok = v.holds and shape == ("m3", "m1†", "m2†") and checked and bool(res)
    record(3, ok, f"skeleton={shape}, checks={checked}, transcribed beta: {res}", time.perf_counter() - t)
    assert ok


# --- criterion 4 (and the duality half of 7) ---------------------------------------

def adequacy_run(logic, digest_stride=0):
    """Prover vs oracle over the corpus for both calculi.

    Returns (items, discrepancies, duality_violations, digests).
    """
    spec = builtin_logic(logic)
    calcs = {"builtin": builtin_pair(logic), "generated": generated_calculus(spec)}
    _fresh_caches(*calcs.values())
    items = 0
    bad, duality_bad, digests = [], [], []
    for k, (gamma, delta) in enumerate(consequence_pairs(spec)):
        items += 1
        seq = build_consequence_sequent(gamma, delta, spec)
        anti = build_consequence_antisequent(gamma, delta, spec)
        valid = sequent_valid_bruteforce(seq, spec)
        refutable = antisequent_refutable_bruteforce(anti, spec) is not None
        if refutable == valid:
            duality_bad.append((gamma, delta))
        for name, calc in calcs.items():
            proof = prove_sequent(seq, calc)
            refutation = refute(anti, calc)
            if (proof is not None) != valid or (refutation is not None) != refutable:
                bad.append((name, [render(x) for x in gamma], [render(x) for x in delta]))
            if (proof is not None) == (refutation is not None):
                duality_bad.append((name, gamma, delta))
            if digest_stride and k % digest_stride == 0:
                tree = proof or refutation
                if not check_derivation(tree, calc):
                    bad.append((name, "proof does not check", [render(x) for x in gamma],
                                [render(x) for x in delta]))
                digests.append(tree_digest(tree, spec))
    return items, bad, duality_bad, digests


_ADEQUACY: dict = {}


def _adequacy(logic):
    if logic not in _ADEQUACY:
        t = time.perf_counter()
        res = adequacy_run(logic, DIGEST_STRIDE)
        _ADEQUACY[logic] = res + (time.perf_counter() - t,)
    return _ADEQUACY[logic]


def test_criterion_4_adequacy():
    sec = 0.0
    details, ok = [], True
    for logic in ("P", "FOUR"):
        items, bad, _, _, s = _adequacy(logic)
        sec += s
        details.append(f"{logic}: {items} items x2 calculi, {len(bad)} discrepancies")
        ok = ok and not bad
    record(4, ok and sec < 120, "; ".join(details) + ", target 120s", sec)
    assert ok, [b for logic in ("P", "FOUR") for b in _ADEQUACY[logic][1][:5]]


# --- criterion 5 ----------------------------------------------------------------

def _connectives(logic):
    return ("~", "&", "|") if logic == "LP" else ("~", "&", "->")


def me_instances(n=ME_INSTANCES, seed=2024):
    rng = random.Random(seed)
    rels = sorted(RELATIONS)
    out = []
    for k in range(n):
        rel = rels[k % len(rels)]
        logic, _ = RELATIONS[rel]
        spec = builtin_logic(logic)
        cfg = RandomTheoryConfig(connectives=_connectives(logic))
        gamma, delta = random_instance(rng, spec, cfg)
        out.append((rel, gamma, delta))
    return out


def me_run(instances):
    """(disagreements, unchecked proofs, bad countermodels, report digest)."""
    disagree, unchecked, bad_cm = [], [], []
    h = hashlib.sha256()
    for rel, gamma, delta in instances:
        logic, mins = RELATIONS[rel]
        spec = builtin_logic(logic)
        v = decide_entailment(gamma, delta, rel)
        truth = minimal_entailment(gamma, delta, mins, spec)
        label = (rel, [render(x) for x in gamma], [render(x) for x in delta])
        if v.holds != truth:
            disagree.append(label)
        if v.holds:
            if v.proof is None or not check_me_proof(v.proof):
                unchecked.append(label)
            h.update(me_digest(v.proof).encode())
        else:
            cm = v.countermodel
            dom = frozenset(a for phi in list(gamma) + list(delta) for a in _atoms(phi))
            report = minimal_models(gamma, mins, dom, dom, spec)
            if cm is None or cm not in report.minimal_models or any(
                    spec.eval(phi, cm.env()) in spec.designated_indices for phi in delta):
                bad_cm.append(label)
            h.update(json.dumps(sorted(cm.as_dict().items()) if cm else None, default=str).encode())
        h.update(str(v.holds).encode())
    return disagree, unchecked, bad_cm, h.hexdigest()


def _atoms(phi):
    from mvme.formula import free_atoms
    return free_atoms([phi])


_ME: dict = {}


def _me():
    if not _ME:
        t = time.perf_counter()
        inst = me_instances()
        _ME["result"] = me_run(inst) + (len(inst), time.perf_counter() - t)
    return _ME["result"]


def test_criterion_5_me_adequacy():
    disagree, unchecked, bad_cm, _, n, sec = _me()
    ok = n >= 500 and not disagree and not unchecked and not bad_cm and sec < 300
    record(5, ok, f"{n} instances over {sorted(RELATIONS)}: {len(disagree)} disagreements, "
                  f"{len(unchecked)} unchecked proofs, {len(bad_cm)} bad countermodels, target 300s", sec)
    assert not disagree and not unchecked and not bad_cm and n >= 500


# --- criterion 6 ----------------------------------------------------------------

def test_criterion_6_rule_local_soundness():
    t = time.perf_counter()
    failures, rules = [], 0
    for logic in ("P", "LP", "FOUR"):
        spec = builtin_logic(logic)
        calcs = [generated_calculus(spec), builtin_pair(logic)]
        for calc in calcs:
            for rule in list(calc.sequent_rules) + list(calc.antisequent_rules):
                rules += 1
                failures += [(calc.name, rule.name, f) for f in rule_local_failures(rule, spec)]
    sec = time.perf_counter() - t
    ok = not failures and sec < 10
    record(6, ok, f"{rules} rules, {len(failures)} failures, limit 10s", sec)
    assert not failures
    assert sec < 10


# --- criterion 7 ----------------------------------------------------------------

def paraconsistency_cases():
    out = {}
    for logic in ("LP", "P", "FOUR"):
        spec = builtin_logic(logic)
        gamma, delta = _f(spec, "p", "~p"), _f(spec, "q")
        out[f"{logic} base"] = semantic_consequence(gamma, delta, spec)
        for rel, (name, _) in RELATIONS.items():
            if name == logic:
                out[rel] = decide_entailment(gamma, delta, rel).holds
    return out


def test_criterion_7_paraconsistency_and_duality():
    t = time.perf_counter()
    cases = paraconsistency_cases()
    explosive = [k for k, v in cases.items() if v]
    duality = {logic: len(_adequacy(logic)[2]) for logic in ("P", "FOUR")}
    ok = not explosive and not any(duality.values())
    record(7, ok, f"explosion in {explosive or 'none'} of {sorted(cases)}; "
                  f"duality violations {duality} over the criterion 4 corpus", time.perf_counter() - t)
    assert not explosive
    assert not any(duality.values())


# --- criterion 8 ----------------------------------------------------------------

def _digest_examples():
    h = hashlib.sha256()
    h.update(json.dumps(example1_verdicts(), sort_keys=True).encode())
    for v in (example2_proof(), example3_proof()):
        h.update(json.dumps(me_to_json(v.proof, v.relation, SPECIALIZED), ensure_ascii=False,
                            sort_keys=True).encode())
    return h.hexdigest()


def test_criterion_8_determinism():
    t = time.perf_counter()
    first_ex = _digest_examples()
    first_adequacy = {logic: _adequacy(logic)[3] for logic in ("P", "FOUR")}
    first_me = _me()[3]
    # second run from cold caches
    for logic in ("P", "FOUR"):
        _fresh_caches(builtin_pair(logic), generated_calculus(builtin_logic(logic)))
    same_ex = _digest_examples() == first_ex
    same_adequacy = all(adequacy_run(logic, DIGEST_STRIDE)[3] == first_adequacy[logic]
                        for logic in ("P", "FOUR"))
    same_me = me_run(me_instances())[3] == first_me
    ok = same_ex and same_adequacy and same_me
    n_proofs = sum(len(d) for d in first_adequacy.values())
    record(8, ok, f"criteria 1-3 identical={same_ex}, criterion 4 ({n_proofs} sampled proofs) "
                  f"identical={same_adequacy}, criterion 5 identical={same_me}", time.perf_counter() - t)
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
