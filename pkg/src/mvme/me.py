"""Minimal-entailment sequents: proof search with (m1), (m2), (m3) and their variants.

An ME-sequent ``Sigma ; Gamma, ~I Pi => Delta ; Theta`` says Delta holds in every
(I; Theta + Sigma)-minimal model of Gamma in which the Sigma atoms take minimized
values and the Pi atoms do not. Pi collects the ``~I q`` assumptions that (m3)
adds on its right branch.

Two modes share one search skeleton:

* ``specialized``: premises are built directly as many-sided (anti-)sequents over
  the base logic and checked with the published calculi (P, LP, FOUR only).
* ``general``: premises are the consequence (anti-)sequents ``Gamma, ~I Theta, ~I Pi -| I q``
  and ``I Sigma, Gamma, ~I Pi |- Delta`` over the logic extended with ``inc`` and
  ``ninc``, decided with generated rules.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional

from . import oracle
from .derivation import (
    DEFAULT_BUDGET,
    DerivationTree,
    CheckResult,
    check_derivation,
    prove_sequent,
    refute,
    render_text,
    tree_digest,
    tree_from_json,
    tree_to_json,
)
from .errors import DomainError
from .formula import App, Atom, display, free_atoms, render, sorted_formulas, symbols
from .logic import Interpretation, LogicSpec, builtin_logic
from .parser import parse_formula
from .rulegen import CalculusSpec, calculus_for, gen_min_operators, generated_calculus
from .sequent import AntiSequent, ManySidedSequent

RELATIONS = {
    "LPm": ("LP", frozenset({"b"})),
    "Pm": ("P", frozenset({"b"})),
    "F1": ("FOUR", frozenset({"b"})),
    "F2": ("FOUR", frozenset({"b", "n"})),
}

# variant rule names per supported (logic, minimized set)
_VARIANTS = {
    ("P", frozenset({"b"})): ("m1′", "m2′"),
    ("LP", frozenset({"b"})): ("m1′", "m2′"),
    ("FOUR", frozenset({"b"})): ("m1†", "m2†"),
    ("FOUR", frozenset({"b", "n"})): ("m1‡", "m2‡"),
}

GENERAL, SPECIALIZED = "general", "specialized"


@dataclass(frozen=True)
class MESequent:
    sigma: frozenset
    gamma: frozenset
    pi: frozenset
    delta: frozenset
    theta: frozenset
    minimized: frozenset
    spec: LogicSpec = field(compare=False, hash=False, repr=False)

    @classmethod
    def root(cls, gamma, delta, minimized, spec) -> "MESequent":
        gamma, delta = frozenset(gamma), frozenset(delta)
        return cls(frozenset(), gamma, frozenset(), delta,
                   free_atoms(list(gamma) + list(delta)), frozenset(minimized), spec)

    def render(self) -> str:
        def atoms(s):
            return ", ".join(sorted(s))
        lhs = [display(phi) for phi in sorted_formulas(self.gamma)] + [f"¬I {p}" for p in sorted(self.pi)]
        rhs = [display(phi) for phi in sorted_formulas(self.delta)]
        return (f"{atoms(self.sigma) or '∅'} ; {', '.join(lhs) or '∅'} ⇒ "
                f"{', '.join(rhs) or '∅'} ; {atoms(self.theta) or '∅'}")


@dataclass(frozen=True)
class MEProof:
    conclusion: MESequent
    rule: str
    premises: tuple  # MEProof children for m3, a single DerivationTree for m1/m2
    atom: Optional[str] = None  # q of the rule instance


@dataclass
class MEVerdict:
    holds: bool
    proof: Optional[MEProof] = None
    countermodel: Optional[Interpretation] = None
    relation: str = ""
    mode: str = SPECIALIZED


@dataclass(frozen=True, eq=False)
class MEEngine:
    """Everything a search or a check needs for one (logic, minimized set, mode)."""
    spec: LogicSpec
    minimized: frozenset
    mode: str
    calculus: CalculusSpec
    m1: str
    m2: str

    @property
    def inner(self) -> LogicSpec:
        return self.calculus.logic


_ENGINES: dict = {}


def engine_for(spec: LogicSpec, minimized, mode: str = SPECIALIZED) -> MEEngine:
    minimized = frozenset(minimized)
    spec.indices(minimized)
    key = (id(spec), minimized, mode)
    cached = _ENGINES.get(key)
    if cached is not None and cached.spec is spec:
        return cached
    if mode == SPECIALIZED:
        names = _VARIANTS.get((spec.name, minimized))
        if names is None or tuple(spec.values) != tuple(builtin_logic(spec.name).values):
            raise DomainError(
                f"specialized mode supports P/LP with {{b}} and FOUR with {{b}} or {{b,n}}, "
                f"not {spec.name} with {sorted(minimized)}; use general mode")
        eng = MEEngine(spec, minimized, mode, calculus_for(spec), *names)
    elif mode == GENERAL:
        eng = MEEngine(spec, minimized, mode, generated_calculus(gen_min_operators(spec, minimized)), "m1", "m2")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    _ENGINES[key] = eng
    return eng


# --- premise construction ---------------------------------------------------

def _atoms(names):
    return frozenset(Atom(n) for n in names)


def m1_premise(s: MESequent, q: str, eng: MEEngine) -> AntiSequent:
    spec = eng.spec
    des = spec.designated_indices
    if eng.mode == GENERAL:
        # Gamma, ~I Theta, ~I Pi -| I q
        lhs = s.gamma | frozenset(App("ninc", (a,)) for a in _atoms(s.theta | s.pi))
        inc_q = frozenset({App("inc", (Atom(q),))})
        return AntiSequent(tuple(inc_q if i in des else lhs for i in range(spec.n)))
    mins = spec.indices(eng.minimized)
    atoms = _atoms(s.theta | s.pi | {q})
    comps = []
    for i in range(spec.n):
        c = frozenset() if i in des else s.gamma
        if i in mins:
            c = c | atoms
        comps.append(c)
    return AntiSequent(tuple(comps))


def m2_premise(s: MESequent, eng: MEEngine) -> ManySidedSequent:
    spec = eng.spec
    des = spec.designated_indices
    if eng.mode == GENERAL:
        lhs = (s.gamma | frozenset(App("inc", (a,)) for a in _atoms(s.sigma))
               | frozenset(App("ninc", (a,)) for a in _atoms(s.pi)))
        return ManySidedSequent(tuple(s.delta if i in des else lhs for i in range(spec.n)))
    mins = spec.indices(eng.minimized)
    sigma, pi = _atoms(s.sigma), _atoms(s.pi)
    comps = []
    for i in range(spec.n):
        c = s.delta if i in des else s.gamma
        c = c | (pi if i in mins else sigma)
        comps.append(c)
    return ManySidedSequent(tuple(comps))


def split(s: MESequent, q: str):
    """The two (m3) premises for atom ``q`` of Theta: q minimized, q not minimized."""
    rest = s.theta - {q}
    left = MESequent(s.sigma | {q}, s.gamma, s.pi, s.delta, rest, s.minimized, s.spec)
    right = MESequent(s.sigma, s.gamma, s.pi | {q}, s.delta, rest, s.minimized, s.spec)
    return left, right


# --- search -------------------------------------------------------------------

def prove_me(s: MESequent, mode: str = SPECIALIZED, *, budget: int = DEFAULT_BUDGET,
             cap: int = oracle.DEFAULT_CAP) -> MEVerdict:
    """Decide an ME-sequent; positive answers carry a proof, negative ones a countermodel.

    At every node (m1) is tried for each Sigma atom, then (m2); otherwise the
    smallest Theta atom is split with (m3), the minimized branch first.
    """
    eng = engine_for(s.spec, s.minimized, mode)
    proof, counter = _search(s, eng, budget, cap)
    return MEVerdict(proof is not None, proof, counter, mode=mode)


def _search(s, eng, budget, cap):
    for q in sorted(s.sigma):
        tree = refute(m1_premise(s, q, eng), eng.calculus, budget=budget)
        if tree is not None:
            return MEProof(s, eng.m1, (tree,), q), None
    tree = prove_sequent(m2_premise(s, eng), eng.calculus, budget=budget)
    if tree is not None:
        return MEProof(s, eng.m2, (tree,)), None
    if not s.theta:
        counter = oracle.me_countermodel(s.sigma, s.gamma, s.delta, s.theta, s.minimized, s.spec,
                                         pi=s.pi, cap=cap)
        if counter is None:
            raise AssertionError(f"search failed on a true ME-sequent: {s.render()}")
        return None, counter
    q = min(s.theta)
    left, right = split(s, q)
    lp, counter = _search(left, eng, budget, cap)
    if lp is None:
        return None, counter
    rp, counter = _search(right, eng, budget, cap)
    if rp is None:
        return None, counter
    return MEProof(s, "m3", (lp, rp), q), None


def resolve_relation(relation):
    """``"Pm"``-style name or ``(spec, minimized)`` pair -> (spec, minimized, label)."""
    if isinstance(relation, str):
        if relation not in RELATIONS:
            raise DomainError(f"unknown relation {relation!r}; expected one of {sorted(RELATIONS)}")
        logic, mins = RELATIONS[relation]
        return builtin_logic(logic), mins, relation
    spec, mins = relation
    mins = frozenset(mins)
    for name, (logic, m) in RELATIONS.items():
        if spec.name == logic and m == mins:
            return spec, mins, name
    return spec, mins, f"{spec.name}{{{','.join(sorted(mins))}}}"


def decide_entailment(gamma, delta, relation, *, mode: str = SPECIALIZED,
                      budget: int = DEFAULT_BUDGET, cap: int = oracle.DEFAULT_CAP) -> MEVerdict:
    """Gamma minimally entails Delta, proved via ``0 ; Gamma => Delta ; Var(Gamma, Delta)``."""
    spec, mins, label = resolve_relation(relation)
    gamma, delta = frozenset(gamma), frozenset(delta)
    used = set().union(*(symbols(phi) for phi in gamma | delta)) if gamma | delta else set()
    if spec.name == "LP" and "->" in used:
        raise DomainError("LP has no material implication '->'; use '=>' (defined as ~a | b)")
    for sym in used:
        if not spec.has_symbol(sym):
            raise DomainError(f"symbol {sym!r} is not a connective of {spec.name}")
    root = MESequent.root(gamma, delta, mins, spec)
    if len(root.theta) > cap:
        raise oracle.ResourceLimitError(f"{len(root.theta)} atoms exceed the cap of {cap}")
    verdict = prove_me(root, mode, budget=budget, cap=cap)
    verdict.relation = label
    return verdict


# --- checking -----------------------------------------------------------------

def check_me_proof(proof: MEProof, mode: str = SPECIALIZED, _path=()) -> CheckResult:
    """Each ME node has the exact premise shape of its rule; embedded trees check."""
    s = proof.conclusion
    try:
        eng = engine_for(s.spec, s.minimized, mode)
    except DomainError as e:
        return CheckResult(False, _path, str(e))
    if proof.rule == "m3":
        q = proof.atom
        if q is None or q not in s.theta:
            return CheckResult(False, _path, f"m3 atom {q!r} is not in Theta")
        if len(proof.premises) != 2 or not all(isinstance(p, MEProof) for p in proof.premises):
            return CheckResult(False, _path, "m3 needs two ME premises")
        want = split(s, q)
        for k, (child, w) in enumerate(zip(proof.premises, want)):
            if child.conclusion != w:
                return CheckResult(False, _path + (k,), "m3 premise does not match the case split")
            res = check_me_proof(child, mode, _path + (k,))
            if not res:
                return res
        return CheckResult(True)
    if proof.rule not in (eng.m1, eng.m2):
        return CheckResult(False, _path, f"rule {proof.rule!r} is not an ME rule of this calculus")
    if len(proof.premises) != 1 or not isinstance(proof.premises[0], DerivationTree):
        return CheckResult(False, _path, f"{proof.rule} needs one embedded derivation")
    tree = proof.premises[0]
    if proof.rule == eng.m1:
        if proof.atom is None or proof.atom not in s.sigma:
            return CheckResult(False, _path, f"{proof.rule} atom {proof.atom!r} is not in Sigma")
        want = m1_premise(s, proof.atom, eng)
    else:
        want = m2_premise(s, eng)
    if tree.conclusion.anti != want.anti or tree.conclusion.components != want.components:
        return CheckResult(False, _path + (0,), f"premise does not have the {proof.rule} shape")
    res = check_derivation(tree, eng.calculus)
    if not res:
        return CheckResult(False, _path + (0,) + res.path, res.reason)
    return CheckResult(True)


# --- serialization ------------------------------------------------------------

def _formulas(fs):
    return [render(phi) for phi in sorted_formulas(fs)]


def me_to_json(proof: MEProof, relation: str, mode: str = SPECIALIZED) -> dict:
    s = proof.conclusion
    eng = engine_for(s.spec, s.minimized, mode)
    node = {
        "kind": "me",
        "rule": proof.rule,
        "relation": relation,
        "mode": mode,
        "logic": s.spec.name,
        "minimized": sorted(s.minimized),
        "sigma": sorted(s.sigma),
        "pi": sorted(s.pi),
        "theta": sorted(s.theta),
        "conclusion": {"gamma": _formulas(s.gamma), "delta": _formulas(s.delta)},
    }
    if proof.atom is not None:
        node["atom"] = proof.atom
    if proof.rule == "m3":
        node["premises"] = [me_to_json(p, relation, mode) for p in proof.premises]
    else:
        node["premises"] = [tree_to_json(p, eng.inner) for p in proof.premises]
    return node


def me_digest(proof: MEProof, mode: str = SPECIALIZED) -> str:
    """SHA-256 over the ME skeleton and the digests of the embedded derivations."""
    s = proof.conclusion
    eng = engine_for(s.spec, s.minimized, mode)
    memo: dict = {}
    h = hashlib.sha256()

    def walk(node):
        c = node.conclusion
        h.update(json.dumps([node.rule, node.atom, sorted(c.sigma), sorted(c.pi), sorted(c.theta),
                             _formulas(c.gamma), _formulas(c.delta)], ensure_ascii=False).encode())
        for p in node.premises:
            if isinstance(p, MEProof):
                walk(p)
            else:
                h.update(tree_digest(p, eng.inner, memo).encode())

    walk(proof)
    return h.hexdigest()


def me_from_json(data: dict, spec: LogicSpec | None = None) -> tuple:
    """Rebuild an ME proof; returns ``(proof, mode)``.

    ``spec`` is needed only for logics that are not built in.
    """
    if data.get("kind") != "me":
        raise ValueError("not an ME proof node")
    if spec is None:
        spec = builtin_logic(data["logic"])
    elif spec.name != data["logic"]:
        raise ValueError(f"proof is for logic {data['logic']}, got spec {spec.name}")
    mode = data.get("mode", SPECIALIZED)
    return _me_node(data, spec, mode), mode


def _me_node(data, spec, mode):
    mins = frozenset(data["minimized"])
    concl = data["conclusion"]
    s = MESequent(frozenset(data["sigma"]),
                  frozenset(parse_formula(x, spec) for x in concl["gamma"]),
                  frozenset(data["pi"]),
                  frozenset(parse_formula(x, spec) for x in concl["delta"]),
                  frozenset(data["theta"]), mins, spec)
    if data["rule"] == "m3":
        prem = tuple(_me_node(p, spec, mode) for p in data["premises"])
    else:
        inner = engine_for(spec, mins, mode).inner
        prem = tuple(tree_from_json(p, inner) for p in data["premises"])
    return MEProof(s, data["rule"], prem, data.get("atom"))


def render_me_text(proof: MEProof, indent: int = 0) -> str:
    pad = "  " * indent
    label = proof.rule + (f" on {proof.atom}" if proof.atom else "")
    lines = [f"{pad}{proof.conclusion.render()}    [{label}]"]
    for p in proof.premises:
        if isinstance(p, MEProof):
            lines.append(render_me_text(p, indent + 1))
        else:
            lines.append(render_text(p, indent + 1))
    return "\n".join(lines)


def render_me_bussproofs(proof: MEProof) -> str:
    from .derivation import _buss_lines, latex

    lines = [r"\begin{prooftree}"]
    _me_buss(proof, lines, _buss_lines, latex)
    lines.append(r"\end{prooftree}")
    return "\n".join(lines)


def _me_buss(proof, lines, buss_lines, latex):
    for p in proof.premises:
        if isinstance(p, MEProof):
            _me_buss(p, lines, buss_lines, latex)
        else:
            buss_lines(p, lines)
    concl = "$" + latex(proof.conclusion.render()).replace("⇒", r"\Rightarrow ") + "$"
    label = {"m1′": "m_1'", "m2′": "m_2'", "m1†": r"m_1^\dagger", "m2†": r"m_2^\dagger",
             "m1‡": r"m_1^\ddagger", "m2‡": r"m_2^\ddagger"}.get(proof.rule, proof.rule.replace("m", "m_"))
    infer = "BinaryInfC" if len(proof.premises) == 2 else "UnaryInfC"
    lines.append(rf"\RightLabel{{\scriptsize $({label})$}} \{infer}{{{concl}}}")
