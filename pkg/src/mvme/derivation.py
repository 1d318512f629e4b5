"""Backward proof search and checking for many-sided sequents and anti-sequents."""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass

from .errors import ResourceLimitError
from .formula import UNICODE, App, display, render, sorted_formulas
from .logic import LogicSpec
from .parser import parse_formula
from .rulegen import ANTISEQUENT, SEQUENT, CalculusSpec, axiom_check_antisequent, axiom_check_sequent
from .sequent import AntiSequent, ManySidedSequent

AXIOM = "axiom"
DEFAULT_BUDGET = 200_000
CACHE_LIMIT = 400_000


@dataclass(frozen=True)
class DerivationTree:
    conclusion: ManySidedSequent
    rule: str
    premises: tuple = ()

    @property
    def kind(self):
        return ANTISEQUENT if self.conclusion.anti else SEQUENT

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premises), default=0)

    def leaves(self):
        if not self.premises:
            yield self
        for p in self.premises:
            yield from p.leaves()


@dataclass
class CheckResult:
    ok: bool
    path: tuple = ()  # child indices from the root to the offending node
    reason: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        where = "root" if not self.path else "root/" + "/".join(map(str, self.path))
        return f"{where}: {self.reason}"


# --- search -----------------------------------------------------------------

def select_principal(seq: ManySidedSequent):
    """Leftmost component holding a compound formula; smallest rendering within it."""
    for i, comp in enumerate(seq.components):
        compounds = [phi for phi in comp if isinstance(phi, App)]
        if compounds:
            return i, min(compounds, key=render)
    return None


@dataclass
class _Budget:
    limit: int
    used: int = 0

    def tick(self):
        self.used += 1
        if self.used > self.limit:
            raise ResourceLimitError(f"proof search exceeded {self.limit} steps")


def _premise_sequents(seq, i, phi, rule):
    base = list(seq.components)
    base[i] = base[i] - {phi}
    args = phi.args
    cls = type(seq)
    out = []
    for placements in rule.premises:
        comps = base[:]
        for j, k in placements:
            comps[k] = comps[k].union((args[j],))
        out.append(cls(tuple(comps)))
    return out


def prove_sequent(seq: ManySidedSequent, calc: CalculusSpec, *, budget: int = DEFAULT_BUDGET):
    """A derivation of ``seq``, or ``None`` when it is not valid.

    Sequent rules are invertible, so one principal choice per node suffices.
    Axioms are recognised before decomposition, which only shortens proofs.
    """
    if seq.anti:
        seq = ManySidedSequent(seq.components)
    return _prove(seq, calc, _Budget(budget), _cache(calc, SEQUENT))


def _cache(calc, kind):
    caches = calc.search_cache
    if sum(len(c) for c in caches.values()) > CACHE_LIMIT:
        caches.clear()
    return caches.setdefault(kind, {})


def _prove(seq, calc, budget, memo):
    if seq in memo:
        return memo[seq]
    budget.tick()
    spec = calc.logic
    if axiom_check_sequent(seq, spec):
        out = DerivationTree(seq, AXIOM)
    else:
        pick = select_principal(seq)
        out = None
        if pick is not None:
            i, phi = pick
            rule = calc.sequent_rule(phi.symbol, i)
            if rule is None:
                raise KeyError(f"calculus {calc.name} has no sequent rule for {phi.symbol!r} at {spec.values[i]}")
            children = []
            for prem in _premise_sequents(seq, i, phi, rule):
                sub = _prove(prem, calc, budget, memo)
                if sub is None:
                    break
                children.append(sub)
            else:
                out = DerivationTree(seq, rule.name, tuple(children))
    memo[seq] = out
    return out


def refute(anti: ManySidedSequent, calc: CalculusSpec, *, budget: int = DEFAULT_BUDGET):
    """A refutation of ``anti``, or ``None`` when the matching sequent is valid.

    Rule variants for the chosen principal are tried in calculus order with
    backtracking. Any anti-sequent that is also a sequent axiom fails at once.
    """
    if not anti.anti:
        anti = AntiSequent(anti.components)
    return _refute(anti, calc, _Budget(budget), _cache(calc, ANTISEQUENT))


def _refute(anti, calc, budget, memo):
    if anti in memo:
        return memo[anti]
    budget.tick()
    memo[anti] = out = _refute_step(anti, calc, budget, memo)
    return out


def _refute_step(anti, calc, budget, memo):
    spec = calc.logic
    if axiom_check_sequent(anti, spec):
        return None
    pick = select_principal(anti)
    if pick is None:
        return DerivationTree(anti, AXIOM) if axiom_check_antisequent(anti, spec) else None
    i, phi = pick
    for rule in calc.antisequent_rules_for(phi.symbol, i):
        (prem,) = _premise_sequents(anti, i, phi, rule)
        sub = _refute(prem, calc, budget, memo)
        if sub is not None:
            return DerivationTree(anti, rule.name, (sub,))
    return None


# --- checking ----------------------------------------------------------------

def _check_node(node, calc):
    spec = calc.logic
    concl = node.conclusion
    if len(concl.components) != spec.n:
        return f"conclusion has {len(concl.components)} components, logic {spec.name} has {spec.n}"
    for child in node.premises:
        if child.conclusion.anti != concl.anti:
            return "premise kind differs from conclusion kind"
    if node.rule == AXIOM:
        if node.premises:
            return "axiom node has premises"
        ok = axiom_check_antisequent(concl, spec) if concl.anti else axiom_check_sequent(concl, spec)
        return None if ok else "leaf is not an axiom"
    kind = ANTISEQUENT if concl.anti else SEQUENT
    rule = calc.rule_named(node.rule, kind)
    if rule is None:
        return f"unknown {kind} rule {node.rule!r}"
    got = [p.conclusion.components for p in node.premises]
    if rule.is_weakening:
        if len(got) != 1:
            return "weakening takes one premise"
        prem = got[0]
        i = rule.component
        same = all(prem[k] == concl.components[k] for k in range(spec.n) if k != i)
        removed = concl.components[i] - prem[i]
        if not (same and prem[i] <= concl.components[i] and len(removed) == 1):
            return "premise is not the conclusion with one formula dropped from the weakened component"
        return None
    i = rule.component
    for phi in sorted_formulas(concl.components[i]):
        if not (isinstance(phi, App) and phi.symbol == rule.symbol):
            continue
        # the principal may or may not persist in the context
        for context in (concl.remove(i, phi), concl):
            want = [context.place(p, phi.args).components for p in rule.premises]
            if want == got:
                return None
    return f"premises are not an instance of {rule.name}"


def check_derivation(tree: DerivationTree, calc: CalculusSpec) -> CheckResult:
    """Every node is a correct rule instance and every leaf an axiom.

    Search shares identical subderivations, so each distinct node object is
    checked once.
    """
    return _check(tree, calc, (), set())


def _check(tree, calc, path, seen):
    if id(tree) in seen:
        return CheckResult(True)
    reason = _check_node(tree, calc)
    if reason is not None:
        return CheckResult(False, path, reason)
    for k, child in enumerate(tree.premises):
        res = _check(child, calc, path + (k,), seen)
        if not res:
            return res
    seen.add(id(tree))
    return CheckResult(True)


# --- serialization and rendering -------------------------------------------

def tree_to_json(tree: DerivationTree, spec: LogicSpec) -> dict:
    return {
        "kind": tree.kind,
        "rule": tree.rule,
        "conclusion": tree.conclusion.to_json(spec),
        "premises": [tree_to_json(p, spec) for p in tree.premises],
    }


def tree_digest(tree: DerivationTree, spec: LogicSpec, _memo=None) -> str:
    """SHA-256 of the canonical JSON of ``tree``, computed over shared subtrees once."""
    memo = {} if _memo is None else _memo
    key = id(tree)
    if key not in memo:
        node = {"kind": tree.kind, "rule": tree.rule, "conclusion": tree.conclusion.to_json(spec),
                "premises": [tree_digest(p, spec, memo) for p in tree.premises]}
        memo[key] = hashlib.sha256(json.dumps(node, ensure_ascii=False, sort_keys=True).encode()).hexdigest()
    return memo[key]


def sequent_from_json(data: dict, spec: LogicSpec, anti: bool):
    unknown = set(data) - set(spec.values)
    if unknown:
        raise ValueError(f"unknown component labels {sorted(unknown)} for logic {spec.name}")
    comps = tuple(frozenset(parse_formula(s, spec) for s in data.get(v, [])) for v in spec.values)
    return AntiSequent(comps) if anti else ManySidedSequent(comps)


def tree_from_json(data: dict, spec: LogicSpec) -> DerivationTree:
    kind = data.get("kind")
    if kind not in (SEQUENT, ANTISEQUENT):
        raise ValueError(f"derivation node kind must be sequent or antisequent, got {kind!r}")
    concl = sequent_from_json(data["conclusion"], spec, kind == ANTISEQUENT)
    return DerivationTree(concl, data["rule"], tuple(tree_from_json(p, spec) for p in data.get("premises", [])))


def render_text(tree: DerivationTree, indent: int = 0) -> str:
    lines = []
    _text_lines(tree, indent, lines)
    return "\n".join(lines)


def _text_lines(tree, indent, lines):
    lines.append(f"{'  ' * indent}{tree.conclusion.render()}    [{tree.rule}]")
    for p in tree.premises:
        _text_lines(p, indent + 1, lines)


_LATEX = [("¬I", r"\neg I "), ("¬", r"\neg "), ("∧", r"\wedge "), ("∨", r"\vee "), ("⊃", r"\supset "),
          ("→", r"\rightarrow "), ("⊗", r"\otimes "), ("⊕", r"\oplus "), ("∅", r"\emptyset "),
          ("∤", r"\nmid "), ("⊢", r"\vdash "), ("⊣", r"\dashv ")]


def latex(text: str) -> str:
    for u, tex in _LATEX:
        text = text.replace(u, tex)
    return text


_RULE_NAME = re.compile(r"^\((.+):(\w+)(?:\^(\d+))?\)([⊢⊣])$")


def display_rule_name(name: str) -> str:
    """``(&:b^2)⊣`` becomes ``(∧:b^{2})⊣``; ME rule names pass through."""
    m = _RULE_NAME.match(name)
    if m is None:
        return name
    sym, value, k, turnstile = m.groups()
    sup = f"^{{{k}}}" if k else ""
    return f"({UNICODE.get(sym, sym)}:{value}{sup}){turnstile}"


def _bussproofs_sequent(seq):
    bar = r" \nmid " if seq.anti else r" \mid "
    parts = [", ".join(latex(display(phi)) for phi in sorted_formulas(c)) or r"\emptyset" for c in seq.components]
    return "$" + bar.join(parts) + "$"


_INFER = {1: "UnaryInfC", 2: "BinaryInfC", 3: "TrinaryInfC", 4: "QuaternaryInfC", 5: "QuinaryInfC"}


def render_bussproofs(tree: DerivationTree) -> str:
    """bussproofs markup, one inference line per node, premises first."""
    lines = [r"\begin{prooftree}"]
    _buss_lines(tree, lines)
    lines.append(r"\end{prooftree}")
    return "\n".join(lines)


def _buss_lines(tree, lines):
    for p in tree.premises:
        _buss_lines(p, lines)
    label = "$" + latex(display_rule_name(tree.rule)) + "$" if tree.rule != AXIOM else "ax"
    concl = _bussproofs_sequent(tree.conclusion)
    if not tree.premises:
        lines.append(rf"\AxiomC{{}} \RightLabel{{\scriptsize {label}}} \UnaryInfC{{{concl}}}")
        return
    k = len(tree.premises)
    if k not in _INFER:
        raise ValueError(f"bussproofs supports at most five premises, node {tree.rule} has {k}")
    lines.append(rf"\RightLabel{{\scriptsize {label}}} \{_INFER[k]}{{{concl}}}")
