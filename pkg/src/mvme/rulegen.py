"""Sequent and anti-sequent rule synthesis from truth tables.

A rule for connective ``o`` at component ``i`` decomposes ``o(a_1..a_k)`` in
component ``i``. Its premises are lists of *placements* ``(j, w)``: put
argument ``j`` into component ``w``.

Sequent rules come from a conjunctive normal form of "the compound takes value
t_i": one premise per clause, each clause a set of placements read as the
disjunction "some placed argument takes its component's value". Anti-sequent
rules come from the complement: one unary rule per minimized conjunct of
"the compound does not take value t_i", a placement now reading "the argument
does *not* take its component's value".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .formula import App, Atom, Const
from .logic import ConnectiveSpec, LogicSpec

SEQUENT = "sequent"
ANTISEQUENT = "antisequent"


@dataclass(frozen=True)
class RuleSchema:
    name: str
    kind: str
    symbol: str | None  # None marks a weakening rule
    component: int
    premises: tuple  # tuple of placement tuples ((arg, component), ...)

    @property
    def is_weakening(self):
        return self.symbol is None


@dataclass(frozen=True, eq=False)
class CalculusSpec:
    logic: LogicSpec
    sequent_rules: tuple = ()
    antisequent_rules: tuple = ()
    weakening: bool = True
    name: str = "generated"
    _seq_index: dict = field(default=None, init=False, repr=False)
    _anti_index: dict = field(default=None, init=False, repr=False)
    # search results keyed by (kind, sequent); results depend on nothing else
    search_cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        seq, anti = {}, {}
        for r in self.sequent_rules:
            if r.symbol is not None:
                seq.setdefault((r.symbol, r.component), r)
        for r in self.antisequent_rules:
            anti.setdefault((r.symbol, r.component), []).append(r)
        object.__setattr__(self, "_seq_index", seq)
        object.__setattr__(self, "_anti_index", anti)

    def sequent_rule(self, symbol: str, component: int):
        return self._seq_index.get((symbol, component))

    def antisequent_rules_for(self, symbol: str, component: int) -> list:
        return self._anti_index.get((symbol, component), [])

    def covers(self, symbol: str) -> bool:
        return (symbol, 0) in self._seq_index

    def rule_named(self, name: str, kind: str):
        rules = self.sequent_rules if kind == SEQUENT else self.antisequent_rules
        for r in rules:
            if r.name == name:
                return r
        return None

    def axiom_sequent(self, seq) -> bool:
        return axiom_check_sequent(seq, self.logic)

    def axiom_antisequent(self, anti) -> bool:
        return axiom_check_antisequent(anti, self.logic)

    def with_rules_for(self, spec: LogicSpec) -> "CalculusSpec":
        """Add generated rules for every connective of ``spec`` this calculus lacks."""
        missing = [s for s, c in spec.tables.items() if c.arity > 0 and not self.covers(s)]
        if not missing:
            if spec is self.logic:
                return self
            return CalculusSpec(spec, self.sequent_rules, self.antisequent_rules, self.weakening, self.name)
        seq = tuple(r for r in gen_sequent_rules(spec, symbols=missing) if not r.is_weakening)
        anti = tuple(gen_antisequent_rules(spec, symbols=missing))
        return CalculusSpec(spec, self.sequent_rules + seq, self.antisequent_rules + anti,
                            self.weakening, self.name)


# --- normal forms -----------------------------------------------------------

def _positive(conn: ConnectiveSpec, i: int) -> set:
    return {args for args, r in conn.table.items() if r == i}


def _tautological(clause, n) -> bool:
    per_arg = {}
    for j, w in clause:
        per_arg.setdefault(j, set()).add(w)
    return any(len(ws) == n for ws in per_arg.values())


def _prune_subsumed(clauses) -> list:
    clauses = sorted(set(clauses), key=lambda c: (len(c), sorted(c)))
    kept = []
    for c in clauses:
        if not any(k <= c for k in kept):
            kept.append(c)
    return kept


def sequent_clauses(conn: ConnectiveSpec, i: int, n: int) -> list:
    """CNF of ``OR_{u in POS} AND_j (arg j = u_j)`` by distribution.

    Tautologies and subsumed clauses are dropped after every distribution step.
    Empty POS yields the single empty clause.
    """
    pos = sorted(_positive(conn, i))
    clauses = [frozenset()]
    if not pos:
        return [()]
    first = True
    for u in pos:
        lits = [(j, u[j]) for j in range(conn.arity)]
        if first:
            clauses = [frozenset([lit]) for lit in lits]
            first = False
        else:
            clauses = [c | {lit} for c in clauses for lit in lits]
        clauses = _prune_subsumed(c for c in clauses if not _tautological(c, n))
    return sorted(tuple(sorted(c)) for c in clauses)


def _covered(placements, arity, n):
    return {u for u in itertools.product(range(n), repeat=arity)
            if all(u[j] != w for j, w in placements)}


def antisequent_conjuncts(conn: ConnectiveSpec, i: int, n: int) -> list:
    """Minimized conjuncts of "the compound does not take value t_i".

    Starts from the full description of each non-POS tuple and greedily drops
    placements in (argument, component) order while the described tuple set
    stays disjoint from POS.
    """
    pos = _positive(conn, i)
    out = set()
    for u in itertools.product(range(n), repeat=conn.arity):
        if u in pos:
            continue
        placements = sorted((j, w) for j in range(conn.arity) for w in range(n) if w != u[j])
        for p in list(placements):
            trial = [q for q in placements if q != p]
            if not (_covered(trial, conn.arity, n) & pos):
                placements = trial
        out.add(frozenset(placements))
    return sorted(tuple(sorted(c)) for c in _prune_subsumed(out))


def _rule_name(symbol, value, kind, k=None):
    turnstile = "⊢" if kind == SEQUENT else "⊣"
    sup = f"^{k}" if k is not None else ""
    return f"({symbol}:{value}{sup}){turnstile}"


def _rule_symbols(spec, symbols):
    if symbols is None:
        symbols = list(spec.tables)
    return [s for s in symbols if spec.tables[s].arity > 0]


def gen_sequent_rules(spec: LogicSpec, *, symbols=None, weakening: bool = True) -> list:
    rules = []
    for sym in _rule_symbols(spec, symbols):
        conn = spec.tables[sym]
        for i, v in enumerate(spec.values):
            prem = tuple(sequent_clauses(conn, i, spec.n))
            rules.append(RuleSchema(_rule_name(sym, v, SEQUENT), SEQUENT, sym, i, prem))
    if weakening:
        for i, v in enumerate(spec.values):
            rules.append(RuleSchema(_rule_name("w", v, SEQUENT), SEQUENT, None, i, ((),)))
    return rules


def gen_antisequent_rules(spec: LogicSpec, *, symbols=None) -> list:
    rules = []
    for sym in _rule_symbols(spec, symbols):
        conn = spec.tables[sym]
        for i, v in enumerate(spec.values):
            conjuncts = antisequent_conjuncts(conn, i, spec.n)
            for k, c in enumerate(conjuncts, start=1):
                name = _rule_name(sym, v, ANTISEQUENT, k if len(conjuncts) > 1 else None)
                rules.append(RuleSchema(name, ANTISEQUENT, sym, i, (c,)))
    return rules


def generated_calculus(spec: LogicSpec) -> CalculusSpec:
    return CalculusSpec(spec, tuple(gen_sequent_rules(spec)), tuple(gen_antisequent_rules(spec)),
                        name="generated")


# --- minimization operators ------------------------------------------------

def gen_min_operators(spec: LogicSpec, minimized) -> LogicSpec:
    """Extend ``spec`` with ``inc`` (t iff the argument is minimized, else f) and ``ninc``."""
    m = spec.indices(minimized)
    t, f = spec.index("t"), spec.index("f")
    inc = ConnectiveSpec("inc", 1, {(v,): (t if v in m else f) for v in range(spec.n)})
    ninc = ConnectiveSpec("ninc", 1, {(v,): (f if v in m else t) for v in range(spec.n)})
    return spec.with_connectives([inc, ninc])


# --- axioms ------------------------------------------------------------------

def _shared(comps) -> bool:
    smallest = min(comps, key=len)
    return any(all(phi in c for c in comps) for phi in smallest)


def axiom_check_sequent(seq, spec: LogicSpec) -> bool:
    """Some formula lies in every component, or a constant sits in its own value's component."""
    comps = seq.components
    if _shared(comps):
        return True
    return any(const in comps[i] for const, i in spec.constant_slots)


def axiom_check_antisequent(anti, spec: LogicSpec) -> bool:
    """Atomic, no atom in every component, no constant in its own value's component."""
    comps = anti.components
    if any(isinstance(phi, App) for c in comps for phi in c):
        return False
    if any(const in comps[i] for const, i in spec.constant_slots):
        return False
    smallest = min(comps, key=len)
    return not any(isinstance(phi, Atom) and all(phi in c for c in comps) for phi in smallest)


# --- hand transcriptions of the published calculi -----------------------------

def _placements(spec_values, spec_str):
    """Parse a compact placement list such as ``"0:b 1:t"``."""
    out = []
    for item in spec_str.split():
        j, v = item.split(":")
        out.append((int(j), spec_values.index(v)))
    return tuple(sorted(out))


def _rules(values, kind, table):
    rules = []
    for name, symbol, value, premises in table:
        prem = tuple(_placements(values, p) for p in premises)
        rules.append(RuleSchema(f"({name}){'⊢' if kind == SEQUENT else '⊣'}", kind, symbol,
                                values.index(value), prem))
    return rules


_P = ("f", "b", "t")
_F = ("f", "n", "b", "t")

_S_P = [
    ("~:f", "~", "f", ["0:t"]),
    ("~:b", "~", "b", ["0:b"]),
    ("~:t", "~", "t", ["0:f"]),
    ("&:f", "&", "f", ["0:f 1:f"]),
    ("&:b", "&", "b", ["0:b 1:b", "0:b 0:t", "1:b 1:t"]),
    ("&:t", "&", "t", ["0:t", "1:t"]),
    ("->:f", "->", "f", ["0:b 0:t", "1:f"]),
    ("->:b", "->", "b", ["0:b 0:t", "1:b"]),
    ("->:t", "->", "t", ["0:f 1:t"]),
]

_R_P = [
    ("~:f", "~", "f", ["0:t"]),
    ("~:b", "~", "b", ["0:b"]),
    ("~:t", "~", "t", ["0:f"]),
    ("&:f", "&", "f", ["0:f 1:f"]),
    ("&:b^1", "&", "b", ["0:b 1:b"]),
    ("&:b^2", "&", "b", ["0:b 0:t"]),
    ("&:b^3", "&", "b", ["1:b 1:t"]),
    ("&:t^1", "&", "t", ["0:t"]),
    ("&:t^2", "&", "t", ["1:t"]),
    ("->:f^1", "->", "f", ["0:b 0:t"]),
    ("->:f^2", "->", "f", ["1:f"]),
    ("->:b^1", "->", "b", ["0:b 0:t"]),
    ("->:b^2", "->", "b", ["1:b"]),
    ("->:t", "->", "t", ["0:f 1:t"]),
]

_S_F = [
    ("~:f", "~", "f", ["0:t"]),
    ("~:n", "~", "n", ["0:n"]),
    ("~:b", "~", "b", ["0:b"]),
    ("~:t", "~", "t", ["0:f"]),
    ("&:f", "&", "f", ["0:f 1:f 0:n 1:n", "0:f 1:f 0:b 1:b"]),
    ("&:n", "&", "n", ["0:n 1:n", "0:n 0:t", "1:n 1:t"]),
    ("&:b", "&", "b", ["0:b 1:b", "0:b 0:t", "1:b 1:t"]),
    ("&:t", "&", "t", ["0:t", "1:t"]),
    ("->:f", "->", "f", ["0:b 0:t", "1:f"]),
    ("->:n", "->", "n", ["0:b 0:t", "1:n"]),
    ("->:b", "->", "b", ["0:b 0:t", "1:b"]),
    ("->:t", "->", "t", ["0:f 0:n 1:t"]),
]

_R_F = [
    ("~:f", "~", "f", ["0:t"]),
    ("~:n", "~", "n", ["0:n"]),
    ("~:b", "~", "b", ["0:b"]),
    ("~:t", "~", "t", ["0:f"]),
    ("&:f^1", "&", "f", ["0:f 1:f 0:n 1:n"]),
    ("&:f^2", "&", "f", ["0:f 1:f 0:b 1:b"]),
    ("&:n^1", "&", "n", ["0:n 1:n"]),
    ("&:n^2", "&", "n", ["0:n 0:t"]),
    ("&:n^3", "&", "n", ["1:n 1:t"]),
    ("&:b^1", "&", "b", ["0:b 1:b"]),
    ("&:b^2", "&", "b", ["0:b 0:t"]),
    ("&:b^3", "&", "b", ["1:b 1:t"]),
    ("&:t^1", "&", "t", ["0:t"]),
    ("&:t^2", "&", "t", ["1:t"]),
    ("->:t", "->", "t", ["0:f 0:n 1:t"]),
    ("->:f^1", "->", "f", ["0:b 0:t"]),
    ("->:f^2", "->", "f", ["1:f"]),
    ("->:n^1", "->", "n", ["0:b 0:t"]),
    ("->:n^2", "->", "n", ["1:n"]),
    ("->:b^1", "->", "b", ["0:b 0:t"]),
    ("->:b^2", "->", "b", ["1:b"]),
]


def _weakening(values):
    return [RuleSchema(f"(w:{v})⊢", SEQUENT, None, i, ((),)) for i, v in enumerate(values)]


BUILTIN_CALCULI = {"S_P": ("P", SEQUENT), "R_P": ("P", ANTISEQUENT),
                   "S_F": ("FOUR", SEQUENT), "R_F": ("FOUR", ANTISEQUENT)}


def builtin_calculus(name: str) -> CalculusSpec:
    """The hand-transcribed calculi S_P, R_P, S_F and R_F (one side populated)."""
    from .logic import builtin_logic

    if name not in BUILTIN_CALCULI:
        raise KeyError(f"unknown built-in calculus {name!r}; expected one of {sorted(BUILTIN_CALCULI)}")
    logic, kind = BUILTIN_CALCULI[name]
    values = _P if logic == "P" else _F
    table = {"S_P": _S_P, "R_P": _R_P, "S_F": _S_F, "R_F": _R_F}[name]
    rules = tuple(_rules(values, kind, table))
    spec = builtin_logic(logic)
    if kind == SEQUENT:
        return CalculusSpec(spec, rules + tuple(_weakening(values)), (), name=name)
    return CalculusSpec(spec, (), rules, weakening=False, name=name)


def builtin_pair(logic: str) -> CalculusSpec:
    """S and R calculi of a built-in logic combined (LP shares P's calculi)."""
    from .logic import builtin_logic

    spec = builtin_logic(logic)
    key = "F" if spec.name == "FOUR" else "P"
    s, r = builtin_calculus(f"S_{key}"), builtin_calculus(f"R_{key}")

    def keep(rules):  # LP has no ->
        return tuple(x for x in rules if x.symbol is None or spec.has_symbol(x.symbol))

    return CalculusSpec(spec, keep(s.sequent_rules), keep(r.antisequent_rules), name=f"S_{key}+R_{key}")


def calculus_for(spec: LogicSpec, source: str = "builtin") -> CalculusSpec:
    """Calculus for ``spec``: published rules where they exist, generated ones for the rest."""
    if source == "generated":
        return generated_calculus(spec)
    if source != "builtin":
        raise ValueError(f"unknown calculus source {source!r}")
    if spec.name not in ("P", "LP", "FOUR"):
        from .errors import DomainError
        raise DomainError(f"no built-in calculus for logic {spec.name!r}; use the generated one")
    return builtin_pair(spec.name).with_rules_for(spec)


# --- local soundness --------------------------------------------------------

def _premise_hit(placements, values):
    return any(values[j] == w for j, w in placements)


def rule_local_failures(rule: RuleSchema, spec: LogicSpec) -> list:
    """Argument assignments under which ``rule`` fails pointwise soundness (empty contexts).

    Sequent rule: all premises true must force the principal to take the rule's value.
    Anti-sequent rule: a refuted premise must keep the principal off the rule's value.
    """
    if rule.is_weakening:
        return []
    conn = spec.connective(rule.symbol)
    bad = []
    for u in itertools.product(range(spec.n), repeat=conn.arity):
        principal = conn.table[u]
        if rule.kind == SEQUENT:
            if all(_premise_hit(p, u) for p in rule.premises) and principal != rule.component:
                bad.append(u)
        else:
            if not _premise_hit(rule.premises[0], u) and principal == rule.component:
                bad.append(u)
    return bad


def family_local_incompleteness(calc: CalculusSpec, symbol: str, component: int, kind: str) -> list:
    """Assignments the rule family for (symbol, component) cannot account for.

    Sequent: principal takes the value yet some premise is false (rule not invertible).
    Anti-sequent: principal avoids the value yet no rule variant has its premise refuted.
    """
    spec = calc.logic
    conn = spec.connective(symbol)
    bad = []
    for u in itertools.product(range(spec.n), repeat=conn.arity):
        principal = conn.table[u]
        if kind == SEQUENT:
            rule = calc.sequent_rule(symbol, component)
            if principal == component and not all(_premise_hit(p, u) for p in rule.premises):
                bad.append(u)
        else:
            rules = calc.antisequent_rules_for(symbol, component)
            if principal != component and not any(not _premise_hit(r.premises[0], u) for r in rules):
                bad.append(u)
    return bad


def rules_to_json(calc: CalculusSpec, kind: str) -> dict:
    values = calc.logic.values
    rules = calc.sequent_rules if kind == SEQUENT else calc.antisequent_rules
    return {
        "logic": calc.logic.name,
        "kind": kind,
        "rules": [
            {"name": r.name,
             "principal": {"symbol": r.symbol, "component": values[r.component]},
             "premises": [[{"arg": j, "component": values[w]} for j, w in p] for p in r.premises]}
            for r in rules
        ],
    }
