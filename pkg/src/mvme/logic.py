"""Finite-valued logics: truth values, specs, interpretations and valuation."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Iterable, Mapping

from .errors import DomainError, LogicMismatchError, SpecError
from .formula import App, Atom, Const, Formula, free_atoms

__all__ = [
    "TruthValue", "ConnectiveSpec", "DerivedConnective", "LogicSpec", "Interpretation",
    "validate_logic_spec", "valuate", "is_model", "free_atoms", "derive_connective_table",
    "load_logic_spec", "logic_from_dict", "logic_to_dict", "builtin_logic", "BUILTIN_LOGICS",
]


class TruthValue:
    """A named truth value of one particular logic.

    Equality is by name; comparing values of two different logics raises
    :class:`LogicMismatchError` instead of quietly answering ``False``.
    """

    __slots__ = ("name", "index", "logic")

    def __init__(self, name: str, index: int, logic: str):
        self.name = name
        self.index = index
        self.logic = logic

    def __eq__(self, other):
        if not isinstance(other, TruthValue):
            return NotImplemented
        if other.logic != self.logic:
            raise LogicMismatchError(
                f"cannot compare value {self.name!r} of {self.logic} with {other.name!r} of {other.logic}")
        return self.name == other.name

    def __hash__(self):
        return hash((self.logic, self.name))

    def __repr__(self):
        return f"TruthValue({self.name!r})"

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class ConnectiveSpec:
    """Truth table of a connective; rows are keyed by value-index tuples."""

    symbol: str
    arity: int
    table: Mapping = field(compare=False, repr=False)

    def __call__(self, *args: int) -> int:
        return self.table[args]


@dataclass(frozen=True)
class DerivedConnective:
    symbol: str
    arity: int
    definition: Formula  # placeholders appear as atoms "#1", "#2", ...


@dataclass(frozen=True, eq=False)
class LogicSpec:
    name: str
    values: tuple
    designated: frozenset
    connectives: tuple = ()
    derived: tuple = ()
    default_minimized: frozenset = frozenset()

    @cached_property
    def truth_values(self) -> tuple:
        return tuple(TruthValue(v, i, self.name) for i, v in enumerate(self.values))

    @cached_property
    def _index(self) -> dict:
        return {v: i for i, v in enumerate(self.values)}

    def index(self, name) -> int:
        if isinstance(name, TruthValue):
            if name.logic != self.name:
                raise LogicMismatchError(f"value {name.name!r} belongs to {name.logic}, not {self.name}")
            name = name.name
        try:
            return self._index[name]
        except KeyError:
            raise SpecError(f"{self.name} has no truth value {name!r}") from None

    def value(self, name) -> TruthValue:
        return self.truth_values[self.index(name)]

    def indices(self, names: Iterable) -> frozenset:
        return frozenset(self.index(n) for n in names)

    @property
    def n(self) -> int:
        return len(self.values)

    @cached_property
    def designated_indices(self) -> frozenset:
        return frozenset(self._index[v] for v in self.designated if v in self._index)

    @cached_property
    def tables(self) -> dict:
        """Every connective, primitive and derived, as a materialized table."""
        out = {c.symbol: c for c in self.connectives}
        for d in self.derived:
            out[d.symbol] = _materialize(self, d, out)
        return out

    def connective(self, symbol: str) -> ConnectiveSpec:
        try:
            return self.tables[symbol]
        except KeyError:
            raise SpecError(f"unknown symbol {symbol!r} in logic {self.name}") from None

    def has_symbol(self, symbol: str) -> bool:
        return symbol in self.tables

    def constant_value(self, symbol: str) -> int:
        return self.connective(symbol).table[()]

    @cached_property
    def constant_slots(self) -> tuple:
        """``(Const, value index)`` for every logical constant."""
        return tuple((Const(s), c.table[()]) for s, c in self.tables.items() if c.arity == 0)

    @property
    def minimization_active(self) -> bool:
        return "inc" in self.tables and "ninc" in self.tables

    def eval(self, phi: Formula, env: Mapping[str, int]) -> int:
        """Value index of ``phi`` under an atom -> value-index assignment."""
        if isinstance(phi, Atom):
            try:
                return env[phi.name]
            except KeyError:
                raise DomainError(f"atom {phi.name!r} is outside the interpretation domain") from None
        if isinstance(phi, Const):
            return self.connective(phi.symbol).table[()]
        table = self.connective(phi.symbol)
        if len(phi.args) != table.arity:
            raise SpecError(f"{phi.symbol!r} expects {table.arity} arguments, got {len(phi.args)}")
        return table.table[tuple(self.eval(a, env) for a in phi.args)]

    def with_connectives(self, extra: Iterable[ConnectiveSpec]) -> "LogicSpec":
        extra = list(extra)
        names = {c.symbol for c in extra}
        kept = tuple(c for c in self.connectives if c.symbol not in names)
        derived = tuple(d for d in self.derived if d.symbol not in names)
        return LogicSpec(self.name, self.values, self.designated, kept + tuple(extra),
                         derived, self.default_minimized)


def _materialize(spec, derived, known) -> ConnectiveSpec:
    placeholders = [f"#{k + 1}" for k in range(derived.arity)]
    table = {}
    for args in itertools.product(range(spec.n), repeat=derived.arity):
        env = dict(zip(placeholders, args))
        table[args] = _eval_with(derived.definition, env, known, derived.symbol)
    return ConnectiveSpec(derived.symbol, derived.arity, table)


def _eval_with(phi, env, known, defining):
    if isinstance(phi, Atom):
        if phi.name not in env:
            raise SpecError(f"definition of {defining!r} uses atom {phi.name!r}; only placeholders are allowed")
        return env[phi.name]
    sym = phi.symbol
    if sym not in known:
        raise SpecError(f"definition of {defining!r} references unknown symbol {sym!r}")
    if isinstance(phi, Const):
        return known[sym].table[()]
    return known[sym].table[tuple(_eval_with(a, env, known, defining) for a in phi.args)]


def derive_connective_table(spec: LogicSpec, symbol: str) -> ConnectiveSpec:
    """Materialize the table of a derived connective by valuating its template."""
    for d in spec.derived:
        if d.symbol == symbol:
            known = {c.symbol: c for c in spec.connectives}
            for prior in spec.derived:
                if prior.symbol == symbol:
                    break
                known[prior.symbol] = _materialize(spec, prior, known)
            return _materialize(spec, d, known)
    raise SpecError(f"{symbol!r} is not a derived connective of {spec.name}")


def validate_logic_spec(spec: LogicSpec) -> list:
    """All invariant violations of ``spec``; an empty list means usable."""
    out = []
    values = list(spec.values)
    if not values:
        out.append("values must be nonempty")
    if len(set(values)) != len(values):
        out.append("value names must be unique")
    for v in values:
        if not isinstance(v, str) or not v or not (v.replace("_", "a").isalnum()):
            out.append(f"value name {v!r} is not an identifier")
    vset = set(values)
    des = set(spec.designated)
    if not des <= vset:
        out.append(f"designated values {sorted(des - vset)} are not declared")
    if not des:
        out.append("designated must be nonempty")
    if des >= vset:
        out.append("designated must be strict subset")
    if "t" not in vset or "t" not in des:
        out.append("designated must contain t")
    if "f" not in vset:
        out.append("values must contain f")
    elif "f" in des:
        out.append("designated must exclude f")
    if not set(spec.default_minimized) <= vset:
        out.append("default_minimized must be a subset of values")

    seen = set()
    for sym in [c.symbol for c in spec.connectives] + [d.symbol for d in spec.derived]:
        if sym in seen:
            out.append(f"connective symbol {sym} declared twice")
        seen.add(sym)

    n = len(values)
    for c in spec.connectives:
        if not isinstance(c.arity, int) or c.arity < 0:
            out.append(f"connective {c.symbol} has invalid arity {c.arity!r}")
            continue
        expected = set(itertools.product(range(n), repeat=c.arity))
        keys = set(c.table)
        if keys != expected or len(c.table) != n ** c.arity:
            out.append(f"connective {c.symbol} table not total")
        if any(not isinstance(r, int) or not 0 <= r < n for r in c.table.values()):
            out.append(f"connective {c.symbol} table has values outside the logic")

    if not out:
        known = {c.symbol: c for c in spec.connectives}
        for d in spec.derived:
            try:
                known[d.symbol] = _materialize(spec, d, known)
            except SpecError as exc:
                out.append(str(exc))
    return out


@dataclass(frozen=True)
class Interpretation:
    """Total assignment over a finite atom domain."""

    assignment: tuple  # sorted (atom, TruthValue) pairs

    @classmethod
    def of(cls, mapping: Mapping[str, TruthValue]) -> "Interpretation":
        return cls(tuple(sorted(mapping.items())))

    @classmethod
    def from_indices(cls, spec: LogicSpec, env: Mapping[str, int]) -> "Interpretation":
        tv = spec.truth_values
        return cls(tuple(sorted((a, tv[i]) for a, i in env.items())))

    @property
    def domain(self) -> frozenset:
        return frozenset(a for a, _ in self.assignment)

    def __getitem__(self, atom: str) -> TruthValue:
        for a, v in self.assignment:
            if a == atom:
                return v
        raise KeyError(atom)

    def as_dict(self) -> dict:
        return dict(self.assignment)

    def env(self) -> dict:
        return {a: v.index for a, v in self.assignment}

    def restrict(self, atoms: Iterable[str]) -> "Interpretation":
        keep = set(atoms)
        return Interpretation(tuple(p for p in self.assignment if p[0] in keep))

    def __str__(self):
        return " ".join(f"{a}={v.name}" for a, v in self.assignment)


def valuate(phi: Formula, interp: Interpretation, spec: LogicSpec) -> TruthValue:
    for _, v in interp.assignment[:1]:
        if v.logic != spec.name:
            raise LogicMismatchError(f"interpretation over {v.logic} used with {spec.name}")
    return spec.truth_values[spec.eval(phi, interp.env())]


def is_model(interp: Interpretation, theory: Iterable[Formula], spec: LogicSpec) -> bool:
    env = interp.env()
    des = spec.designated_indices
    return all(spec.eval(phi, env) in des for phi in theory)


# --- spec files -----------------------------------------------------------

_TOP_KEYS = {"name", "values", "designated", "default_minimized", "connectives", "derived"}


def logic_from_dict(data: dict, *, validate: bool = True) -> LogicSpec:
    from .parser import parse_template

    if not isinstance(data, dict):
        raise SpecError("logic spec must be a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise SpecError(f"unknown keys in logic spec: {sorted(unknown)}")
    for key in ("name", "values", "designated"):
        if key not in data:
            raise SpecError(f"logic spec is missing {key!r}")
    values = tuple(data["values"])
    index = {v: i for i, v in enumerate(values)}
    violations = []
    connectives = []
    for c in data.get("connectives", []):
        extra = set(c) - {"symbol", "arity", "table"}
        if extra:
            raise SpecError(f"unknown keys in connective: {sorted(extra)}")
        sym, arity = c["symbol"], c["arity"]
        table = {}
        for key, result in c["table"].items():
            names = key.split(",") if key != "" else []
            if any(x not in index for x in names) or result not in index:
                violations.append(f"connective {sym} table mentions an undeclared value in row {key!r}")
                continue
            if len(names) != arity:
                violations.append(f"connective {sym} row {key!r} does not match arity {arity}")
                continue
            table[tuple(index[x] for x in names)] = index[result]
        connectives.append(ConnectiveSpec(sym, arity, table))
    derived = []
    for d in data.get("derived", []):
        extra = set(d) - {"symbol", "arity", "definition"}
        if extra:
            raise SpecError(f"unknown keys in derived connective: {sorted(extra)}")
        derived.append(DerivedConnective(d["symbol"], d["arity"], parse_template(d["definition"])))
    spec = LogicSpec(
        name=data["name"], values=values, designated=frozenset(data["designated"]),
        connectives=tuple(connectives), derived=tuple(derived),
        default_minimized=frozenset(data.get("default_minimized", [])),
    )
    if validate:
        violations += validate_logic_spec(spec)
        if violations:
            raise SpecError(f"invalid logic spec {spec.name!r}: " + "; ".join(violations), violations)
    return spec


def logic_to_dict(spec: LogicSpec) -> dict:
    from .formula import render

    vs = spec.values
    return {
        "name": spec.name,
        "values": list(vs),
        "designated": [v for v in vs if v in spec.designated],
        "default_minimized": [v for v in vs if v in spec.default_minimized],
        "connectives": [
            {"symbol": c.symbol, "arity": c.arity,
             "table": {",".join(vs[i] for i in k): vs[r] for k, r in sorted(c.table.items())}}
            for c in spec.connectives
        ],
        "derived": [{"symbol": d.symbol, "arity": d.arity, "definition": render(d.definition)}
                    for d in spec.derived],
    }


def load_logic_spec(path) -> LogicSpec:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError(f"{path}: not valid JSON ({exc})") from None
    return logic_from_dict(data)


BUILTIN_LOGICS = {"P": "P.json", "LP": "LP.json", "FOUR": "FOUR.json"}
_ALIASES = {"F": "FOUR"}
_cache: dict = {}


def builtin_logic(name: str) -> LogicSpec:
    """One of the shipped logics: ``P``, ``LP`` or ``FOUR`` (alias ``F``)."""
    name = _ALIASES.get(name, name)
    if name not in BUILTIN_LOGICS:
        raise SpecError(f"unknown built-in logic {name!r}")
    if name not in _cache:
        text = resources.files("mvme.logics").joinpath(BUILTIN_LOGICS[name]).read_text("utf-8")
        _cache[name] = logic_from_dict(json.loads(text))
    return _cache[name]
