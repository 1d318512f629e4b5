"""Formula AST and renderers.

Connective symbols are the ASCII tokens of the surface syntax (``~``, ``&``,
``|``, ``->``, ``=>``, ``(x)``, ``(+)``, ``inc``, ``ninc``); logical constants
are uppercase names (``F``, ``B``, ``N``). Any other connective symbol renders
in function-call form ``sym(a, b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Union

PREFIX = ("~", "inc", "ninc")

# binding strength, higher binds tighter
BINARY_LEVEL = {"&": 4, "(x)": 3, "(+)": 3, "|": 2, "->": 1, "=>": 1}
RIGHT_ASSOC = {"->", "=>"}
PREFIX_LEVEL = 5

UNICODE = {
    "~": "¬", "&": "∧", "|": "∨", "->": "⊃", "=>": "→", "(x)": "⊗", "(+)": "⊕",
    "inc": "I", "ninc": "¬I",
}


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Const:
    symbol: str

    def __str__(self):
        return self.symbol


@dataclass(frozen=True, slots=True)
class App:
    symbol: str
    args: tuple
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # proof search hashes the same compound formulas millions of times
        object.__setattr__(self, "_hash", hash((self.symbol, self.args)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return render(self)


Formula = Union[Atom, Const, App]


def is_atomic(phi: Formula) -> bool:
    return not isinstance(phi, App)


def _level(phi):
    if isinstance(phi, App):
        if phi.symbol in BINARY_LEVEL and len(phi.args) == 2:
            return BINARY_LEVEL[phi.symbol]
        if phi.symbol in PREFIX and len(phi.args) == 1:
            return PREFIX_LEVEL
    return PREFIX_LEVEL + 1


def _render(phi, table):
    if isinstance(phi, (Atom, Const)):
        return str(phi)
    sym, args = phi.symbol, phi.args
    if sym in PREFIX and len(args) == 1:
        inner = _render(args[0], table)
        if _level(args[0]) < PREFIX_LEVEL:
            inner = f"({inner})"
        op = table.get(sym, sym)
        # keyword prefixes need a separator from a following identifier
        if op[-1].isalpha() and inner[0].isalnum():
            return f"{op} {inner}"
        return f"{op}{inner}"
    if sym in BINARY_LEVEL and len(args) == 2:
        lvl = BINARY_LEVEL[sym]
        left, right = _render(args[0], table), _render(args[1], table)
        left_lvl, right_lvl = _level(args[0]), _level(args[1])
        if sym in RIGHT_ASSOC:
            if left_lvl <= lvl:
                left = f"({left})"
            if right_lvl < lvl:
                right = f"({right})"
        else:
            if left_lvl < lvl:
                left = f"({left})"
            if right_lvl <= lvl:
                right = f"({right})"
        return f"{left} {table.get(sym, sym)} {right}"
    return f"{sym}({', '.join(_render(a, table) for a in args)})"


@lru_cache(maxsize=1 << 16)
def render(phi: Formula) -> str:
    """ASCII rendering that parses back to the same AST."""
    return _render(phi, {})


@lru_cache(maxsize=1 << 14)
def display(phi: Formula) -> str:
    """Unicode rendering for human-facing output (not re-parseable)."""
    return _render(phi, UNICODE)


def free_atoms(theory: Iterable[Formula]) -> frozenset:
    """Names of all atoms occurring in the given formulas."""
    out = set()
    stack = list(theory)
    while stack:
        phi = stack.pop()
        if isinstance(phi, Atom):
            out.add(phi.name)
        elif isinstance(phi, App):
            stack.extend(phi.args)
    return frozenset(out)


def symbols(phi: Formula) -> set:
    if isinstance(phi, Const):
        return {phi.symbol}
    if isinstance(phi, App):
        out = {phi.symbol}
        for a in phi.args:
            out |= symbols(a)
        return out
    return set()


def depth(phi: Formula) -> int:
    if isinstance(phi, App):
        return 1 + max((depth(a) for a in phi.args), default=0)
    return 0


def size(phi: Formula) -> int:
    if isinstance(phi, App):
        return 1 + sum(size(a) for a in phi.args)
    return 1


def substitute(phi: Formula, mapping) -> Formula:
    """Replace atoms by formulas according to ``mapping`` (name -> Formula)."""
    if isinstance(phi, Atom):
        return mapping.get(phi.name, phi)
    if isinstance(phi, App):
        return App(phi.symbol, tuple(substitute(a, mapping) for a in phi.args))
    return phi


def sorted_formulas(formulas: Iterable[Formula]) -> list:
    return sorted(formulas, key=render)


# convenience constructors, mostly for tests and fixtures
def neg(phi):
    return App("~", (phi,))


def conj(a, b):
    return App("&", (a, b))


def disj(a, b):
    return App("|", (a, b))


def imp(a, b):
    return App("->", (a, b))
