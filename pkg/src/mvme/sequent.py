"""Many-sided sequents and anti-sequents (one formula set per truth value)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .formula import App, Atom, Formula, display, render, sorted_formulas
from .logic import LogicSpec


@dataclass(frozen=True)
class ManySidedSequent:
    components: tuple  # frozenset[Formula] per truth value, declared order

    anti = False
    bar = "|"

    @classmethod
    def empty(cls, n: int):
        return cls(tuple(frozenset() for _ in range(n)))

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def add(self, i: int, formulas: Iterable[Formula]):
        comps = list(self.components)
        comps[i] = comps[i] | frozenset(formulas)
        return type(self)(tuple(comps))

    def add_to(self, indices: Iterable[int], formulas: Iterable[Formula]):
        formulas = frozenset(formulas)
        comps = list(self.components)
        for i in indices:
            comps[i] = comps[i] | formulas
        return type(self)(tuple(comps))

    def remove(self, i: int, phi: Formula):
        comps = list(self.components)
        comps[i] = comps[i] - {phi}
        return type(self)(tuple(comps))

    def place(self, placements, args):
        """Add ``args[j]`` to component ``k`` for each placement ``(j, k)``."""
        comps = list(self.components)
        for j, k in placements:
            comps[k] = comps[k].union((args[j],))
        return type(self)(tuple(comps))

    def formulas(self):
        for i, comp in enumerate(self.components):
            for phi in comp:
                yield i, phi

    def is_atomic(self):
        return not any(isinstance(phi, App) for _, phi in self.formulas())

    def render(self, spec: LogicSpec | None = None, unicode=True) -> str:
        show = display if unicode else render
        bar = (" ∤ " if self.anti else " | ") if unicode else (" -| " if self.anti else " | ")
        parts = []
        for comp in self.components:
            parts.append(", ".join(show(phi) for phi in sorted_formulas(comp)) or "∅")
        return bar.join(parts)

    def labeled(self, spec: LogicSpec) -> str:
        """Re-parseable ``[v: ...]`` form."""
        out = []
        for name, comp in zip(spec.values, self.components):
            if comp:
                out.append(f"[{name}: {', '.join(render(p) for p in sorted_formulas(comp))}]")
        return " ".join(out)

    def to_json(self, spec: LogicSpec) -> dict:
        return {name: [render(p) for p in sorted_formulas(comp)]
                for name, comp in zip(spec.values, self.components)}


@dataclass(frozen=True)
class AntiSequent(ManySidedSequent):
    anti = True


def build_consequence_sequent(gamma, delta, spec: LogicSpec) -> ManySidedSequent:
    """Gamma in every non-designated component, Delta in every designated one."""
    des = spec.designated_indices
    gamma, delta = frozenset(gamma), frozenset(delta)
    return ManySidedSequent(tuple(delta if i in des else gamma for i in range(spec.n)))


def build_consequence_antisequent(gamma, delta, spec: LogicSpec) -> AntiSequent:
    return AntiSequent(build_consequence_sequent(gamma, delta, spec).components)


def atoms(names: Iterable[str]) -> frozenset:
    return frozenset(Atom(n) for n in names)
