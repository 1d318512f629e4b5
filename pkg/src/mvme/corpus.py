"""Deterministic formula corpora and seeded random theories for the test suites."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .formula import App, Atom, Const, Formula, render
from .logic import LogicSpec


@dataclass(frozen=True)
class CorpusConfig:
    atoms: tuple = ("p", "q")
    connectives: tuple = ("~", "&", "->")
    constants: tuple = ()  # defaults to every constant of the logic
    max_depth: int = 2


def logic_constants(spec: LogicSpec) -> tuple:
    return tuple(sorted(s for s, c in spec.tables.items() if c.arity == 0))


def formulas_up_to(spec: LogicSpec, cfg: CorpusConfig = CorpusConfig()) -> list:
    """Every formula of depth <= ``cfg.max_depth``, ordered by depth then rendering."""
    consts = cfg.constants or logic_constants(spec)
    layers = [[Atom(a) for a in cfg.atoms] + [Const(c) for c in consts]]
    seen = list(layers[0])
    for _ in range(cfg.max_depth):
        prev = set(layers[-1])
        new = []
        for sym in cfg.connectives:
            arity = spec.connective(sym).arity
            for args in itertools.product(seen, repeat=arity):
                if any(a in prev for a in args):
                    new.append(App(sym, args))
        layers.append(sorted(new, key=render))
        seen = seen + layers[-1]
    return seen


def _pairs_structured(deep, shallow, atomic):
    yield (), ()
    for phi in deep:
        yield (), (phi,)
        yield (phi,), ()
    for phi in deep:
        for psi in atomic:
            yield (phi,), (psi,)
    for phi in shallow:
        for psi in shallow:
            yield (phi,), (psi,)
    for a, b in itertools.combinations(shallow, 2):
        yield (a, b), ()
        for psi in shallow:
            yield (a, b), (psi,)


def consequence_pairs(spec: LogicSpec, *, sample: int = 3000, seed: int = 0, full_cross: bool = False,
                      cfg: CorpusConfig = CorpusConfig()):
    """(Gamma, Delta) pairs with |Gamma| <= 2 and |Delta| <= 1 over depth-bounded formulas.

    Structured part: every ``=> phi`` and ``phi =>``; ``phi => psi`` for deep phi and
    depth-0 psi (every depth-1 psi when ``full_cross``); all pairs and two-formula
    Gammas over depth <= 1. Then ``sample`` seeded draws from the unrestricted
    shape over depth <= ``cfg.max_depth``.
    """
    deep = formulas_up_to(spec, cfg)
    shallow = formulas_up_to(spec, CorpusConfig(cfg.atoms, cfg.connectives, cfg.constants, min(1, cfg.max_depth)))
    atomic = shallow if full_cross else formulas_up_to(
        spec, CorpusConfig(cfg.atoms, cfg.connectives, cfg.constants, 0))
    yield from _pairs_structured(deep, shallow, atomic)
    rng = random.Random(seed)
    for _ in range(sample):
        gamma = tuple(sorted({rng.choice(deep) for _ in range(rng.randint(0, 2))}, key=render))
        delta = tuple(rng.choice(deep) for _ in range(rng.randint(0, 1)))
        yield gamma, delta


def random_formula(rng: random.Random, spec: LogicSpec, atoms, depth: int,
                   connectives=("~", "&", "->"), constants=()) -> Formula:
    leaves = [Atom(a) for a in atoms] + [Const(c) for c in constants]
    if depth == 0 or rng.random() < 0.25:
        return rng.choice(leaves)
    sym = rng.choice(connectives)
    arity = spec.connective(sym).arity
    return App(sym, tuple(random_formula(rng, spec, atoms, depth - 1, connectives, constants)
                          for _ in range(arity)))


@dataclass(frozen=True)
class RandomTheoryConfig:
    max_atoms: int = 3
    max_depth: int = 3
    max_gamma: int = 3
    max_delta: int = 2
    connectives: tuple = ("~", "&", "->")


def random_instance(rng: random.Random, spec: LogicSpec, cfg: RandomTheoryConfig = RandomTheoryConfig()):
    """A seeded (Gamma, Delta) pair of sorted formula tuples."""
    atoms = ["p", "q", "r", "s", "u"][: rng.randint(1, cfg.max_atoms)]
    conns = tuple(c for c in cfg.connectives if spec.has_symbol(c))

    def draw(k):
        return tuple(sorted({random_formula(rng, spec, atoms, rng.randint(0, cfg.max_depth), conns)
                             for _ in range(k)}, key=render))

    return draw(rng.randint(0, cfg.max_gamma)), draw(rng.randint(0, cfg.max_delta))
