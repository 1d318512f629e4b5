"""Brute-force semantics: the ground truth every proof engine is tested against.

Everything here enumerates interpretations over a finite atom domain. The
domain for minimal-model questions is the atoms of Gamma and Delta plus the
Sigma/Theta/Pi atoms; atoms outside it cannot influence either the valuation
or the minimality order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .errors import DomainError, ResourceLimitError
from .formula import Formula, free_atoms
from .logic import Interpretation, LogicSpec

DEFAULT_CAP = 12


@dataclass(frozen=True)
class MinimizationSet:
    values: frozenset  # value names

    @classmethod
    def of(cls, values: Iterable[str], spec: LogicSpec | None = None) -> "MinimizationSet":
        values = frozenset(values)
        if spec is not None:
            spec.indices(values)  # raises on undeclared names
        return cls(values)


@dataclass
class MinimalModelReport:
    domain: frozenset
    minimal_models: list = field(default_factory=list)
    counterexample: Optional[Interpretation] = None


def _names(minimized) -> frozenset:
    if isinstance(minimized, MinimizationSet):
        return minimized.values
    return frozenset(minimized)


def _check_cap(domain, cap):
    if len(domain) > cap:
        raise ResourceLimitError(f"{len(domain)} atoms exceed the enumeration cap of {cap}")


def _envs(domain, spec, cap) -> Iterator[dict]:
    _check_cap(domain, cap)
    atoms = sorted(domain)
    for combo in itertools.product(range(spec.n), repeat=len(atoms)):
        yield dict(zip(atoms, combo))


def enumerate_interpretations(domain: Iterable[str], spec: LogicSpec, cap: int = DEFAULT_CAP):
    """All interpretations of ``domain``; first atom (by name) varies slowest."""
    for env in _envs(frozenset(domain), spec, cap):
        yield Interpretation.from_indices(spec, env)


def _satisfies(spec, env, theory):
    des = spec.designated_indices
    return all(spec.eval(phi, env) in des for phi in theory)


def _some_holds(spec, env, delta):
    des = spec.designated_indices
    return any(spec.eval(phi, env) in des for phi in delta)


def semantic_consequence(gamma, delta, spec: LogicSpec, *, reading: str = "modelwise",
                         cap: int = DEFAULT_CAP) -> bool:
    """Gamma |= Delta over the atoms of Gamma and Delta.

    ``modelwise``: every model of Gamma satisfies some member of Delta (the
    reading that matches sequent validity). ``pointwise``: some single member
    of Delta is satisfied by every model of Gamma.
    """
    gamma, delta = list(gamma), list(delta)
    domain = free_atoms(gamma + delta)
    models = [env for env in _envs(domain, spec, cap) if _satisfies(spec, env, gamma)]
    if reading == "modelwise":
        return all(_some_holds(spec, env, delta) for env in models)
    if reading == "pointwise":
        return any(all(_satisfies(spec, env, [phi]) for env in models) for phi in delta)
    raise ValueError(f"unknown consequence reading {reading!r}")


def _in_min(env, minimized_idx, theta):
    return frozenset(p for p in theta if env[p] in minimized_idx)


def leq_over(i: Interpretation, j: Interpretation, minimized, theta, spec: LogicSpec | None = None) -> bool:
    """``{p in theta | I(p) in mins} <= {p in theta | J(p) in mins}``."""
    theta = frozenset(theta)
    if not theta <= i.domain or not theta <= j.domain:
        raise DomainError("theta must be contained in both interpretation domains")
    names = _names(minimized)
    a = {p for p in theta if i[p].name in names}
    b = {p for p in theta if j[p].name in names}
    return a <= b


def lt_over(i, j, minimized, theta, spec=None) -> bool:
    return leq_over(i, j, minimized, theta) and not leq_over(j, i, minimized, theta)


def _minimal_envs(spec, gamma, minimized_idx, theta, domain, cap):
    models = [env for env in _envs(domain, spec, cap) if _satisfies(spec, env, gamma)]
    keys = [_in_min(env, minimized_idx, theta) for env in models]
    out = []
    for env, key in zip(models, keys):
        if not any(other < key for other in keys):
            out.append(env)
    return out


def minimal_models(gamma, minimized, theta, domain, spec: LogicSpec, *, delta=None,
                   cap: int = DEFAULT_CAP) -> MinimalModelReport:
    """The (I; theta)-minimal models of Gamma over ``domain``.

    With ``delta`` given, also reports the first minimal model satisfying no
    member of Delta.
    """
    gamma = list(gamma)
    theta, domain = frozenset(theta), frozenset(domain)
    domain = domain | free_atoms(gamma) | theta | (free_atoms(delta) if delta is not None else frozenset())
    m_idx = spec.indices(_names(minimized))
    envs = _minimal_envs(spec, gamma, m_idx, theta, domain, cap)
    report = MinimalModelReport(domain, [Interpretation.from_indices(spec, e) for e in envs])
    if delta is not None:
        delta = list(delta)
        for env in envs:
            if not _some_holds(spec, env, delta):
                report.counterexample = Interpretation.from_indices(spec, env)
                break
    return report


def minimal_entailment(gamma, delta, minimized, spec: LogicSpec, *, cap: int = DEFAULT_CAP) -> bool:
    """Every minimal model of Gamma (theta = all atoms) satisfies some member of Delta."""
    gamma, delta = list(gamma), list(delta)
    domain = free_atoms(gamma + delta)
    return minimal_models(gamma, minimized, domain, domain, spec, delta=delta, cap=cap).counterexample is None


def me_countermodel(sigma, gamma, delta, theta, minimized, spec: LogicSpec, *, pi=(),
                    cap: int = DEFAULT_CAP) -> Optional[Interpretation]:
    """A witness that the ME-sequent ``sigma; gamma, ~I pi => delta; theta`` is false.

    Such a witness is an (I; theta + sigma)-minimal model of Gamma (with every
    pi atom outside the minimized set) giving every sigma atom a minimized value
    and satisfying no member of Delta.
    """
    gamma, delta = list(gamma), list(delta)
    sigma, theta, pi = frozenset(sigma), frozenset(theta), frozenset(pi)
    m_idx = spec.indices(_names(minimized))
    domain = free_atoms(gamma + delta) | sigma | theta | pi
    base = [env for env in _envs(domain, spec, cap)
            if _satisfies(spec, env, gamma) and all(env[p] not in m_idx for p in pi)]
    scope = theta | sigma
    keys = [_in_min(env, m_idx, scope) for env in base]
    for env, key in zip(base, keys):
        if any(other < key for other in keys):
            continue
        if all(env[s] in m_idx for s in sigma) and not _some_holds(spec, env, delta):
            return Interpretation.from_indices(spec, env)
    return None


def me_sequent_truth(sigma, gamma, delta, theta, minimized, spec: LogicSpec, *, pi=(),
                     cap: int = DEFAULT_CAP) -> bool:
    return me_countermodel(sigma, gamma, delta, theta, minimized, spec, pi=pi, cap=cap) is None


def sequent_valid_bruteforce(seq, spec: LogicSpec, *, cap: int = DEFAULT_CAP) -> bool:
    return _falsifier(seq, spec, cap) is None


def antisequent_refutable_bruteforce(anti, spec: LogicSpec, *, cap: int = DEFAULT_CAP) -> Optional[Interpretation]:
    """A refuting interpretation, or ``None`` if every interpretation makes some component hit."""
    env = _falsifier(anti, spec, cap)
    return None if env is None else Interpretation.from_indices(spec, env)


def _falsifier(seq, spec, cap):
    comps = [(i, list(c)) for i, c in enumerate(seq.components) if c]
    domain = free_atoms(phi for _, c in comps for phi in c)
    for env in _envs(domain, spec, cap):
        if not any(spec.eval(phi, env) == i for i, c in comps for phi in c):
            return env
    return None


def sequent_true_under(seq, interp: Interpretation, spec: LogicSpec) -> bool:
    env = interp.env()
    return any(spec.eval(phi, env) == i for i, c in enumerate(seq.components) for phi in c)
