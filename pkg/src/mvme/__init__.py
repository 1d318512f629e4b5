"""Many-valued sequent calculi and minimal entailment for P, LP and FOUR."""

from .derivation import DerivationTree, check_derivation, prove_sequent, refute
from .errors import DomainError, LogicMismatchError, MvmeError, ParseError, ResourceLimitError, SpecError
from .formula import App, Atom, Const, Formula, display, render
from .logic import Interpretation, LogicSpec, builtin_logic, load_logic_spec
from .me import MEProof, MESequent, MEVerdict, check_me_proof, decide_entailment, prove_me
from .oracle import minimal_entailment, minimal_models, semantic_consequence
from .parser import parse_antisequent, parse_formula, parse_sequent, parse_theory
from .rulegen import builtin_calculus, calculus_for, gen_antisequent_rules, gen_sequent_rules, generated_calculus
from .sequent import AntiSequent, ManySidedSequent, build_consequence_antisequent, build_consequence_sequent

__version__ = "0.1.0"
