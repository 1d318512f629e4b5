import json
from dataclasses import replace

import pytest

from mvme import builtin_logic, parse_sequent
from mvme.derivation import (
    DerivationTree,
    check_derivation,
    display_rule_name,
    prove_sequent,
    refute,
    render_bussproofs,
    render_text,
    tree_digest,
    tree_from_json,
    tree_to_json,
)
from mvme.errors import ResourceLimitError
from mvme.formula import Atom
from mvme.rulegen import calculus_for, generated_calculus
from mvme.sequent import AntiSequent, build_consequence_sequent

P, F = builtin_logic("P"), builtin_logic("FOUR")
SP, SF = calculus_for(P), calculus_for(F)


def seq(text, spec=P, anti=False):
    return parse_sequent(text, spec, anti=anti)


def test_consequence_sequent_layout():
    g, d = {Atom("p")}, {Atom("q")}
    assert build_consequence_sequent(g, d, P).components == (g, d, d)
    assert build_consequence_sequent(g, d, F).components == (g, g, d, d)
    assert build_consequence_sequent((), (), P).components == (frozenset(),) * 3


def test_example2_right_branch_provable():
    tree = prove_sequent(seq("[f: p, ~(p & ~q)][b: q, p][t: q]"), SP)
    assert tree is not None and check_derivation(tree, SP)


def test_axiom_and_unprovable():
    tree = prove_sequent(seq("[f: p][b: p][t: p]"), SP)
    assert tree.rule == "axiom" and not tree.premises
    assert prove_sequent(seq("[t: p]"), SP) is None


def test_example2_left_branch_refutation():
    anti = seq("[f: p, ~(p & ~q)][b: q, p]", anti=True)
    tree = refute(anti, SP)
    assert tree is not None and check_derivation(tree, SP)
    p, q = Atom("p"), Atom("q")
    leaves = list(tree.leaves())
    assert leaves[-1].conclusion.components == (frozenset({p, q}), frozenset({p, q}), frozenset())


def test_refutations():
    assert refute(seq("[f: p][b: p][t: p]", anti=True), SP) is None
    assert refute(seq("[f: p, ~(p & ~q)][n: p, ~(p & ~q)][b: q, p]", F, anti=True), SF) is not None


def test_generated_calculus_agrees_on_examples():
    gen = generated_calculus(P)
    assert prove_sequent(seq("[f: p, ~(p & ~q)][b: q, p][t: q]"), gen) is not None
    assert refute(seq("[f: p, ~(p & ~q)][b: q, p]", anti=True), gen) is not None


def test_budget():
    big = seq("[f: ~(p & ~q) & ~(q & ~r) & ~(r & ~s)][b: s -> p][t: s -> p]")
    with pytest.raises(ResourceLimitError):
        prove_sequent(big, generated_calculus(P), budget=3)


def _proof():
    return prove_sequent(seq("[f: p, ~(p & ~q)][b: q, p][t: q]"), SP)


def test_checker_rejects_tampering():
    tree = _proof()
    # wrong rule name at the root
    assert not check_derivation(replace(tree, rule="(~:t)⊢"), SP)
    # leaf that is not an axiom
    bad_leaf = DerivationTree(seq("[t: p]"), "axiom")
    assert not check_derivation(bad_leaf, SP)
    assert not check_derivation(DerivationTree(tree.conclusion, tree.rule, (bad_leaf,)), SP)
    # a premise that no longer matches its parent's rule instance
    child = tree.premises[0]
    mutated = replace(child, conclusion=child.conclusion.add(2, {Atom("r")}))
    res = check_derivation(replace(tree, premises=(mutated,) + tree.premises[1:]), SP)
    assert not res and res.path == ()
    # a mislabelled rule one level down
    relabelled = replace(child, rule="(~:t)⊢")
    res = check_derivation(replace(tree, premises=(relabelled,) + tree.premises[1:]), SP)
    assert not res and res.path == (0,)
    assert str(res).startswith("root/0:")


def test_checker_kind_and_weakening():
    tree = _proof()
    anti_root = DerivationTree(AntiSequent(tree.conclusion.components), tree.rule, tree.premises)
    assert not check_derivation(anti_root, SP)
    s = seq("[f: p][b: p][t: p, q]")
    weak = DerivationTree(s, "(w:t)⊢", (DerivationTree(seq("[f: p][b: p][t: p]"), "axiom"),))
    assert check_derivation(weak, SP)
    too_much = DerivationTree(s, "(w:t)⊢", (DerivationTree(seq("[f: p][b: p]"), "axiom"),))
    assert not check_derivation(too_much, SP)


def test_json_round_trip_and_digest():
    tree = _proof()
    doc = tree_to_json(tree, P)
    again = tree_from_json(json.loads(json.dumps(doc)), P)
    assert again == tree
    assert tree_digest(again, P) == tree_digest(tree, P)
    with pytest.raises(ValueError):
        tree_from_json({"kind": "nope"}, P)


def test_rendering():
    tree = _proof()
    text = render_text(tree)
    assert text.splitlines()[0].endswith("[(~:f)⊢]")
    buss = render_bussproofs(tree)
    assert buss.startswith(r"\begin{prooftree}") and buss.endswith(r"\end{prooftree}")
    assert buss.count(r"\AxiomC") == sum(1 for _ in tree.leaves())
    assert display_rule_name("(&:b^2)⊣") == "(∧:b^{2})⊣"
    assert display_rule_name("m3") == "m3"
