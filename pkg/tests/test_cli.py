import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from mvme.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_entail_holds_and_not():
    code, out, _ = run("entail", "--logic", "P", "--relation", "m", "--gamma", "p; ~(p & ~q)", "--delta", "q")
    assert (code, out.strip()) == (0, "HOLDS")
    code, out, _ = run("entail", "--logic", "P", "--relation", "m", "--gamma", "p; ~(p & ~q); ~q",
                       "--delta", "q", "--countermodel")
    assert code == 1
    assert out.splitlines()[0] == "NOT-HOLDS"
    assert out.splitlines()[1].startswith("countermodel: ")


def test_entail_domain_and_parse_errors():
    code, _, err = run("entail", "--logic", "LP", "--relation", "m", "--gamma", "p -> q", "--delta", "q")
    assert code == 2 and "error" in err
    assert run("entail", "--logic", "P", "--relation", "2", "--gamma", "p", "--delta", "p")[0] == 2
    assert run("entail", "--logic", "P", "--relation", "m", "--gamma", "p &", "--delta", "p")[0] == 2
    assert run("entail", "--logic", "P")[0] == 2
    assert run("frobnicate")[0] == 2


def test_entail_cap_is_a_resource_error():
    atoms = "; ".join(f"a{k}" for k in range(14))
    assert run("entail", "--logic", "P", "--relation", "m", "--gamma", atoms, "--delta", "a0")[0] == 3


def test_entail_general_mode_and_minimize():
    code, out, _ = run("entail", "--logic", "F", "--minimize", "b,n", "--gamma", "p; ~(p & ~q)",
                       "--delta", "q", "--mode", "general", "--proof", "text")
    assert code == 0 and out.startswith("HOLDS") and "[m3 on p]" in out


def test_prove_and_refute():
    assert run("prove", "--logic", "P", "--sequent", "[f: p][b: p][t: p]")[0] == 0
    assert run("refute", "--logic", "P", "--sequent", "[f: p][b: q]")[0] == 0
    code, out, _ = run("prove", "--logic", "P", "--sequent", "[t: p]")
    assert (code, out.strip()) == (1, "NOT-PROVABLE")
    code, out, _ = run("prove", "--logic", "P", "--sequent", "[f: p, ~(p & ~q)][b: q, p][t: q]",
                       "--proof", "tree", "--calculus", "generated")
    assert code == 0 and r"\begin{prooftree}" in out
    assert run("prove", "--logic", "P", "--sequent", "[x: p]")[0] == 2


def test_oracle_subcommand():
    code, out, _ = run("oracle", "--logic", "P", "--minimize", "b", "--gamma", "p; ~p", "--minimal-models")
    assert code == 1  # empty Delta, satisfiable Gamma
    assert out.splitlines() == ["NOT-HOLDS", "p=b"]
    code, out, _ = run("oracle", "--logic", "F", "--minimize", "b,n", "--gamma", "p; ~(p & ~q)", "--delta", "q")
    assert (code, out.strip()) == (0, "HOLDS")
    code, out, _ = run("oracle", "--logic", "P", "--gamma", "", "--delta", "")
    assert (code, out.strip()) == (1, "NOT-HOLDS")


def test_rulegen_subcommand(tmp_path):
    code, out, _ = run("rulegen", "--logic", "P", "--kind", "antisequent")
    assert code == 0
    assert len(json.loads(out)["rules"]) == 14
    target = tmp_path / "sf.json"
    assert run("rulegen", "--logic", "F", "--kind", "sequent", "--out", str(target))[0] == 0
    names = [r["name"] for r in json.loads(target.read_text())["rules"]]
    assert sum(n.startswith("(w:") for n in names) == 4
    code, out, _ = run("rulegen", "--logic", "P", "--kind", "sequent", "--minimize", "b")
    assert code == 0 and "(inc:t)⊢" in out


def test_check_round_trip(tmp_path):
    code, out, _ = run("entail", "--logic", "F", "--relation", "1", "--gamma", "p; ~(p & ~q)",
                       "--delta", "q", "--proof", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "HOLDS" and doc["proof"]["rule"] == "m3"
    path = tmp_path / "proof.json"
    path.write_text(out)
    assert run("check", "--proof", str(path)) == (0, "VALID\n", "")

    # tamper with an embedded derivation
    doc["proof"]["premises"][1]["premises"][0]["rule"] = "(~:t)⊢"
    path.write_text(json.dumps(doc))
    code, out, _ = run("check", "--proof", str(path))
    assert code == 1 and out.startswith("INVALID root/1/0")


def test_check_sequent_proofs(tmp_path):
    code, out, _ = run("refute", "--logic", "F", "--sequent", "[f: p, ~(p & ~q)][n: p, ~(p & ~q)][b: q, p]",
                       "--proof", "json")
    assert code == 0
    path = tmp_path / "r.json"
    path.write_text(out)
    assert run("check", "--proof", str(path))[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("check", "--proof", str(bad))[0] == 2


@pytest.mark.parametrize("name", ["example2_proof.json", "example3_beta.json"])
def test_check_fixtures(name):
    assert run("check", "--proof", str(FIXTURES / name))[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mvme", "entail", "--logic", "P", "--relation", "m",
                           "--gamma", "p; ~(p & ~q)", "--delta", "q"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "HOLDS"
