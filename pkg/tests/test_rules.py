import pytest

from llsequent.core import CALCULI, Atom
from llsequent.mll import prove
from llsequent.parser import parse_rule_file, parse_schema, parse_sequent
from llsequent.proof import Unknown, validate_proof
from llsequent.rules import (
    CheckConfig, Derivable, NotDerivable, RuleError, check_rule, cut_candidates,
    instantiate_contexts, lifting_violations, skolemize,
)

MLL, MIX, MIXC = CALCULI["mll"], CALCULI["mll-mix"], CALCULI["mll-mix-c"]

MIX3 = "rule mix3:\n|- G, a\n|- D, b\n|- L, a^, b^\n----\n|- G, D, L"
MIX_RULE = "rule mix:\n|- G\n|- D\n----\n|- G, D"


def test_mix3_derivable():
    v = check_rule(parse_rule_file(MIX3), MIX)
    assert isinstance(v, Derivable)
    rules = v.derivation.rules_bottom_up()
    assert rules.count("hypothesis") == 3 and "cut" in rules
    assert validate_proof(v.derivation, MIX, v.hypotheses, allow_cut=True) == []


def test_mix3_lifts_to_two_atom_contexts():
    rule = parse_rule_file(MIX3)
    mapping = {name: [Atom(f"{name.lower()}1"), Atom(f"{name.lower()}2")]
               for name in ("G", "D", "L")}
    lifted = instantiate_contexts(rule, mapping)
    assert len(lifted.conclusion.succedent) == 6
    assert isinstance(check_rule(lifted, MIX), Derivable)


def test_context_atoms_never_principal():
    rule = parse_rule_file(MIX3)
    v = check_rule(rule, MIX)
    sk = skolemize(rule)
    assert lifting_violations(v.derivation, sk.context_atoms) == []


def test_zero_premise_rules_delegate():
    assert isinstance(check_rule(parse_rule_file("rule mix1:\n----\n|- 1, bot"), MIX), Derivable)
    assert isinstance(check_rule(parse_rule_file("rule b:\n----\n|- bot"), MIX), NotDerivable)


@pytest.mark.parametrize("text", ["|- 1, bot", "|- bot", "|- a * b, a^ # b^", "|- 1, 1"])
@pytest.mark.parametrize("calc", [MLL, MIX])
def test_zero_premise_agrees_with_prove(text, calc):
    rule = parse_rule_file(f"rule r:\n----\n{text}")
    rv = check_rule(rule, calc)
    pv = prove(parse_sequent(text), calc)
    assert (rv.name == "Derivable") == (pv.name == "Provable")


def test_mix_in_plain_mll_is_unknown():
    # Mix is not derivable in MLL: every MLL-provable sequent has one more
    # leaf-pairing than tensors, and gluing two proofs breaks that count.
    # Bounded search cannot certify this, so the expected answer is Unknown.
    v = check_rule(parse_rule_file(MIX_RULE), MLL)
    assert isinstance(v, Unknown)


def test_mix_in_mll_mix_is_derivable():
    assert isinstance(check_rule(parse_rule_file(MIX_RULE), MIX), Derivable)


def test_adding_one_is_mix_with_unit():
    rule = parse_rule_file("rule w:\n|- G\n----\n|- G, 1")
    assert isinstance(check_rule(rule, MIX), Derivable)


def test_skolem_names_avoid_formula_atoms():
    rule = parse_rule_file("rule r:\n|- G, ctx_g\n----\n|- G, ctx_g")
    sk = skolemize(rule)
    assert sk.context_atoms == {"ctx_g1"}


def test_cut_candidates_exclude_context_atoms():
    sk = skolemize(parse_rule_file(MIX3))
    cands = cut_candidates(sk)
    names = {getattr(c, "name", None) for c in cands}
    assert not names & sk.context_atoms
    assert Atom("a") in cands and Atom("b") in cands


def test_cut_budget_zero_blocks_mix3():
    v = check_rule(parse_rule_file(MIX3), MIX, CheckConfig(cut_budget=0))
    assert isinstance(v, Unknown)


class TestErrors:
    def test_two_sided_rejected(self):
        with pytest.raises(RuleError):
            check_rule(parse_rule_file("rule r:\n----\nx |- x"), MIX)

    def test_mill_rejected(self):
        with pytest.raises(RuleError):
            check_rule(parse_rule_file("rule r:\n----\n|- 1"), CALCULI["mill"])

    def test_instantiate_keeps_formulas(self):
        rule = parse_rule_file(MIX3)
        out = instantiate_contexts(rule, {"G": []})
        assert out.premises[0] == parse_schema("|- a")
