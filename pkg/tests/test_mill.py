import dataclasses

import pytest

from llsequent.core import CALCULI, FormulaError, I, Atom, Lollipop, Multiset, Sequent
from llsequent.mill import check_entailment, prove_mill
from llsequent.parser import parse_formula, parse_sequent
from llsequent.proof import NotProvable, Provable, validate_proof

from oracles import mill_provable

MILL = CALCULI["mill"]


def decide(text):
    return prove_mill(parse_sequent(text))


@pytest.mark.parametrize("text", [
    "x * (x -o y) |- y",
    "(x -o y) * (y -o z) |- x -o z",
    "x |- x^^",
    "x^ # y |- x -o y",
    "x # y |- (x^ * y^)^",
    "x |- x # I",
    "I^ |- I",
    "I |- I^",
    "x |- x",
])
def test_provable_entailments(text):
    v = decide(text)
    assert isinstance(v, Provable)
    assert validate_proof(v.proof, MILL) == []


# each verdict is confirmed by the naive oracle in test_oracle_agreement
@pytest.mark.parametrize("text", [
    "x^^ |- x",
    "x -o y |- x^ # y",
    "(x^ * y^)^ |- x # y",
    "x # I |- x",
    "(x * y) # z |- (x # z) * (y # z)",
    "(x # z) * (y # z) |- (x * y) # z",
    "x |- y",
    "x, x |- x",
    "|- x -o y",
])
def test_unprovable_entailments(text):
    assert isinstance(decide(text), NotProvable)


def test_expanded_forms_match():
    assert prove_mill(Sequent.two_sided([I], Lollipop(I, I))).name == "Provable"
    assert prove_mill(Sequent.two_sided([Lollipop(I, I)], I)).name == "Provable"
    x = Atom("x")
    assert isinstance(prove_mill(Sequent.two_sided([x], Lollipop(Lollipop(x, I), I))), Provable)
    assert isinstance(prove_mill(Sequent.two_sided([Lollipop(Lollipop(x, I), I)], x)), NotProvable)


def test_oracle_agreement():
    for text in ["x^^ |- x", "x -o y |- x^ # y", "(x^ * y^)^ |- x # y", "x # I |- x",
                 "(x * y) # z |- (x # z) * (y # z)", "(x # z) * (y # z) |- (x * y) # z",
                 "x |- x^^", "I^ |- I", "I |- I^", "x |- x # I"]:
        s = parse_sequent(text)
        expected = mill_provable(list(s.antecedent), s.succedent.items[0])
        assert isinstance(prove_mill(s), Provable) == expected, text


def test_double_dual_and_par_unit_identical():
    one = check_entailment(parse_formula("x # I"), parse_formula("x"))
    two = check_entailment(parse_formula("x^^"), parse_formula("x"))
    assert type(one) is type(two) is NotProvable


def test_check_entailment():
    assert isinstance(check_entailment(parse_formula("x"), parse_formula("x # I")), Provable)
    assert isinstance(check_entailment(parse_formula("x^ # y"), parse_formula("x -o y")), Provable)


def test_unit_left_and_empty_antecedent():
    assert isinstance(decide("I, x |- x"), Provable)
    assert isinstance(decide("|- I"), Provable)
    assert isinstance(decide("|- x -o x"), Provable)


def test_exchange():
    assert isinstance(decide("x -o y, x |- y"), Provable)
    assert isinstance(decide("x, x -o y |- y"), Provable)


class TestErrors:
    def test_multiple_succedents(self):
        with pytest.raises(ValueError):
            decide("x |- x, y")

    def test_empty_succedent(self):
        with pytest.raises(ValueError):
            decide("x |-")

    @pytest.mark.parametrize("text", ["1 |- 1", "x |- bot", "x |- x * 1"])
    def test_classical_units(self, text):
        with pytest.raises(FormulaError):
            decide(text)


class TestValidator:
    def test_rejects_mll_rule(self):
        v = decide("x * (x -o y) |- y")
        bad = dataclasses.replace(v.proof, rule="bot")
        assert "not a rule of MILL" in validate_proof(bad, MILL)[0]

    def test_rejects_bad_lolli_left(self):
        v = decide("x -o y, x |- y")
        p = v.proof
        assert p.rule == "lolli_l"
        bad = dataclasses.replace(p, conclusion=parse_sequent("x -o y, x, x |- y"))
        assert validate_proof(bad, MILL)

    def test_rejects_unexpanded_formula(self):
        v = decide("x |- x")
        bad = dataclasses.replace(v.proof, conclusion=Sequent(
            Multiset([parse_formula("x # x")]), Multiset([parse_formula("x # x")])))
        assert "built from atoms" in validate_proof(bad, MILL)[0]
