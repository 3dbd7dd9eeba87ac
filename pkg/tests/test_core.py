import pytest

from llsequent.core import (
    BOT, CALCULI, EMPTY, I, ONE, Atom, Bot, Calculus, Dual, DualAtom, FormulaError,
    Lollipop, Multiset, One, Par, Sequent, Tensor, UnitI, atoms, dualize, expand_defs,
    formula_key, is_mill_expanded, is_mll, is_nnf, normalize_atomic_duals, size, to_nnf,
)

a, b, c = Atom("a"), Atom("b"), Atom("c")


class TestFormulas:
    def test_atom_names_validated(self):
        with pytest.raises(ValueError):
            Atom("A")
        with pytest.raises(ValueError):
            DualAtom("1x")

    def test_hashable_and_structural(self):
        assert Tensor(a, b) == Tensor(Atom("a"), Atom("b"))
        assert len({Par(a, b), Par(a, b), Par(b, a)}) == 2

    def test_size_and_atoms(self):
        f = Par(Tensor(a, Dual(b)), ONE)
        assert size(f) == 6
        assert atoms(f) == {"a", "b"}

    def test_fragment_predicates(self):
        assert is_mll(Par(a, Dual(ONE)))
        assert not is_mll(Lollipop(a, b))
        assert is_nnf(Tensor(DualAtom("a"), BOT))
        assert not is_nnf(Dual(a))
        assert is_mill_expanded(Lollipop(Tensor(a, I), b))
        assert not is_mill_expanded(Par(a, b))

    def test_formula_key_total_order(self):
        fs = [Par(a, b), a, BOT, DualAtom("a"), I, Tensor(b, a), Dual(a), ONE]
        keys = [formula_key(f) for f in fs]
        assert len(set(keys)) == len(fs)
        assert sorted(fs, key=formula_key)[0] == a


class TestDualize:
    def test_de_morgan(self):
        assert dualize(Tensor(a, b)) == Par(DualAtom("a"), DualAtom("b"))
        assert dualize(Par(a, ONE)) == Tensor(DualAtom("a"), BOT)
        assert dualize(ONE) == BOT and dualize(BOT) == ONE

    def test_dual_of_dual_node(self):
        assert dualize(Dual(Tensor(a, b))) == Tensor(a, b)

    def test_involution_on_nnf(self):
        f = Par(Tensor(a, DualAtom("b")), BOT)
        assert dualize(dualize(f)) == f

    @pytest.mark.parametrize("f", [Lollipop(a, b), I, Tensor(a, I)])
    def test_outside_mll_rejected(self, f):
        with pytest.raises(FormulaError):
            dualize(f)

    def test_to_nnf(self):
        assert to_nnf(Dual(Par(a, Dual(b)))) == Tensor(DualAtom("a"), b)
        assert is_nnf(to_nnf(Dual(Dual(Tensor(a, BOT)))))

    def test_normalize_atomic_duals_keeps_compound_duals(self):
        f = Par(Dual(a), Dual(Tensor(a, b)))
        assert normalize_atomic_duals(f) == Par(DualAtom("a"), Dual(Tensor(a, b)))


class TestExpandDefs:
    def test_dual_and_par(self):
        assert expand_defs(Dual(a)) == Lollipop(a, I)
        assert expand_defs(Par(a, b)) == Lollipop(Lollipop(a, I), b)

    def test_double_dual_equals_par_with_unit(self):
        assert expand_defs(Dual(Dual(a))) == expand_defs(Par(a, I))

    @pytest.mark.parametrize("f", [ONE, Tensor(a, BOT), DualAtom("a")])
    def test_rejects_classical_units(self, f):
        with pytest.raises(FormulaError):
            expand_defs(f)


class TestMultiset:
    def test_order_insensitive(self):
        assert Multiset([a, b, a]) == Multiset([b, a, a])
        assert hash(Multiset([a, b])) == hash(Multiset([b, a]))

    def test_multiplicity(self):
        ms = Multiset([a, a, b])
        assert ms.count(a) == 2 and len(ms) == 3
        assert ms.remove(a) == Multiset([a, b])
        assert ms.distinct() == [a, b]

    def test_remove_missing(self):
        with pytest.raises(KeyError):
            Multiset([a]).remove(b)

    def test_union_and_difference(self):
        x, y = Multiset([a, b]), Multiset([a, c])
        assert x.union(y) == Multiset([a, a, b, c])
        assert x.union(y).difference(y) == x
        assert x.difference(y) is None

    def test_splits_count(self):
        # a, a, b: (2+1)*(1+1) distinct left halves
        splits = list(Multiset([a, a, b]).splits())
        assert len(splits) == 6
        assert len(set(splits)) == 6
        for left, right in splits:
            assert left.union(right) == Multiset([a, a, b])

    def test_splits_empty(self):
        assert list(EMPTY.splits()) == [(EMPTY, EMPTY)]

    def test_splits_deterministic(self):
        ms = Multiset([c, a, b, a])
        assert list(ms.splits()) == list(Multiset([a, b, a, c]).splits())


class TestSequentAndCalculus:
    def test_sequent_sides(self):
        s = Sequent.one_sided(a, BOT)
        assert s.is_one_sided and str(s) == "|- a, bot"
        t = Sequent.two_sided([a, b], c)
        assert not t.is_one_sided and t.size() == 3

    def test_calculus_names(self):
        for name, calc in CALCULI.items():
            assert calc.name == name
            assert Calculus.from_name(name) == calc

    def test_invalid_extension(self):
        with pytest.raises(ValueError):
            Calculus("MILL", frozenset({"Mix"}))
