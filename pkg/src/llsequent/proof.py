"""Proof trees, search verdicts and an independent proof checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .core import (
    CONTRACTION, EMPTY_SEQ, MILL_BASE, MIX, ONE, BOT, I, Atom, Calculus, Dual,
    DualAtom, Formula, Lollipop, Multiset, Par, Sequent, Tensor, dualize,
    is_mill_expanded, normalize_atomic_duals,
)
from .parser import pretty, pretty_sequent

OPAQUE, DEMORGAN = "opaque", "demorgan"

ARITY = {
    "ax": 0, "one": 0, "empty": 0, "hypothesis": 0,
    "bot": 1, "par": 1, "contraction": 1,
    "tensor": 2, "mix": 2, "cut": 2,
    # two-sided intuitionistic rules
    "unit_r": 0, "unit_l": 1, "tensor_l": 1, "tensor_r": 2,
    "lolli_r": 1, "lolli_l": 2,
}
MLL_RULES = {"ax", "one", "empty", "hypothesis", "bot", "par", "contraction",
             "tensor", "mix", "cut"}
MILL_RULES = {"ax", "unit_r", "unit_l", "tensor_l", "tensor_r", "lolli_r", "lolli_l"}


@dataclass(frozen=True)
class ProofTree:
    conclusion: Sequent
    rule: str
    premises: tuple = ()
    principal: Optional[Formula] = None

    def nodes(self) -> Iterator[ProofTree]:
        yield self
        for p in self.premises:
            yield from p.nodes()

    def rule_count(self) -> int:
        return sum(1 for _ in self.nodes())

    def rules_bottom_up(self) -> list[str]:
        """Rule names in the order they are applied, leaves first (post-order)."""
        out = []
        for p in self.premises:
            out.extend(p.rules_bottom_up())
        out.append(self.rule)
        return out

    def render(self, indent: str = "  ") -> str:
        lines = []

        def walk(node, depth):
            label = node.rule
            if node.principal is not None:
                label += f" [{pretty(node.principal)}]"
            lines.append(f"{indent * depth}{pretty_sequent(node.conclusion)}   ({label})")
            for p in node.premises:
                walk(p, depth + 1)

        walk(self, 0)
        return "\n".join(lines)

    def to_dict(self) -> dict:
        d = {"conclusion": pretty_sequent(self.conclusion), "rule": self.rule,
             "premises": [p.to_dict() for p in self.premises]}
        if self.principal is not None:
            d["principal"] = pretty(self.principal)
        return d


@dataclass(frozen=True)
class Provable:
    proof: ProofTree
    name = "Provable"


@dataclass(frozen=True)
class NotProvable:
    name = "NotProvable"


@dataclass(frozen=True)
class Unknown:
    reason: str = ""
    name = "Unknown"


Verdict = Provable | NotProvable | Unknown


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for backward proof search.

    ``c_budget`` caps applications of contraction (default: twice the
    sequent size).  ``duals`` selects how ``Dual`` nodes of non-atomic
    formulas are read: ``"opaque"`` keeps them uninterpreted, paired only by
    the axiom ``|- A, A^``; ``"demorgan"`` pushes them to atoms first.
    """

    c_budget: Optional[int] = None
    duals: str = OPAQUE

    def __post_init__(self):
        if self.duals not in (OPAQUE, DEMORGAN):
            raise ValueError(f"duals must be {OPAQUE!r} or {DEMORGAN!r}")
        if self.c_budget is not None and self.c_budget < 0:
            raise ValueError("c_budget must be non-negative")


# -- validation -------------------------------------------------------------

def is_dual_pair(x: Formula, y: Formula, duals: str = OPAQUE) -> bool:
    """``x`` and ``y`` are each other's linear negation under ``duals``."""
    x, y = normalize_atomic_duals(x), normalize_atomic_duals(y)
    if y == Dual(x) or x == Dual(y):
        return True
    if isinstance(x, Atom) and y == DualAtom(x.name):
        return True
    if isinstance(y, Atom) and x == DualAtom(y.name):
        return True
    if duals == DEMORGAN:
        try:
            return dualize(x) == y
        except ValueError:
            return False
    return False


def validate_proof(proof: ProofTree, calc: Calculus, hypotheses: Iterable[Sequent] = (),
                   allow_cut: bool = False, duals: str = OPAQUE) -> list[str]:
    """Check every node of ``proof`` against the rule schemas of ``calc``.

    Returns a list of human-readable violations; an empty list means the
    tree is a correct derivation.  Search is never re-run.
    """
    hyps = {_norm_seq(h) for h in hypotheses}
    out: list[str] = []
    check = _check_mill if calc.base == MILL_BASE else _check_mll

    def walk(node, path):
        if not isinstance(node, ProofTree):
            out.append(f"{path}: not a proof node")
            return
        arity = ARITY.get(node.rule)
        if arity is None:
            out.append(f"{path}: unknown rule {node.rule!r}")
        elif len(node.premises) != arity:
            out.append(f"{path}: {node.rule} expects {arity} premises, got {len(node.premises)}")
        else:
            msg = check(node, calc, hyps, allow_cut, duals)
            if msg:
                out.append(f"{path}: {node.rule}: {msg}")
        for i, p in enumerate(node.premises):
            walk(p, f"{path}.{i}")

    walk(proof, "root")
    return out


def _norm_seq(s: Sequent) -> Sequent:
    return Sequent(Multiset(map(normalize_atomic_duals, s.antecedent)),
                   Multiset(map(normalize_atomic_duals, s.succedent)))


def _check_mll(node, calc, hyps, allow_cut, duals) -> str | None:
    if node.rule not in MLL_RULES:
        return "not a rule of MLL"
    concl = _norm_seq(node.conclusion)
    prem = [_norm_seq(p.conclusion) for p in node.premises]
    if not concl.is_one_sided or any(not p.is_one_sided for p in prem):
        return "MLL sequents must be one-sided"
    gamma = concl.succedent
    ps = [p.succedent for p in prem]
    rule = node.rule

    if rule == "ax":
        if len(gamma) != 2 or not is_dual_pair(*gamma.items):
            return "conclusion is not a dual pair"
    elif rule == "one":
        if gamma != Multiset([ONE]):
            return "conclusion must be |- 1"
    elif rule == "empty":
        if not calc.has(EMPTY_SEQ):
            return "empty sequent axiom not in calculus"
        if len(gamma):
            return "conclusion must be the empty sequent"
    elif rule == "hypothesis":
        if concl not in hyps:
            return "conclusion is not a hypothesis"
    elif rule == "bot":
        if gamma != ps[0].add(BOT):
            return "conclusion is not premise plus bot"
    elif rule == "contraction":
        if not calc.has(CONTRACTION):
            return "contraction not in calculus"
        if ps[0] != gamma.add(ONE):
            return "premise is not conclusion plus 1"
    elif rule == "par":
        ok = [f for f in gamma.distinct() if isinstance(f, Par)
              and gamma.remove(f).add(f.l, f.r) == ps[0]]
        return _principal_msg(node, ok)
    elif rule == "tensor":
        ok = []
        for f in gamma.distinct():
            if isinstance(f, Tensor) and f.l in ps[0] and f.r in ps[1]:
                if ps[0].remove(f.l).union(ps[1].remove(f.r)) == gamma.remove(f):
                    ok.append(f)
        return _principal_msg(node, ok)
    elif rule == "mix":
        if not calc.has(MIX):
            return "mix not in calculus"
        if ps[0].union(ps[1]) != gamma:
            return "premises do not union to the conclusion"
    elif rule == "cut":
        if not allow_cut:
            return "cut not permitted here"
        ok = []
        for a in ps[0].distinct():
            for b in ps[1].distinct():
                if is_dual_pair(a, b, duals) and \
                        ps[0].remove(a).union(ps[1].remove(b)) == gamma:
                    ok.append(normalize_atomic_duals(a))
        return _principal_msg(node, ok)
    return None


def _principal_msg(node, witnesses) -> str | None:
    if not witnesses:
        return "no principal formula fits the rule schema"
    if node.principal is not None and normalize_atomic_duals(node.principal) not in witnesses:
        return f"recorded principal {pretty(node.principal)} does not fit"
    return None


def _check_mill(node, calc, hyps, allow_cut, duals) -> str | None:
    if node.rule not in MILL_RULES:
        return "not a rule of MILL"
    concl = node.conclusion
    prem = [p.conclusion for p in node.premises]
    for s in [concl, *prem]:
        if len(s.succedent) != 1:
            return "MILL sequents need exactly one succedent formula"
        if not all(map(is_mill_expanded, [*s.antecedent, *s.succedent])):
            return "formulas must be built from atoms, *, -o and I"
    ante, (c,) = concl.antecedent, concl.succedent.items
    rule = node.rule

    if rule == "ax":
        if not (isinstance(c, Atom) and ante == Multiset([c])):
            return "conclusion is not a ⊢ a for an atom a"
    elif rule == "unit_r":
        if c != I or len(ante):
            return "conclusion must be |- I"
    elif rule == "unit_l":
        p = prem[0]
        if p.succedent != concl.succedent or p.antecedent.add(I) != ante:
            return "conclusion is not premise with I added on the left"
    elif rule == "tensor_l":
        p = prem[0]
        ok = [f for f in ante.distinct() if isinstance(f, Tensor)
              and ante.remove(f).add(f.l, f.r) == p.antecedent]
        if p.succedent != concl.succedent:
            return "succedent changed"
        return _principal_msg(node, ok)
    elif rule == "tensor_r":
        if not isinstance(c, Tensor):
            return "succedent is not a tensor"
        p1, p2 = prem
        if p1.succedent.items != (c.l,) or p2.succedent.items != (c.r,):
            return "premise succedents are not the tensor components"
        if p1.antecedent.union(p2.antecedent) != ante:
            return "premise contexts do not union to the conclusion context"
    elif rule == "lolli_r":
        if not isinstance(c, Lollipop):
            return "succedent is not a lollipop"
        p = prem[0]
        if p.succedent.items != (c.r,) or p.antecedent != ante.add(c.l):
            return "premise is not Γ, A ⊢ B"
    elif rule == "lolli_l":
        p1, p2 = prem
        ok = []
        for f in ante.distinct():
            if not isinstance(f, Lollipop) or f.r not in p2.antecedent:
                continue
            if p1.succedent.items == (f.l,) and p2.succedent == concl.succedent and \
                    p1.antecedent.union(p2.antecedent.remove(f.r)) == ante.remove(f):
                ok.append(f)
        return _principal_msg(node, ok)
    return None
