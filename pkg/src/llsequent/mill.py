"""Decision procedure for two-sided intuitionistic MLL (tensor, lollipop, I).

Dual and par are handled by definition (``X^ = X -o I``, ``X # Y = X^ -o Y``)
before search.  Every backward rule removes one connective, so the search
terminates; it is exhaustive, so failure means the sequent is unprovable.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .core import (
    CALCULI, EMPTY, I, Atom, Formula, Lollipop, Multiset, Sequent, Tensor, UnitI,
    expand_defs,
)
from .proof import NotProvable, Provable, ProofTree, SearchConfig, Verdict, validate_proof

MILL = CALCULI["mill"]


@lru_cache(maxsize=None)
def _polarity(f: Formula, sign: int) -> tuple[tuple[str, int], ...]:
    c = Counter()

    def walk(g, s):
        if isinstance(g, Atom):
            c[g.name] += s
        elif isinstance(g, Tensor):
            walk(g.l, s)
            walk(g.r, s)
        elif isinstance(g, Lollipop):
            walk(g.l, -s)
            walk(g.r, s)

    walk(f, sign)
    return tuple(c.items())


class _Search:
    def __init__(self):
        self.memo: dict = {}

    def search(self, ante: Multiset, goal: Formula) -> ProofTree | None:
        key = (ante, goal)
        if key not in self.memo:
            self.memo[key] = self._search(ante, goal)
        return self.memo[key]

    @staticmethod
    def _node(ante, goal, rule, premises=(), principal=None):
        return ProofTree(Sequent(ante, Multiset([goal])), rule, tuple(premises), principal)

    def _balanced(self, ante, goal) -> bool:
        bal = Counter(dict(_polarity(goal, 1)))
        for f in ante:
            for name, n in _polarity(f, -1):
                bal[name] += n
        return not any(bal.values())

    def _search(self, ante: Multiset, goal: Formula) -> ProofTree | None:
        if not self._balanced(ante, goal):
            return None
        if isinstance(goal, Atom) and ante.items == (goal,):
            return self._node(ante, goal, "ax")
        if isinstance(goal, UnitI) and not len(ante):
            return self._node(ante, goal, "unit_r")

        # invertible rules
        for f in ante.distinct():
            if isinstance(f, UnitI):
                p = self.search(ante.remove(f), goal)
                return p and self._node(ante, goal, "unit_l", [p], f)
            if isinstance(f, Tensor):
                p = self.search(ante.remove(f).add(f.l, f.r), goal)
                return p and self._node(ante, goal, "tensor_l", [p], f)
        if isinstance(goal, Lollipop):
            p = self.search(ante.add(goal.l), goal.r)
            return p and self._node(ante, goal, "lolli_r", [p], goal)

        if isinstance(goal, Tensor):
            for left, right in ante.splits():
                p1 = self.search(left, goal.l)
                if p1 is None:
                    continue
                p2 = self.search(right, goal.r)
                if p2 is not None:
                    return self._node(ante, goal, "tensor_r", [p1, p2], goal)

        for f in ante.distinct():
            if not isinstance(f, Lollipop):
                continue
            for left, right in ante.remove(f).splits():
                p1 = self.search(left, f.l)
                if p1 is None:
                    continue
                p2 = self.search(right.add(f.r), goal)
                if p2 is not None:
                    return self._node(ante, goal, "lolli_l", [p1, p2], f)
        return None


def prove_mill(s: Sequent, cfg: SearchConfig | None = None) -> Verdict:
    """Decide a single-conclusion sequent ``Γ |- C``.

    Dual and par are expanded first; ``1``, ``bot`` and atomic duals are
    rejected since they are not MILL connectives.
    """
    if len(s.succedent) != 1:
        raise ValueError("MILL sequents need exactly one formula on the right")
    ante = Multiset(expand_defs(f) for f in s.antecedent)
    goal = expand_defs(s.succedent.items[0])
    proof = _Search().search(ante, goal)
    if proof is None:
        return NotProvable()
    errors = validate_proof(proof, MILL)
    if errors:
        raise AssertionError(f"search produced an invalid proof: {errors}")
    return Provable(proof)


def check_entailment(lhs: Formula, rhs: Formula, cfg: SearchConfig | None = None) -> Verdict:
    """Does ``lhs |- rhs`` hold in MILL?"""
    return prove_mill(Sequent(Multiset([lhs]), Multiset([rhs])), cfg)


__all__ = ["MILL", "check_entailment", "prove_mill"]
