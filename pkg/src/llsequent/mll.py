"""Backward proof search for one-sided MLL and its Mix/C/empty-sequent variants.

The search is cut-free when used as a decision procedure.  Invertible rules
(bot, par) are applied eagerly; tensor and mix branch over every 2-partition
of the remaining context.  Contraction grows the sequent, so it is bounded by
an explicit budget and failure with contraction enabled is reported as
``Unknown`` rather than ``NotProvable``.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product
from typing import Iterable, NamedTuple

from .core import (
    BOT, CONTRACTION, EMPTY, EMPTY_SEQ, MIX, MLL, ONE, Atom, Bot, Calculus, Dual,
    DualAtom, Formula, FormulaError, Multiset, One, Par, Sequent, Tensor, dualize,
    is_mll, normalize_atomic_duals, subformulas, to_nnf,
)
from .proof import (
    DEMORGAN, NotProvable, Provable, ProofTree, SearchConfig, Unknown, Verdict,
    is_dual_pair, validate_proof,
)


@lru_cache(maxsize=None)
def _literals(f: Formula) -> tuple[tuple[str, int], ...]:
    """Signed atom occurrences of an NNF formula."""
    c = Counter()
    for g in subformulas(f):
        if isinstance(g, Atom):
            c[g.name] += 1
        elif isinstance(g, DualAtom):
            c[g.name] -= 1
    return tuple(c.items())


@lru_cache(maxsize=None)
def _shape(f: Formula) -> tuple[int, int, int]:
    """(atom occurrences, ones, tensors) of an NNF formula."""
    nat = nones = nten = 0
    for g in subformulas(f):
        if isinstance(g, (Atom, DualAtom)):
            nat += 1
        elif isinstance(g, One):
            nones += 1
        elif isinstance(g, Tensor):
            nten += 1
    return nat, nones, nten


class MLLSearch:
    """Memoised backward search over multisets of formulas.

    ``hypotheses`` are sequents usable as leaves, ``cut_formulas`` the
    formulas a cut may be performed on.  Budgets are totals over the whole
    derivation: ``search(ms, c, k)`` finds a proof with at most ``c``
    contractions and ``k`` cuts.
    """

    def __init__(self, calc: Calculus, duals: str, roots: Iterable[Multiset] = (),
                 hypotheses: Iterable[Multiset] = (), cut_formulas: Iterable[Formula] = ()):
        self.calc = calc
        self.duals = duals
        self.mix = calc.has(MIX)
        self.contraction = calc.has(CONTRACTION)
        self.empty = calc.has(EMPTY_SEQ)
        self.hyps = frozenset(hypotheses)
        self.cuts = []
        for a in cut_formulas:
            d = dualize(a) if duals == DEMORGAN else normalize_atomic_duals(Dual(a))
            self.cuts.append((a, d))
        self.memo: dict = {}

        everything = [f for ms in [*roots, *self.hyps] for f in ms]
        everything += [f for pair in self.cuts for f in pair]
        subs = {g for f in everything for g in subformulas(f)}
        opaque = {g.f for g in subs if isinstance(g, Dual)}
        hyp_subs = {g for ms in self.hyps for f in ms for g in subformulas(f)}
        # formulas that may have to reach a leaf intact are never decomposed eagerly
        self.lazy = frozenset(opaque | hyp_subs)
        self.counting = not opaque and not self.hyps and not self.cuts
        self.exact_leaves = self.counting and not (self.mix or self.contraction or self.empty)
        self.loose_leaves = self.counting and not (self.contraction or self.empty)

    # -- pruning -------------------------------------------------------------

    def _hopeless(self, ms: Multiset) -> bool:
        if not self.counting:
            return False
        bal = Counter()
        for f in ms:
            for name, n in _literals(f):
                bal[name] += n
        if any(bal.values()):
            return True
        if self.loose_leaves and len(ms):
            nat = nones = nten = 0
            for f in ms:
                a, o, t = _shape(f)
                nat, nones, nten = nat + a, nones + o, nten + t
            leaves = nat // 2 + nones
            if self.exact_leaves and leaves != nten + 1:
                return True
            if leaves < nten + 1:
                return True
        return False

    # -- search --------------------------------------------------------------

    def search(self, ms: Multiset, c: int = 0, k: int = 0) -> ProofTree | None:
        key = (ms, c, k)
        if key in self.memo:
            return self.memo[key]
        result = self._search(ms, c, k)
        self.memo[key] = result
        return result

    def _node(self, ms, rule, premises=(), principal=None) -> ProofTree:
        return ProofTree(Sequent(EMPTY, ms), rule, tuple(premises), principal)

    def _search(self, ms: Multiset, c: int, k: int) -> ProofTree | None:
        if ms in self.hyps:
            return self._node(ms, "hypothesis")
        if self._hopeless(ms):
            return None
        n = len(ms)
        if n == 2 and is_dual_pair(*ms.items):
            return self._node(ms, "ax")
        if n == 1 and ms.items[0] == ONE:
            return self._node(ms, "one")
        if n == 0 and self.empty:
            return self._node(ms, "empty")

        if c > 0 and self.contraction:
            p = self.search(ms.add(ONE), c - 1, k)
            if p is not None:
                return self._node(ms, "contraction", [p])

        for f in ms.distinct():
            if isinstance(f, (Bot, Par)) and f not in self.lazy:
                return self._decompose(ms, f, c, k)

        for f in ms.distinct():
            if isinstance(f, (Bot, Par)):
                p = self._decompose(ms, f, c, k)
                if p is not None:
                    return p

        for f in ms.distinct():
            if isinstance(f, Tensor):
                rest = ms.remove(f)
                for left, right in rest.splits():
                    p = self._pair(left.add(f.l), right.add(f.r), c, k)
                    if p is not None:
                        return self._node(ms, "tensor", p, f)

        if self.mix and n >= 2:
            first = ms.items[0]
            for left, right in ms.splits():
                if not len(right) or first not in left:
                    continue
                p = self._pair(left, right, c, k)
                if p is not None:
                    return self._node(ms, "mix", p)

        if k > 0:
            for a, d in self.cuts:
                for left, right in ms.splits():
                    p = self._pair(left.add(a), right.add(d), c, k - 1)
                    if p is not None:
                        return self._node(ms, "cut", p, a)
        return None

    def _decompose(self, ms, f, c, k):
        rest = ms.remove(f)
        if isinstance(f, Bot):
            p = self.search(rest, c, k)
            return None if p is None else self._node(ms, "bot", [p], f)
        p = self.search(rest.add(f.l, f.r), c, k)
        return None if p is None else self._node(ms, "par", [p], f)

    def _pair(self, left, right, c, k):
        """Prove both sides, sharing the remaining budgets between them."""
        for c1, k1 in product(range(c + 1), range(k + 1)):
            p1 = self.search(left, c1, k1)
            if p1 is None:
                continue
            p2 = self.search(right, c - c1, k - k1)
            if p2 is not None:
                return p1, p2
        return None


def prepare(ms: Iterable[Formula], duals: str) -> Multiset:
    fs = list(ms)
    for f in fs:
        if not is_mll(f):
            raise FormulaError(f"not an MLL formula: {f!r}")
    norm = to_nnf if duals == DEMORGAN else normalize_atomic_duals
    return Multiset(norm(f) for f in fs)


def _check_calculus(calc: Calculus):
    if calc.base != MLL:
        raise ValueError(f"{calc.name} is not an MLL calculus")


def prove(s: Sequent, calc: Calculus, cfg: SearchConfig | None = None) -> Verdict:
    """Decide ``s`` in ``calc`` (bounded search when contraction is enabled)."""
    cfg = cfg or SearchConfig()
    _check_calculus(calc)
    if not s.is_one_sided:
        raise ValueError("MLL prover expects a one-sided sequent |- Γ")
    ms = prepare(s.succedent, cfg.duals)
    engine = MLLSearch(calc, cfg.duals, roots=[ms])
    if calc.has(CONTRACTION):
        budget = cfg.c_budget if cfg.c_budget is not None else 2 * ms.size()
        for c in range(budget + 1):
            proof = engine.search(ms, c, 0)
            if proof is not None:
                return _checked(proof, calc, cfg)
        return Unknown("c-budget exhausted")
    proof = engine.search(ms)
    if proof is None:
        return NotProvable()
    return _checked(proof, calc, cfg)


def _checked(proof: ProofTree, calc: Calculus, cfg: SearchConfig) -> Provable:
    errors = validate_proof(proof, calc, duals=cfg.duals)
    if errors:
        raise AssertionError(f"search produced an invalid proof: {errors}")
    return Provable(proof)


class EquiProvability(NamedTuple):
    first: Verdict
    second: Verdict
    agree: bool | None


def decide_equiprovable(s1: Sequent, s2: Sequent, calc: Calculus,
                        cfg: SearchConfig | None = None) -> EquiProvability:
    """Prove both sequents; ``agree`` is None when either search is inconclusive."""
    v1, v2 = prove(s1, calc, cfg), prove(s2, calc, cfg)
    if isinstance(v1, Unknown) or isinstance(v2, Unknown):
        return EquiProvability(v1, v2, None)
    return EquiProvability(v1, v2, type(v1) is type(v2))
