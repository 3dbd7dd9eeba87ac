"""Derivability of schematic inference rules with premises.

A rule is checked by replacing every context variable and formula variable
with a fresh atom, adding the premises as hypothesis leaves, and searching
for a derivation of the conclusion.  Cut is allowed here, restricted to a
finite candidate set and a total budget; without premises the question is
plain provability and is delegated to the decision procedure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import (
    CONTRACTION, MLL, Atom, Calculus, Dual, DualAtom, Formula, Multiset, Sequent,
    dualize, formula_key, normalize_atomic_duals, subformulas, atoms,
)
from .mll import MLLSearch, prepare, prove
from .parser import ContextVar, RuleFile, SequentSchema
from .proof import (
    DEMORGAN, OPAQUE, NotProvable, Provable, ProofTree, SearchConfig, Unknown,
    validate_proof,
)


@dataclass(frozen=True)
class CheckConfig:
    cut_budget: int = 4
    c_budget: Optional[int] = None
    duals: str = OPAQUE

    def search_config(self) -> SearchConfig:
        return SearchConfig(c_budget=self.c_budget, duals=self.duals)


@dataclass(frozen=True)
class Derivable:
    derivation: ProofTree
    hypotheses: tuple = ()
    name = "Derivable"


@dataclass(frozen=True)
class NotDerivable:
    name = "NotDerivable"


RuleVerdict = Derivable | NotDerivable | Unknown


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class Skolemized:
    hypotheses: tuple      # of Multiset
    goal: Multiset
    context_atoms: frozenset = field(default_factory=frozenset)


def _check_schema(s: SequentSchema, rule: RuleFile):
    if not s.is_one_sided:
        raise RuleError(f"rule {rule.name}: MLL rules must be one-sided")
    names = s.context_vars()
    if len(names) != len(set(names)):
        raise RuleError(f"rule {rule.name}: context variable repeated in '{s}'")


def skolemize(rule: RuleFile, duals: str = OPAQUE) -> Skolemized:
    """Turn each context variable into one fresh atom; formula variables stay atoms."""
    schemas = [*rule.premises, rule.conclusion]
    for s in schemas:
        _check_schema(s, rule)
    used = set()
    for s in schemas:
        for it in s.items():
            if not isinstance(it, ContextVar):
                used |= atoms(it)
    fresh = {}
    for s in schemas:
        for name in s.context_vars():
            if name not in fresh:
                base = f"ctx_{name.lower()}"
                cand, n = base, 1
                while cand in used:
                    cand, n = f"{base}{n}", n + 1
                used.add(cand)
                fresh[name] = Atom(cand)

    def side(s):
        return prepare([fresh[it.name] if isinstance(it, ContextVar) else it
                        for it in s.succedent], duals)

    return Skolemized(tuple(side(p) for p in rule.premises), side(rule.conclusion),
                      frozenset(a.name for a in fresh.values()))


def instantiate_contexts(rule: RuleFile, mapping: dict) -> RuleFile:
    """Replace context variables by lists of schema items."""
    def subst(s):
        items = []
        for it in s.succedent:
            if isinstance(it, ContextVar) and it.name in mapping:
                items.extend(mapping[it.name])
            else:
                items.append(it)
        return SequentSchema(s.antecedent, tuple(items))

    return RuleFile(rule.name, tuple(subst(p) for p in rule.premises), subst(rule.conclusion))


def cut_candidates(sk: Skolemized, duals: str = OPAQUE) -> list[Formula]:
    """Subformulas of the problem and their duals, one per dual pair.

    Context atoms are excluded: a derivation that cuts on them would not lift
    to arbitrary contexts.
    """
    subs = {g for ms in (*sk.hypotheses, sk.goal) for f in ms for g in subformulas(f)}
    pairs = set()
    for g in subs:
        d = dualize(g) if duals == DEMORGAN else normalize_atomic_duals(Dual(g))
        pair = tuple(sorted((g, d), key=formula_key))
        if not any(isinstance(x, (Atom, DualAtom)) and x.name in sk.context_atoms
                   for x in pair):
            pairs.add(pair)
    return [a for a, _ in sorted(pairs, key=lambda p: formula_key(p[0]))]


def lifting_violations(proof: ProofTree, context_atoms) -> list[str]:
    """Context atoms must never be principal (axiom pair or cut formula)."""
    out = []
    for node in proof.nodes():
        fs = node.conclusion.succedent
        if node.rule == "ax" and any(isinstance(f, (Atom, DualAtom)) and
                                     f.name in context_atoms for f in fs):
            out.append(f"axiom on context atom: {node.conclusion}")
        if node.rule == "cut" and node.principal is not None and \
                isinstance(node.principal, (Atom, DualAtom)) and \
                node.principal.name in context_atoms:
            out.append(f"cut on context atom: {node.conclusion}")
    return out


def check_rule(rule: RuleFile, calc: Calculus, cfg: CheckConfig | None = None) -> RuleVerdict:
    cfg = cfg or CheckConfig()
    if calc.base != MLL:
        raise RuleError("rule checking is defined for MLL calculi only")
    sk = skolemize(rule, cfg.duals)

    if not sk.hypotheses:
        v = prove(Sequent(Multiset(), sk.goal), calc, cfg.search_config())
        if isinstance(v, Provable):
            return Derivable(v.proof)
        if isinstance(v, NotProvable):
            return NotDerivable()
        return v

    cands = cut_candidates(sk, cfg.duals)
    engine = MLLSearch(calc, cfg.duals, roots=[sk.goal], hypotheses=sk.hypotheses,
                       cut_formulas=cands)
    if calc.has(CONTRACTION):
        c_max = cfg.c_budget if cfg.c_budget is not None else 2 * sk.goal.size()
    else:
        c_max = 0
    hyps = tuple(Sequent(Multiset(), h) for h in sk.hypotheses)
    for total in range(c_max + cfg.cut_budget + 1):
        for c in range(min(total, c_max) + 1):
            k = total - c
            if k > cfg.cut_budget:
                continue
            proof = engine.search(sk.goal, c, k)
            if proof is None:
                continue
            errors = validate_proof(proof, calc, hyps, allow_cut=True, duals=cfg.duals)
            errors += lifting_violations(proof, sk.context_atoms)
            if errors:
                raise AssertionError(f"rule search produced an invalid derivation: {errors}")
            return Derivable(proof, hyps)
    return Unknown(f"no derivation within cut budget {cfg.cut_budget}")


__all__ = [
    "CheckConfig", "Derivable", "NotDerivable", "RuleError", "RuleVerdict",
    "Skolemized", "check_rule", "cut_candidates", "instantiate_contexts",
    "lifting_violations", "skolemize",
]
