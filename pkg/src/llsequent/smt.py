"""SMT-LIB2 encodings of sequent theories over an uninterpreted sort.

Formulas and contexts live in one sort ``F``.  Inference rules become
universally quantified implications between ``provable``/``entails`` atoms;
a candidate rule follows from a theory when the theory plus the rule's
negation is unsatisfiable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .core import (
    CONTRACTION, EMPTY_SEQ, MILL_BASE, MIX, Atom, Bot, Calculus, Dual, DualAtom,
    Formula, Lollipop, One, Par, Tensor, UnitI, atoms,
)
from .parser import ContextVar, RuleFile, SequentSchema

SExpr = Union[str, list]

BUILTINS = {
    "true": ((), "Bool"), "false": ((), "Bool"),
    "not": (("Bool",), "Bool"),
}
VARIADIC_BOOL = {"and", "or", "=>", "xor"}
LOGIC = "UF"


class SmtError(ValueError):
    pass


# -- s-expressions ----------------------------------------------------------

_SX_TOKEN = re.compile(r'\s+|;[^\n]*|\(|\)|"(?:[^"]|"")*"|\|[^|]*\||[^\s()";|]+')


def read_sexprs(text: str) -> list[SExpr]:
    """Parse SMT-LIB text into nested lists of symbol strings."""
    stack: list[list] = [[]]
    pos = 0
    while pos < len(text):
        m = _SX_TOKEN.match(text, pos)
        if m is None:
            raise SmtError(f"unreadable input at offset {pos}")
        tok = m.group()
        pos = m.end()
        if tok[0].isspace() or tok[0] == ";":
            continue
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) == 1:
                raise SmtError(f"unbalanced ')' at offset {pos - 1}")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise SmtError("unbalanced '(' at end of input")
    return stack[0]


def flat(e: SExpr) -> str:
    if isinstance(e, str):
        return e
    return "(" + " ".join(flat(x) for x in e) + ")"


def render(e: SExpr, indent: int = 0, width: int = 80) -> str:
    """Canonical layout: flat when it fits, otherwise one argument per line."""
    pad = " " * indent
    s = flat(e)
    if isinstance(e, str) or indent + len(s) <= width:
        return pad + s
    head, args = e[0], e[1:]
    if isinstance(head, str) and head in ("forall", "exists"):
        first = f"{pad}({head} {flat(args[0])}"
        rest = args[1:]
    else:
        first = f"{pad}({flat(head)}"
        rest = args
    lines = [first] + [render(a, indent + 2, width) for a in rest]
    return "\n".join(lines) + ")"


# -- theories ---------------------------------------------------------------

@dataclass(frozen=True)
class Axiom:
    label: str
    term: SExpr


@dataclass
class SmtTheory:
    name: str
    sort: str = "F"
    functions: dict = field(default_factory=dict)   # name -> (arg sorts, result sort)
    constants: list = field(default_factory=list)
    axioms: list = field(default_factory=list)

    def signature(self) -> dict:
        sig = dict(BUILTINS)
        for name, decl in self.functions.items():
            sig[name] = decl
        for c in self.constants:
            sig[c] = ((), self.sort)
        return sig

    def used_symbols(self) -> set[str]:
        used = set()

        def walk(e):
            if isinstance(e, str):
                used.add(e)
            else:
                for x in e:
                    walk(x)

        for ax in self.axioms:
            walk(ax.term)
        return used

    def unused_symbols(self) -> list[str]:
        used = self.used_symbols()
        return [s for s in [*self.functions, *self.constants] if s not in used]

    def check(self):
        """Every axiom is a well-sorted Boolean over declared symbols."""
        sig = self.signature()
        sorts = {self.sort, "Bool"}
        for ax in self.axioms:
            got = sort_of(ax.term, sig, {}, sorts)
            if got != "Bool":
                raise SmtError(f"axiom {ax.label!r} is not Boolean")


def sort_of(e: SExpr, sig: dict, env: dict, sorts: set) -> str:
    if isinstance(e, str):
        if e in env:
            return env[e]
        if e not in sig:
            raise SmtError(f"undeclared symbol {e!r}")
        args, res = sig[e]
        if args:
            raise SmtError(f"{e} expects {len(args)} arguments, got 0")
        return res
    if not e:
        raise SmtError("empty application")
    head = e[0]
    if head in ("forall", "exists"):
        if len(e) != 3 or not isinstance(e[1], list) or not e[1]:
            raise SmtError(f"malformed {head}")
        inner = dict(env)
        for b in e[1]:
            if not (isinstance(b, list) and len(b) == 2 and all(isinstance(x, str) for x in b)):
                raise SmtError(f"malformed binding {flat(b)}")
            if b[1] not in sorts:
                raise SmtError(f"unknown sort {b[1]!r}")
            inner[b[0]] = b[1]
        if sort_of(e[2], sig, inner, sorts) != "Bool":
            raise SmtError(f"{head} body is not Boolean")
        return "Bool"
    if not isinstance(head, str):
        raise SmtError(f"cannot apply {flat(head)}")
    arg_sorts = [sort_of(a, sig, env, sorts) for a in e[1:]]
    if head in VARIADIC_BOOL:
        if len(arg_sorts) < 2 or any(s != "Bool" for s in arg_sorts):
            raise SmtError(f"{head} needs two or more Boolean arguments")
        return "Bool"
    if head in ("=", "distinct"):
        if len(arg_sorts) < 2 or len(set(arg_sorts)) != 1:
            raise SmtError(f"{head} needs two or more arguments of one sort")
        return "Bool"
    if head in env:
        raise SmtError(f"variable {head!r} applied to arguments")
    if head not in sig:
        raise SmtError(f"undeclared symbol {head!r}")
    want, res = sig[head]
    if len(want) != len(arg_sorts):
        raise SmtError(f"{head} expects {len(want)} arguments, got {len(arg_sorts)}")
    for i, (w, g) in enumerate(zip(want, arg_sorts)):
        if w != g:
            raise SmtError(f"argument {i + 1} of {head} has sort {g}, expected {w}")
    return res


def _theory(name, functions, constants, axioms) -> SmtTheory:
    th = SmtTheory(
        name=name,
        functions={f: (tuple(args), res) for f, args, res in functions},
        constants=list(constants),
        axioms=[Axiom(label, read_sexprs(text)[0]) for label, text in axioms],
    )
    th.check()
    return th


_ENTAILS = ("entails", ["F", "F"], "Bool")
_PROVABLE = ("provable", ["F"], "Bool")
_COMMA = ("comma", ["F", "F"], "F")
_PAR = ("par", ["F", "F"], "F")
_TENSOR = ("tensor", ["F", "F"], "F")
_LOLLIPOP = ("lollipop", ["F", "F"], "F")
_DUAL = ("dual", ["F"], "F")

_I_RULE = ("rule (i)", "(forall ((x F)) (entails x x))")
_C_RULE = ("rule (c)", "(forall ((x F) (y F) (z F)) "
                       "(= (entails (tensor x y) z) (entails y (lollipop x z))))")

_MLL_AXIOMS = [
    ("comma associativity",
     "(forall ((a F) (b F) (g F)) (= (comma a (comma b g)) (comma (comma a b) g)))"),
    ("comma commutativity", "(forall ((a F) (b F)) (= (comma a b) (comma b a)))"),
    ("rule (bot)", "(forall ((g F)) (=> (provable g) (provable (comma g bot))))"),
    ("rule (1)", "(provable one)"),
    ("rule (par)", "(forall ((g F) (a F) (b F)) (=> (provable (comma (comma g a) b)) "
                   "(provable (comma g (par a b)))))"),
    ("rule (tensor)", "(forall ((g F) (a F) (d F) (b F)) (=> (and (provable (comma g a)) "
                      "(provable (comma d b))) (provable (comma g (comma d (tensor a b))))))"),
    ("rule (ax)", "(forall ((a F)) (provable (comma a (dual a))))"),
    ("rule (cut)", "(forall ((g F) (d F) (a F)) (=> (and (provable (comma g a)) "
                   "(provable (comma d (dual a)))) (provable (comma g d))))"),
]
_MIX_AXIOM = ("rule (mix)", "(forall ((g F) (d F)) (=> (and (provable g) (provable d)) "
                            "(provable (comma g d))))")
_CONTRACTION_AXIOM = ("rule (C)", "(forall ((a F) (b F)) (=> (provable (comma one a)) "
                                  "(provable a)))")

_MILL_AXIOMS = [
    _I_RULE,
    ("rule (o)", "(forall ((x F) (y F) (z F)) (=> (and (entails x y) (entails y z)) "
                 "(entails x z)))"),
    ("rule (tensor)", "(forall ((w F) (x F) (y F) (z F)) (=> (and (entails w x) "
                      "(entails y z)) (entails (tensor w y) (tensor x z))))"),
    ("rule (a)", "(forall ((w F) (x F) (y F) (z F)) (= (entails w (tensor (tensor x y) z)) "
                 "(entails w (tensor x (tensor y z)))))"),
    ("rule (l)", "(forall ((x F) (y F)) (= (entails x (tensor I y)) (entails x y)))"),
    ("rule (r)", "(forall ((x F) (y F)) (= (entails x (tensor y I)) (entails x y)))"),
    ("rule (b)", "(forall ((w F) (x F) (y F)) (= (entails w (tensor x y)) "
                 "(entails w (tensor y x))))"),
    _C_RULE,
    ("dual definition", "(forall ((x F)) (= (dual x) (lollipop x I)))"),
    ("par definition", "(forall ((x F) (y F)) (= (par x y) (lollipop (dual x) y)))"),
]

FRAGMENT = "fragment"
THEORY_NAMES = ("fragment", "mll", "mll-mix", "mll-mix-c", "mill")


def encode_theory(calc: Calculus | str) -> SmtTheory:
    """Axiomatize a calculus, or the two-rule ``fragment`` {(i), (c)}."""
    if isinstance(calc, str):
        if calc == FRAGMENT:
            return _theory("fragment", [_ENTAILS, _TENSOR, _LOLLIPOP], [],
                           [_I_RULE, _C_RULE])
        calc = Calculus.from_name(calc)
    if calc.has(EMPTY_SEQ):
        raise SmtError("the empty-sequent rule has no SMT encoding")
    if calc.base == MILL_BASE:
        return _theory("mill", [_ENTAILS, _PAR, _TENSOR, _LOLLIPOP, _DUAL], ["I"],
                       _MILL_AXIOMS)
    axioms = list(_MLL_AXIOMS)
    if calc.has(MIX):
        axioms.append(_MIX_AXIOM)
    if calc.has(CONTRACTION):
        axioms.append(_CONTRACTION_AXIOM)
    return _theory(calc.name, [_ENTAILS, _PROVABLE, _COMMA, _PAR, _TENSOR, _DUAL],
                   ["bot", "one"], axioms)


# -- goals ------------------------------------------------------------------

@dataclass(frozen=True)
class Equation:
    """Goal asserting two formulas denote the same element of ``F``."""
    lhs: Formula
    rhs: Formula


Goal = Union[RuleFile, Equation]


class _Names:
    """Maps formula and context variables to SMT-safe bound variable names."""

    def __init__(self, reserved):
        self.reserved = set(reserved)
        self.map: dict = {}
        self.order: list[str] = []

    def get(self, key, base):
        if key not in self.map:
            cand, n = base, 1
            while cand in self.reserved:
                cand, n = f"{base}_{n}", n + 1
            self.reserved.add(cand)
            self.map[key] = cand
        return self.map[key]


_UNIT_SYMBOL = {One: "one", Bot: "bot", UnitI: "I"}
_CONNECTIVE = {Tensor: "tensor", Par: "par", Lollipop: "lollipop"}


def _term(f: Formula, names: _Names) -> SExpr:
    if isinstance(f, Atom):
        return names.get(("atom", f.name), f.name)
    if isinstance(f, DualAtom):
        return ["dual", names.get(("atom", f.name), f.name)]
    if isinstance(f, Dual):
        return ["dual", _term(f.f, names)]
    if type(f) in _UNIT_SYMBOL:
        return _UNIT_SYMBOL[type(f)]
    return [_CONNECTIVE[type(f)], _term(f.l, names), _term(f.r, names)]


def _fold(terms: list, op: str) -> SExpr:
    if not terms:
        raise SmtError("empty contexts have no SMT encoding")
    acc = terms[0]
    for t in terms[1:]:
        acc = [op, acc, t]
    return acc


def _schema_term(s: SequentSchema, names: _Names) -> SExpr:
    def item(it):
        if isinstance(it, ContextVar):
            return names.get(("ctx", it.name), it.name.lower())
        return _term(it, names)

    if s.is_one_sided:
        return ["provable", _fold([item(it) for it in s.succedent], "comma")]
    if len(s.succedent) != 1:
        raise SmtError("two-sided goals need exactly one succedent formula")
    return ["entails", _fold([item(it) for it in s.antecedent], "tensor"),
            item(s.succedent[0])]


def goal_term(goal: Goal, theory: SmtTheory) -> SExpr:
    """The goal as a closed Boolean term, universally quantified over its variables."""
    names = _Names(theory.signature())
    # formula variables are bound before context variables
    schemas = [goal.lhs, goal.rhs] if isinstance(goal, Equation) else \
        [*goal.premises, goal.conclusion]
    for s in schemas:
        items = [s] if isinstance(goal, Equation) else s.items()
        for it in items:
            if not isinstance(it, ContextVar):
                for name in _atoms_in_order(it):
                    names.get(("atom", name), name)
    if isinstance(goal, Equation):
        body = ["=", _term(goal.lhs, names), _term(goal.rhs, names)]
    else:
        prem = [_schema_term(p, names) for p in goal.premises]
        concl = _schema_term(goal.conclusion, names)
        if not prem:
            body = concl
        elif len(prem) == 1:
            body = ["=>", prem[0], concl]
        else:
            body = ["=>", ["and", *prem], concl]
    bound = list(names.map.values())
    return ["forall", [[v, theory.sort] for v in bound], body] if bound else body


def _atoms_in_order(f: Formula) -> list[str]:
    if isinstance(f, (Atom, DualAtom)):
        return [f.name]
    if isinstance(f, Dual):
        return _atoms_in_order(f.f)
    if isinstance(f, (Tensor, Par, Lollipop)):
        return _atoms_in_order(f.l) + _atoms_in_order(f.r)
    return []


# -- scripts ----------------------------------------------------------------

@dataclass(frozen=True)
class SmtScript:
    text: str
    theory: str = ""

    def __str__(self):
        return self.text


def encode_check(theory: SmtTheory, goal: Goal | None = None, negate: bool = True) -> SmtScript:
    """Render ``theory`` (plus optionally the goal) as an SMT-LIB2 script."""
    lines = [f"; theory: {theory.name}", f"(set-logic {LOGIC})",
             f"(declare-sort {theory.sort} 0)"]
    for name, (args, res) in theory.functions.items():
        lines.append(f"(declare-fun {name} ({' '.join(args)}) {res})")
    for c in theory.constants:
        lines.append(f"(declare-const {c} {theory.sort})")
    unused = theory.unused_symbols()
    if unused:
        lines.append(f"; declared but unused by the axioms: {' '.join(unused)}")
    for ax in theory.axioms:
        lines.append(f"; {ax.label}")
        lines.append(render(["assert", ax.term]))
    if goal is not None:
        term = goal_term(goal, theory)
        sort_of(term, theory.signature(), {}, {theory.sort, "Bool"})
        label = goal.name if isinstance(goal, RuleFile) else "equation"
        lines.append(f"; goal {label}" + (" (negated)" if negate else ""))
        lines.append(render(["assert", ["not", term] if negate else term]))
    lines.append("(check-sat)")
    return SmtScript("\n".join(lines) + "\n", theory.name)


def check_script(text: str) -> list[SExpr]:
    """Re-read a script and check declarations, arities and sorts."""
    cmds = read_sexprs(text)
    sorts = {"Bool"}
    sig = dict(BUILTINS)
    for cmd in cmds:
        if not isinstance(cmd, list) or not cmd or not isinstance(cmd[0], str):
            raise SmtError(f"not a command: {flat(cmd)}")
        op = cmd[0]
        if op == "declare-sort":
            sorts.add(cmd[1])
        elif op == "declare-fun":
            if len(cmd) != 4 or not isinstance(cmd[2], list):
                raise SmtError(f"malformed declare-fun: {flat(cmd)}")
            for s in [*cmd[2], cmd[3]]:
                if s not in sorts:
                    raise SmtError(f"unknown sort {s!r} in {flat(cmd)}")
            sig[cmd[1]] = (tuple(cmd[2]), cmd[3])
        elif op == "declare-const":
            if cmd[2] not in sorts:
                raise SmtError(f"unknown sort {cmd[2]!r}")
            sig[cmd[1]] = ((), cmd[2])
        elif op == "assert":
            if len(cmd) != 2 or sort_of(cmd[1], sig, {}, sorts) != "Bool":
                raise SmtError(f"assertion is not Boolean: {flat(cmd)}")
        elif op not in ("set-logic", "set-option", "set-info", "check-sat",
                        "get-model", "exit", "push", "pop"):
            raise SmtError(f"unsupported command {op!r}")
    return cmds


def paper_theory_listing(calc: Calculus | str) -> SmtScript:
    """The axioms of one of the reference theories, with no goal."""
    return encode_check(encode_theory(calc))


__all__ = [
    "Axiom", "Equation", "FRAGMENT", "SmtError", "SmtScript", "SmtTheory",
    "THEORY_NAMES", "check_script", "encode_check", "encode_theory", "goal_term",
    "paper_theory_listing", "read_sexprs", "render",
]
