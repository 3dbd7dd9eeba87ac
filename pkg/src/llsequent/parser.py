"""ASCII concrete syntax for formulas, sequents and rule files.

Grammar, loosest binding first::

    formula  := par_exp | par_exp "-o" formula
    par_exp  := tens_exp ("#" tens_exp)*
    tens_exp := post_exp ("*" post_exp)*
    post_exp := primary ("^")*
    primary  := atom | "1" | "bot" | "I" | "(" formula ")"

Sequents are ``[formulas] |- [formulas]``.  A rule file holds one or more
blocks of the form::

    rule mix3:
    |- G, a
    |- D, b
    |- L, a^, b^
    ----
    |- G, D, L

In rule files an uppercase identifier standing alone as a sequent item is a
context variable; lowercase identifiers are formula variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .core import (
    ATOM_NAME, BOT, EMPTY, I, ONE, Atom, Bot, Dual, DualAtom, Formula, Lollipop, Multiset,
    One, Par, Sequent, Tensor, UnitI,
)


@dataclass(frozen=True)
class SourcePos:
    line: int = 1
    column: int = 1

    def __post_init__(self):
        if self.line < 1 or self.column < 1:
            raise ValueError("source positions are 1-based")

    def __str__(self):
        return f"{self.line}:{self.column}"


class ParseError(ValueError):
    def __init__(self, message: str, pos: SourcePos, expected=()):
        self.message = message
        self.pos = pos
        self.expected = frozenset(expected)
        detail = f"{pos}: {message}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


@dataclass(frozen=True)
class ContextVar:
    name: str


SchemaItem = Union[ContextVar, Formula]


@dataclass(frozen=True)
class SequentSchema:
    antecedent: tuple = ()
    succedent: tuple = ()

    @property
    def is_one_sided(self) -> bool:
        return not self.antecedent

    def items(self):
        return self.antecedent + self.succedent

    def context_vars(self) -> list[str]:
        return [it.name for it in self.items() if isinstance(it, ContextVar)]

    def __str__(self):
        return pretty_schema(self)


@dataclass(frozen=True)
class RuleFile:
    name: str
    premises: tuple
    conclusion: SequentSchema

    def __str__(self):
        lines = [f"rule {self.name}:"]
        lines += [pretty_schema(p) for p in self.premises]
        lines += ["----", pretty_schema(self.conclusion)]
        return "\n".join(lines)


# -- tokenizer --------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<turnstile>\|-)
  | (?P<lolli>-o)
  | (?P<punct>[()*#^,])
  | (?P<one>1(?![A-Za-z0-9_]))
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
""", re.VERBOSE)

_KIND_TEXT = {"turnstile": "|-", "lolli": "-o"}


@dataclass
class _Tok:
    kind: str
    text: str
    pos: SourcePos


def _tokenize(text: str, line: int = 1) -> list[_Tok]:
    toks, i, col0 = [], 0, 0
    while i < len(text):
        if text[i] == "\n":
            line += 1
            col0 = i + 1
            i += 1
            continue
        m = _TOKEN.match(text, i)
        pos = SourcePos(line, i - col0 + 1)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tok_kind = m.group() if kind == "punct" else kind
            toks.append(_Tok(tok_kind, m.group(), pos))
        i = m.end()
    toks.append(_Tok("eof", "", SourcePos(line, i - col0 + 1)))
    return toks


_PRIMARY_START = {"atom", "1", "bot", "I", "("}


class _Parser:
    def __init__(self, text: str, line: int = 1, schema: bool = False):
        self.toks = _tokenize(text, line)
        self.i = 0
        self.schema = schema

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        tok = self.tok
        what = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"unexpected {what}", tok.pos, expected)

    def expect(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            self.fail({_KIND_TEXT.get(kind, kind)})
        return self.next()

    def formula(self) -> Formula:
        left = self.par_exp()
        if self.tok.kind == "lolli":
            self.next()
            return Lollipop(left, self.formula())
        return left

    def par_exp(self) -> Formula:
        f = self.tens_exp()
        while self.tok.kind == "#":
            self.next()
            f = Par(f, self.tens_exp())
        return f

    def tens_exp(self) -> Formula:
        f = self.post_exp()
        while self.tok.kind == "*":
            self.next()
            f = Tensor(f, self.post_exp())
        return f

    def post_exp(self) -> Formula:
        f = self.primary()
        while self.tok.kind == "^":
            self.next()
            f = Dual(f)
        return f

    def primary(self) -> Formula:
        tok = self.tok
        if tok.kind == "one":
            self.next()
            return ONE
        if tok.kind == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if tok.kind == "ident":
            if tok.text == "bot":
                self.next()
                return BOT
            if tok.text == "I":
                self.next()
                return I
            if ATOM_NAME.match(tok.text):
                self.next()
                return Atom(tok.text)
            if tok.text[0].islower():
                raise ParseError(f"invalid atom name {tok.text!r} (atoms are lowercase)",
                                 tok.pos, _PRIMARY_START)
            raise ParseError(
                f"uppercase identifier {tok.text!r} is not a formula", tok.pos,
                _PRIMARY_START)
        self.fail(_PRIMARY_START)

    def item(self):
        tok = self.tok
        after = self.toks[min(self.i + 1, len(self.toks) - 1)]
        if (self.schema and tok.kind == "ident" and tok.text[0].isupper()
                and tok.text != "I" and after.kind in (",", "turnstile", "eof")):
            self.next()
            return ContextVar(tok.text)
        return self.formula()

    def item_list(self, stop: str) -> list:
        items = []
        if self.tok.kind == stop:
            return items
        items.append(self.item())
        while self.tok.kind == ",":
            self.next()
            items.append(self.item())
        return items

    def sequent_parts(self) -> tuple[list, list]:
        lhs = self.item_list("turnstile")
        if self.tok.kind != "turnstile":
            self.fail({",", "|-"} if lhs else {"|-"} | _PRIMARY_START)
        self.next()
        rhs = self.item_list("eof")
        if self.tok.kind != "eof":
            self.fail({",", "end of input"})
        return lhs, rhs


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.tok.kind != "eof":
        p.fail({"*", "#", "-o", "^", "end of input"})
    return f


def parse_sequent(text: str) -> Sequent:
    lhs, rhs = _Parser(text).sequent_parts()
    return Sequent(Multiset(lhs), Multiset(rhs))


def parse_schema(text: str, line: int = 1) -> SequentSchema:
    lhs, rhs = _Parser(text, line, schema=True).sequent_parts()
    schema = SequentSchema(tuple(lhs), tuple(rhs))
    seen = set()
    for name in schema.context_vars():
        if name in seen:
            raise ParseError(f"context variable {name} used twice in one sequent",
                             SourcePos(line, 1))
        seen.add(name)
    return schema


_HEADER = re.compile(r"rule\s+([A-Za-z_][A-Za-z0-9_\-]*)\s*:\s*\Z")
_SEPARATOR = re.compile(r"-{4,}\s*\Z")


def parse_rules(text: str) -> list[RuleFile]:
    """Parse every rule block in ``text``."""
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    rules: list[RuleFile] = []
    block: list[tuple[int, str]] = []
    header: tuple[int, str] | None = None

    def flush():
        if header is None:
            return
        rules.append(_rule_block(header, block))

    for n, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("rule") and (m := _HEADER.match(line)):
            flush()
            header, block = (n, m.group(1)), []
        elif header is None:
            raise ParseError("expected 'rule <name>:' header", SourcePos(n, 1),
                             {"rule"})
        else:
            block.append((n, line))
    flush()
    if not rules:
        raise ParseError("no rule found", SourcePos(len(lines), 1), {"rule"})
    names = set()
    for r in rules:
        if r.name in names:
            raise ParseError(f"duplicate rule name {r.name!r}", SourcePos(1, 1))
        names.add(r.name)
    return rules


def _rule_block(header, block) -> RuleFile:
    hline, name = header
    seps = [k for k, (_, line) in enumerate(block) if _SEPARATOR.match(line)]
    if not seps:
        last = block[-1][0] + 1 if block else hline + 1
        raise ParseError(f"rule {name}: missing separator line", SourcePos(last, 1),
                         {"----"})
    if len(seps) > 1:
        raise ParseError(f"rule {name}: more than one separator",
                         SourcePos(block[seps[1]][0], 1))
    k = seps[0]
    premises = tuple(parse_schema(line, n) for n, line in block[:k])
    after = block[k + 1:]
    if not after:
        raise ParseError(f"rule {name}: missing conclusion",
                         SourcePos(block[k][0] + 1, 1), {"|-"})
    if len(after) > 1:
        raise ParseError(f"rule {name}: more than one conclusion",
                         SourcePos(after[1][0], 1))
    n, line = after[0]
    return RuleFile(name, premises, parse_schema(line, n))


def parse_rule_file(text: str) -> RuleFile:
    rules = parse_rules(text)
    if len(rules) != 1:
        raise ParseError(f"expected exactly one rule, found {len(rules)}",
                         SourcePos(1, 1))
    return rules[0]


# -- pretty printing --------------------------------------------------------

_PREC = {Lollipop: 1, Par: 2, Tensor: 3, Dual: 4, DualAtom: 4}


def _prec(f) -> int:
    return _PREC.get(type(f), 5)


def pretty(f: Formula) -> str:
    """Render with the fewest parentheses that re-parse to the same tree.

    ``DualAtom`` prints as ``a^``, which parses back as ``Dual(Atom a)``.
    """
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, DualAtom):
        return f.name + "^"
    if isinstance(f, One):
        return "1"
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, UnitI):
        return "I"
    if isinstance(f, Dual):
        return _wrap(f.f, 4) + "^"
    if isinstance(f, Lollipop):
        return f"{_wrap(f.l, 2)} -o {_wrap(f.r, 1)}"
    op = " # " if isinstance(f, Par) else " * "
    p = _prec(f)
    return _wrap(f.l, p) + op + _wrap(f.r, p + 1)


def _wrap(f, min_prec: int) -> str:
    s = pretty(f)
    return s if _prec(f) >= min_prec else f"({s})"


def _items(items) -> str:
    return ", ".join(it.name if isinstance(it, ContextVar) else pretty(it)
                     for it in items)


def pretty_sequent(s: Sequent) -> str:
    lhs, rhs = _items(s.antecedent), _items(s.succedent)
    return " ".join(x for x in (lhs, "|-", rhs) if x)


def pretty_schema(s: SequentSchema) -> str:
    lhs, rhs = _items(s.antecedent), _items(s.succedent)
    return " ".join(x for x in (lhs, "|-", rhs) if x)


__all__ = [
    "ContextVar", "EMPTY", "ParseError", "RuleFile", "SequentSchema", "SourcePos",
    "parse_formula", "parse_rule_file", "parse_rules", "parse_schema",
    "parse_sequent", "pretty", "pretty_schema", "pretty_sequent",
]
