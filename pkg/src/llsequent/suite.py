"""The reference result table: native verdicts next to reported and live solver verdicts.

Rows come from ``data/paper_suite.json``.  Each row is one sequent, rule,
equation or consistency check, tagged with the verdict the reference
reports for it (``sat``/``unsat``, ``provable``, ``out-of-memory`` or
``none``).
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from importlib import resources
from typing import Optional

from .core import CALCULI, Multiset, Sequent
from .mill import prove_mill
from .mll import decide_equiprovable, prove
from .parser import RuleFile, parse_formula, parse_rule_file, parse_schema, parse_sequent
from .rules import CheckConfig, check_rule
from .smt import Equation, SmtError, encode_check, encode_theory
from .solver import SolverConfig, run_solver

DEFINITE = {"sat", "unsat", "provable"}
POSITIVE = {"Provable", "Derivable", "Equiprovable"}
NEGATIVE = {"NotProvable", "NotDerivable", "NotEquiprovable"}


@dataclass(frozen=True)
class SuiteEntry:
    name: str
    calculus: str
    kind: str                    # sequent | rule | equation | consistency
    paper_verdict: str
    citation: str = ""
    text: str = ""
    lhs: str = ""
    rhs: str = ""

    def goal(self):
        """The SMT goal for this row, or None for a consistency check."""
        if self.kind == "consistency":
            return None
        if self.kind == "equation":
            return Equation(parse_formula(self.lhs), parse_formula(self.rhs))
        if self.kind == "rule":
            return parse_rule_file(self.text)
        return RuleFile(self.name, (), parse_schema(self.text))


@dataclass(frozen=True)
class SuiteRow:
    rule: str
    calculus: str
    native_verdict: Optional[str]
    paper_verdict: str
    solver_verdict: Optional[str]
    agree: Optional[bool]
    citation: str = ""
    cross_check: Optional[bool] = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> SuiteRow:
        names = {f.name for f in fields(cls)}
        missing = {"rule", "calculus", "native_verdict", "paper_verdict",
                   "solver_verdict", "agree"} - set(d)
        if missing:
            raise ValueError(f"suite row lacks {sorted(missing)}")
        return cls(**{k: v for k, v in d.items() if k in names})


def load_manifest(path=None) -> list[SuiteEntry]:
    if path is None:
        text = resources.files("llsequent").joinpath("data/paper_suite.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return [SuiteEntry(**row) for row in json.loads(text)["rows"]]


def native_verdict(entry: SuiteEntry) -> Optional[str]:
    """Run the native prover or rule checker for one row."""
    if entry.kind == "consistency":
        return None
    if entry.calculus in ("fragment", "mill"):
        return prove_mill(parse_sequent(entry.text)).name
    calc = CALCULI[entry.calculus]
    if entry.kind == "equation":
        one = Sequent(Multiset(), Multiset([parse_formula(entry.lhs)]))
        two = Sequent(Multiset(), Multiset([parse_formula(entry.rhs)]))
        res = decide_equiprovable(one, two, calc)
        if res.agree is None:
            return "Unknown"
        return "Equiprovable" if res.agree else "NotEquiprovable"
    if entry.kind == "rule":
        return check_rule(parse_rule_file(entry.text), calc, CheckConfig()).name
    return prove(parse_sequent(entry.text), calc).name


def solver_verdict(entry: SuiteEntry, cfg: SolverConfig) -> str:
    try:
        theory = encode_theory(entry.calculus)
    except SmtError:
        return "unsupported"
    result = run_solver(encode_check(theory, entry.goal(), negate=True), cfg)
    return str(result)


def agreement(native: Optional[str], reported: str) -> Optional[bool]:
    """Does a native verdict match the reported one?  None when either is silent."""
    if native is None or reported not in DEFINITE:
        return None
    if native not in POSITIVE | NEGATIVE:
        return False
    if reported in ("unsat", "provable"):
        return native in POSITIVE
    return native in NEGATIVE


def cross_check(native: Optional[str], solver: Optional[str]) -> Optional[bool]:
    """Positive native verdicts pair with unsat, negative ones with sat."""
    if native is None or solver not in ("sat", "unsat"):
        return None
    if native in POSITIVE:
        return solver == "unsat"
    if native in NEGATIVE:
        return solver == "sat"
    return None


@dataclass
class SuiteReport:
    rows: list

    @property
    def ok(self) -> bool:
        return all(r.agree is not False for r in self.rows)

    @property
    def cross_disagreements(self) -> list:
        return [r for r in self.rows if r.cross_check is False]

    def to_json(self) -> str:
        return json.dumps({"ok": self.ok, "rows": [r.to_dict() for r in self.rows]}, indent=2)

    def table(self) -> str:
        head = ("rule", "calculus", "native", "reported", "solver", "agree")
        body = []
        for r in self.rows:
            reported = r.paper_verdict if r.paper_verdict in DEFINITE else "no verdict"
            agree = "-" if r.agree is None else ("yes" if r.agree else "NO")
            body.append((r.rule, r.calculus, r.native_verdict or "-", reported,
                         r.solver_verdict or "-", agree))
        widths = [max(len(row[i]) for row in [head, *body]) for i in range(len(head))]
        fmt = "  ".join(f"{{:<{w}}}" for w in widths)
        lines = [fmt.format(*head), fmt.format(*("-" * w for w in widths))]
        lines += [fmt.format(*row) for row in body]
        return "\n".join(line.rstrip() for line in lines)


def run_suite(entries: list[SuiteEntry] | None = None,
              solver: SolverConfig | None = None, workers: int = 4) -> SuiteReport:
    """Evaluate every row; live solver runs happen only when ``solver`` is given."""
    entries = load_manifest() if entries is None else entries
    natives = [native_verdict(e) for e in entries]
    if solver is not None:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            solved = list(pool.map(lambda e: solver_verdict(e, solver), entries))
    else:
        solved = [None] * len(entries)
    rows = []
    for e, nat, sol in zip(entries, natives, solved):
        rows.append(SuiteRow(
            rule=e.name, calculus=e.calculus, native_verdict=nat,
            paper_verdict=e.paper_verdict, solver_verdict=sol,
            agree=agreement(nat, e.paper_verdict), citation=e.citation,
            cross_check=cross_check(nat, sol),
        ))
    return SuiteReport(rows)


__all__ = [
    "SuiteEntry", "SuiteReport", "SuiteRow", "agreement", "cross_check",
    "load_manifest", "native_verdict", "run_suite", "solver_verdict",
]
