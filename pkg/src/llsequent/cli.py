"""Command-line interface: ``llsequent <command> ...``.

Exit codes: 0 provable/derivable (or success), 1 not provable, 2 unknown,
64 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import CALCULI, FormulaError
from .mill import prove_mill
from .mll import prove
from .parser import ParseError, parse_formula, parse_rules, parse_sequent, pretty, pretty_sequent
from .proof import DEMORGAN, OPAQUE, NotProvable, Provable, SearchConfig
from .rules import CheckConfig, Derivable, NotDerivable, RuleError, check_rule
from .smt import THEORY_NAMES, SmtError, encode_check, encode_theory
from .solver import SolverConfig, Status, run_solver
from .suite import load_manifest, run_suite

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _verdict_code(name: str) -> int:
    if name in ("Provable", "Derivable"):
        return EXIT_OK
    if name in ("NotProvable", "NotDerivable"):
        return EXIT_NO
    return EXIT_UNKNOWN


def _ast(f) -> dict | str:
    """A JSON-friendly view of a formula tree."""
    kind = type(f).__name__
    if hasattr(f, "name"):
        return {"type": kind, "name": f.name}
    if hasattr(f, "l"):
        return {"type": kind, "left": _ast(f.l), "right": _ast(f.r)}
    if hasattr(f, "f"):
        return {"type": kind, "arg": _ast(f.f)}
    return {"type": kind}


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def _solver_config(args) -> SolverConfig:
    cfg = SolverConfig.from_file(args.config) if args.config else SolverConfig()
    if args.timeout is not None:
        cfg = SolverConfig(cfg.command, cfg.flags, args.timeout, cfg.memory_mb)
    return cfg


# -- commands ---------------------------------------------------------------

def cmd_prove(args) -> int:
    seq = parse_sequent(args.sequent)
    cfg = SearchConfig(c_budget=args.c_budget, duals=args.duals)
    if args.calculus == "mill":
        verdict = prove_mill(seq, cfg)
    else:
        verdict = prove(seq, CALCULI[args.calculus], cfg)
    if args.format == "json":
        out = {"sequent": pretty_sequent(seq), "calculus": args.calculus,
               "verdict": verdict.name}
        if isinstance(verdict, Provable):
            out["rules"] = verdict.proof.rule_count()
            if args.show_proof:
                out["proof"] = verdict.proof.to_dict()
        elif not isinstance(verdict, NotProvable):
            out["reason"] = verdict.reason
        print(json.dumps(out, indent=2))
    else:
        line = verdict.name
        if not isinstance(verdict, (Provable, NotProvable)):
            line += f" ({verdict.reason})"
        print(line)
        if isinstance(verdict, Provable) and args.show_proof:
            print(verdict.proof.render())
    return _verdict_code(verdict.name)


def cmd_parse(args) -> int:
    text = args.text
    if "|-" in text:
        seq = parse_sequent(text)
        if args.format == "json":
            print(json.dumps({"antecedent": [_ast(f) for f in seq.antecedent],
                              "succedent": [_ast(f) for f in seq.succedent]}, indent=2))
        else:
            print(pretty_sequent(seq))
            print(repr(seq))
    else:
        f = parse_formula(text)
        if args.format == "json":
            print(json.dumps(_ast(f), indent=2))
        else:
            print(pretty(f))
            print(repr(f))
    return EXIT_OK


def cmd_check_rule(args) -> int:
    rules = parse_rules(_read(args.file))
    if not rules:
        raise UsageError(f"{args.file}: no rules found")
    calc = CALCULI[args.calculus]
    cfg = CheckConfig(cut_budget=args.cut_budget, c_budget=args.c_budget, duals=args.duals)
    worst = EXIT_OK
    results = []
    for rule in rules:
        v = check_rule(rule, calc, cfg)
        code = _verdict_code(v.name)
        worst = max(worst, code)
        entry = {"rule": rule.name, "calculus": args.calculus, "verdict": v.name}
        if isinstance(v, Derivable) and args.show_proof:
            entry["derivation"] = v.derivation.to_dict()
        elif not isinstance(v, (Derivable, NotDerivable)):
            entry["reason"] = v.reason
        results.append((v, entry))
    if args.format == "json":
        print(json.dumps([e for _, e in results], indent=2))
    else:
        for v, e in results:
            line = f"{e['rule']}: {e['verdict']}"
            if "reason" in e:
                line += f" ({e['reason']})"
            print(line)
            if isinstance(v, Derivable) and args.show_proof:
                print(v.derivation.render())
    return worst


def cmd_emit_smt(args) -> int:
    theory = encode_theory(args.calculus)
    goal = None
    if args.goal:
        rules = parse_rules(_read(args.goal))
        if len(rules) != 1:
            raise UsageError(f"{args.goal}: expected exactly one rule, found {len(rules)}")
        goal = rules[0]
    script = encode_check(theory, goal, negate=args.negate)
    if args.output:
        Path(args.output).write_text(script.text)
    else:
        sys.stdout.write(script.text)
    return EXIT_OK


def cmd_run_smt(args) -> int:
    result = run_solver(_read(args.script), _solver_config(args))
    if args.format == "json":
        print(json.dumps({"status": result.status.value, "elapsed": round(result.elapsed, 3),
                          "message": result.message}, indent=2))
    else:
        print(result)
    if args.show_output and result.output:
        print(result.output, end="")
    if result.definite:
        return EXIT_OK
    if result.status is Status.TOOL_ERROR:
        print(f"solver: {result.message}", file=sys.stderr)
        return EXIT_NO
    return EXIT_UNKNOWN


def cmd_paper_suite(args) -> int:
    entries = load_manifest(args.manifest)
    solver = _solver_config(args) if args.with_solver else None
    report = run_suite(entries, solver, workers=args.jobs)
    print(report.to_json() if args.format == "json" else report.table())
    return EXIT_OK if report.ok else EXIT_NO


# -- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="llsequent", description="Linear-logic sequent toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")

    def search_flags(sp):
        sp.add_argument("--duals", choices=(OPAQUE, DEMORGAN), default=OPAQUE,
                        help="reading of negated compound formulas (default: opaque)")
        sp.add_argument("--c-budget", type=int, default=None,
                        help="maximum contraction steps (default: twice the sequent size)")

    def solver_flags(sp):
        sp.add_argument("--config", help="key=value solver configuration file")
        sp.add_argument("--timeout", type=float, default=None, help="seconds per solver run")

    sp = sub.add_parser("prove", help="decide a sequent")
    sp.add_argument("sequent")
    sp.add_argument("--calculus", choices=sorted(CALCULI), default="mll-mix")
    sp.add_argument("--show-proof", action="store_true")
    search_flags(sp)
    fmt(sp)
    sp.set_defaults(func=cmd_prove)

    sp = sub.add_parser("parse", help="parse a formula or sequent and echo its tree")
    sp.add_argument("text")
    fmt(sp)
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("check-rule", help="check the rules in a rule file")
    sp.add_argument("file", help="rule file, or - for stdin")
    sp.add_argument("--calculus", choices=sorted(c for c in CALCULI if c != "mill"),
                    default="mll-mix")
    sp.add_argument("--cut-budget", type=int, default=4)
    sp.add_argument("--show-proof", action="store_true")
    search_flags(sp)
    fmt(sp)
    sp.set_defaults(func=cmd_check_rule)

    sp = sub.add_parser("emit-smt", help="print an SMT-LIB2 script")
    sp.add_argument("--calculus", choices=THEORY_NAMES, default="mll-mix")
    sp.add_argument("--goal", help="rule file holding one rule to check")
    sp.add_argument("--negate", action="store_true", help="assert the goal's negation")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_emit_smt)

    sp = sub.add_parser("run-smt", help="run the configured solver on a script")
    sp.add_argument("script", help="SMT-LIB2 file, or - for stdin")
    sp.add_argument("--show-output", action="store_true", help="echo raw solver output")
    solver_flags(sp)
    fmt(sp)
    sp.set_defaults(func=cmd_run_smt)

    sp = sub.add_parser("paper-suite", help="run the reference result table")
    sp.add_argument("--with-solver", action="store_true")
    sp.add_argument("--manifest", help="alternative manifest JSON")
    sp.add_argument("--jobs", type=int, default=4, help="concurrent solver runs")
    solver_flags(sp)
    fmt(sp)
    sp.set_defaults(func=cmd_paper_suite)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
    except (UsageError, FormulaError, RuleError, SmtError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
