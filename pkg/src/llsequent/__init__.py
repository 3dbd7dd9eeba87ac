"""Linear-logic sequents: native provers for MLL variants and MILL, a rule
checker, and SMT-LIB2 encodings of the same rule systems."""

from .core import (
    BOT, CALCULI, I, ONE, Atom, Bot, Calculus, Dual, DualAtom, Formula, FormulaError,
    Lollipop, Multiset, One, Par, Sequent, Tensor, UnitI, dualize, expand_defs, to_nnf,
)
from .mill import check_entailment, prove_mill
from .mll import decide_equiprovable, prove
from .parser import (
    ParseError, RuleFile, SequentSchema, parse_formula, parse_rule_file, parse_rules,
    parse_schema, parse_sequent, pretty, pretty_sequent,
)
from .proof import NotProvable, ProofTree, Provable, SearchConfig, Unknown, validate_proof
from .rules import CheckConfig, Derivable, NotDerivable, check_rule
from .smt import Equation, SmtScript, SmtTheory, encode_check, encode_theory, paper_theory_listing
from .solver import SolverConfig, SolverResult, Status, run_solver

__version__ = "0.1.0"
