import shutil
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from llsequent.core import (
    BOT, I, ONE, Atom, Dual, DualAtom, Lollipop, Par, Tensor, size,
)

sys.path.insert(0, str(Path(__file__).parent))

GOLDEN = Path(__file__).parent / "golden"
HAVE_Z3 = shutil.which("z3") is not None
needs_z3 = pytest.mark.skipif(not HAVE_Z3, reason="z3 not on PATH")

ATOM_NAMES = ["a", "b", "c"]
# identifiers near the keywords and lexer edges
SURFACE_NAMES = ["a", "x", "y1", "z_0", "bo", "bott", "bots", "one", "i", "ii",
                 "par", "o", "lol", "a_b_c", "q9z"]


def _binary(children, ops):
    return st.one_of(*(st.builds(op, children, children) for op in ops))


def mll_formulas(max_leaves=6, max_size=12, duals=True):
    leaves = st.one_of(
        st.sampled_from(ATOM_NAMES).map(Atom),
        st.sampled_from(ATOM_NAMES).map(DualAtom),
        st.just(ONE), st.just(BOT),
    )

    def extend(children):
        ext = _binary(children, (Tensor, Par))
        if duals:
            ext = st.one_of(ext, children.map(Dual))
        return ext

    return st.recursive(leaves, extend, max_leaves=max_leaves).filter(
        lambda f: size(f) <= max_size)


def nnf_formulas(max_leaves=4):
    return mll_formulas(max_leaves=max_leaves, max_size=99, duals=False)


def mill_formulas(max_leaves=4, defs=False):
    leaves = st.one_of(st.sampled_from(ATOM_NAMES).map(Atom), st.just(I))

    def extend(children):
        ext = _binary(children, (Tensor, Lollipop))
        if defs:
            ext = st.one_of(ext, children.map(Dual),
                            st.builds(Par, children, children))
        return ext

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def surface_formulas(max_leaves=8):
    """Any AST the parser can produce (atomic duals appear as Dual(Atom))."""
    leaves = st.one_of(
        st.sampled_from(SURFACE_NAMES).map(Atom),
        st.sampled_from([ONE, BOT, I]),
    )
    return st.recursive(
        leaves,
        lambda ch: st.one_of(_binary(ch, (Tensor, Par, Lollipop)), ch.map(Dual)),
        max_leaves=max_leaves,
    )


# -- acceptance report -------------------------------------------------------

ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
