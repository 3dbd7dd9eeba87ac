"""Deliberately naive reference provers used as test oracles.

They share nothing with the package's search code: formulas are converted
to plain tuples, contexts are lists, every split is tried by bitmask.  The
only shortcuts are an atom-balance check and a result cache.  Only usable on small inputs.
"""

from __future__ import annotations

import functools

from llsequent import core


def to_tuple(f):
    """MLL formula -> tuple, with negation pushed to atoms by hand."""
    return _nnf(f, False)


def _nnf(f, neg):
    if isinstance(f, core.Atom):
        return ("~", f.name) if neg else ("at", f.name)
    if isinstance(f, core.DualAtom):
        return ("at", f.name) if neg else ("~", f.name)
    if isinstance(f, core.One):
        return ("bot",) if neg else ("one",)
    if isinstance(f, core.Bot):
        return ("one",) if neg else ("bot",)
    if isinstance(f, core.Dual):
        return _nnf(f.f, not neg)
    if isinstance(f, core.Tensor):
        return ("par" if neg else "ten", _nnf(f.l, neg), _nnf(f.r, neg))
    if isinstance(f, core.Par):
        return ("ten" if neg else "par", _nnf(f.l, neg), _nnf(f.r, neg))
    raise TypeError(f)


def _halves(items):
    n = len(items)
    for mask in range(1 << n):
        yield ([x for i, x in enumerate(items) if mask >> i & 1],
               [x for i, x in enumerate(items) if not mask >> i & 1])


def mll_provable(formulas, mix=False) -> bool:
    """Cut-free one-sided MLL (optionally with mix) on a list of formulas."""
    return _mll(tuple(sorted(to_tuple(f) for f in formulas)), mix)


def _atoms(f, acc):
    if f[0] in ("at", "~"):
        acc[f[1]] = acc.get(f[1], 0) + (1 if f[0] == "at" else -1)
    for sub in f[1:]:
        if isinstance(sub, tuple):
            _atoms(sub, acc)
    return acc


def _balanced(ctx):
    acc = {}
    for f in ctx:
        _atoms(f, acc)
    return not any(acc.values())


@functools.cache
def _mll(ctx, mix):
    if not _balanced(ctx):
        return False
    return _mll_search(list(ctx), mix)


def _sub(items, mix):
    return _mll(tuple(sorted(items)), mix)


def _mll_search(ctx, mix):
    if len(ctx) == 2 and {ctx[0][0], ctx[1][0]} == {"at", "~"} and ctx[0][1] == ctx[1][1]:
        return True
    if ctx == [("one",)]:
        return True
    for i, f in enumerate(ctx):
        rest = ctx[:i] + ctx[i + 1:]
        if f[0] == "bot":
            return _sub(rest, mix)
        if f[0] == "par":
            return _sub(rest + [f[1], f[2]], mix)
    for i, f in enumerate(ctx):
        if f[0] != "ten":
            continue
        rest = ctx[:i] + ctx[i + 1:]
        for left, right in _halves(rest):
            if _sub(left + [f[1]], mix) and _sub(right + [f[2]], mix):
                return True
    if mix and len(ctx) >= 2:
        for left, right in _halves(ctx):
            if left and right and _sub(left, mix) and _sub(right, mix):
                return True
    return False


def mill_tuple(f):
    """MILL formula -> tuple over atoms, tensor, lollipop and I, definitions unfolded."""
    if isinstance(f, core.Atom):
        return ("at", f.name)
    if isinstance(f, core.UnitI):
        return ("I",)
    if isinstance(f, core.Tensor):
        return ("ten", mill_tuple(f.l), mill_tuple(f.r))
    if isinstance(f, core.Lollipop):
        return ("lol", mill_tuple(f.l), mill_tuple(f.r))
    if isinstance(f, core.Dual):
        return ("lol", mill_tuple(f.f), ("I",))
    if isinstance(f, core.Par):
        return ("lol", ("lol", mill_tuple(f.l), ("I",)), mill_tuple(f.r))
    raise TypeError(f)


def mill_provable(antecedent, goal) -> bool:
    return _mill([mill_tuple(f) for f in antecedent], mill_tuple(goal))


def _mill(ante, goal):
    if goal[0] == "at" and ante == [goal]:
        return True
    if goal == ("I",) and not ante:
        return True
    for i, f in enumerate(ante):
        rest = ante[:i] + ante[i + 1:]
        if f == ("I",) and _mill(rest, goal):
            return True
        if f[0] == "ten" and _mill(rest + [f[1], f[2]], goal):
            return True
        if f[0] == "lol":
            for left, right in _halves(rest):
                if _mill(left, f[1]) and _mill(right + [f[2]], goal):
                    return True
    if goal[0] == "lol" and _mill(ante + [goal[1]], goal[2]):
        return True
    if goal[0] == "ten":
        for left, right in _halves(ante):
            if _mill(left, goal[1]) and _mill(right, goal[2]):
                return True
    return False
