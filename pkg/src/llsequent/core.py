"""Formulas, multisets, sequents and calculi for multiplicative linear logic.

Formulas are immutable, hashable values.  Two normal forms are used:

* MLL-NNF: duals pushed onto atoms (``DualAtom``), only ``Tensor``/``Par``
  and the units ``One``/``Bot`` as connectives.
* MILL-expanded: only ``Atom``, ``Tensor``, ``Lollipop`` and ``UnitI``, with
  ``X^`` read as ``X -o I`` and ``X # Y`` as ``X^ -o Y``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Union

ATOM_NAME = re.compile(r"[a-z][a-z0-9_]*\Z")


class FormulaError(ValueError):
    """A formula is outside the fragment an operation is defined on."""


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not ATOM_NAME.match(self.name):
            raise FormulaError(f"invalid atom name {self.name!r}")


@dataclass(frozen=True)
class DualAtom:
    name: str

    def __post_init__(self):
        if not ATOM_NAME.match(self.name):
            raise FormulaError(f"invalid atom name {self.name!r}")


@dataclass(frozen=True)
class Dual:
    f: Formula


@dataclass(frozen=True)
class Tensor:
    l: Formula
    r: Formula


@dataclass(frozen=True)
class Par:
    l: Formula
    r: Formula


@dataclass(frozen=True)
class Lollipop:
    l: Formula
    r: Formula


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class UnitI:
    pass


Formula = Union[Atom, DualAtom, Dual, Tensor, Par, Lollipop, One, Bot, UnitI]

ONE = One()
BOT = Bot()
I = UnitI()

_BINARY = (Tensor, Par, Lollipop)
_TAGS = {Atom: 0, DualAtom: 1, One: 2, Bot: 3, UnitI: 4, Dual: 5,
         Tensor: 6, Par: 7, Lollipop: 8}


@lru_cache(maxsize=None)
def formula_key(f: Formula) -> tuple:
    """Total order on formulas; used to keep multisets canonical."""
    tag = _TAGS[type(f)]
    if isinstance(f, (Atom, DualAtom)):
        return (tag, f.name)
    if isinstance(f, Dual):
        return (tag, formula_key(f.f))
    if isinstance(f, _BINARY):
        return (tag, formula_key(f.l), formula_key(f.r))
    return (tag,)


@lru_cache(maxsize=None)
def size(f: Formula) -> int:
    """Number of nodes in the formula tree."""
    if isinstance(f, Dual):
        return 1 + size(f.f)
    if isinstance(f, _BINARY):
        return 1 + size(f.l) + size(f.r)
    return 1


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Dual):
        yield from subformulas(f.f)
    elif isinstance(f, _BINARY):
        yield from subformulas(f.l)
        yield from subformulas(f.r)


def atoms(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, (Atom, DualAtom))}


def is_mll(f: Formula) -> bool:
    return not any(isinstance(g, (Lollipop, UnitI)) for g in subformulas(f))


def is_nnf(f: Formula) -> bool:
    return not any(isinstance(g, (Dual, Lollipop, UnitI)) for g in subformulas(f))


def is_mill_expanded(f: Formula) -> bool:
    return all(isinstance(g, (Atom, Tensor, Lollipop, UnitI)) for g in subformulas(f))


# -- dualization ------------------------------------------------------------

@lru_cache(maxsize=None)
def dualize(f: Formula) -> Formula:
    """De Morgan dual of an MLL formula, in NNF."""
    if isinstance(f, Atom):
        return DualAtom(f.name)
    if isinstance(f, DualAtom):
        return Atom(f.name)
    if isinstance(f, One):
        return BOT
    if isinstance(f, Bot):
        return ONE
    if isinstance(f, Tensor):
        return Par(dualize(f.l), dualize(f.r))
    if isinstance(f, Par):
        return Tensor(dualize(f.l), dualize(f.r))
    if isinstance(f, Dual):
        return to_nnf(f.f)
    raise FormulaError(f"dual of {type(f).__name__} is undefined in MLL")


@lru_cache(maxsize=None)
def to_nnf(f: Formula) -> Formula:
    """Eliminate ``Dual`` nodes by pushing them onto atoms."""
    if isinstance(f, Dual):
        return dualize(f.f)
    if isinstance(f, Tensor):
        return Tensor(to_nnf(f.l), to_nnf(f.r))
    if isinstance(f, Par):
        return Par(to_nnf(f.l), to_nnf(f.r))
    if isinstance(f, (Lollipop, UnitI)):
        raise FormulaError(f"{type(f).__name__} is not an MLL connective")
    return f


@lru_cache(maxsize=None)
def normalize_atomic_duals(f: Formula) -> Formula:
    """Rewrite ``Dual(Atom a)`` to ``DualAtom a``; all other duals stay opaque."""
    if isinstance(f, Dual):
        if isinstance(f.f, Atom):
            return DualAtom(f.f.name)
        return Dual(normalize_atomic_duals(f.f))
    if isinstance(f, _BINARY):
        return type(f)(normalize_atomic_duals(f.l), normalize_atomic_duals(f.r))
    return f


@lru_cache(maxsize=None)
def expand_defs(f: Formula) -> Formula:
    """Rewrite MILL dual and par by their definitions.

    ``X^`` becomes ``X -o I`` and ``X # Y`` becomes ``(X -o I) -o Y``.
    """
    if isinstance(f, Dual):
        return Lollipop(expand_defs(f.f), I)
    if isinstance(f, Par):
        return Lollipop(Lollipop(expand_defs(f.l), I), expand_defs(f.r))
    if isinstance(f, (Tensor, Lollipop)):
        return type(f)(expand_defs(f.l), expand_defs(f.r))
    if isinstance(f, (One, Bot, DualAtom)):
        raise FormulaError(f"{type(f).__name__} is not a MILL connective")
    return f


# -- multisets --------------------------------------------------------------

class Multiset:
    """Finite bag of formulas, stored as a canonically sorted tuple."""

    __slots__ = ("items", "_hash")

    def __init__(self, items: Iterable[Formula] = ()):
        self.items: tuple[Formula, ...] = tuple(sorted(items, key=formula_key))
        self._hash = hash(self.items)

    @classmethod
    def _sorted(cls, items: tuple[Formula, ...]) -> Multiset:
        ms = cls.__new__(cls)
        ms.items = items
        ms._hash = hash(items)
        return ms

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def __contains__(self, f):
        return f in self.items

    def __eq__(self, other):
        return isinstance(other, Multiset) and self.items == other.items

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Multiset({list(self.items)!r})"

    def count(self, f: Formula) -> int:
        return self.items.count(f)

    def union(self, other: Multiset) -> Multiset:
        return Multiset(self.items + other.items)

    def add(self, *fs: Formula) -> Multiset:
        return Multiset(self.items + fs)

    def remove(self, f: Formula) -> Multiset:
        if f not in self.items:
            raise KeyError(f"formula not in multiset: {f!r}")
        i = self.items.index(f)
        return Multiset._sorted(self.items[:i] + self.items[i + 1:])

    def difference(self, other: Multiset) -> Multiset | None:
        """``self - other``, or None when ``other`` is not a sub-multiset."""
        left = Counter(self.items)
        left.subtract(other.items)
        if any(n < 0 for n in left.values()):
            return None
        return Multiset(left.elements())

    def distinct(self) -> list[Formula]:
        seen = []
        for f in self.items:
            if not seen or seen[-1] != f:
                seen.append(f)
        return seen

    def splits(self) -> Iterator[tuple[Multiset, Multiset]]:
        """All ordered 2-partitions ``(left, right)``, each counted once.

        Enumeration order is deterministic: sub-multisets of ``left`` are
        generated lexicographically over per-formula multiplicities.
        """
        groups = []
        for f in self.items:
            if groups and groups[-1][0] == f:
                groups[-1][1] += 1
            else:
                groups.append([f, 1])
        for counts in product(*(range(n + 1) for _, n in groups)):
            left, right = [], []
            for (f, n), k in zip(groups, counts):
                left.extend([f] * k)
                right.extend([f] * (n - k))
            yield Multiset._sorted(tuple(left)), Multiset._sorted(tuple(right))

    def size(self) -> int:
        return sum(size(f) for f in self.items)


EMPTY = Multiset()


def mset_union(a: Multiset, b: Multiset) -> Multiset:
    return a.union(b)


def mset_remove(a: Multiset, f: Formula) -> Multiset:
    return a.remove(f)


# -- sequents and calculi ---------------------------------------------------

@dataclass(frozen=True)
class Sequent:
    antecedent: Multiset = EMPTY
    succedent: Multiset = EMPTY

    @classmethod
    def one_sided(cls, *fs: Formula) -> Sequent:
        return cls(EMPTY, Multiset(fs))

    @classmethod
    def two_sided(cls, lhs: Iterable[Formula], rhs: Formula) -> Sequent:
        return cls(Multiset(lhs), Multiset([rhs]))

    @property
    def is_one_sided(self) -> bool:
        return len(self.antecedent) == 0

    def size(self) -> int:
        return self.antecedent.size() + self.succedent.size()

    def __str__(self):
        from .parser import pretty_sequent
        return pretty_sequent(self)


MLL, MILL_BASE = "MLL", "MILL"
MIX, CONTRACTION, EMPTY_SEQ = "Mix", "C", "EmptySeq"


@dataclass(frozen=True)
class Calculus:
    base: str = MLL
    extensions: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "extensions", frozenset(self.extensions))
        if self.base not in (MLL, MILL_BASE):
            raise ValueError(f"unknown base calculus {self.base!r}")
        unknown = self.extensions - {MIX, CONTRACTION, EMPTY_SEQ}
        if unknown:
            raise ValueError(f"unknown extensions {sorted(unknown)}")
        if self.base == MILL_BASE and self.extensions:
            raise ValueError("MILL admits no extensions")
        if self.extensions & {CONTRACTION, EMPTY_SEQ} and MIX not in self.extensions:
            raise ValueError("C and EmptySeq are only supported on top of MLL+Mix")

    def has(self, ext: str) -> bool:
        return ext in self.extensions

    @property
    def name(self) -> str:
        for key, calc in CALCULI.items():
            if calc == self:
                return key
        return "+".join([self.base, *sorted(self.extensions)])

    @classmethod
    def from_name(cls, name: str) -> Calculus:
        try:
            return CALCULI[name]
        except KeyError:
            raise ValueError(
                f"unknown calculus {name!r}; expected one of {', '.join(CALCULI)}"
            ) from None


CALCULI = {
    "mll": Calculus(MLL),
    "mll-mix": Calculus(MLL, {MIX}),
    "mll-mix-c": Calculus(MLL, {MIX, CONTRACTION}),
    "mll-mix-empty": Calculus(MLL, {MIX, EMPTY_SEQ}),
    "mill": Calculus(MILL_BASE),
}
