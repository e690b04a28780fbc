"""
The sixteen positive subvarieties of regular antilattices.

Each subvariety is generated by a set of flat classes (its atoms), so the
lattice of subvarieties is the Boolean lattice of subsets of
{LL, LR, RL, RR}. Membership is read off the flat signature; the defining
identities are kept alongside as an independent check.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import networkx as nx
import numpy as np

from src.algebra_core import FLAT_CLASSES, DoubleAlgebra, FlatClass
from src.errors import UnknownVarietyError
from src.structure import signature

logger = logging.getLogger(__name__)

LL, LR, RL, RR = FLAT_CLASSES

# Symbol -> atoms, in the column order of the counting table
VARIETY_ATOMS = {
    "RA": frozenset(FLAT_CLASSES),
    "RR^C": frozenset({LL, LR, RL}),
    "RL^C": frozenset({LL, LR, RR}),
    "LR^C": frozenset({LL, RL, RR}),
    "LL^C": frozenset({LR, RL, RR}),
    "s": frozenset({LR, RL}),
    "L*": frozenset({LL, LR}),
    "*R": frozenset({LR, RR}),
    "*L": frozenset({LL, RL}),
    "R*": frozenset({RL, RR}),
    "s*": frozenset({LL, RR}),
    "LL": frozenset({LL}),
    "LR": frozenset({LR}),
    "RL": frozenset({RL}),
    "RR": frozenset({RR}),
    "1": frozenset(),
}
VARIETY_SYMBOLS = list(VARIETY_ATOMS)
SYMBOL_OF_ATOMS = {atoms: symbol for symbol, atoms in VARIETY_ATOMS.items()}

VARIETY_NAMES = {
    "RA": "regular antilattices",
    "RR^C": "complement of RR (trivial RR factor)",
    "RL^C": "complement of RL (trivial RL factor)",
    "LR^C": "complement of LR (trivial LR factor)",
    "LL^C": "complement of LL (trivial LL factor)",
    "s": "skew antilattices",
    "L*": "semi-flat, left-zero join",
    "*R": "semi-flat, right-zero meet",
    "*L": "semi-flat, left-zero meet",
    "R*": "semi-flat, right-zero join",
    "s*": "dual skew antilattices",
    "LL": "flat LL",
    "LR": "flat LR",
    "RL": "flat RL",
    "RR": "flat RR",
    "1": "trivial",
}


@dataclass(frozen=True)
class Variety:
    """A subvariety of regular antilattices, given by its flat atoms."""

    atoms: frozenset[FlatClass]

    @classmethod
    def from_symbol(cls, symbol: str) -> "Variety":
        try:
            return cls(VARIETY_ATOMS[symbol])
        except KeyError:
            raise UnknownVarietyError(symbol, VARIETY_SYMBOLS) from None

    @classmethod
    def from_atoms(cls, atoms) -> "Variety":
        return cls(frozenset(FlatClass(a) for a in atoms))

    @property
    def symbol(self) -> str:
        return SYMBOL_OF_ATOMS[self.atoms]

    @property
    def name(self) -> str:
        return VARIETY_NAMES[self.symbol]

    def __len__(self) -> int:
        return len(self.atoms)

    def __str__(self) -> str:
        return self.symbol


def variety_name(V: Variety) -> str:
    return V.symbol


def parse_variety(symbol) -> Variety:
    if isinstance(symbol, Variety):
        return symbol
    return Variety.from_symbol(str(symbol).strip())


def all_varieties() -> list[Variety]:
    return [Variety(VARIETY_ATOMS[symbol]) for symbol in VARIETY_SYMBOLS]


def membership(A: DoubleAlgebra) -> Variety:
    """Smallest subvariety containing the regular antilattice A."""
    sig = signature(A)
    return Variety(frozenset(cls for cls, size in zip(FLAT_CLASSES, sig) if size > 1))


def contains(V, A: DoubleAlgebra) -> bool:
    return membership(A).atoms <= parse_variety(V).atoms


@dataclass(frozen=True)
class Identity:
    """lhs = rhs as functions of (join, meet, x, y) over index arrays."""

    text: str
    lhs: Callable
    rhs: Callable

    def holds(self, A: DoubleAlgebra) -> bool:
        idx = np.arange(A.n)
        X, Y = idx[:, None], idx[None, :]
        j, m = A.join.table, A.meet.table
        lhs = np.broadcast_to(self.lhs(j, m, X, Y), (A.n, A.n))
        rhs = np.broadcast_to(self.rhs(j, m, X, Y), (A.n, A.n))
        return bool(np.array_equal(lhs, rhs))


def _mirrored(identity: Identity, text: str, swap_join: bool, swap_meet: bool) -> Identity:
    """identity with the arguments of ∨ and/or ∧ swapped everywhere.

    Swapping the arguments of an operation is evaluating on its transposed
    table, which exchanges L and R in that position of every flat class.
    """
    def transposed(f):
        return lambda j, m, x, y: f(j.T if swap_join else j, m.T if swap_meet else m, x, y)

    return Identity(text, transposed(identity.lhs), transposed(identity.rhs))


JOIN_LEFT = Identity("x∨y = x", lambda j, m, x, y: j[x, y], lambda j, m, x, y: x)
JOIN_RIGHT = Identity("x∨y = y", lambda j, m, x, y: j[x, y], lambda j, m, x, y: y)
MEET_LEFT = Identity("x∧y = x", lambda j, m, x, y: m[x, y], lambda j, m, x, y: x)
MEET_RIGHT = Identity("x∧y = y", lambda j, m, x, y: m[x, y], lambda j, m, x, y: y)
SKEW = Identity("x∨y = y∧x", lambda j, m, x, y: j[x, y], lambda j, m, x, y: m[y, x])
SKEW_STAR = Identity("x∨y = x∧y", lambda j, m, x, y: j[x, y], lambda j, m, x, y: m[x, y])
TRIVIAL = Identity("x = y", lambda j, m, x, y: x, lambda j, m, x, y: y)

JOIN_ABSORBS_MEET = Identity("x∨(x∧y) = x", lambda j, m, x, y: j[x, m[x, y]], lambda j, m, x, y: x)
MEET_ABSORBS_JOIN = Identity("x∧(x∨y) = x", lambda j, m, x, y: m[x, j[x, y]], lambda j, m, x, y: x)

DEFINING_IDENTITIES = {
    "RA": (),
    "RR^C": (JOIN_ABSORBS_MEET, MEET_ABSORBS_JOIN),
    "LR^C": (
        _mirrored(JOIN_ABSORBS_MEET, "(x∧y)∨x = x", swap_join=True, swap_meet=False),
        _mirrored(MEET_ABSORBS_JOIN, "x∧(y∨x) = x", swap_join=True, swap_meet=False),
    ),
    "RL^C": (
        _mirrored(JOIN_ABSORBS_MEET, "x∨(y∧x) = x", swap_join=False, swap_meet=True),
        _mirrored(MEET_ABSORBS_JOIN, "(x∨y)∧x = x", swap_join=False, swap_meet=True),
    ),
    "LL^C": (
        _mirrored(JOIN_ABSORBS_MEET, "(y∧x)∨x = x", swap_join=True, swap_meet=True),
        _mirrored(MEET_ABSORBS_JOIN, "(y∨x)∧x = x", swap_join=True, swap_meet=True),
    ),
    "s": (SKEW,),
    "L*": (JOIN_LEFT,),
    "*R": (MEET_RIGHT,),
    "*L": (MEET_LEFT,),
    "R*": (JOIN_RIGHT,),
    "s*": (SKEW_STAR,),
    "LL": (JOIN_LEFT, MEET_LEFT),
    "LR": (JOIN_LEFT, MEET_RIGHT),
    "RL": (JOIN_RIGHT, MEET_LEFT),
    "RR": (JOIN_RIGHT, MEET_RIGHT),
    "1": (TRIVIAL,),
}


def satisfies_defining_identities(V, A: DoubleAlgebra) -> bool:
    """Evaluate the identities attached to V on every pair (x, y) of A.

    "RA" has no identities of its own: within regular antilattices it is
    the whole class.
    """
    return all(identity.holds(A) for identity in DEFINING_IDENTITIES[parse_variety(V).symbol])


def variety_join(V: Variety, W: Variety) -> Variety:
    return Variety(V.atoms | W.atoms)


def variety_meet(V: Variety, W: Variety) -> Variety:
    return Variety(V.atoms & W.atoms)


def variety_complement(V: Variety) -> Variety:
    return Variety(frozenset(FLAT_CLASSES) - V.atoms)


def subvarieties(V: Variety) -> list[Variety]:
    """All W <= V, smallest first."""
    atoms = sorted(V.atoms, key=FLAT_CLASSES.index)
    return [
        Variety(frozenset(subset))
        for k in range(len(atoms) + 1)
        for subset in combinations(atoms, k)
    ]


def variety_hasse_diagram() -> nx.DiGraph:
    """Covering relation of the subvariety lattice, edges pointing upwards."""
    graph = nx.DiGraph()
    for V in all_varieties():
        graph.add_node(V.symbol, atoms=sorted(a.value for a in V.atoms), rank=len(V))
    for V in all_varieties():
        for atom in FLAT_CLASSES:
            if atom not in V.atoms:
                upper = Variety(V.atoms | {atom})
                graph.add_edge(V.symbol, upper.symbol, atom=atom.value)
    return graph
