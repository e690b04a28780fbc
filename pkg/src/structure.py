"""
Regularity, flat decomposition and isomorphism of antilattices.

A regular antilattice S is the direct product of its four flat images

    S/(R∨ v R∧)  class LL
    S/(R∨ v L∧)  class LR
    S/(L∨ v R∧)  class RL
    S/(L∨ v L∧)  class RR

and the sizes of those images (the flat signature) determine S up to
isomorphism. decompose() builds the images and checks every step of that
statement on the concrete input.
"""

import logging
from dataclasses import dataclass

import numpy as np

from src import config
from src.algebra_core import (
    FLAT_CLASSES,
    DoubleAlgebra,
    FlatClass,
    direct_product,
    for_all_triples,
    is_antilattice,
    is_homomorphism,
    make_flat,
)
from src.errors import (
    CapacityError,
    ConsistencyError,
    ContractViolation,
    ValidationError,
    WellDefinednessError,
)
from src.relations import (
    CongruenceViolation,
    Partition,
    congruence_violation_double,
    greens_L,
    greens_R,
    partition_join,
    quotient,
)

logger = logging.getLogger(__name__)

# Green's relations in the order they are checked, as (label, operation, side)
GREENS_RELATIONS = (
    ("L(∨)", "join", "L"),
    ("R(∨)", "join", "R"),
    ("L(∧)", "meet", "L"),
    ("R(∧)", "meet", "R"),
)

# Flat class -> (join relation, meet relation) whose join is factored out
FACTOR_RELATIONS = {
    FlatClass.LL: ("R", "R"),
    FlatClass.LR: ("R", "L"),
    FlatClass.RL: ("L", "R"),
    FlatClass.RR: ("L", "L"),
}

JOIN_LEFT_IDENTITIES = (
    "(y∧x) ∨ [y∧(u∨x)] = y∧x",
    "[y∧(u∨x)] ∨ (y∧x) = y∧(u∨x)",
    "(x∧y) ∨ [(u∨x)∧y] = x∧y",
    "[(u∨x)∧y] ∨ (x∧y) = (u∨x)∧y",
)
PRINTED_FOURTH_IDENTITY = "[(u∨x)∧y] ∨ (y∧x) = (u∨x)∧y"


@dataclass(frozen=True, order=True)
class FlatSignature:
    """Sizes (n_LL, n_LR, n_RL, n_RR) of the four flat images."""

    ll: int
    lr: int
    rl: int
    rr: int

    def __post_init__(self):
        for name, value in zip(("ll", "lr", "rl", "rr"), self.as_tuple()):
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise ValidationError(f"signature component {name} must be a positive integer, got {value!r}")

    @classmethod
    def from_sequence(cls, values) -> "FlatSignature":
        values = [int(v) if isinstance(v, np.integer) else v for v in values]
        if len(values) != 4:
            raise ValidationError(f"a flat signature has 4 components, got {len(values)}")
        return cls(*values)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.ll, self.lr, self.rl, self.rr)

    def __iter__(self):
        return iter(self.as_tuple())

    def component(self, cls: FlatClass) -> int:
        return self.as_tuple()[FLAT_CLASSES.index(FlatClass(cls))]

    @property
    def order(self) -> int:
        return self.ll * self.lr * self.rl * self.rr

    def __str__(self) -> str:
        return ",".join(str(v) for v in self)


def parse_signature(text: str) -> FlatSignature:
    """Parse "a,b,c,d" into a FlatSignature."""
    parts = [part.strip() for part in str(text).split(",")]
    if len(parts) != 4:
        raise ValidationError(f"signature {text!r} must have 4 comma-separated parts")
    try:
        values = [int(part) for part in parts]
    except ValueError:
        raise ValidationError(f"signature {text!r} has a non-integer part") from None
    return FlatSignature(*values)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Flat factors of a regular antilattice with the isomorphism onto their product.

    iso[x] holds the factor elements (LL, LR, RL, RR) of x; encoded(x)
    is its index in canonical_product(signature).
    """

    signature: FlatSignature
    factors: tuple[DoubleAlgebra, DoubleAlgebra, DoubleAlgebra, DoubleAlgebra]
    iso: np.ndarray
    congruences: tuple[Partition, Partition, Partition, Partition]

    def encoded(self) -> np.ndarray:
        _, b, c, d = self.signature
        i, j, k, l = self.iso.T
        return ((i * b + j) * c + k) * d + l


@dataclass(frozen=True)
class RegularityCertificate:
    """Which Green's relation fails to be a congruence, and where."""

    relation: str
    violation: CongruenceViolation

    def describe(self) -> str:
        return f"{self.relation} is not a congruence: {self.violation.describe()}"

    def to_dict(self) -> dict:
        return {"relation": self.relation, **self.violation.to_dict()}


def _require_antilattice(A: DoubleAlgebra, what: str) -> None:
    if not is_antilattice(A):
        raise ContractViolation(f"{what} needs an antilattice (both reducts rectangular bands)")


def greens_relations(A: DoubleAlgebra) -> dict[str, Partition]:
    """L and R of both reducts, keyed by the labels in GREENS_RELATIONS."""
    by_side = {"L": greens_L, "R": greens_R}
    tables = {"join": A.join, "meet": A.meet}
    return {label: by_side[side](tables[op]) for label, op, side in GREENS_RELATIONS}


def regularity_certificate(A: DoubleAlgebra) -> RegularityCertificate | None:
    """First Green's relation that is not a two-operation congruence.

    Returns:
        None if A is regular.
    """
    _require_antilattice(A, "regularity_certificate")
    for label, partition in greens_relations(A).items():
        violation = congruence_violation_double(partition, A)
        if violation is not None:
            return RegularityCertificate(label, violation)
    return None


def is_regular(A: DoubleAlgebra) -> bool:
    return regularity_certificate(A) is None


def _identity_family_holds(rel: np.ndarray, other: np.ndarray, side: str, n: int) -> bool:
    """Green's relation `side` of `rel` is compatible with `other`.

    Every element related to x has the form u·x (side L) or x·u (side R)
    in `rel`, so compatibility amounts to four identities in x, y, u.
    """
    if side == "L":
        def related(a, b):
            return (rel[a, b] == a) & (rel[b, a] == b)
    else:
        def related(a, b):
            return (rel[a, b] == b) & (rel[b, a] == a)

    def check(x, y, u):
        v = rel[u, x] if side == "L" else rel[x, u]
        return related(other[y, x], other[y, v]) & related(other[x, y], other[v, y])

    return for_all_triples(n, check)


def is_regular_by_identities(A: DoubleAlgebra) -> bool:
    """Regularity decided by identities in x, y, u rather than by congruence scans.

    For L(∨) these are exactly JOIN_LEFT_IDENTITIES; the families for
    R(∨), L(∧) and R(∧) follow by swapping left with right and ∨ with ∧.
    """
    _require_antilattice(A, "is_regular_by_identities")
    tables = {"join": A.join.table, "meet": A.meet.table}
    for _, op, side in GREENS_RELATIONS:
        other = "meet" if op == "join" else "join"
        if not _identity_family_holds(tables[op], tables[other], side, A.n):
            return False
    return True


def displayed_join_left_identities(A: DoubleAlgebra, as_printed: bool = False) -> dict[str, bool]:
    """Evaluate the four L(∨) identities one by one.

    Args:
        A: An antilattice.
        as_printed: Use (y∧x) in the fourth identity instead of (x∧y).

    Returns:
        Identity text -> whether it holds for all x, y, u.
    """
    j, m = A.join.table, A.meet.table
    fourth_tail = (lambda x, y: m[y, x]) if as_printed else (lambda x, y: m[x, y])
    checks = (
        lambda x, y, u: j[m[y, x], m[y, j[u, x]]] == m[y, x],
        lambda x, y, u: j[m[y, j[u, x]], m[y, x]] == m[y, j[u, x]],
        lambda x, y, u: j[m[x, y], m[j[u, x], y]] == m[x, y],
        lambda x, y, u: j[m[j[u, x], y], fourth_tail(x, y)] == m[j[u, x], y],
    )
    labels = JOIN_LEFT_IDENTITIES[:3] + (
        PRINTED_FOURTH_IDENTITY if as_printed else JOIN_LEFT_IDENTITIES[3],
    )
    return {label: for_all_triples(A.n, check) for label, check in zip(labels, checks)}


def _factor_congruences(A: DoubleAlgebra) -> tuple[Partition, ...]:
    join_rel = {"L": greens_L(A.join), "R": greens_R(A.join)}
    meet_rel = {"L": greens_L(A.meet), "R": greens_R(A.meet)}
    return tuple(
        partition_join(join_rel[j_side], meet_rel[m_side])
        for j_side, m_side in (FACTOR_RELATIONS[cls] for cls in FLAT_CLASSES)
    )


def decompose(A: DoubleAlgebra) -> Decomposition:
    """Split a regular antilattice into its four flat factors.

    Raises:
        ContractViolation: A is not a regular antilattice.
        ConsistencyError: a factor is not flat of its class, or the map
            onto the product is not a bijective homomorphism.
    """
    certificate = regularity_certificate(A)
    if certificate is not None:
        raise ContractViolation(f"cannot decompose a non-regular antilattice: {certificate.describe()}")

    congruences = _factor_congruences(A)
    factors = []
    for cls, theta in zip(FLAT_CLASSES, congruences):
        try:
            factor = quotient(A, theta)
        except WellDefinednessError as exc:
            raise ConsistencyError(f"{cls.value} factor congruence failed: {exc}") from exc
        if factor != make_flat(factor.n, cls):
            raise ConsistencyError(f"{cls.value} quotient of order {factor.n} is not flat of class {cls.value}")
        factors.append(factor)

    sig = FlatSignature(*(f.n for f in factors))
    if sig.order != A.n:
        raise ConsistencyError(f"factor sizes {sig} multiply to {sig.order}, not {A.n}")

    decomposition = Decomposition(
        signature=sig,
        factors=tuple(factors),
        iso=np.stack([theta.labels() for theta in congruences], axis=1),
        congruences=congruences,
    )
    encoded = decomposition.encoded()
    if np.unique(encoded).size != A.n:
        raise ConsistencyError(f"decomposition map of the order-{A.n} algebra is not injective")
    if not is_homomorphism(A, canonical_product(sig), encoded):
        raise ConsistencyError(f"decomposition map of the order-{A.n} algebra is not a homomorphism")

    logger.debug("decomposed order %d algebra with signature %s", A.n, sig)
    return decomposition


def signature(A: DoubleAlgebra) -> FlatSignature:
    return decompose(A).signature


def signature_by_class_counts(A: DoubleAlgebra) -> FlatSignature:
    """Signature from the class counts of the factor congruences.

    Skips the regularity check and the assertions of decompose(); only
    meaningful for regular antilattices.
    """
    return FlatSignature(*(theta.num_classes for theta in _factor_congruences(A)))


def canonical_product(sig) -> DoubleAlgebra:
    """n_LL x n_LR x n_RL x n_RR, nested left to right."""
    sig = sig if isinstance(sig, FlatSignature) else FlatSignature.from_sequence(sig)
    if sig.order > config.max_carrier():
        raise CapacityError(
            f"canonical product of order {sig.order} exceeds the maximum carrier {config.max_carrier()}"
        )
    result = make_flat(sig.ll, FlatClass.LL)
    for cls, size in zip(FLAT_CLASSES[1:], sig.as_tuple()[1:]):
        result = direct_product(result, make_flat(size, cls))
    return result


def are_isomorphic(A: DoubleAlgebra, B: DoubleAlgebra) -> bool:
    """Isomorphism of regular antilattices via their flat signatures."""
    return signature(A) == signature(B)


def _element_invariants(A: DoubleAlgebra) -> list[tuple[int, ...]]:
    idx = np.arange(A.n)
    columns = []
    for t in (A.join.table, A.meet.table):
        columns.append(np.sum(t == idx[:, None], axis=1))   # x*y = x
        columns.append(np.sum(t == idx[None, :], axis=0))   # y*x = x
        columns.append(np.bincount(t.ravel(), minlength=A.n))  # in-degree
    return [tuple(int(c[x]) for c in columns) for x in range(A.n)]


def are_isomorphic_bruteforce(A: DoubleAlgebra, B: DoubleAlgebra) -> tuple[int, ...] | None:
    """Search for an isomorphism A -> B without using any structure theory.

    Candidates for each element are restricted to elements of B with the
    same one-sided and in-degree counts. After each assignment every product
    of two mapped elements is checked: a mapped product must land on its
    image, and an unmapped one must not land on an image already taken.

    Returns:
        The bijection as a tuple (x -> f[x]), or None.
    """
    if A.n != B.n:
        return None
    n = A.n
    limit = config.max_iso_order()
    if n > limit:
        raise CapacityError(f"brute-force isomorphism is limited to order {limit}, got {n}")

    inv_a, inv_b = _element_invariants(A), _element_invariants(B)
    if sorted(inv_a) != sorted(inv_b):
        return None
    candidates = [[b for b in range(n) if inv_b[b] == inv_a[x]] for x in range(n)]

    ops = ((A.join.table, B.join.table), (A.meet.table, B.meet.table))
    f = np.full(n, -1, dtype=np.int64)
    f_inv = np.full(n, -1, dtype=np.int64)

    def consistent(x: int) -> bool:
        mapped = f[: x + 1]
        for ta, tb in ops:
            products = ta[: x + 1, : x + 1]
            images = tb[np.ix_(mapped, mapped)]
            targets = f[products]
            known = targets != -1
            if np.any(targets[known] != images[known]):
                return False
            if np.any(f_inv[images[~known]] != -1):
                return False
        return True

    def extend(x: int) -> bool:
        if x == n:
            return is_homomorphism(A, B, f)
        for b in candidates[x]:
            if f_inv[b] != -1:
                continue
            f[x], f_inv[b] = b, x
            if consistent(x) and extend(x + 1):
                return True
            f[x], f_inv[b] = -1, -1
        return False

    if not extend(0):
        return None
    return tuple(int(b) for b in f)


def is_prime(n: int) -> bool:
    """Trial division."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def is_directly_irreducible(A: DoubleAlgebra) -> bool:
    """A regular antilattice has no proper direct factorisation iff |A| is 1 or prime."""
    return A.n == 1 or is_prime(A.n)


def is_subdirectly_irreducible(A: DoubleAlgebra) -> bool:
    """A regular antilattice is subdirectly irreducible iff |A| is 1 or 2."""
    return A.n <= 2
