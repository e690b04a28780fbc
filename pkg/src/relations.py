"""
Equivalence relations on finite carriers.

Partitions are stored as normalized label tuples; pair sets appear only
where composition of relations is needed. Green's relations are computed
pairwise from their defining equations and must come out transitive.
"""

import logging
from dataclasses import dataclass, replace

import numpy as np
from networkx.utils import UnionFind

from src.algebra_core import CHUNK_CELLS, DoubleAlgebra, OpTable, is_band, table_from_array
from src.errors import ContractViolation, ShapeError, ValidationError, WellDefinednessError

logger = logging.getLogger(__name__)


def _normalize(labels) -> tuple[int, ...]:
    ids = {}
    return tuple(ids.setdefault(label, len(ids)) for label in labels)


@dataclass(frozen=True)
class Partition:
    """An equivalence on {0, ..., n-1}; class ids follow first appearance."""

    n: int
    class_of: tuple[int, ...]

    def __post_init__(self):
        labels = list(self.class_of)
        if len(labels) != self.n:
            raise ShapeError(f"partition of {self.n} elements got {len(labels)} labels")
        object.__setattr__(self, "class_of", _normalize(labels))

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls(n, tuple(range(n)))

    @classmethod
    def universal(cls, n: int) -> "Partition":
        return cls(n, (0,) * n)

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        labels = [label.item() if isinstance(label, np.generic) else label for label in labels]
        return cls(len(labels), tuple(labels))

    @classmethod
    def from_classes(cls, n: int, classes) -> "Partition":
        """Build from explicit blocks that must cover {0, ..., n-1} exactly once."""
        labels = [None] * n
        for block_id, block in enumerate(classes):
            for x in block:
                if isinstance(x, bool) or not isinstance(x, (int, np.integer)) or not 0 <= x < n:
                    raise ValidationError(f"class member {x!r} is outside [0, {n})")
                if labels[x] is not None:
                    raise ValidationError(f"element {x} appears in more than one class")
                labels[x] = block_id
        missing = [x for x, label in enumerate(labels) if label is None]
        if missing:
            raise ValidationError(f"elements {missing} belong to no class")
        return cls(n, tuple(labels))

    @property
    def num_classes(self) -> int:
        return max(self.class_of) + 1 if self.n else 0

    def classes(self) -> list[list[int]]:
        """Blocks as sorted lists, ordered by least element."""
        blocks = [[] for _ in range(self.num_classes)]
        for x, label in enumerate(self.class_of):
            blocks[label].append(x)
        return blocks

    def labels(self) -> np.ndarray:
        return np.asarray(self.class_of, dtype=np.int64)

    def matrix(self) -> np.ndarray:
        c = self.labels()
        return c[:, None] == c[None, :]

    def related(self, x: int, y: int) -> bool:
        return self.class_of[x] == self.class_of[y]

    def pairs(self) -> frozenset[tuple[int, int]]:
        xs, ys = np.nonzero(self.matrix())
        return frozenset(zip(xs.tolist(), ys.tolist()))


def _require_same_size(n: int, m: int, what: str) -> None:
    if n != m:
        raise ShapeError(f"{what}: carrier sizes differ ({n} vs {m})")


def _relation_to_partition(rel: np.ndarray, name: str) -> Partition:
    n = rel.shape[0]
    if not (np.all(np.diagonal(rel)) and np.array_equal(rel, rel.T)):
        raise ContractViolation(f"Green's relation {name} is not reflexive and symmetric")
    as_int = rel.astype(np.int64)
    closure = (as_int @ as_int) > 0
    if not np.array_equal(closure, rel):
        raise ContractViolation(f"Green's relation {name} is not transitive")
    # first related element of each row is the least member of the class
    return Partition(n, tuple(np.argmax(rel, axis=1).tolist()))


def _require_band(t: OpTable, name: str) -> None:
    if not is_band(t):
        raise ContractViolation(f"Green's relation {name} needs a band table")


def greens_L(t: OpTable) -> Partition:
    """x L y iff xy = x and yx = y."""
    _require_band(t, "L")
    s = t.table
    idx = np.arange(t.n)
    rel = (s == idx[:, None]) & (s.T == idx[None, :])
    return _relation_to_partition(rel, "L")


def greens_R(t: OpTable) -> Partition:
    """x R y iff xy = y and yx = x."""
    _require_band(t, "R")
    s = t.table
    idx = np.arange(t.n)
    rel = (s == idx[None, :]) & (s.T == idx[:, None])
    return _relation_to_partition(rel, "R")


def greens_D(t: OpTable) -> Partition:
    """x D y iff xyx = x and yxy = y."""
    _require_band(t, "D")
    s = t.table
    idx = np.arange(t.n)
    X, Y = idx[:, None], idx[None, :]
    rel = (s[s[X, Y], X] == X) & (s[s[Y, X], Y] == Y)
    return _relation_to_partition(rel, "D")


def partition_join(p: Partition, q: Partition) -> Partition:
    """Least partition coarser than both, via union-find over both relations."""
    _require_same_size(p.n, q.n, "partition_join")
    uf = UnionFind(range(p.n))
    for blocks in (p.classes(), q.classes()):
        for block in blocks:
            uf.union(*block)
    return Partition(p.n, tuple(uf[x] for x in range(p.n)))


def partition_meet(p: Partition, q: Partition) -> Partition:
    _require_same_size(p.n, q.n, "partition_meet")
    return Partition(p.n, tuple(zip(p.class_of, q.class_of)))


def relations_compose(p: Partition, q: Partition) -> frozenset[tuple[int, int]]:
    """The pair set {(x, z) : x p y and y q z for some y}."""
    _require_same_size(p.n, q.n, "relations_compose")
    product = p.matrix().astype(np.int64) @ q.matrix().astype(np.int64)
    xs, zs = np.nonzero(product > 0)
    return frozenset(zip(xs.tolist(), zs.tolist()))


@dataclass(frozen=True)
class CongruenceViolation:
    """x and y are related but x*z and y*z (side "right") or z*x and z*y
    (side "left") are not."""

    x: int
    y: int
    z: int
    side: str
    operation: str = ""

    def describe(self) -> str:
        op = {"join": "∨", "meet": "∧"}.get(self.operation, "·")
        if self.side == "right":
            lhs, rhs = f"{self.x}{op}{self.z}", f"{self.y}{op}{self.z}"
        else:
            lhs, rhs = f"{self.z}{op}{self.x}", f"{self.z}{op}{self.y}"
        return f"{self.x} ~ {self.y} but {lhs} and {rhs} are in different classes"

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "y": self.y,
            "z": self.z,
            "side": self.side,
            "operation": self.operation,
        }


def congruence_violation(p: Partition, t: OpTable) -> CongruenceViolation | None:
    """First (x, y, z) breaking compatibility of p with t, scanning z in chunks.

    Returns:
        None when p is a congruence of t.
    """
    _require_same_size(p.n, t.n, "congruence check")
    n = t.n
    c = p.labels()
    same = c[:, None] == c[None, :]
    ct = c[t.table]
    step = max(1, CHUNK_CELLS // (n * n))

    for side, cls_of_product in (("right", ct), ("left", ct.T)):
        # cls_of_product[x, z] is the class of x*z (right) or z*x (left)
        for start in range(0, n, step):
            block = cls_of_product[:, start:start + step]
            bad = same[:, :, None] & (block[:, None, :] != block[None, :, :])
            if bad.any():
                x, y, k = np.argwhere(bad)[0]
                return CongruenceViolation(int(x), int(y), start + int(k), side)
    return None


def is_congruence(p: Partition, t: OpTable) -> bool:
    return congruence_violation(p, t) is None


def congruence_violation_double(p: Partition, A: DoubleAlgebra) -> CongruenceViolation | None:
    for name, t in (("join", A.join), ("meet", A.meet)):
        violation = congruence_violation(p, t)
        if violation is not None:
            return replace(violation, operation=name)
    return None


def is_congruence_double(p: Partition, A: DoubleAlgebra) -> bool:
    return congruence_violation_double(p, A) is None


def quotient(A: DoubleAlgebra, p: Partition) -> DoubleAlgebra:
    """The algebra induced on the classes of p (least representatives).

    Raises:
        WellDefinednessError: p is not a congruence; the message names the
            violating triple.
    """
    violation = congruence_violation_double(p, A)
    if violation is not None:
        raise WellDefinednessError(
            f"quotient is not well defined: {violation.describe()} (operation {violation.operation})"
        )

    reps = [block[0] for block in p.classes()]
    c = p.labels()
    grid = np.ix_(reps, reps)
    join = c[A.join.table[grid]]
    meet = c[A.meet.table[grid]]
    logger.debug("quotient of order %d by %d classes", A.n, len(reps))
    return DoubleAlgebra(table_from_array(join), table_from_array(meet))


def is_grid_bijective(t: OpTable, x: int) -> bool:
    """Whether (u, v) -> u*v maps (L-class of x) x (R-class of x) onto S bijectively."""
    L, R = greens_L(t), greens_R(t)
    l_class = [u for u in range(t.n) if L.related(u, x)]
    r_class = [v for v in range(t.n) if R.related(v, x)]
    products = t.table[np.ix_(l_class, r_class)].ravel()
    return products.size == t.n and np.unique(products).size == t.n
