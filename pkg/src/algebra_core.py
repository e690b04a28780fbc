"""
Finite binary operations and double algebras.

An operation on the carrier {0, ..., n-1} is an n x n table whose row
index is the left operand. Every axiom predicate here is a full scan of
the table (vectorised with numpy); nothing is assumed without the scan.

Covers:
- Table validation and the left-zero / right-zero building blocks
- Band, rectangular, commutativity and anti-commutativity predicates
- Antilattice, quasilattice and skew-lattice predicates on (join, meet)
- Flat classes, flat algebras and direct products
"""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from src import config
from src.errors import CapacityError, ShapeError, ValidationError

logger = logging.getLogger(__name__)

# Cells evaluated per vectorised chunk in the cubic scans
CHUNK_CELLS = 1 << 21


class FlatClass(str, Enum):
    """Flat antilattice classes: first letter for join, second for meet."""

    LL = "LL"
    LR = "LR"
    RL = "RL"
    RR = "RR"

    @property
    def join_left(self) -> bool:
        return self.value[0] == "L"

    @property
    def meet_left(self) -> bool:
        return self.value[1] == "L"


FLAT_CLASSES = (FlatClass.LL, FlatClass.LR, FlatClass.RL, FlatClass.RR)


@dataclass(frozen=True, eq=False)
class OpTable:
    """One binary operation on {0, ..., n-1}; `table` is read-only."""

    n: int
    table: np.ndarray

    def __call__(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OpTable)
            and self.n == other.n
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.table.tobytes()))

    def tolist(self) -> list[list[int]]:
        return self.table.tolist()


@dataclass(frozen=True, eq=False)
class DoubleAlgebra:
    """An algebra (S; join, meet) with both operations on the same carrier."""

    join: OpTable
    meet: OpTable

    def __post_init__(self):
        if self.join.n != self.meet.n:
            raise ShapeError(
                f"join has carrier size {self.join.n} but meet has {self.meet.n}"
            )

    @property
    def n(self) -> int:
        return self.join.n

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DoubleAlgebra)
            and self.join == other.join
            and self.meet == other.meet
        )

    def __hash__(self) -> int:
        return hash((self.join, self.meet))


def table_from_array(arr) -> OpTable:
    arr = np.array(arr, dtype=np.int64)
    arr.flags.writeable = False
    return OpTable(arr.shape[0], arr)


def make_op_table(n: int, entries) -> OpTable:
    """Validate an n x n array of element indices and wrap it.

    Args:
        n: Carrier size (positive).
        entries: n rows of n integers in [0, n).

    Returns:
        The validated OpTable. No algebraic axioms are assumed.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError(f"carrier size must be a positive integer, got {n!r}")

    rows = list(entries)
    if len(rows) != n:
        raise ShapeError(f"expected {n} rows, got {len(rows)}")

    for r, row in enumerate(rows):
        if len(row) != n:
            raise ShapeError(f"row {r} has {len(row)} entries, expected {n}")
        for c, value in enumerate(row):
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise ValidationError(
                    f"entry at row {r}, column {c} is not an integer: {value!r}"
                )
            if not 0 <= value < n:
                raise ValidationError(
                    f"entry at row {r}, column {c} is {value}, outside [0, {n})"
                )

    return table_from_array(rows)


def make_double_algebra(n: int, join, meet) -> DoubleAlgebra:
    """Build a DoubleAlgebra from two raw n x n tables."""
    return DoubleAlgebra(make_op_table(n, join), make_op_table(n, meet))


def left_zero_table(n: int) -> OpTable:
    """The table xy = x."""
    idx = np.arange(n)
    return table_from_array(np.repeat(idx[:, None], n, axis=1))


def right_zero_table(n: int) -> OpTable:
    """The table xy = y."""
    return table_from_array(np.tile(np.arange(n), (n, 1)))


def _pair_grid(n: int) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(n)
    return idx[:, None], idx[None, :]


def for_all_triples(n: int, predicate) -> bool:
    """True iff predicate(X, Y, Z) holds on every triple of the carrier.

    X, Y, Z are broadcastable index arrays of shapes (k,1,1), (1,n,1),
    (1,1,n); the x axis is processed in chunks to bound memory.
    """
    step = max(1, CHUNK_CELLS // (n * n))
    ys = np.arange(n)[None, :, None]
    zs = np.arange(n)[None, None, :]
    for start in range(0, n, step):
        xs = np.arange(start, min(n, start + step))[:, None, None]
        if not np.all(predicate(xs, ys, zs)):
            return False
    return True


def is_idempotent(t: OpTable) -> bool:
    return bool(np.array_equal(np.diagonal(t.table), np.arange(t.n)))


def is_associative(t: OpTable) -> bool:
    s = t.table
    return for_all_triples(t.n, lambda x, y, z: s[s[x, y], z] == s[x, s[y, z]])


def is_band(t: OpTable) -> bool:
    return is_idempotent(t) and is_associative(t)


def is_rectangular(t: OpTable) -> bool:
    """Band satisfying xyz = xz."""
    if not is_band(t):
        return False
    s = t.table
    return for_all_triples(t.n, lambda x, y, z: s[s[x, y], z] == s[x, z])


def satisfies_xyx_identity(t: OpTable) -> bool:
    """xyx = x for all x, y."""
    X, Y = _pair_grid(t.n)
    s = t.table
    return bool(np.all(s[s[X, Y], X] == X))


def is_left_zero(t: OpTable) -> bool:
    return bool(np.all(t.table == np.arange(t.n)[:, None]))


def is_right_zero(t: OpTable) -> bool:
    return bool(np.all(t.table == np.arange(t.n)[None, :]))


def is_commutative(t: OpTable) -> bool:
    return bool(np.array_equal(t.table, t.table.T))


def is_anticommutative(t: OpTable) -> bool:
    """xy = yx only when x = y."""
    off_diagonal_distinct = (t.table != t.table.T) | np.eye(t.n, dtype=bool)
    return bool(np.all(off_diagonal_distinct))


def is_antilattice(A: DoubleAlgebra) -> bool:
    return is_rectangular(A.join) and is_rectangular(A.meet)


def is_quasilattice(A: DoubleAlgebra) -> bool:
    """Modified absorption: x∧(y∨x∨y)∧x = x = x∨(y∧x∧y)∨x."""
    j, m = A.join.table, A.meet.table
    X, Y = _pair_grid(A.n)
    yxy_join = j[j[Y, X], Y]
    yxy_meet = m[m[Y, X], Y]
    return bool(
        np.all(m[m[X, yxy_join], X] == X)
        and np.all(j[j[X, yxy_meet], X] == X)
    )


def is_skew_lattice(A: DoubleAlgebra) -> bool:
    """Skew-lattice absorption: x∧(x∨y) = x = (y∨x)∧x, x∨(x∧y) = x = (y∧x)∨x."""
    j, m = A.join.table, A.meet.table
    X, Y = _pair_grid(A.n)
    return bool(
        np.all(m[X, j[X, Y]] == X)
        and np.all(m[j[Y, X], X] == X)
        and np.all(j[X, m[X, Y]] == X)
        and np.all(j[m[Y, X], X] == X)
    )


def satisfies_skew_characterization(A: DoubleAlgebra) -> bool:
    """x∧y = y∨x for all x, y."""
    return bool(np.array_equal(A.meet.table, A.join.table.T))


def flat_class(A: DoubleAlgebra) -> FlatClass | None:
    """Classify a flat antilattice; None when a reduct is not one-sided.

    The 1-point algebra satisfies all four identity pairs and is reported
    as LL.
    """
    if A.n == 1:
        return FlatClass.LL

    join_left, join_right = is_left_zero(A.join), is_right_zero(A.join)
    meet_left, meet_right = is_left_zero(A.meet), is_right_zero(A.meet)
    for cls in FLAT_CLASSES:
        join_ok = join_left if cls.join_left else join_right
        meet_ok = meet_left if cls.meet_left else meet_right
        if join_ok and meet_ok:
            return cls
    return None


def _as_flat_class(c) -> FlatClass:
    try:
        return FlatClass(c)
    except ValueError:
        valid = ", ".join(cls.value for cls in FLAT_CLASSES)
        raise ValidationError(f"unknown flat class {c!r}; expected one of {valid}") from None


def make_flat(n: int, c: FlatClass | str) -> DoubleAlgebra:
    """The flat antilattice of class c on {0, ..., n-1}."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError(f"flat algebra needs n >= 1, got {n!r}")
    cls = _as_flat_class(c)
    join = left_zero_table(n) if cls.join_left else right_zero_table(n)
    meet = left_zero_table(n) if cls.meet_left else right_zero_table(n)
    return DoubleAlgebra(join, meet)


def trivial_algebra() -> DoubleAlgebra:
    return make_flat(1, FlatClass.LL)


def op_table_product(s: OpTable, t: OpTable) -> OpTable:
    """Componentwise product; the pair (i, j) is encoded as i * t.n + j."""
    na, nb = s.n, t.n
    cells = s.table[:, None, :, None] * nb + t.table[None, :, None, :]
    return table_from_array(cells.reshape(na * nb, na * nb))


def direct_product(A: DoubleAlgebra, B: DoubleAlgebra) -> DoubleAlgebra:
    """Direct product with element (i, j) encoded as i * |B| + j."""
    size = A.n * B.n
    limit = config.max_carrier()
    if size > limit:
        raise CapacityError(
            f"product carrier {A.n} x {B.n} = {size} exceeds the maximum of {limit} "
            "(set ANTILATTICE_MAX_CARRIER to raise it)"
        )
    return DoubleAlgebra(
        op_table_product(A.join, B.join),
        op_table_product(A.meet, B.meet),
    )


def _check_mapping(mapping, source_n: int, target_n: int) -> np.ndarray:
    f = np.asarray(mapping, dtype=np.int64)
    if f.shape != (source_n,):
        raise ShapeError(f"mapping must have {source_n} entries, got shape {f.shape}")
    if source_n and (f.min() < 0 or f.max() >= target_n):
        raise ValidationError(f"mapping values must lie in [0, {target_n})")
    return f


def relabel(A: DoubleAlgebra, perm) -> DoubleAlgebra:
    """Isomorphic copy of A in which element x is renamed perm[x]."""
    p = _check_mapping(perm, A.n, A.n)
    if len(set(p.tolist())) != A.n:
        raise ValidationError("relabelling must be a permutation")
    inv = np.argsort(p)
    return DoubleAlgebra(
        table_from_array(p[A.join.table[np.ix_(inv, inv)]]),
        table_from_array(p[A.meet.table[np.ix_(inv, inv)]]),
    )


def is_homomorphism(A: DoubleAlgebra, B: DoubleAlgebra, mapping) -> bool:
    """Full-scan check that mapping preserves both operations."""
    f = _check_mapping(mapping, A.n, B.n)
    grid = np.ix_(f, f)
    return bool(
        np.array_equal(f[A.join.table], B.join.table[grid])
        and np.array_equal(f[A.meet.table], B.meet.table[grid])
    )
