"""
Exhaustive generation and brute-force oracles.

Nothing in here relies on the structure theory it is used to test: tables
come from explicit grids or backtracking, regularity from congruence
scans, subalgebras from subset closure and congruences from every set
partition of the carrier.
"""

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Iterator, NamedTuple

import numpy as np
import pandas as pd
from sympy.utilities.iterables import multiset_partitions

from src import config
from src.algebra_core import FLAT_CLASSES, DoubleAlgebra, OpTable, is_band, is_rectangular, table_from_array
from src.counting import labeled_count, ordered_factorizations, rho
from src.data_loader import algebra_to_dict
from src.errors import CapacityError, ConsistencyError, ValidationError
from src.relations import (
    Partition,
    is_congruence,
    is_congruence_double,
    partition_join,
    partition_meet,
    relations_compose,
)
from src.structure import FACTOR_RELATIONS, FlatSignature, RegularityCertificate, regularity_certificate
from src.varieties import Variety

logger = logging.getLogger(__name__)


def _require_order(n: int, limit: int, what: str) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValidationError(f"order must be a positive integer, got {n!r}")
    if n > limit:
        raise CapacityError(f"{what} is limited to order {limit}, got {n}")


class _Grid(NamedTuple):
    table: OpTable
    rows: tuple[int, ...]   # R-classes
    cols: tuple[int, ...]   # L-classes


@lru_cache(maxsize=None)
def _rectangular_grids(n: int) -> tuple[_Grid, ...]:
    """Every labelled rectangular band on n elements, one per (rows, cols) pair.

    Shapes are visited with the number of rows increasing, so the first
    table is the right-zero band (one row) and the last the left-zero band.
    """
    grids = []
    for a in range(1, n + 1):
        if n % a:
            continue
        b = n // a
        seen = set()
        for perm in permutations(range(n)):
            row_of = [0] * n
            col_of = [0] * n
            for position, x in enumerate(perm):
                row_of[x], col_of[x] = divmod(position, b)
            key = (Partition(n, row_of).class_of, Partition(n, col_of).class_of)
            if key in seen:
                continue
            seen.add(key)
            grid = np.array(perm).reshape(a, b)
            rows, cols = np.array(row_of), np.array(col_of)
            table = table_from_array(grid[rows[:, None], cols[None, :]])
            grids.append(_Grid(table, key[0], key[1]))

        expected = factorial(n) // (factorial(a) * factorial(b))
        if len(seen) != expected:
            raise ConsistencyError(f"shape {a}x{b}: generated {len(seen)} tables, expected {expected}")
        logger.debug("shape %dx%d: %d tables", a, b, expected)

    tables = [g.table for g in grids]
    if len(set(tables)) != len(tables):
        raise ConsistencyError(f"duplicate rectangular tables generated at order {n}")
    if not all(is_rectangular(t) for t in tables):
        raise ConsistencyError(f"a generated table at order {n} is not a rectangular band")
    logger.info("generated %d rectangular band tables of order %d", len(grids), n)
    return tuple(grids)


def all_rectangular_tables(n: int) -> list[OpTable]:
    """All labelled rectangular band tables on {0, ..., n-1}."""
    _require_order(n, config.max_order(), "rectangular table generation")
    return [g.table for g in _rectangular_grids(n)]


def _has_conflict(t: np.ndarray) -> bool:
    """Associativity clash among the defined cells (-1 marks undefined)."""
    n = t.shape[0]
    known = t >= 0
    safe = np.where(known, t, 0)
    idx = np.arange(n)
    left = t[safe[:, :, None], idx[None, None, :]]
    right = t[idx[:, None, None], safe[None, :, :]]
    valid = known[:, :, None] & known[None, :, :] & (left >= 0) & (right >= 0)
    return bool(np.any(valid & (left != right)))


def all_band_tables(n: int) -> list[OpTable]:
    """Every labelled band table on {0, ..., n-1}, by backtracking."""
    _require_order(n, config.max_band_order(), "band table search")
    cells = [(x, y) for x in range(n) for y in range(n) if x != y]
    t = np.full((n, n), -1, dtype=np.int64)
    np.fill_diagonal(t, np.arange(n))
    results = []

    def search(k: int) -> None:
        if k == len(cells):
            results.append(table_from_array(t))
            return
        x, y = cells[k]
        for value in range(n):
            t[x, y] = value
            if not _has_conflict(t):
                search(k + 1)
        t[x, y] = -1

    search(0)
    if not all(is_band(b) for b in results):
        raise ConsistencyError(f"band search at order {n} produced a non-band table")
    logger.info("found %d band tables of order %d", len(results), n)
    return results


class _PairScanner:
    """Regularity and signatures for all (join, meet) pairs of one order.

    Green's relations of a grid table are its column (L) and row (R)
    partitions; cong[p, t] records whether partition p is a congruence of
    table t, so each pair needs only table lookups.
    """

    def __init__(self, n: int):
        grids = _rectangular_grids(n)
        self.n = n
        self.tables = [g.table for g in grids]
        ids: dict[tuple[int, ...], int] = {}
        self.lid = np.array([ids.setdefault(g.cols, len(ids)) for g in grids])
        self.rid = np.array([ids.setdefault(g.rows, len(ids)) for g in grids])
        self.partitions = [Partition(n, key) for key in ids]
        self.cong = self._congruence_matrix()
        idx = np.arange(len(self.tables))
        self.self_ok = self.cong[self.lid, idx] & self.cong[self.rid, idx]
        self._class_counts: dict[tuple[int, int], int] = {}

    def _congruence_matrix(self) -> np.ndarray:
        stack = np.stack([t.table for t in self.tables])
        cong = np.empty((len(self.partitions), len(self.tables)), dtype=bool)
        for p_index, p in enumerate(self.partitions):
            c = p.labels()
            same = (c[:, None] == c[None, :])[None, :, :, None]
            ct = c[stack]
            right = ct[:, :, None, :] != ct[:, None, :, :]
            ct_left = ct.transpose(0, 2, 1)
            left = ct_left[:, :, None, :] != ct_left[:, None, :, :]
            cong[p_index] = ~np.any(same & (right | left), axis=(1, 2, 3))
        return cong

    def regular_row(self, j: int) -> np.ndarray:
        """Boolean mask over meet indices m for which (j, m) is regular."""
        cong = self.cong
        return (
            self.self_ok[j]
            & self.self_ok
            & cong[self.lid[j]]
            & cong[self.rid[j]]
            & cong[self.lid, j]
            & cong[self.rid, j]
        )

    def _classes(self, p: int, q: int) -> int:
        key = (p, q)
        if key not in self._class_counts:
            joined = partition_join(self.partitions[p], self.partitions[q])
            self._class_counts[key] = joined.num_classes
        return self._class_counts[key]

    def signature(self, j: int, m: int) -> FlatSignature:
        """Same factor congruences as decompose(), joined by partition id."""
        join_ids = {"L": self.lid[j], "R": self.rid[j]}
        meet_ids = {"L": self.lid[m], "R": self.rid[m]}
        return FlatSignature(*(
            self._classes(join_ids[j_side], meet_ids[m_side])
            for j_side, m_side in (FACTOR_RELATIONS[cls] for cls in FLAT_CLASSES)
        ))

    def algebra(self, j: int, m: int) -> DoubleAlgebra:
        return DoubleAlgebra(self.tables[j], self.tables[m])


@lru_cache(maxsize=None)
def _scanner(n: int) -> _PairScanner:
    return _PairScanner(n)


def all_antilattices(n: int) -> Iterator[DoubleAlgebra]:
    """Every labelled antilattice of order n, joins outermost."""
    _require_order(n, config.max_order(), "antilattice enumeration")
    scanner = _scanner(n)
    for j in range(len(scanner.tables)):
        for m in range(len(scanner.tables)):
            yield scanner.algebra(j, m)


def regular_antilattices(n: int) -> Iterator[DoubleAlgebra]:
    _require_order(n, config.max_order(), "antilattice enumeration")
    scanner = _scanner(n)
    for j in range(len(scanner.tables)):
        for m in np.flatnonzero(scanner.regular_row(j)):
            yield scanner.algebra(j, int(m))


@dataclass
class EnumerationReport:
    """Census of the labelled antilattices of one order."""

    n: int
    total_antilattices: int
    regular_labeled: int
    signatures: dict[FlatSignature, int] = field(default_factory=dict)
    nonregular_witness: DoubleAlgebra | None = None

    @property
    def regular_up_to_iso(self) -> int:
        return len(self.signatures)

    @property
    def matches_formula(self) -> bool:
        return self.regular_up_to_iso == rho(self.n)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "total_antilattices": self.total_antilattices,
            "regular_labeled": self.regular_labeled,
            "regular_up_to_iso": self.regular_up_to_iso,
            "signatures": [
                {"sig": list(sig), "labeled_count": count}
                for sig, count in sorted(self.signatures.items())
            ],
            "nonregular_witness": (
                algebra_to_dict(self.nonregular_witness) if self.nonregular_witness else None
            ),
        }

    def to_frame(self) -> pd.DataFrame:
        """One row per signature with the observed and predicted labelled counts."""
        records = [
            {
                "LL": sig.ll,
                "LR": sig.lr,
                "RL": sig.rl,
                "RR": sig.rr,
                "labeled_count": count,
                "expected": labeled_count(sig),
            }
            for sig, count in sorted(self.signatures.items())
        ]
        return pd.DataFrame(records, columns=["LL", "LR", "RL", "RR", "labeled_count", "expected"])


def _scan_joins(n: int, join_indices: list[int]) -> tuple[int, Counter, tuple[int, int] | None]:
    scanner = _scanner(n)
    counts: Counter = Counter()
    regular = 0
    witness = None
    for j in join_indices:
        row = scanner.regular_row(j)
        regular += int(row.sum())
        for m in np.flatnonzero(row):
            counts[scanner.signature(j, int(m))] += 1
        if witness is None:
            bad = np.flatnonzero(~row)
            if bad.size:
                witness = (j, int(bad[0]))
    return regular, counts, witness


def enumerate_antilattices(
    n: int,
    max_order: int | None = None,
    jobs: int = 1,
    strict: bool = True,
) -> EnumerationReport:
    """Scan all (join, meet) pairs of rectangular tables of order n.

    Args:
        n: Order of the carrier.
        max_order: Overrides ANTILATTICE_MAX_ORDER for this call.
        jobs: Worker processes; join indices are split between them.
        strict: Raise ConsistencyError when the census disagrees with the
            closed-form counts instead of returning the report.

    Returns:
        EnumerationReport with the lexicographically least non-regular pair.
    """
    _require_order(n, max_order or config.max_order(), "antilattice enumeration")
    scanner = _scanner(n)
    count = len(scanner.tables)
    logger.info("scanning %d x %d table pairs of order %d with %d job(s)", count, count, n, jobs)

    if jobs > 1:
        chunks = [list(map(int, c)) for c in np.array_split(np.arange(count), jobs * 4) if c.size]
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            parts = list(executor.map(_scan_joins, [n] * len(chunks), chunks))
    else:
        parts = [_scan_joins(n, list(range(count)))]

    regular = sum(part[0] for part in parts)
    signatures: Counter = Counter()
    for part in parts:
        signatures.update(part[1])
    witnesses = [part[2] for part in parts if part[2] is not None]
    witness = scanner.algebra(*min(witnesses)) if witnesses else None

    report = EnumerationReport(
        n=n,
        total_antilattices=count * count,
        regular_labeled=regular,
        signatures=dict(signatures),
        nonregular_witness=witness,
    )
    logger.info(
        "order %d: %d antilattices, %d regular, %d classes",
        n, report.total_antilattices, regular, report.regular_up_to_iso,
    )
    if strict:
        _check_report(report)
    return report


def _check_report(report: EnumerationReport) -> None:
    n = report.n
    if not report.matches_formula:
        raise ConsistencyError(
            f"order {n}: {report.regular_up_to_iso} regular classes found, formula gives {rho(n)}"
        )
    found = sorted(sig.as_tuple() for sig in report.signatures)
    if found != ordered_factorizations(n):
        raise ConsistencyError(f"order {n}: signatures {found} are not the ordered factorisations")
    for sig, count in report.signatures.items():
        if count != labeled_count(sig):
            raise ConsistencyError(f"order {n}: signature {sig} has {count} labelled copies, expected {labeled_count(sig)}")
    if sum(report.signatures.values()) != report.regular_labeled:
        raise ConsistencyError(f"order {n}: signature multiplicities do not add up")
    if report.nonregular_witness is not None and regularity_certificate(report.nonregular_witness) is None:
        raise ConsistencyError(f"order {n}: reported non-regular witness passes the congruence scan")


@dataclass(frozen=True)
class Witness:
    algebra: DoubleAlgebra
    certificate: RegularityCertificate


def find_nonregular_witness(n: int) -> Witness | None:
    """Lexicographically least non-regular antilattice of order n, certified.

    The certificate comes from a fresh definitional congruence scan, not
    from the precomputed tables used to find the candidate.
    """
    _require_order(n, config.max_order(), "witness search")
    scanner = _scanner(n)
    for j in range(len(scanner.tables)):
        bad = np.flatnonzero(~scanner.regular_row(j))
        if bad.size:
            A = scanner.algebra(j, int(bad[0]))
            certificate = regularity_certificate(A)
            if certificate is None:
                raise ConsistencyError(f"candidate ({j}, {int(bad[0])}) of order {n} is regular")
            return Witness(A, certificate)
    return None


def _subalgebra_masks(A: DoubleAlgebra) -> np.ndarray:
    n = A.n
    masks = np.arange(1 << n, dtype=np.int64)
    member = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)
    closed = np.ones(1 << n, dtype=bool)
    constraints = {
        (a, b, int(t[a, b]))
        for t in (A.join.table, A.meet.table)
        for a in range(n)
        for b in range(n)
    }
    for a, b, product in constraints:
        closed &= ~(member[:, a] & member[:, b]) | member[:, product]
    return masks[closed]


def subalgebras_bruteforce(A: DoubleAlgebra) -> list[frozenset[int]]:
    """Every subset closed under both operations, the empty set included."""
    limit = config.max_subalgebra_order()
    if A.n > limit:
        raise CapacityError(f"subalgebra brute force is limited to order {limit}, got {A.n}")
    subsets = [
        frozenset(x for x in range(A.n) if mask >> x & 1)
        for mask in _subalgebra_masks(A).tolist()
    ]
    logger.debug("order %d algebra has %d subalgebras", A.n, len(subsets))
    return sorted(subsets, key=lambda s: (len(s), sorted(s)))


def _all_partitions(n: int) -> Iterator[Partition]:
    for blocks in multiset_partitions(list(range(n))):
        yield Partition.from_classes(n, blocks)


def _require_congruence_order(n: int) -> None:
    limit = config.max_congruence_order()
    if n > limit:
        raise CapacityError(f"congruence brute force is limited to order {limit}, got {n}")


def congruences_bruteforce(A: DoubleAlgebra) -> list[Partition]:
    """Every partition of the carrier that is a congruence of both operations."""
    _require_congruence_order(A.n)
    return [p for p in _all_partitions(A.n) if is_congruence_double(p, A)]


def table_congruences_bruteforce(t: OpTable) -> list[Partition]:
    _require_congruence_order(t.n)
    return [p for p in _all_partitions(t.n) if is_congruence(p, t)]


def factor_congruence_pair(A: DoubleAlgebra) -> tuple[Partition, Partition] | None:
    """Two proper congruences with θ ∧ φ = Δ and θ ∘ φ = ∇, if any exist.

    Such a pair splits A as A/θ x A/φ, so None means A is directly
    irreducible.
    """
    n = A.n
    identity, universal = Partition.identity(n), Partition.universal(n)
    proper = [p for p in congruences_bruteforce(A) if p not in (identity, universal)]
    everything = universal.pairs()
    by_size: dict[int, list[Partition]] = {}
    for p in proper:
        by_size.setdefault(p.num_classes, []).append(p)

    for k in sorted(by_size):
        if n % k or k * k > n:
            continue
        for theta in by_size[k]:
            for phi in by_size.get(n // k, []):
                if partition_meet(theta, phi) == identity and relations_compose(theta, phi) == everything:
                    return theta, phi
    return None


def is_subdirectly_irreducible_bruteforce(A: DoubleAlgebra) -> bool:
    """Whether the non-identity congruences have a least element (a monolith).

    The 1-point algebra counts as subdirectly irreducible.
    """
    if A.n == 1:
        return True
    identity = Partition.identity(A.n)
    nontrivial = [p for p in congruences_bruteforce(A) if p != identity]
    monolith = nontrivial[0]
    for p in nontrivial[1:]:
        monolith = partition_meet(monolith, p)
    return monolith != identity


def membership_census(report: EnumerationReport) -> dict[str, int]:
    """Isomorphism classes in the report per smallest containing subvariety."""
    census = Counter()
    for sig in report.signatures:
        atoms = frozenset(cls for cls, size in zip(FLAT_CLASSES, sig) if size > 1)
        census[Variety(atoms).symbol] += 1
    return dict(census)
