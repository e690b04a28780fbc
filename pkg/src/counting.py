"""
Closed-form counts for finite regular antilattices.

A regular antilattice of order n is fixed up to isomorphism by an ordered
factorisation n = a*b*c*d, so counting reduces to distributing each prime
exponent over the non-trivial factor slots.

Counts are exact Python integers. With exact=False (the default) any
result above the signed 64-bit range raises CapacityError instead of
being returned.
"""

import logging
import threading
from dataclasses import asdict, dataclass
from itertools import combinations
from math import comb, factorial, prod

from src.errors import CapacityError, ConsistencyError, ValidationError
from src.structure import FlatSignature, is_prime  # noqa: F401 (re-exported)
from src.varieties import VARIETY_ATOMS, Variety, parse_variety

logger = logging.getLogger(__name__)

INT64_MAX = 2**63 - 1
BELL_CACHE_SIZE = 64

PrimeFactorization = list[tuple[int, int]]

# Column groups of the counting table: (header, OEIS id, symbols)
TABLE_COLUMNS = [
    ("RA", "A007426", ["RA"]),
    ("RR^C,RL^C,LR^C,LL^C", "A007425", ["RR^C", "RL^C", "LR^C", "LL^C"]),
    ("s,L*,*R,*L,R*,s*", "A000005", ["s", "L*", "*R", "*L", "R*", "s*"]),
    ("LL,LR,RL,RR", "A000012", ["LL", "LR", "RL", "RR"]),
    ("1", "", ["1"]),
]


def _checked(value: int, what: str, exact: bool) -> int:
    if not exact and value > INT64_MAX:
        raise CapacityError(f"{what} = {value} does not fit in 64 bits (pass exact=True)")
    return value


def _require_positive(n: int, what: str) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValidationError(f"{what} must be a positive integer, got {n!r}")


def factorize(n: int) -> PrimeFactorization:
    """Prime factorisation by trial division, primes increasing.

    Args:
        n: Positive integer; 1 has the empty factorisation.

    Returns:
        List of (prime, exponent) pairs.
    """
    _require_positive(n, "factorize argument")
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            factors.append((d, e))
        d += 1
    if n > 1:
        factors.append((n, 1))
    return factors


def compositions(e: int, k: int, exact: bool = False) -> int:
    """Ways to place e identical units into k labelled slots: C(e+k-1, k-1)."""
    if isinstance(e, bool) or not isinstance(e, int) or e < 0:
        raise ValidationError(f"exponent must be a non-negative integer, got {e!r}")
    _require_positive(k, "slot count")
    return _checked(comb(e + k - 1, k - 1), f"compositions({e}, {k})", exact)


def rho(n: int, exact: bool = False) -> int:
    """Number of regular antilattices of order n up to isomorphism."""
    _require_positive(n, "order")
    return _checked(prod(compositions(e, 4, exact=True) for _, e in factorize(n)), f"rho({n})", exact)


def count_in_variety(V, n: int, exact: bool = False) -> int:
    """Members of order n of the subvariety V, up to isomorphism."""
    V = parse_variety(V)
    _require_positive(n, "order")
    k = len(V)
    if k == 0:
        return 1 if n == 1 else 0
    value = prod(compositions(e, k, exact=True) for _, e in factorize(n))
    return _checked(value, f"count_in_variety({V.symbol}, {n})", exact)


def exact_membership_count(V, n: int) -> int:
    """Algebras of order n whose smallest subvariety is exactly V (inclusion-exclusion)."""
    V = parse_variety(V)
    total = 0
    atoms = list(V.atoms)
    for k in range(len(atoms) + 1):
        for subset in combinations(atoms, k):
            sign = -1 if (len(atoms) - k) % 2 else 1
            total += sign * count_in_variety(Variety(frozenset(subset)), n, exact=True)
    return total


def ordered_factorizations(n: int, k: int = 4) -> list[tuple[int, ...]]:
    """All ordered k-tuples of positive integers with product n, sorted."""
    _require_positive(n, "order")
    _require_positive(k, "factor count")
    if k == 1:
        return [(n,)]
    result = []
    for d in range(1, n + 1):
        if n % d == 0:
            result.extend((d,) + rest for rest in ordered_factorizations(n // d, k - 1))
    return result


_bell_lock = threading.Lock()
_bell_cache: list[int] = []


def _bell_triangle(k: int) -> list[int]:
    """Bell(0..k) from the Bell triangle."""
    values = [1]
    row = [1]
    for _ in range(k):
        next_row = [row[-1]]
        for above in row:
            next_row.append(next_row[-1] + above)
        row = next_row
        values.append(row[0])
    return values


def bell(k: int) -> int:
    """Number of partitions of a k-element set."""
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise ValidationError(f"Bell index must be a non-negative integer, got {k!r}")
    if k > BELL_CACHE_SIZE:
        return _bell_triangle(k)[k]
    if not _bell_cache:
        with _bell_lock:
            if not _bell_cache:
                _bell_cache.extend(_bell_triangle(BELL_CACHE_SIZE))
    return _bell_cache[k]


def _as_signature(sig) -> FlatSignature:
    return sig if isinstance(sig, FlatSignature) else FlatSignature.from_sequence(sig)


def subalgebra_count(sig, exact: bool = False) -> int:
    """1 + (2^a-1)(2^b-1)(2^c-1)(2^d-1); the 1 is the empty subalgebra."""
    sig = _as_signature(sig)
    return _checked(1 + prod(2**a - 1 for a in sig), f"subalgebra_count({sig})", exact)


def congruence_count(sig, exact: bool = False) -> int:
    """Bell(a)Bell(b)Bell(c)Bell(d): a congruence is a 4-tuple of factor equivalences."""
    sig = _as_signature(sig)
    return _checked(prod(bell(a) for a in sig), f"congruence_count({sig})", exact)


def labeled_count(sig, exact: bool = False) -> int:
    """Labelled algebras on {0, ..., n-1} isomorphic to canonical_product(sig).

    The automorphisms of a product of flats are the products of
    permutations of each factor, hence n!/(a!b!c!d!).
    """
    sig = _as_signature(sig)
    value = factorial(sig.order) // prod(factorial(a) for a in sig)
    return _checked(value, f"labeled_count({sig})", exact)


@dataclass(frozen=True)
class TableRow:
    n: int
    ra: int
    three_atom: int
    two_atom: int
    one_atom: int
    trivial: int

    def values(self) -> tuple[int, ...]:
        return (self.ra, self.three_atom, self.two_atom, self.one_atom, self.trivial)


def oeis_table(max_n: int) -> list[TableRow]:
    """Rows n = 1..max_n of the per-variety counting table.

    Every variety in a column group must give the same count; a
    disagreement is a ConsistencyError.
    """
    _require_positive(max_n, "max_n")
    rows = []
    for n in range(1, max_n + 1):
        values = []
        for header, _, symbols in TABLE_COLUMNS:
            group = {count_in_variety(symbol, n) for symbol in symbols}
            if len(group) != 1:
                raise ConsistencyError(f"column {header} disagrees at n={n}: {sorted(group)}")
            values.append(group.pop())
        rows.append(TableRow(n, *values))
    logger.info("built counting table for n = 1..%d", max_n)
    return rows


def render_table_text(rows: list[TableRow]) -> str:
    """ASCII table with header, OEIS ids and one line per row."""
    headers = ["n"] + [header for header, _, _ in TABLE_COLUMNS]
    oeis = ["OEIS"] + [oeis_id for _, oeis_id, _ in TABLE_COLUMNS]
    body = [[str(row.n)] + [str(v) for v in row.values()] for row in rows]
    widths = [max(len(line[i]) for line in [headers, oeis, *body]) for i in range(len(headers))]

    def fmt(cells):
        return " | ".join(cell.rjust(w) for cell, w in zip(cells, widths)).rstrip()

    separator = "-+-".join("-" * w for w in widths)
    lines = [fmt(headers), separator, fmt(oeis), separator] + [fmt(cells) for cells in body]
    return "\n".join(lines) + "\n"


def table_rows_to_json(rows: list[TableRow]) -> list[dict]:
    return [asdict(row) for row in rows]


def variety_breakdown(n: int) -> dict[str, int]:
    """count_in_variety for all sixteen symbols."""
    return {symbol: count_in_variety(symbol, n) for symbol in VARIETY_ATOMS}
