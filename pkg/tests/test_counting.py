from concurrent.futures import ThreadPoolExecutor
from itertools import product
from math import gcd, prod

import pytest
from sympy import bell as sympy_bell
from sympy import divisor_count, factorint

from src import counting
from src.counting import (
    INT64_MAX,
    TABLE_COLUMNS,
    bell,
    compositions,
    congruence_count,
    count_in_variety,
    exact_membership_count,
    factorize,
    is_prime,
    labeled_count,
    oeis_table,
    ordered_factorizations,
    render_table_text,
    rho,
    subalgebra_count,
    table_rows_to_json,
    variety_breakdown,
)
from src.data_loader import load_golden_table
from src.errors import CapacityError, ValidationError
from src.varieties import VARIETY_SYMBOLS, all_varieties

RHO_1_TO_8 = [1, 4, 4, 10, 4, 16, 4, 20]


@pytest.mark.parametrize("n, expected", [(12, [(2, 2), (3, 1)]), (1, []), (16, [(2, 4)]), (97, [(97, 1)])])
def test_factorize_examples(n, expected):
    assert factorize(n) == expected


def test_factorize_matches_sympy():
    for n in range(1, 501):
        assert factorize(n) == sorted(factorint(n).items())
        assert prod(p**e for p, e in factorize(n)) == n


@pytest.mark.parametrize("bad", [0, -3, 2.0, True])
def test_factorize_rejects_non_positive(bad):
    with pytest.raises(ValidationError):
        factorize(bad)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_compositions_examples():
    assert compositions(1, 4) == 4
    assert compositions(0, 4) == 1
    assert compositions(2, 4) == 10


def test_compositions_match_quadruple_loop():
    for e in range(6):
        brute = sum(1 for parts in product(range(e + 1), repeat=4) if sum(parts) == e)
        assert compositions(e, 4) == brute


def test_compositions_validation():
    with pytest.raises(ValidationError):
        compositions(-1, 4)
    with pytest.raises(ValidationError):
        compositions(2, 0)


def test_rho_table_values():
    assert [rho(n) for n in range(1, 9)] == RHO_1_TO_8
    assert rho(12) == 40
    assert rho(16) == 35


def test_rho_is_multiplicative():
    for m in range(1, 101):
        for n in range(1, 101):
            if gcd(m, n) == 1:
                assert rho(m * n) == rho(m) * rho(n)


def test_rho_counts_ordered_factorizations():
    for n in range(1, 65):
        sigs = ordered_factorizations(n)
        assert len(sigs) == rho(n)
        assert all(prod(sig) == n for sig in sigs)
        assert len(set(sigs)) == len(sigs)


def test_count_in_variety_examples():
    assert count_in_variety("RR^C", 4) == 6
    assert count_in_variety("s", 12) == 6
    assert all(count_in_variety("LL", n) == 1 for n in range(1, 50))
    assert count_in_variety("1", 1) == 1
    assert count_in_variety("1", 2) == 0


def test_table_columns_agree_with_arithmetic_functions():
    for n in range(1, 101):
        assert count_in_variety("RA", n) == rho(n)
        three = {count_in_variety(s, n) for s in ("RR^C", "RL^C", "LR^C", "LL^C")}
        two = {count_in_variety(s, n) for s in ("s", "L*", "*R", "*L", "R*", "s*")}
        assert three == {sum(int(divisor_count(n // d)) for d in range(1, n + 1) if n % d == 0)}
        assert two == {int(divisor_count(n))}


def test_exact_membership_counts_partition_rho():
    for n in range(1, 40):
        counts = {V.symbol: exact_membership_count(V, n) for V in all_varieties()}
        assert all(value >= 0 for value in counts.values())
        assert sum(counts.values()) == rho(n)
    assert exact_membership_count("RA", 16) == 1
    assert exact_membership_count("1", 1) == 1


def test_subalgebra_count_examples():
    assert subalgebra_count((1, 1, 1, 1)) == 2
    assert subalgebra_count((2, 1, 1, 2)) == 10
    assert subalgebra_count((2, 2, 2, 2)) == 82


def test_congruence_count_examples():
    assert congruence_count((1, 1, 1, 1)) == 1
    assert congruence_count((2, 1, 1, 2)) == 4
    assert congruence_count((3, 1, 1, 1)) == 5


def test_labeled_count():
    assert labeled_count((2, 1, 1, 2)) == 6
    assert labeled_count((1, 1, 1, 1)) == 1
    assert sum(labeled_count(sig) for sig in ordered_factorizations(8)) == 30244


def test_bell_numbers_match_sympy():
    assert [bell(k) for k in range(9)] == [1, 1, 2, 5, 15, 52, 203, 877, 4140]
    for k in range(0, 80, 7):
        assert bell(k) == int(sympy_bell(k))


def test_bell_rejects_negative():
    with pytest.raises(ValidationError):
        bell(-1)


def test_bell_cache_fills_once_under_concurrency(monkeypatch):
    monkeypatch.setattr(counting, "_bell_cache", [])
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(bell, [20] * 64))
    assert set(results) == {int(sympy_bell(20))}
    assert len(counting._bell_cache) == counting.BELL_CACHE_SIZE + 1


def test_integer_policy():
    with pytest.raises(CapacityError, match="exact=True"):
        congruence_count((30, 1, 1, 1))
    assert congruence_count((30, 1, 1, 1), exact=True) == int(sympy_bell(30))
    with pytest.raises(CapacityError):
        subalgebra_count((64, 1, 1, 1))
    assert subalgebra_count((64, 1, 1, 1), exact=True) == 2**64 > INT64_MAX
    assert rho(2**100) == 176851


@pytest.mark.parametrize(
    "n, values",
    [(1, (1, 1, 1, 1, 1)), (6, (16, 9, 4, 1, 0)), (8, (20, 10, 4, 1, 0)), (12, (40, 18, 6, 1, 0)), (16, (35, 15, 5, 1, 0))],
)
def test_oeis_table_rows(n, values):
    row = oeis_table(16)[n - 1]
    assert row.n == n
    assert row.values() == values


def test_rendered_table_matches_golden_file():
    assert render_table_text(oeis_table(16)) == load_golden_table()


def test_rendered_single_row_table():
    golden = load_golden_table().splitlines(keepends=True)
    assert render_table_text(oeis_table(1)) == "".join(golden[:5])


def test_table_json_rows():
    rows = table_rows_to_json(oeis_table(16))
    assert len(rows) == 16
    assert rows[11] == {"n": 12, "ra": 40, "three_atom": 18, "two_atom": 6, "one_atom": 1, "trivial": 0}
    assert [column[1] for column in TABLE_COLUMNS[:4]] == ["A007426", "A007425", "A000005", "A000012"]


def test_variety_breakdown():
    assert variety_breakdown(1) == {symbol: 1 for symbol in VARIETY_SYMBOLS}
    assert variety_breakdown(4)["RA"] == 10
