import numpy as np
import pytest

from src.algebra_core import FLAT_CLASSES, make_double_algebra, make_flat
from src.config import DEFAULTS
from src.enumeration import all_band_tables, regular_antilattices
from src.structure import canonical_product

GRID_2X2 = [[0, 1, 0, 1], [0, 1, 0, 1], [2, 3, 2, 3], [2, 3, 2, 3]]
WITNESS_MEET = [[0, 1, 1, 0], [0, 1, 1, 0], [3, 2, 2, 3], [3, 2, 2, 3]]


@pytest.fixture(autouse=True)
def default_bounds(monkeypatch):
    """Run every test with the built-in bounds, whatever the shell or .env says."""
    for name in DEFAULTS:
        monkeypatch.delenv(name, raising=False)
    monkeypatch.delenv("ANTILATTICE_LOG_LEVEL", raising=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def flats2():
    return {cls.value: make_flat(2, cls) for cls in FLAT_CLASSES}


@pytest.fixture
def product_ll_rr():
    """2_LL x 2_RR: join = meet = the 2x2 grid."""
    return canonical_product((2, 1, 1, 2))


@pytest.fixture
def witness4():
    """Least non-regular antilattice of order 4."""
    return make_double_algebra(4, GRID_2X2, WITNESS_MEET)


@pytest.fixture
def lattice2():
    return make_double_algebra(2, [[0, 1], [1, 1]], [[0, 0], [0, 1]])


@pytest.fixture(scope="session")
def regular_by_order():
    """Every labelled regular antilattice of orders 1..6."""
    return {n: list(regular_antilattices(n)) for n in range(1, 7)}


@pytest.fixture(scope="session")
def bands_by_order():
    return {n: all_band_tables(n) for n in range(1, 5)}
