import json

import pytest

from src.algebra_core import FlatClass, flat_class, is_antilattice, make_flat
from src.data_loader import (
    ALGEBRA_DIR,
    algebra_from_dict,
    algebra_to_dict,
    decomposition_to_dict,
    dump_algebra,
    load_algebra,
    load_golden_table,
    loads_algebra,
    partition_from_dict,
    partition_to_dict,
    save_algebra,
    save_decomposition,
)
from src.errors import AlgebraFormatError
from src.relations import Partition
from src.structure import canonical_product, decompose, is_regular

SAMPLES = ["flat_2_LR.json", "product_2LL_2RR.json", "nonregular_4.json", "lattice_2.json"]


def test_sample_algebras():
    assert flat_class(load_algebra(ALGEBRA_DIR / "flat_2_LR.json")) is FlatClass.LR
    assert load_algebra(ALGEBRA_DIR / "product_2LL_2RR.json") == canonical_product((2, 1, 1, 2))
    assert not is_regular(load_algebra(ALGEBRA_DIR / "nonregular_4.json"))
    assert not is_antilattice(load_algebra(ALGEBRA_DIR / "lattice_2.json"))


@pytest.mark.parametrize("name", SAMPLES)
def test_sample_files_are_in_dump_format(name):
    path = ALGEBRA_DIR / name
    assert dump_algebra(load_algebra(path)) == path.read_text(encoding="utf-8")


def test_save_and_load(tmp_path):
    A = canonical_product((1, 2, 3, 1))
    path = save_algebra(A, tmp_path / "nested" / "a.json")
    assert load_algebra(path) == A
    assert json.loads(path.read_text())["n"] == 6


def test_syntax_errors_report_line_and_column():
    text = '{"n": 2,\n "join": [[0, 0], [1, 1]],\n "meet": [[0, 1], [0 1]]}'
    with pytest.raises(AlgebraFormatError, match=r"^bad\.json:3:\d+: "):
        loads_algebra(text, "bad.json")


@pytest.mark.parametrize(
    "data, message",
    [
        ([1, 2], "expected a JSON object"),
        ({"n": 2, "join": [[0, 0], [1, 1]]}, "missing key\\(s\\) meet"),
        ({"n": "2", "join": [], "meet": []}, "'n' must be an integer"),
        ({"n": 2, "join": "x", "meet": [[0, 1], [0, 1]]}, "'join' must be a list of rows"),
        ({"n": 2, "join": [[0, 0], [1, 1]], "meet": [[0, 1], [0, 5]]}, "row 1, column 1"),
        ({"n": 3, "join": [[0, 0], [1, 1]], "meet": [[0, 1], [0, 1]]}, "expected 3 rows"),
    ],
)
def test_schema_errors(data, message):
    with pytest.raises(AlgebraFormatError, match=message):
        algebra_from_dict(data, "doc")


def test_missing_file(tmp_path):
    with pytest.raises(AlgebraFormatError, match="cannot read file"):
        load_algebra(tmp_path / "absent.json")


def test_algebra_dict_round_trip():
    A = make_flat(3, "RL")
    assert algebra_from_dict(algebra_to_dict(A)) == A


def test_partition_serialisation():
    p = Partition.from_labels([2, 0, 2, 1])
    data = partition_to_dict(p)
    assert data == {"n": 4, "classes": [[0, 2], [1], [3]]}
    assert partition_from_dict(data) == p
    with pytest.raises(AlgebraFormatError):
        partition_from_dict({"n": 3, "classes": [[0, 1]]})
    with pytest.raises(AlgebraFormatError, match="needs 'n' and 'classes'"):
        partition_from_dict({"classes": []})


def test_decomposition_serialisation(tmp_path, product_ll_rr):
    d = decompose(product_ll_rr)
    data = decomposition_to_dict(d)
    assert data["signature"] == [2, 1, 1, 2]
    assert data["iso"][3] == [1, 0, 0, 1]
    assert data["factors"]["RR"] == algebra_to_dict(make_flat(2, "RR"))

    paths = save_decomposition(d, tmp_path / "out")
    assert sorted(p.name for p in paths) == [
        "decomposition.json", "factor_LL.json", "factor_LR.json", "factor_RL.json", "factor_RR.json",
    ]
    summary = json.loads((tmp_path / "out" / "decomposition.json").read_text())
    assert summary == {"signature": [2, 1, 1, 2], "iso": data["iso"]}
    assert load_algebra(tmp_path / "out" / "factor_LL.json") == make_flat(2, "LL")
    assert load_algebra(tmp_path / "out" / "factor_LR.json").n == 1


def test_golden_table_header():
    text = load_golden_table()
    assert text.startswith("   n |      RA |")
    assert text.count("\n") == 20
