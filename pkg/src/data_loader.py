"""
Reading and writing algebras, partitions and decompositions as JSON.

Algebra files look like {"n": 2, "join": [[0, 0], [1, 1]], "meet": [[0, 1], [0, 1]]}
with 0-indexed entries and the row index as left operand. Sample files
live in data/algebras/.
"""

import json
import logging
from pathlib import Path

from src.algebra_core import FLAT_CLASSES, DoubleAlgebra, make_double_algebra
from src.config import DATA_DIR
from src.errors import AlgebraFormatError, ValidationError
from src.relations import Partition
from src.structure import Decomposition

logger = logging.getLogger(__name__)

ALGEBRA_DIR = DATA_DIR / "algebras"
GOLDEN_TABLE = DATA_DIR / "table_16.txt"

ALGEBRA_KEYS = ("n", "join", "meet")


def algebra_from_dict(data, source: str = "<input>") -> DoubleAlgebra:
    """Validate a decoded algebra document.

    Args:
        data: Decoded JSON value.
        source: Name used in error messages.

    Returns:
        The DoubleAlgebra.
    """
    if not isinstance(data, dict):
        raise AlgebraFormatError(f"{source}: expected a JSON object, got {type(data).__name__}")
    missing = [key for key in ALGEBRA_KEYS if key not in data]
    if missing:
        raise AlgebraFormatError(f"{source}: missing key(s) {', '.join(missing)}")
    n = data["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise AlgebraFormatError(f"{source}: 'n' must be an integer, got {n!r}")
    for key in ("join", "meet"):
        rows = data[key]
        if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
            raise AlgebraFormatError(f"{source}: '{key}' must be a list of rows")
    try:
        return make_double_algebra(n, data["join"], data["meet"])
    except ValidationError as exc:
        raise AlgebraFormatError(f"{source}: {exc}") from exc


def algebra_to_dict(A: DoubleAlgebra) -> dict:
    return {"n": A.n, "join": A.join.tolist(), "meet": A.meet.tolist()}


def loads_algebra(text: str, source: str = "<input>") -> DoubleAlgebra:
    """Parse algebra JSON text; syntax errors are reported as source:line:col."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return algebra_from_dict(data, source)


def load_algebra(path) -> DoubleAlgebra:
    """Load one algebra file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise AlgebraFormatError(f"{path}: cannot read file ({exc.strerror})") from exc
    A = loads_algebra(text, str(path))
    logger.debug("loaded order %d algebra from %s", A.n, path)
    return A


def dump_algebra(A: DoubleAlgebra) -> str:
    """JSON text with one table row per line."""
    def rows(table):
        return ",\n    ".join(json.dumps(row) for row in table.tolist())

    return (
        "{\n"
        f'  "n": {A.n},\n'
        f'  "join": [\n    {rows(A.join)}\n  ],\n'
        f'  "meet": [\n    {rows(A.meet)}\n  ]\n'
        "}\n"
    )


def save_algebra(A: DoubleAlgebra, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_algebra(A), encoding="utf-8")
    return path


def partition_to_dict(p: Partition) -> dict:
    return {"n": p.n, "classes": p.classes()}


def partition_from_dict(data, source: str = "<input>") -> Partition:
    if not isinstance(data, dict) or "n" not in data or "classes" not in data:
        raise AlgebraFormatError(f"{source}: a partition needs 'n' and 'classes'")
    try:
        return Partition.from_classes(data["n"], data["classes"])
    except (ValidationError, TypeError) as exc:
        raise AlgebraFormatError(f"{source}: {exc}") from exc


def decomposition_to_dict(d: Decomposition) -> dict:
    return {
        "signature": list(d.signature),
        "iso": d.iso.tolist(),
        "factors": {
            cls.value: algebra_to_dict(factor) for cls, factor in zip(FLAT_CLASSES, d.factors)
        },
    }


def save_decomposition(d: Decomposition, directory) -> list[Path]:
    """Write decomposition.json plus factor_<CLASS>.json into directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    summary = {"signature": list(d.signature), "iso": d.iso.tolist()}
    paths = [directory / "decomposition.json"]
    paths[0].write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    for cls, factor in zip(FLAT_CLASSES, d.factors):
        paths.append(save_algebra(factor, directory / f"factor_{cls.value}.json"))
    logger.info("wrote decomposition with signature %s to %s", d.signature, directory)
    return paths


def load_golden_table() -> str:
    return GOLDEN_TABLE.read_text(encoding="utf-8")
