from __future__ import annotations

import json
import logging
import os
import re
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Union

from ..core.chartables import CharacterTable, ClassFusion, builtin_table, load_table as build_table
from ..core.exact_linalg import AbelianGroup, IntMatrix
from ..core.sandpile import Digraph
from .exceptions import DatasetNotFound, InputError
from .schemas import FusionDocument, GraphDocument, MatrixDocument, encode_integer, parse_document

logger = logging.getLogger(__name__)

_DEFAULT_DATASETS_ROOT = Path(__file__).resolve().parents[2] / "datasets"
DATASET_KINDS = ("matrices", "graphs", "tables", "fusions")
BUILTIN_TABLES = ("S1", "S2", "S3", "S4", "S5", "S6", "D4", "D5", "Z2", "Z6", "Z2xZ2", "trivial")

Source = Union[str, Path, dict]


def datasets_root() -> Path:
    configured = os.getenv("CRITGROUP_DATASETS_ROOT", "").strip()
    return Path(configured) if configured else _DEFAULT_DATASETS_ROOT


def _normalise_dataset_name(name: str) -> str:
    candidate = name.strip()
    if candidate.endswith(".json"):
        candidate = candidate[: -len(".json")]
    if not re.fullmatch(r"[A-Za-z0-9_-]+", candidate):
        raise InputError(f"Dataset name {name!r} may only contain letters, numbers, hyphen, and underscore")
    return candidate


def resolve_path(kind: str, source: Union[str, Path]) -> Path:
    """A readable file path, or the bundled dataset ``<root>/<kind>/<name>.json``."""

    if kind not in DATASET_KINDS:
        raise InputError(f"Unknown dataset kind {kind!r}")
    candidate = Path(source)
    if candidate.is_file():
        return candidate
    if isinstance(source, str) and not any(sep in source for sep in ("/", "\\")):
        bundled = datasets_root() / kind / f"{_normalise_dataset_name(source)}.json"
        if bundled.is_file():
            return bundled
    raise DatasetNotFound(f"No {kind[:-1]} file or bundled dataset named {str(source)!r}")


@lru_cache(maxsize=64)
def _read_json(path: str) -> object:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetNotFound(f"Cannot read {path}: {exc}") from exc
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from exc


def clear_dataset_cache() -> None:
    _read_json.cache_clear()


def _payload(kind: str, source: Source) -> object:
    if isinstance(source, dict):
        return source
    path = resolve_path(kind, source)
    logger.debug("Loading %s from %s", kind, path)
    return _read_json(str(path.resolve()))


def list_datasets(kind: str) -> List[str]:
    if kind not in DATASET_KINDS:
        raise InputError(f"Unknown dataset kind {kind!r}")
    folder = datasets_root() / kind
    if not folder.is_dir():
        return []
    return sorted(path.stem for path in folder.glob("*.json") if path.is_file())


def load_matrix(source: Source) -> IntMatrix:
    document: MatrixDocument = parse_document(MatrixDocument, _payload("matrices", source), "matrix")
    return IntMatrix.from_rows(document.integer_rows(), cols=document.cols)


def load_graph(source: Source) -> Digraph:
    document: GraphDocument = parse_document(GraphDocument, _payload("graphs", source), "graph")
    return Digraph.from_edges(document.vertices, document.edges, sink=document.sink, undirected=document.undirected)


def load_table(source: Source) -> CharacterTable:
    """Built-in names (S4, D5, Z6, ...) first, then JSON files and bundled tables."""

    if isinstance(source, str):
        try:
            return builtin_table(source)
        except InputError:
            pass
    table = build_table(_payload("tables", source))
    logger.info("Loaded character table %s (%d classes)", table.group_name, len(table.classes))
    return table


def load_fusion(source: Source, group: CharacterTable, subgroup: CharacterTable) -> ClassFusion:
    document: FusionDocument = parse_document(FusionDocument, _payload("fusions", source), "fusion")
    if group.order % subgroup.order:
        raise InputError(f"|{subgroup.group_name}| does not divide |{group.group_name}|")
    fusion = ClassFusion(tuple(document.fusion), index=group.order // subgroup.order)
    return fusion.check(group, subgroup)


def list_tables() -> List[str]:
    return list(BUILTIN_TABLES) + [name for name in list_datasets("tables") if name not in BUILTIN_TABLES]


def matrix_to_json(matrix: IntMatrix) -> Dict[str, object]:
    return {
        "rows": matrix.rows,
        "cols": matrix.cols,
        "entries": [[encode_integer(value) for value in row] for row in matrix.to_rows()],
    }


def group_to_json(group: AbelianGroup, order: Optional[int] = None) -> Dict[str, object]:
    return {
        "invariant_factors": [encode_integer(v) for v in group.invariant_factors],
        "elementary_divisors": [encode_integer(v) for v in group.elementary_divisors()],
        "free_rank": group.free_rank,
        "order": encode_integer(order if order is not None else group.order) if group.is_finite else None,
        "pretty": group.pretty(),
    }
