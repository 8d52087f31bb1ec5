"""Pydantic documents for the JSON inputs (matrices, graphs, character tables, fusions)."""

from __future__ import annotations

from typing import List, Optional, Union

from pydantic import BaseModel, Field, ValidationError, model_validator

from .exceptions import InputError

_INT64_MIN = -(2**63)
_INT64_MAX = 2**63 - 1


class MatrixDocument(BaseModel):
    rows: int = Field(..., ge=0)
    cols: int = Field(..., ge=0)
    entries: List[List[Union[int, str]]]

    @model_validator(mode="after")
    def _check_shape(self) -> "MatrixDocument":
        if len(self.entries) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.entries)}")
        for index, row in enumerate(self.entries):
            if len(row) != self.cols:
                raise ValueError(f"row {index} has {len(row)} entries, expected {self.cols}")
            for value in row:
                if isinstance(value, str) and not value.lstrip("-").isdigit():
                    raise ValueError(f"entry {value!r} is not a decimal integer")
        return self

    def integer_rows(self) -> List[List[int]]:
        return [[int(value) for value in row] for row in self.entries]


class GraphDocument(BaseModel):
    vertices: List[str] = Field(..., min_length=1)
    edges: List[List[Union[str, int]]] = Field(default_factory=list)
    sink: Optional[str] = None
    undirected: bool = False

    @model_validator(mode="after")
    def _check_edges(self) -> "GraphDocument":
        names = set(self.vertices)
        if len(names) != len(self.vertices):
            raise ValueError("vertex names must be unique")
        for edge in self.edges:
            if len(edge) not in (2, 3):
                raise ValueError(f"edge {edge} must be [source, target] or [source, target, multiplicity]")
            source, target = str(edge[0]), str(edge[1])
            if source not in names or target not in names:
                raise ValueError(f"edge {edge} uses an unknown vertex")
            if len(edge) == 3 and (not isinstance(edge[2], int) or edge[2] <= 0):
                raise ValueError(f"edge {edge} needs a positive integer multiplicity")
        if self.sink is not None and self.sink not in names:
            raise ValueError(f"sink {self.sink!r} is not a vertex")
        return self


class CyclotomicEntry(BaseModel):
    conductor: int = Field(..., ge=1)
    coeffs: List[int]


class ClassDocument(BaseModel):
    name: str
    size: int = Field(..., ge=1)


class CharacterTableDocument(BaseModel):
    name: str
    order: int = Field(..., ge=1)
    exponent: int = Field(..., ge=1)
    classes: List[ClassDocument] = Field(..., min_length=1)
    characters: List[List[Union[int, CyclotomicEntry]]]
    irreps: Optional[List[str]] = None

    @model_validator(mode="after")
    def _check_shape(self) -> "CharacterTableDocument":
        width = len(self.classes)
        for index, row in enumerate(self.characters):
            if len(row) != width:
                raise ValueError(f"character {index} has {len(row)} values, expected {width}")
        if self.irreps is not None and len(self.irreps) != len(self.characters):
            raise ValueError("irreps must name every character")
        return self


class FusionDocument(BaseModel):
    fusion: List[int] = Field(..., min_length=1)
    group: Optional[str] = None
    subgroup: Optional[str] = None


def parse_document(model: type, payload: object, label: str):
    """Validate ``payload`` against ``model``; schema failures become ``InputError``."""

    try:
        return model.model_validate(payload)
    except ValidationError as exc:
        raise InputError(f"Invalid {label}: {exc}") from exc


def encode_integer(value: int) -> Union[int, str]:
    if _INT64_MIN <= value <= _INT64_MAX:
        return value
    return str(value)
