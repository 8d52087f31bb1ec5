from __future__ import annotations

from typing import Any, Dict, List, Optional, Union

from fastapi import APIRouter
from pydantic import BaseModel, Field, model_validator

from ..core.chartables import RepVector
from ..services import analysis, datasets
from ..services.exceptions import ServiceError
from .errors import to_http_exception
from .linalg import GroupResponse

router = APIRouter(tags=["representations"])


class TableSummaryResponse(BaseModel):
    name: str
    builtin: bool


class RepresentationRequest(BaseModel):
    builtin: Optional[str] = None
    table: Optional[Dict[str, Any]] = None
    rep: Optional[List[int]] = None
    named: Optional[Dict[str, int]] = None

    @model_validator(mode="after")
    def _one_of_each(self) -> "RepresentationRequest":
        if (self.builtin is None) == (self.table is None):
            raise ValueError("give exactly one of builtin or table")
        if (self.rep is None) == (self.named is None):
            raise ValueError("give exactly one of rep or named")
        return self


class RestrictionResponse(BaseModel):
    subgroup: str
    rep: str
    group: GroupResponse
    res_surjective: bool
    ind_injective: bool


class RepresentationResponse(BaseModel):
    table: str
    rep: str
    dimension: int
    faithful: bool
    group: GroupResponse
    order: Union[int, str]
    subgroups: List[List[Union[int, str]]] = Field(default_factory=list)
    restriction: Optional[RestrictionResponse] = None


@router.get("/tables", response_model=List[TableSummaryResponse])
def list_tables() -> List[TableSummaryResponse]:
    return [TableSummaryResponse(name=name, builtin=name in datasets.BUILTIN_TABLES) for name in datasets.list_tables()]


@router.get("/tables/{name}")
def get_table(name: str) -> Dict[str, Any]:
    try:
        return datasets.load_table(name).to_json()
    except ServiceError as exc:
        raise to_http_exception(exc) from exc


@router.post("/representations/critical-group", response_model=RepresentationResponse)
def representation_critical_group(payload: RepresentationRequest) -> RepresentationResponse:
    try:
        table = datasets.load_table(payload.builtin if payload.builtin is not None else payload.table)
        if payload.named is not None:
            V = RepVector.from_named(table, payload.named)
        else:
            V = RepVector(tuple(payload.rep)).check(table)
        result = analysis.analyse_representation(table, V)
    except ServiceError as exc:
        raise to_http_exception(exc) from exc
    return RepresentationResponse(**result)
