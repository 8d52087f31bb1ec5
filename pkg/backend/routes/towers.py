from __future__ import annotations

from typing import Any, Dict, List, Optional, Union

from fastapi import APIRouter
from pydantic import BaseModel, Field

from ..core import towers as towers_core
from ..services import analysis
from ..services.exceptions import ServiceError
from .errors import to_http_exception
from .linalg import GroupResponse

router = APIRouter(prefix="/towers", tags=["towers"])

Integer = Union[int, str]


class TowerRequest(BaseModel):
    r: int = Field(..., ge=1)
    n: int = Field(..., ge=0)
    word: Optional[str] = Field(default=None, min_length=1)
    f: Optional[str] = Field(default=None, min_length=1)


class StructureResponse(BaseModel):
    order: Integer
    subgroups: List[List[Integer]]


class TowerResponse(BaseModel):
    r: int
    n: int
    f: str
    dimension: Integer
    alphas: List[Integer]
    group: GroupResponse
    structure: StructureResponse
    ones: int
    ones_report: Optional[Dict[str, Any]] = None


class ConjectureRequest(BaseModel):
    r: int = Field(..., ge=1)
    n: int = Field(..., ge=0)
    k: int = Field(..., ge=0)


class ConjectureResponse(BaseModel):
    r: int
    n: int
    k: int
    predicted: List[int]
    computed: List[int]
    match: bool
    asserted: bool
    inner: List[int]
    literal_exponent: int
    used_exponent: int
    multiplicity_discrepancy: bool


@router.post("", response_model=TowerResponse)
def tower_critical_group(payload: TowerRequest) -> TowerResponse:
    try:
        f, word = analysis.tower_operator(payload.r, word=payload.word, coefficients=payload.f)
        result = analysis.analyse_tower(payload.r, payload.n, f, word)
    except ServiceError as exc:
        raise to_http_exception(exc) from exc
    return TowerResponse(**result)


@router.post("/conjecture", response_model=ConjectureResponse)
def check_conjecture(payload: ConjectureRequest) -> ConjectureResponse:
    try:
        report = towers_core.check_conjecture(payload.r, payload.n, payload.k)
    except ServiceError as exc:
        raise to_http_exception(exc) from exc
    return ConjectureResponse(**report.to_dict())
