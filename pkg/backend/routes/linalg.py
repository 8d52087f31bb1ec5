from __future__ import annotations

from typing import List, Optional, Union

from fastapi import APIRouter
from pydantic import BaseModel

from ..services import analysis
from ..services.exceptions import ServiceError
from ..services.schemas import MatrixDocument
from ..core.exact_linalg import IntMatrix
from .errors import to_http_exception

router = APIRouter(prefix="/linalg", tags=["linalg"])

Integer = Union[int, str]


class GroupResponse(BaseModel):
    invariant_factors: List[Integer]
    elementary_divisors: List[Integer]
    free_rank: int
    order: Optional[Integer] = None
    pretty: str


class SnfResponse(BaseModel):
    shape: List[int]
    diagonal: List[Integer]
    multiset: List[Integer]
    rank: int
    cokernel: GroupResponse


@router.post("/snf", response_model=SnfResponse)
def smith_form(payload: MatrixDocument) -> SnfResponse:
    try:
        matrix = IntMatrix.from_rows(payload.integer_rows(), cols=payload.cols)
        result = analysis.analyse_matrix(matrix)
    except ServiceError as exc:
        raise to_http_exception(exc) from exc
    return SnfResponse(**result)
