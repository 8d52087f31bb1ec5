from __future__ import annotations

from typing import Any, List, Optional

from fastapi import APIRouter
from pydantic import BaseModel

from ..services import verification as verification_service
from ..services.exceptions import ServiceError
from .errors import to_http_exception

router = APIRouter(prefix="/verify", tags=["verification"])


class VerificationResultResponse(BaseModel):
    name: str
    anchor: str
    expected: Any = None
    computed: Any = None
    passed: bool
    asserted: bool
    error: Optional[str] = None


class SuiteResponse(BaseModel):
    suite: str
    seed: int
    passed: bool
    results: List[VerificationResultResponse]


@router.get("/{suite}", response_model=SuiteResponse)
def run_suite(suite: str, seed: Optional[int] = None) -> SuiteResponse:
    seed = verification_service.default_seed() if seed is None else seed
    try:
        results = verification_service.run_suite(suite, seed=seed)
    except ServiceError as exc:
        raise to_http_exception(exc) from exc
    return SuiteResponse(
        suite=suite,
        seed=seed,
        passed=verification_service.suite_exit_code(results) == 0,
        results=[VerificationResultResponse(**result.to_dict()) for result in results],
    )
