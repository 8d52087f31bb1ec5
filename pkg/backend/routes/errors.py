from __future__ import annotations

from fastapi import HTTPException, status

from ..services.exceptions import DatasetNotFound, InputError, ParseError, ServiceError


def to_http_exception(exc: ServiceError) -> HTTPException:
    """400 for bad input, 404 for unknown datasets, 500 when a guaranteed identity fails."""

    if isinstance(exc, ParseError):
        return HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail={
                "message": exc.message,
                "line": exc.line,
                "column": exc.column,
                "context": exc.context,
            },
        )
    if isinstance(exc, DatasetNotFound):
        return HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=str(exc))
    if isinstance(exc, InputError):
        return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(exc))
    return HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=str(exc))
