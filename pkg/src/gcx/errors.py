"""Error types and response builders."""

from __future__ import annotations

from typing import Any, Optional

from gcx.core.models import ApiResponse, ErrorDetail, Warning


class GcxError(Exception):
    """Base exception for graph complex errors."""

    code: str = "UNKNOWN_ERROR"

    def __init__(
        self,
        message: str,
        field: Optional[str] = None,
        suggestions: Optional[list[str]] = None,
    ):
        super().__init__(message)
        self.message = message
        self.field = field
        self.suggestions = suggestions

    def to_error_detail(self) -> ErrorDetail:
        return ErrorDetail(
            code=self.code,
            message=self.message,
            field=self.field,
            suggestions=self.suggestions,
        )


class EmptyDomainError(GcxError):
    """Raised when a graph or window has no vertices."""

    code = "EMPTY_DOMAIN"


class VertexIndexError(GcxError):
    """Raised when a vertex index lies outside 1..v."""

    code = "VERTEX_OUT_OF_RANGE"


class InvalidGraphError(GcxError):
    """Raised when a graph violates its structural invariants."""

    code = "INVALID_GRAPH"


class ParseError(GcxError):
    """Raised when a graph text line cannot be parsed."""

    code = "PARSE_ERROR"


class ConfigError(GcxError):
    """Raised when run configuration values are rejected."""

    code = "INVALID_CONFIG"


class FlavorViolationError(GcxError):
    """Raised when a term does not belong to the complex it is used in."""

    code = "FLAVOR_VIOLATION"


class BoundExceededError(GcxError):
    """Raised when a window or size bound is exceeded."""

    code = "BOUND_EXCEEDED"


class InfiniteBidegreeError(GcxError):
    """Raised when a bidegree has no finite basis and no window was given."""

    code = "INFINITE_BIDEGREE"


class CapError(GcxError):
    """Raised when a weight cap is below an infinity threshold."""

    code = "CAP_BELOW_THRESHOLD"


class IllegalDecorationError(GcxError):
    """Raised when a decoration is not allowed on its vertex class."""

    code = "ILLEGAL_DECORATION"


class DimensionMismatchError(GcxError):
    """Raised when matrix and vector shapes disagree."""

    code = "DIMENSION_MISMATCH"


class SmsFormatError(GcxError):
    """Raised on malformed SMS matrix text."""

    code = "SMS_FORMAT"


class DegreeMismatchError(GcxError):
    """Raised when two degree formulas disagree."""

    code = "DEGREE_MISMATCH"


class VerificationError(GcxError):
    """Raised when an asserted identity fails."""

    code = "VERIFICATION_FAILED"


# === Response Builders ===


def success_response(
    data: Any,
    warnings: Optional[list[Warning]] = None,
) -> ApiResponse:
    """Build a successful response."""
    if hasattr(data, "model_dump"):
        data = data.model_dump(mode="json")

    return ApiResponse(
        success=True,
        data=data,
        warnings=warnings or [],
    )


def error_response(error: GcxError | Exception) -> ApiResponse:
    """Build an error response."""
    if isinstance(error, GcxError):
        error_detail = error.to_error_detail()
    else:
        error_detail = ErrorDetail(
            code="INTERNAL_ERROR",
            message=str(error),
        )

    return ApiResponse(
        success=False,
        error=error_detail,
    )


def partial_success_response(
    data: Any,
    warnings: list[Warning],
) -> ApiResponse:
    """Build a response whose data is complete but whose checks did not all pass."""
    if hasattr(data, "model_dump"):
        data = data.model_dump(mode="json")

    return ApiResponse(
        success=True,
        data=data,
        warnings=warnings,
    )
