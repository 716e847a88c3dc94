"""Core graph complex logic - protocol independent."""

from gcx.core.models import (
    ChainMapName,
    Decoration,
    EdgeKind,
    FieldChoice,
    GraphFormat,
    Membership,
    VertexClass,
    VerifyTarget,
)

__all__ = [
    "ChainMapName",
    "Decoration",
    "EdgeKind",
    "FieldChoice",
    "GraphFormat",
    "Membership",
    "VertexClass",
    "VerifyTarget",
]
