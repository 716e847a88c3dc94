"""Graph text formats: detection, parsing and rendering."""

from __future__ import annotations

import re
from typing import Optional

from gcx.core.graphcore import Skeleton
from gcx.core.models import Decoration, EdgeKind, GraphFormat
from gcx.errors import GcxError, ParseError

# v=<int>;e=<t>-<h>,... optionally followed by one per-vertex or per-edge section
GRAPH_PATTERN = re.compile(
    r"^v=(?P<v>\d+);e=(?P<edges>(?:\d+-\d+(?:,\d+-\d+)*)?)"
    r"(?:;(?P<tag>w|dec|kind)=(?P<extra>[^;]*))?$"
)
WEIGHT_PATTERN = re.compile(r"^(\d+)/(\d+)$")

SECTION_FORMATS = {
    None: GraphFormat.PLAIN,
    "w": GraphFormat.WEIGHTED,
    "dec": GraphFormat.DECORATED,
    "kind": GraphFormat.MIXED,
}
DECORATION_VALUES = {d.value for d in Decoration}
KIND_VALUES = {k.value for k in EdgeKind}


def detect_format(text: str) -> GraphFormat:
    """
    Detect which graph text format a line uses.

    Raises:
        ParseError: If the line is empty or matches no format
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("Input is empty")

    match = GRAPH_PATTERN.match(stripped)
    if not match:
        raise ParseError(
            f"Could not parse graph line: {stripped!r}",
            suggestions=["v=2;e=1-2", "v=2;e=1-2;w=2/1,1/2", "v=2;e=1-2;dec=oo,o0"],
        )
    return SECTION_FORMATS[match.group("tag")]


def parse_graph(text: str) -> tuple[GraphFormat, Skeleton]:
    """
    Parse one graph line into its format and a skeleton.

    Indices are 1-based. Weighted lines carry `out/in` per vertex, decorated
    lines one of oo, o0, 0o, 00 per vertex, mixed lines one edge kind per edge.

    Raises:
        ParseError: On malformed text
        EmptyDomainError: When v is zero
        VertexIndexError: When an endpoint lies outside 1..v
    """
    fmt = detect_format(text)
    match = GRAPH_PATTERN.match(text.strip())
    assert match is not None

    n = int(match.group("v"))
    raw_edges = match.group("edges")
    edges = []
    if raw_edges:
        for token in raw_edges.split(","):
            tail, head = token.split("-")
            edges.append((int(tail), int(head)))

    kinds: tuple[str, ...] = ()
    colors: tuple = ()
    extra = match.group("extra")
    tokens = extra.split(",") if extra else []

    if fmt == GraphFormat.WEIGHTED:
        weights = []
        for token in tokens:
            weight = WEIGHT_PATTERN.match(token)
            if not weight:
                raise ParseError(f"Invalid bi-weight: {token!r}", field="w")
            weights.append((int(weight.group(1)), int(weight.group(2))))
        if len(weights) != n:
            raise ParseError(f"Expected {n} bi-weights, got {len(weights)}", field="w")
        colors = tuple(weights)

    elif fmt == GraphFormat.DECORATED:
        if any(token not in DECORATION_VALUES for token in tokens):
            raise ParseError(
                f"Invalid decoration list: {extra!r}",
                field="dec",
                suggestions=sorted(DECORATION_VALUES),
            )
        if len(tokens) != n:
            raise ParseError(f"Expected {n} decorations, got {len(tokens)}", field="dec")
        colors = tuple(tokens)

    elif fmt == GraphFormat.MIXED:
        if any(token not in KIND_VALUES for token in tokens):
            raise ParseError(
                f"Invalid edge kind list: {extra!r}",
                field="kind",
                suggestions=sorted(KIND_VALUES),
            )
        if len(tokens) != len(edges):
            raise ParseError(f"Expected {len(edges)} edge kinds, got {len(tokens)}", field="kind")
        kinds = tuple(tokens)

    return fmt, Skeleton(n, tuple(edges), kinds, colors)


def parse_graph_lines(text: str) -> list[Skeleton]:
    """Parse a file body with one graph per line; blank lines and # comments are skipped."""
    graphs = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            graphs.append(parse_graph(stripped)[1])
        except GcxError as e:
            raise ParseError(f"line {number}: {e.message}", field=e.field) from e
    return graphs


def infer_format(sk: Skeleton) -> GraphFormat:
    """Pick the text format that represents a skeleton without loss."""
    sample = sk.colors[0]
    if isinstance(sample, tuple) and len(sample) == 2:
        return GraphFormat.WEIGHTED
    if isinstance(sample, str):
        return GraphFormat.DECORATED
    if any(kind != EdgeKind.SOLID.value for kind in sk.kinds):
        return GraphFormat.MIXED
    return GraphFormat.PLAIN


def render_skeleton(sk: Skeleton, fmt: Optional[GraphFormat] = None) -> str:
    """Render a skeleton in the one-line text format."""
    fmt = fmt or infer_format(sk)
    text = f"v={sk.n};e=" + ",".join(f"{t}-{h}" for t, h in sk.edges)

    if fmt == GraphFormat.WEIGHTED:
        text += ";w=" + ",".join(f"{o}/{i}" for o, i in sk.colors)
    elif fmt == GraphFormat.DECORATED:
        text += ";dec=" + ",".join(str(c) for c in sk.colors)
    elif fmt == GraphFormat.MIXED:
        text += ";kind=" + ",".join(sk.kinds)
    return text


def split_key(key: str) -> tuple[str, Skeleton]:
    """Split a canonical key into its orientation tag and the canonical skeleton."""
    tag, sep, body = key.partition("|")
    if not sep:
        raise ParseError(f"Not a canonical key: {key!r}")
    return tag, parse_graph(body)[1]
