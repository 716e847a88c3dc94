"""
Linear combinations of graph classes and the vertex-splitting differential.

The differential of a labelled graph is a sum over its vertices x of
    (all ways to split x in two, joined by a new edge)
    - (x with a new outgoing hair) - (x with a new incoming hair).
The trivial splits coincide with the hair terms, so in the full complexes the
univalent-creating terms cancel. Reduced complexes drop raw terms that leave
the complex before summing; those terms cancel in pairs anyway.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, Iterator, NamedTuple, Optional, Union

from gcx.core.canon import (
    GraphClass,
    OrientationRule,
    canonical_form,
    directed_rule,
    undirected_rule,
)
from gcx.core.graphcore import (
    GraphLike,
    Skeleton,
    as_skeleton,
    degree,
    subcomplex_membership,
    undirected_shapes,
)
from gcx.core.models import DegreeBoundReport, EdgeKind, Membership
from gcx.errors import BoundExceededError, FlavorViolationError, VertexIndexError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
SOLID = EdgeKind.SOLID.value


# === Linear Combinations ===


class LinearCombination:
    """
    Finite sum of graph classes with rational coefficients.

    Terms are stored by canonical key. Adding a labelled skeleton canonicalises
    it first and multiplies by its sign, so zero classes vanish on entry.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[dict[str, tuple[GraphClass, Fraction]]] = None):
        self._terms: dict[str, tuple[GraphClass, Fraction]] = dict(terms or {})

    @classmethod
    def of(
        cls, g: GraphLike, rule: OrientationRule, coefficient: Scalar = 1
    ) -> "LinearCombination":
        chain = cls()
        chain.add_skeleton(as_skeleton(g), rule, coefficient)
        return chain

    @classmethod
    def from_class(cls, graph_class: GraphClass, coefficient: Scalar = 1) -> "LinearCombination":
        chain = cls()
        chain.add_class(graph_class, coefficient)
        return chain

    def add_skeleton(self, sk: Skeleton, rule: OrientationRule, coefficient: Scalar = 1) -> None:
        graph_class, sign = canonical_form(sk, rule)
        if sign:
            self.add_class(graph_class, sign * coefficient)

    def add_class(self, graph_class: GraphClass, coefficient: Scalar) -> None:
        if graph_class.is_zero or not coefficient:
            return
        key = graph_class.key
        current = self._terms.get(key)
        total = Fraction(coefficient) + (current[1] if current else 0)
        if total:
            self._terms[key] = (graph_class, total)
        else:
            self._terms.pop(key, None)

    def add(self, other: "LinearCombination", scale: Scalar = 1) -> None:
        """In-place self += scale * other."""
        for graph_class, coefficient in other._terms.values():
            self.add_class(graph_class, coefficient * scale)

    def copy(self) -> "LinearCombination":
        return LinearCombination(self._terms)

    def extend_linearly(
        self, fn: Callable[[GraphClass], "LinearCombination"]
    ) -> "LinearCombination":
        """Apply a map defined on basis elements to the whole sum."""
        result = LinearCombination()
        for graph_class, coefficient in self.items():
            result.add(fn(graph_class), coefficient)
        return result

    def filter(self, predicate: Callable[[GraphClass], bool]) -> "LinearCombination":
        return LinearCombination(
            {key: term for key, term in self._terms.items() if predicate(term[0])}
        )

    def coefficient(self, key: str) -> Fraction:
        term = self._terms.get(key)
        return term[1] if term else Fraction(0)

    def coefficient_of(self, g: GraphLike, rule: OrientationRule) -> Fraction:
        """Coefficient of a labelled graph, in its own orientation."""
        graph_class, sign = canonical_form(as_skeleton(g), rule)
        if not sign:
            return Fraction(0)
        return self.coefficient(graph_class.key) * sign

    def items(self) -> list[tuple[GraphClass, Fraction]]:
        return [self._terms[key] for key in sorted(self._terms)]

    def keys(self) -> list[str]:
        return sorted(self._terms)

    def to_json(self) -> dict[str, str]:
        return {key: str(coefficient) for key, (_, coefficient) in sorted(self._terms.items())}

    def __add__(self, other: "LinearCombination") -> "LinearCombination":
        result = self.copy()
        result.add(other)
        return result

    def __sub__(self, other: "LinearCombination") -> "LinearCombination":
        result = self.copy()
        result.add(other, -1)
        return result

    def __neg__(self) -> "LinearCombination":
        return self * -1

    def __mul__(self, scalar: Scalar) -> "LinearCombination":
        result = LinearCombination()
        result.add(self, scalar)
        return result

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return self.to_json() == other.to_json()

    __hash__ = None  # type: ignore[assignment]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, key: str) -> bool:
        return key in self._terms

    def __repr__(self) -> str:
        body = " + ".join(f"({c})[{key}]" for key, c in self.to_json().items())
        return f"LinearCombination({body or '0'})"


# === Flavors ===


class FlavorBase(str, Enum):
    UNDIRECTED_FULL = "undirected_full"
    UNDIRECTED_GC = "undirected_GC"
    UNDIRECTED_BIVALENT = "undirected_bivalent"
    DIRECTED_FULL = "directed_full"
    DIRECTED_DGC = "directed_dGC"
    DIRECTED_QUOTIENT = "directed_quotient"


FLAVOR_TABLE: dict[str, tuple[FlavorBase, Optional[Membership]]] = {
    "cfGC": (FlavorBase.UNDIRECTED_FULL, None),
    "GC": (FlavorBase.UNDIRECTED_GC, None),
    "b2GC": (FlavorBase.UNDIRECTED_BIVALENT, None),
    "cfdGC": (FlavorBase.DIRECTED_FULL, None),
    "dGC": (FlavorBase.DIRECTED_DGC, None),
    "dGC^s": (FlavorBase.DIRECTED_DGC, Membership.SOURCED),
    "dGC^t": (FlavorBase.DIRECTED_DGC, Membership.TARGETED),
    "dGC^st": (FlavorBase.DIRECTED_DGC, Membership.ST),
    "dGC^s+t": (FlavorBase.DIRECTED_DGC, Membership.S_PLUS_T),
    "dGC^or": (FlavorBase.DIRECTED_DGC, Membership.ORIENTED),
    "dGC/s": (FlavorBase.DIRECTED_QUOTIENT, Membership.SOURCED),
    "dGC/t": (FlavorBase.DIRECTED_QUOTIENT, Membership.TARGETED),
    "dGC/st": (FlavorBase.DIRECTED_QUOTIENT, Membership.ST),
    "dGC^wheeled": (FlavorBase.DIRECTED_QUOTIENT, Membership.S_PLUS_T),
}

UNDIRECTED_BASES = {
    FlavorBase.UNDIRECTED_FULL,
    FlavorBase.UNDIRECTED_GC,
    FlavorBase.UNDIRECTED_BIVALENT,
}


def _dgc_shape(sk: Skeleton) -> bool:
    valences = sk.valences()
    if any(o + i <= 1 or (o == 1 and i == 1) for o, i in valences):
        return False
    return any(o + i >= 3 for o, i in valences)


@dataclass(frozen=True)
class ComplexFlavor:
    """A named graph complex at a fixed k: its basis predicate and orientation rule."""

    base: FlavorBase
    k: int
    which: Optional[Membership] = None
    allow_tadpoles: bool = False
    name: str = ""

    @classmethod
    def parse(cls, name: str, k: int, allow_tadpoles: Optional[bool] = None) -> "ComplexFlavor":
        """
        Raises:
            FlavorViolationError: If the name is not a plain graph complex
        """
        if name not in FLAVOR_TABLE:
            raise FlavorViolationError(
                f"Unknown graph complex: {name}", field="flavor", suggestions=sorted(FLAVOR_TABLE)
            )
        base, which = FLAVOR_TABLE[name]
        if allow_tadpoles is None:
            allow_tadpoles = base == FlavorBase.UNDIRECTED_BIVALENT
        return cls(base, k, which, allow_tadpoles, name)

    @property
    def undirected(self) -> bool:
        return self.base in UNDIRECTED_BASES

    @property
    def rule(self) -> OrientationRule:
        return undirected_rule(self.k) if self.undirected else directed_rule(self.k)

    @property
    def is_quotient(self) -> bool:
        return self.base == FlavorBase.DIRECTED_QUOTIENT

    @property
    def min_degree(self) -> int:
        if self.base == FlavorBase.UNDIRECTED_GC:
            return 3
        if self.base in (FlavorBase.UNDIRECTED_FULL, FlavorBase.DIRECTED_FULL):
            return 0
        return 2

    def admits(self, g: GraphLike) -> bool:
        """Whether a labelled graph lies in this complex's basis set (zero classes aside)."""
        sk = as_skeleton(g)
        if not self.allow_tadpoles and sk.has_tadpole():
            return False
        if self.base == FlavorBase.UNDIRECTED_GC:
            return all(d >= 3 for d in sk.degrees())
        if self.base == FlavorBase.UNDIRECTED_BIVALENT:
            return all(d == 2 for d in sk.degrees())
        if self.base in (FlavorBase.DIRECTED_DGC, FlavorBase.DIRECTED_QUOTIENT):
            if not _dgc_shape(sk):
                return False
            if self.which is None:
                return True
            member = subcomplex_membership(sk, self.which)
            return not member if self.is_quotient else member
        return True

    def keeps_raw(self, sk: Skeleton) -> bool:
        """Raw differential terms outside this test cancel among themselves."""
        if self.base == FlavorBase.UNDIRECTED_GC:
            return all(d >= 3 for d in sk.degrees())
        if self.base in (FlavorBase.DIRECTED_DGC, FlavorBase.DIRECTED_QUOTIENT):
            return all(o + i >= 2 and not (o == 1 and i == 1) for o, i in sk.valences())
        return True

    def degree(self, g: GraphLike) -> int:
        return degree(g, self.k)


# === Vertex Splitting ===


class RawTerm(NamedTuple):
    skeleton: Skeleton
    coefficient: int
    univalent: bool


ColorSplit = Callable[[Any], Iterable[tuple[Any, Any]]]


def _same_color(color: Any) -> Iterable[tuple[Any, Any]]:
    return ((color, color),)


def split_sign(sk: Skeleton, rule: OrientationRule) -> int:
    """Sign of appending the new vertex and edge: (-1)^(odd edges) when vertices are odd."""
    if not rule.odd_vertices:
        return 1
    odd_edges = sum(1 for kind in sk.kinds if kind in rule.odd_kinds)
    return -1 if odd_edges % 2 else 1


def half_edges(sk: Skeleton, x: int) -> list[tuple[int, int]]:
    """(edge index, end) pairs at x; end 0 is the tail. A tadpole contributes both ends."""
    halves = []
    for j, (t, h) in enumerate(sk.edges):
        if t == x:
            halves.append((j, 0))
        if h == x:
            halves.append((j, 1))
    return halves


def _check_vertex(sk: Skeleton, x: int) -> None:
    if not 1 <= x <= sk.n:
        raise VertexIndexError(f"Vertex {x} is not in 1..{sk.n}", field="x")


def vertex_split_terms(
    sk: Skeleton,
    x: int,
    rule: OrientationRule,
    color_splits: Optional[ColorSplit] = None,
    new_kind: str = SOLID,
) -> Iterator[RawTerm]:
    """
    Every reconnection of the half-edges at x between x and a new vertex n+1,
    joined by a new edge x -> n+1. The trivial reconnections are flagged univalent.
    """
    _check_vertex(sk, x)
    splits = color_splits or _same_color
    n = sk.n
    sign = split_sign(sk, rule)
    halves = half_edges(sk, x)
    full = (1 << len(halves)) - 1
    for mask in range(full + 1):
        edges = list(sk.edges)
        for bit, (j, end) in enumerate(halves):
            if mask >> bit & 1:
                t, h = edges[j]
                edges[j] = (n + 1, h) if end == 0 else (t, n + 1)
        edges.append((x, n + 1))
        kinds = sk.kinds + (new_kind,)
        for kept, moved in splits(sk.colors[x - 1]):
            colors = list(sk.colors) + [moved]
            colors[x - 1] = kept
            yield RawTerm(
                Skeleton(n + 1, tuple(edges), kinds, tuple(colors)),
                sign,
                mask in (0, full),
            )


def attach_univalent(
    sk: Skeleton,
    x: int,
    outgoing: bool,
    x_color: Any = None,
    new_color: Any = (),
    kind: str = SOLID,
) -> Skeleton:
    """
    Attach a univalent vertex to x by a new last edge.

    Outgoing hairs get label n+1. For incoming hairs the new vertex takes label
    x and x moves to n+1, so the result matches the split moving everything.
    """
    _check_vertex(sk, x)
    n = sk.n
    colors = list(sk.colors)
    if x_color is not None:
        colors[x - 1] = x_color
    if outgoing:
        return Skeleton(
            n + 1, sk.edges + ((x, n + 1),), sk.kinds + (kind,), tuple(colors) + (new_color,)
        )
    moved = {y: y for y in range(1, n + 1)}
    moved[x] = n + 1
    edges = tuple((moved[t], moved[h]) for t, h in sk.edges) + ((x, n + 1),)
    colors.append(colors[x - 1])
    colors[x - 1] = new_color
    return Skeleton(n + 1, edges, sk.kinds + (kind,), tuple(colors))


def vertex_split(g: GraphLike, x: int, rule: OrientationRule) -> LinearCombination:
    """Signed sum of all splittings of vertex x, trivial ones included."""
    result = LinearCombination()
    for term in vertex_split_terms(as_skeleton(g), x, rule):
        result.add_skeleton(term.skeleton, rule, term.coefficient)
    return result


def add_univalent(g: GraphLike, x: int, direction: str, rule: OrientationRule) -> LinearCombination:
    """A univalent vertex joined to x by an edge leaving x ("out") or entering x ("in")."""
    sk = as_skeleton(g)
    if direction not in ("out", "in"):
        raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")
    hair = attach_univalent(sk, x, outgoing=direction == "out")
    return LinearCombination.of(hair, rule, split_sign(sk, rule))


def raw_differential_terms(sk: Skeleton, rule: OrientationRule) -> Iterator[RawTerm]:
    """Every term of the vertex-splitting differential before canonicalisation."""
    sign = split_sign(sk, rule)
    for x in range(1, sk.n + 1):
        yield from vertex_split_terms(sk, x, rule)
        yield RawTerm(attach_univalent(sk, x, outgoing=True), -sign, True)
        yield RawTerm(attach_univalent(sk, x, outgoing=False), -sign, True)


# === Differential ===


@lru_cache(maxsize=1 << 15)
def _graph_differential(
    sk: Skeleton, flavor: ComplexFlavor
) -> tuple[tuple[GraphClass, Fraction], ...]:
    if not flavor.admits(sk):
        raise FlavorViolationError(
            f"Graph is not a generator of {flavor.name or flavor.base.value}", field="flavor"
        )
    rule = flavor.rule
    scale = Fraction(1, 2) if flavor.undirected else Fraction(1)
    terms = LinearCombination()
    for term in raw_differential_terms(sk, rule):
        if flavor.keeps_raw(term.skeleton):
            terms.add_skeleton(term.skeleton, rule, term.coefficient * scale)
    if flavor.is_quotient:
        terms = terms.filter(lambda graph_class: flavor.admits(graph_class.skeleton))
    else:
        for graph_class, _ in terms.items():
            if not flavor.admits(graph_class.skeleton):
                raise FlavorViolationError(
                    f"d leaves {flavor.name or flavor.base.value}: {graph_class.key}",
                    field="flavor",
                )
    return tuple(terms.items())


def graph_differential(g: GraphLike, flavor: ComplexFlavor) -> LinearCombination:
    """d of a single labelled graph, in that graph's own orientation."""
    result = LinearCombination()
    for graph_class, coefficient in _graph_differential(as_skeleton(g), flavor):
        result.add_class(graph_class, coefficient)
    return result


def differential(chain: LinearCombination, flavor: ComplexFlavor) -> LinearCombination:
    """
    The differential of a complex, extended linearly.

    Raises:
        FlavorViolationError: When a subcomplex is not closed under d
    """
    return chain.extend_linearly(
        lambda graph_class: graph_differential(graph_class.skeleton, flavor)
    )


def d_squared_failures(
    basis: Iterable[GraphClass],
    d: Callable[[LinearCombination], LinearCombination],
) -> list[str]:
    """Keys of basis elements whose d(d(.)) is not zero."""
    failures = []
    for graph_class in basis:
        twice = d(d(LinearCombination.from_class(graph_class)))
        if twice:
            logger.warning("d^2 != 0 on %s: %r", graph_class.key, twice)
            failures.append(graph_class.key)
    return failures


# === Degree Bound ===


def degree_bound_check(k: int, b: int) -> DegreeBoundReport:
    """
    Enumerate GC at loop order b and confirm no generator sits above degree (3-k)b-3.

    Every vertex is at least trivalent, so 3v <= 2e bounds v by 2b-2; the level
    v = 2b-1 is enumerated as well to show it is empty.

    Raises:
        BoundExceededError: For b outside 2..4
    """
    if not 2 <= b <= 4:
        raise BoundExceededError(f"Degree bound check supports b in 2..4, got {b}", field="b")
    flavor = ComplexFlavor.parse("GC", k)
    bound = (3 - k) * b - 3
    attained: Optional[int] = None
    generators = 0
    empty_above = True
    for v in range(1, 2 * b):
        e = v + b - 1
        shapes = undirected_shapes(v, e, allow_tadpoles=False, min_degree=3)
        d = e - b * k
        if shapes and d > bound:
            empty_above = False
        nonzero = [s for s in shapes if canonical_form(s, flavor.rule)[1] != 0]
        generators += len(nonzero)
        if nonzero and (attained is None or d > attained):
            attained = d
        logger.debug("GC_%d b=%d v=%d: %d shapes, %d nonzero", k, b, v, len(shapes), len(nonzero))
    return DegreeBoundReport(
        k=k,
        b=b,
        max_degree=bound,
        attained_degree=attained,
        generators=generators,
        verified_empty_above=empty_above,
    )
