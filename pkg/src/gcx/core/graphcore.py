"""Labelled connected directed multigraphs: representation, classification, grading, enumeration."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterator, Union

import networkx as nx

from gcx.core.models import EdgeKind, Membership, VertexClass
from gcx.errors import EmptyDomainError, InvalidGraphError, VertexIndexError

logger = logging.getLogger(__name__)

SOLID = EdgeKind.SOLID.value
Edge = tuple[int, int]


# === Raw Graph Data ===


@dataclass(frozen=True)
class Skeleton:
    """
    Hashable labelled graph data: vertices 1..n, ordered edges, per-edge kinds
    and per-vertex colours.

    Kinds default to solid, colours to the empty tuple. Colours carry bi-weights
    or decorations; they only need to be mutually comparable within one graph.
    No connectivity check happens here, see DirectedGraph for that.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    kinds: tuple[str, ...] = ()
    colors: tuple[Any, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise EmptyDomainError("A graph needs at least one vertex", field="v")
        edges = tuple((int(t), int(h)) for t, h in self.edges)
        for t, h in edges:
            if not (1 <= t <= self.n and 1 <= h <= self.n):
                raise VertexIndexError(
                    f"Edge {t}-{h} leaves the vertex range 1..{self.n}", field="e"
                )
        kinds = tuple(self.kinds) or (SOLID,) * len(edges)
        if len(kinds) != len(edges):
            raise InvalidGraphError(f"{len(kinds)} edge kinds for {len(edges)} edges")
        colors = tuple(self.colors) or ((),) * self.n
        if len(colors) != self.n:
            raise InvalidGraphError(f"{len(colors)} vertex colours for {self.n} vertices")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "colors", colors)

    @property
    def e(self) -> int:
        return len(self.edges)

    def valences(self) -> list[tuple[int, int]]:
        """(out, in) per vertex; a tadpole counts once toward each."""
        out = [0] * self.n
        inn = [0] * self.n
        for t, h in self.edges:
            out[t - 1] += 1
            inn[h - 1] += 1
        return list(zip(out, inn))

    def degrees(self) -> list[int]:
        return [o + i for o, i in self.valences()]

    def has_tadpole(self) -> bool:
        return any(t == h for t, h in self.edges)

    def has_multiedge(self) -> bool:
        pairs = [(min(t, h), max(t, h)) for t, h in self.edges]
        return len(set(pairs)) != len(pairs)

    def is_connected(self) -> bool:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from(self.edges)
        return nx.is_connected(graph)

    def relabel(self, new_of: dict[int, int]) -> "Skeleton":
        """Move vertex x to new_of[x]; new_of must be a bijection of 1..n."""
        colors = [None] * self.n
        for x in range(1, self.n + 1):
            colors[new_of[x] - 1] = self.colors[x - 1]
        edges = tuple((new_of[t], new_of[h]) for t, h in self.edges)
        return Skeleton(self.n, edges, self.kinds, tuple(colors))

    def with_colors(self, colors: tuple[Any, ...]) -> "Skeleton":
        return Skeleton(self.n, self.edges, self.kinds, colors)

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        for x in range(1, self.n + 1):
            graph.add_node(x, color=self.colors[x - 1])
        for (t, h), kind in zip(self.edges, self.kinds):
            graph.add_edge(t, h, kind=kind)
        return graph


@dataclass(frozen=True)
class DirectedGraph:
    """
    Labelled connected directed multigraph on vertices 1..vertex_count.

    The construction flags are recorded and enforced: with allow_tadpoles off no
    edge has tail = head, with allow_multiedges off no two edges share an
    unordered endpoint pair.
    """

    vertex_count: int
    edges: tuple[Edge, ...] = ()
    allow_tadpoles: bool = True
    allow_multiedges: bool = True
    kinds: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        sk = Skeleton(self.vertex_count, self.edges, self.kinds)
        object.__setattr__(self, "edges", sk.edges)
        object.__setattr__(self, "kinds", sk.kinds)
        if not self.allow_tadpoles and sk.has_tadpole():
            raise InvalidGraphError("Tadpoles are not allowed for this graph", field="e")
        if not self.allow_multiedges and sk.has_multiedge():
            raise InvalidGraphError("Multiple edges are not allowed for this graph", field="e")
        if not sk.is_connected():
            raise InvalidGraphError("Graph is not connected", field="e")

    @classmethod
    def from_skeleton(cls, sk: Skeleton) -> "DirectedGraph":
        return cls(sk.n, sk.edges, kinds=sk.kinds)

    @classmethod
    def from_text(cls, text: str) -> "DirectedGraph":
        from gcx.core.validation import parse_graph

        return cls.from_skeleton(parse_graph(text)[1])

    def skeleton(self) -> Skeleton:
        return Skeleton(self.vertex_count, self.edges, self.kinds)

    @property
    def e(self) -> int:
        return len(self.edges)

    def relabel(self, new_of: dict[int, int]) -> "DirectedGraph":
        sk = self.skeleton().relabel(new_of)
        return DirectedGraph(
            sk.n, sk.edges, self.allow_tadpoles, self.allow_multiedges, kinds=sk.kinds
        )

    def to_networkx(self) -> nx.MultiDiGraph:
        return self.skeleton().to_networkx()

    def __str__(self) -> str:
        from gcx.core.validation import render_skeleton

        return render_skeleton(self.skeleton())


GraphLike = Union[DirectedGraph, Skeleton]


def as_skeleton(g: GraphLike) -> Skeleton:
    return g if isinstance(g, Skeleton) else g.skeleton()


# === Grading ===


@dataclass(frozen=True)
class GradingInfo:
    degree: int
    loop_number: int
    flavor_dimension: int


def loop_number(g: GraphLike) -> int:
    """b = e - v + 1."""
    sk = as_skeleton(g)
    return sk.e - sk.n + 1


def degree(g: GraphLike, k: int) -> int:
    """(v-1)k + (1-k)e."""
    sk = as_skeleton(g)
    return (sk.n - 1) * k + (1 - k) * sk.e


def grading(g: GraphLike, k: int) -> GradingInfo:
    return GradingInfo(degree=degree(g, k), loop_number=loop_number(g), flavor_dimension=k)


def bidegree_size(b: int, d: int, k: int) -> tuple[int, int]:
    """The (v, e) fixed by loop number b and degree d, since d = e - bk."""
    e = d + b * k
    return e - b + 1, e


# === Classification ===


def vertex_class_of(out: int, inn: int) -> VertexClass:
    """Class of a vertex from its out- and in-valence."""
    if out + inn == 1:
        return VertexClass.UNIVALENT_OUT if out == 1 else VertexClass.UNIVALENT_IN
    if out == 1 and inn == 1:
        return VertexClass.PASSING
    if inn == 0 and out >= 1:
        return VertexClass.SOURCE
    if out == 0 and inn >= 1:
        return VertexClass.TARGET
    return VertexClass.GENERIC


def classify_vertex(g: GraphLike, x: int) -> VertexClass:
    """
    Classify vertex x by its valences.

    A tadpole counts once toward in- and once toward out-valence, so a vertex
    carrying only a tadpole is passing. An isolated vertex is generic.

    Raises:
        VertexIndexError: If x is not in 1..v
    """
    sk = as_skeleton(g)
    if not 1 <= x <= sk.n:
        raise VertexIndexError(f"Vertex {x} is not in 1..{sk.n}", field="x")
    out, inn = sk.valences()[x - 1]
    return vertex_class_of(out, inn)


def vertex_classes(g: GraphLike) -> list[VertexClass]:
    return [vertex_class_of(o, i) for o, i in as_skeleton(g).valences()]


def has_source(g: GraphLike) -> bool:
    return any(o >= 1 and i == 0 for o, i in as_skeleton(g).valences())


def has_target(g: GraphLike) -> bool:
    return any(i >= 1 and o == 0 for o, i in as_skeleton(g).valences())


def is_oriented(g: GraphLike) -> bool:
    """No directed cycle; a tadpole is a cycle."""
    sk = as_skeleton(g)
    if sk.has_tadpole():
        return False
    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, sk.n + 1))
    graph.add_edges_from(sk.edges)
    return nx.is_directed_acyclic_graph(graph)


def subcomplex_membership(g: GraphLike, which: Membership) -> bool:
    """Membership in the sourced/targeted/st/s+t/oriented/wheeled-only parts."""
    src, tgt = has_source(g), has_target(g)
    if which == Membership.SOURCED:
        return src
    if which == Membership.TARGETED:
        return tgt
    if which == Membership.ST:
        return src and tgt
    if which == Membership.S_PLUS_T:
        return src or tgt
    if which == Membership.ORIENTED:
        return is_oriented(g)
    return not src and not tgt


# === Antennas ===


def antenna_vertices(g: GraphLike) -> frozenset[int]:
    """Vertices removed by repeatedly deleting univalent vertices."""
    sk = as_skeleton(g)
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(1, sk.n + 1))
    graph.add_edges_from(sk.edges)
    removed: set[int] = set()
    leaves = [x for x in graph.nodes if graph.degree(x) == 1]
    while leaves:
        x = leaves.pop()
        if x not in graph:
            continue
        neighbours = list(graph.neighbors(x))
        graph.remove_node(x)
        removed.add(x)
        for y in neighbours:
            if y in graph and graph.degree(y) == 1:
                leaves.append(y)
    # a tree collapses to one isolated vertex, which is part of the antenna too
    if removed and graph.number_of_nodes() == 1 and graph.number_of_edges() == 0:
        removed.update(graph.nodes)
    return frozenset(removed)


def has_long_antenna(g: GraphLike) -> bool:
    """True when some connected piece of the antenna has two or more vertices."""
    sk = as_skeleton(g)
    antenna = antenna_vertices(sk)
    if len(antenna) < 2:
        return False
    graph = nx.MultiGraph()
    graph.add_nodes_from(antenna)
    graph.add_edges_from((t, h) for t, h in sk.edges if t in antenna and h in antenna)
    return any(len(part) >= 2 for part in nx.connected_components(graph))


# === Enumeration ===


@dataclass(frozen=True)
class Constraints:
    """Predicate set accepted by enumerate_graphs."""

    allow_tadpoles: bool = False
    allow_multiedges: bool = True
    min_total_valence: int = 0
    forbid_passing: bool = False
    require_has_source: bool = False
    require_has_target: bool = False
    require_no_source: bool = False
    require_no_target: bool = False
    require_oriented: bool = False

    def admits(self, sk: Skeleton) -> bool:
        if not self.allow_tadpoles and sk.has_tadpole():
            return False
        if not self.allow_multiedges and sk.has_multiedge():
            return False
        valences = sk.valences()
        if any(o + i < self.min_total_valence for o, i in valences):
            return False
        if self.forbid_passing and any(o == 1 and i == 1 for o, i in valences):
            return False
        src, tgt = has_source(sk), has_target(sk)
        if (self.require_has_source and not src) or (self.require_no_source and src):
            return False
        if (self.require_has_target and not tgt) or (self.require_no_target and tgt):
            return False
        if self.require_oriented and not is_oriented(sk):
            return False
        return True


def _deficiency(sk: Skeleton, min_degree: int) -> int:
    return sum(max(0, min_degree - d) for d in sk.degrees())


@lru_cache(maxsize=None)
def _trees(v: int) -> tuple[Skeleton, ...]:
    from gcx.core.canon import SHAPE_RULE, canonical_form

    if v == 1:
        return (Skeleton(1),)
    found: dict[str, Skeleton] = {}
    for tree in _trees(v - 1):
        for x in range(1, v):
            grown = Skeleton(v, tree.edges + ((x, v),))
            found.setdefault(canonical_form(grown, SHAPE_RULE)[0].key, grown)
    return tuple(found[key] for key in sorted(found))


@lru_cache(maxsize=None)
def _shapes(
    v: int, e: int, target_e: int, tadpoles: bool, multi: bool, min_degree: int
) -> tuple[Skeleton, ...]:
    from gcx.core.canon import SHAPE_RULE, canonical_form

    if e < v - 1 or min_degree * v > 2 * target_e:
        return ()
    if e == v - 1:
        candidates: list[Skeleton] = list(_trees(v))
    else:
        candidates = []
        for shape in _shapes(v, e - 1, target_e, tadpoles, multi, min_degree):
            present = set(shape.edges)
            for a in range(1, v + 1):
                for b in range(a, v + 1):
                    if a == b and not tadpoles:
                        continue
                    if not multi and (a, b) in present:
                        continue
                    candidates.append(Skeleton(v, shape.edges + ((a, b),)))

    budget = 2 * (target_e - e)
    found: dict[str, Skeleton] = {}
    for shape in candidates:
        if _deficiency(shape, min_degree) > budget:
            continue
        found.setdefault(canonical_form(shape, SHAPE_RULE)[0].key, shape)
    return tuple(found[key] for key in sorted(found))


def undirected_shapes(
    v: int,
    e: int,
    allow_tadpoles: bool = False,
    allow_multiedges: bool = True,
    min_degree: int = 0,
) -> tuple[Skeleton, ...]:
    """
    Connected undirected multigraph shapes with v vertices and e edges, one per
    isomorphism class, every vertex of degree at least min_degree.

    Trees grow by pendant vertices; a graph with a cycle grows from one with a
    non-bridge edge removed. Partial shapes whose degree deficit exceeds what the
    remaining edges can fill are pruned.
    """
    if v < 1:
        raise EmptyDomainError("A graph needs at least one vertex", field="v")
    shapes = _shapes(v, e, e, allow_tadpoles, allow_multiedges, min_degree)
    result = tuple(s for s in shapes if min(s.degrees()) >= min_degree)
    logger.debug("%d undirected shapes with v=%d e=%d", len(result), v, e)
    return result


def orientations(shape: Skeleton, include_loops: bool = False) -> Iterator[tuple[Skeleton, int]]:
    """
    Every direction choice on the edges of a shape, with the number of reversed edges.

    Tadpoles are only reversed when include_loops is set; reversing one does not
    change the graph, only the count.
    """
    flippable = [j for j, (t, h) in enumerate(shape.edges) if include_loops or t != h]
    for mask in range(1 << len(flippable)):
        edges = list(shape.edges)
        flipped = 0
        for bit, j in enumerate(flippable):
            if mask >> bit & 1:
                t, h = edges[j]
                edges[j] = (h, t)
                flipped += 1
        yield Skeleton(shape.n, tuple(edges), shape.kinds, shape.colors), flipped


def enumerate_graphs(
    v: int, e: int, constraints: Constraints = Constraints()
) -> list[DirectedGraph]:
    """
    One labelled representative per isomorphism class of connected directed
    multigraphs with v vertices and e edges satisfying the constraints,
    ordered by canonical encoding.

    Raises:
        EmptyDomainError: If v is zero
    """
    from gcx.core.canon import DIRECTED_SHAPE_RULE, canonical_form

    if v < 1:
        raise EmptyDomainError("A graph needs at least one vertex", field="v")
    shapes = undirected_shapes(
        v,
        e,
        constraints.allow_tadpoles,
        constraints.allow_multiedges,
        constraints.min_total_valence,
    )
    found: dict[str, Skeleton] = {}
    for shape in shapes:
        for sk, _ in orientations(shape):
            if not constraints.admits(sk):
                continue
            found.setdefault(canonical_form(sk, DIRECTED_SHAPE_RULE)[0].key, sk)
    logger.info("enumerated %d directed classes with v=%d e=%d", len(found), v, e)
    return [
        DirectedGraph.from_skeleton(canonical_form(found[key], DIRECTED_SHAPE_RULE)[0].skeleton)
        for key in sorted(found)
    ]


def loop_graph(i: int) -> Skeleton:
    """The bivalent cycle with i vertices and i edges, 1->2->...->i->1."""
    if i < 1:
        raise EmptyDomainError("A loop graph needs at least one vertex", field="i")
    return Skeleton(i, tuple((x, x % i + 1) for x in range(1, i + 1)))
