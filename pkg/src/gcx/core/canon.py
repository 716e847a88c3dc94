"""
Canonical labelling with orientation signs.

A graph class is stored as a canonical skeleton plus the sign relating the
input's orientation to it: input = sign * canonical. The orientation of a
labelled graph is the ordered list of its odd vertices followed by its odd
edges; undirected kinds may additionally carry a sign for each reversal.

The search is individualisation-refinement: an equitable partition of the
vertices, then a depth-first walk that individualises the first non-singleton
cell, keeping the lexicographically least leaf encoding. Leaves with equal
encodings yield automorphisms; those fixing the current prefix prune children
in the same orbit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Any, Optional

from gcx.core.graphcore import DirectedGraph, GraphLike, Skeleton, as_skeleton
from gcx.core.models import EdgeKind, GraphFormat
from gcx.core.validation import infer_format, render_skeleton
from gcx.errors import BoundExceededError

logger = logging.getLogger(__name__)

SOLID = EdgeKind.SOLID.value
S_DOTTED = EdgeKind.S_DOTTED.value
T_DOTTED = EdgeKind.T_DOTTED.value
WAVY = EdgeKind.WAVY.value

# adjacency flags
OUT, IN, UNDIRECTED, LOOP = 0, 1, 2, 3


# === Orientation Rules ===


@dataclass(frozen=True)
class OrientationRule:
    """Which parts of a labelled graph carry orientation signs."""

    tag: str
    odd_vertices: bool = False
    odd_kinds: frozenset = frozenset()
    undirected_kinds: frozenset = frozenset()
    odd_flip_kinds: frozenset = frozenset()

    @property
    def parity(self) -> str:
        return "odd" if self.odd_vertices else "even"


SHAPE_RULE = OrientationRule("shape", undirected_kinds=frozenset({SOLID}))
DIRECTED_SHAPE_RULE = OrientationRule("dshape")


def directed_rule(k: int) -> OrientationRule:
    """Edges odd for even k, vertices odd for odd k."""
    if k % 2 == 0:
        return OrientationRule("dir-even", odd_kinds=frozenset({SOLID}))
    return OrientationRule("dir-odd", odd_vertices=True)


def undirected_rule(k: int) -> OrientationRule:
    """As directed_rule, and for odd k each edge reversal is a sign."""
    solid = frozenset({SOLID})
    if k % 2 == 0:
        return OrientationRule("und-even", odd_kinds=solid, undirected_kinds=solid)
    return OrientationRule(
        "und-odd", odd_vertices=True, undirected_kinds=solid, odd_flip_kinds=solid
    )


def mixed_rule(k: int) -> OrientationRule:
    """
    Four edge kinds of degrees solid 1-k, dotted 2-k, wavy 3-k; a kind is odd
    when its degree is. Non-solid edges are undirected with reversal sign (-1)^(k+1).
    """
    odd = k % 2 == 1
    odd_kinds = {S_DOTTED, T_DOTTED} if odd else {SOLID, WAVY}
    non_solid = frozenset({S_DOTTED, T_DOTTED, WAVY})
    return OrientationRule(
        "mix-odd" if odd else "mix-even",
        odd_vertices=odd,
        odd_kinds=frozenset(odd_kinds),
        undirected_kinds=non_solid,
        odd_flip_kinds=frozenset() if odd else non_solid,
    )


def rule_for(flavor: str, k: int) -> OrientationRule:
    """Orientation rule of a family: directed, undirected or mixed."""
    if flavor == "undirected":
        return undirected_rule(k)
    if flavor == "mixed":
        return mixed_rule(k)
    return directed_rule(k)


# === Results ===


@dataclass(frozen=True)
class OrientationData:
    """The ordered odd objects of a labelled graph and its undirected edge directions."""

    parity: str
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    directions: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, g: GraphLike, rule: OrientationRule) -> "OrientationData":
        sk = as_skeleton(g)
        vertices = tuple(range(1, sk.n + 1)) if rule.odd_vertices else ()
        edges = tuple(j + 1 for j, kind in enumerate(sk.kinds) if kind in rule.odd_kinds)
        directions = tuple(
            e for e, kind in zip(sk.edges, sk.kinds) if kind in rule.odd_flip_kinds
        )
        return cls(rule.parity, vertices, edges, directions)


@dataclass(frozen=True)
class GraphClass:
    """Basis element of a complex: canonical skeleton, rule, and a zero flag."""

    key: str
    skeleton: Skeleton = field(compare=False)
    rule: OrientationRule = field(compare=False)
    fmt: GraphFormat = field(compare=False)
    is_zero: bool = field(compare=False)

    @property
    def canonical_graph(self) -> DirectedGraph:
        return DirectedGraph.from_skeleton(self.skeleton)

    @property
    def parity(self) -> str:
        return self.rule.parity

    def __str__(self) -> str:
        return self.key


# === Permutation Signs ===


def permutation_sign(images: list[int]) -> int:
    """Sign of the permutation i -> images[i] of 0..n-1."""
    seen = [False] * len(images)
    sign = 1
    for start in range(len(images)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = images[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def sequence_sign(values: list[int]) -> int:
    """Sign of the permutation sorting a sequence of distinct values."""
    inversions = sum(1 for a, b in combinations(values, 2) if a > b)
    return -1 if inversions % 2 else 1


# === Search ===


def _refine(cells: list[list[int]], adjacency: list[list[tuple]]) -> list[list[int]]:
    """Split cells by neighbour-cell counts until the partition is equitable."""
    while True:
        cell_of = {}
        for index, cell in enumerate(cells):
            for x in cell:
                cell_of[x] = index
        refined = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for x in cell:
                signature = tuple(
                    sorted((cell_of[y], kind, flag) for y, kind, flag in adjacency[x])
                )
                groups.setdefault(signature, []).append(x)
            if len(groups) > 1:
                changed = True
            refined.extend(groups[signature] for signature in sorted(groups))
        cells = refined
        if not changed:
            return cells


class _Leaf:
    __slots__ = ("encoding", "sign", "new_of", "keyed")

    def __init__(self, encoding, sign, new_of, keyed):
        self.encoding = encoding
        self.sign = sign
        self.new_of = new_of
        self.keyed = keyed


class _Search:
    """One canonical labelling run over a fixed skeleton and rule."""

    def __init__(self, sk: Skeleton, rule: OrientationRule):
        self.sk = sk
        self.rule = rule
        self.adjacency: list[list[tuple]] = [[] for _ in range(sk.n)]
        for (t, h), kind in zip(sk.edges, sk.kinds):
            a, b = t - 1, h - 1
            if a == b:
                self.adjacency[a].append((a, kind, LOOP))
            elif kind in rule.undirected_kinds:
                self.adjacency[a].append((b, kind, UNDIRECTED))
                self.adjacency[b].append((a, kind, UNDIRECTED))
            else:
                self.adjacency[a].append((b, kind, OUT))
                self.adjacency[b].append((a, kind, IN))
        self.first: Optional[_Leaf] = None
        self.best: Optional[_Leaf] = None
        self.automorphisms: list[tuple[int, ...]] = []
        self.odd_automorphism = False

    def initial_cells(self) -> list[list[int]]:
        groups: dict[Any, list[int]] = {}
        for x in range(self.sk.n):
            invariant = (
                self.sk.colors[x],
                tuple(sorted((kind, flag) for _, kind, flag in self.adjacency[x])),
            )
            groups.setdefault(invariant, []).append(x)
        return _refine([groups[key] for key in sorted(groups)], self.adjacency)

    def leaf(self, order: list[int]) -> _Leaf:
        sk, rule = self.sk, self.rule
        new_of = [0] * sk.n
        for position, x in enumerate(order):
            new_of[x] = position
        flips = 0
        keyed = []
        for j, ((t, h), kind) in enumerate(zip(sk.edges, sk.kinds)):
            a, b = new_of[t - 1] + 1, new_of[h - 1] + 1
            if kind in rule.undirected_kinds and a > b:
                a, b = b, a
                if kind in rule.odd_flip_kinds:
                    flips += 1
            keyed.append(((kind, a, b), j))
        keyed.sort()
        colors = tuple(sk.colors[x] for x in order)
        encoding = (colors, tuple(key for key, _ in keyed))

        sign = -1 if flips % 2 else 1
        if rule.odd_vertices:
            sign *= permutation_sign(new_of)
        sign *= sequence_sign([j for key, j in keyed if key[0] in rule.odd_kinds])
        return _Leaf(encoding, sign, new_of, keyed)

    def record(self, leaf: _Leaf, reference: _Leaf) -> None:
        inverse = [0] * self.sk.n
        for x, position in enumerate(reference.new_of):
            inverse[position] = x
        automorphism = tuple(inverse[leaf.new_of[x]] for x in range(self.sk.n))
        if any(automorphism[x] != x for x in range(self.sk.n)):
            self.automorphisms.append(automorphism)
        if leaf.sign != reference.sign:
            self.odd_automorphism = True

    def visit_leaf(self, order: list[int]) -> None:
        leaf = self.leaf(order)
        if self.first is None:
            self.first = self.best = leaf
            return
        assert self.best is not None
        if leaf.encoding == self.first.encoding:
            self.record(leaf, self.first)
        elif leaf.encoding == self.best.encoding:
            self.record(leaf, self.best)
        elif leaf.encoding < self.best.encoding:
            self.best = leaf

    def same_orbit(self, u: int, tried: list[int], prefix: tuple[int, ...]) -> bool:
        parent = list(range(self.sk.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for automorphism in self.automorphisms:
            if any(automorphism[p] != p for p in prefix):
                continue
            for x, y in enumerate(automorphism):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
        root = find(u)
        return any(find(w) == root for w in tried)

    def visit(self, cells: list[list[int]], prefix: tuple[int, ...]) -> None:
        target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
        if target is None:
            self.visit_leaf([cell[0] for cell in cells])
            return
        tried: list[int] = []
        for u in sorted(cells[target]):
            if tried and self.same_orbit(u, tried, prefix):
                continue
            tried.append(u)
            rest = [y for y in cells[target] if y != u]
            child = cells[:target] + [[u], rest] + cells[target + 1 :]
            self.visit(_refine(child, self.adjacency), prefix + (u,))


def _forced_zero(sk: Skeleton, rule: OrientationRule, keyed: list) -> bool:
    """Reversible tadpoles and parallel copies of an odd edge kill a class outright."""
    for (t, h), kind in zip(sk.edges, sk.kinds):
        if t == h and kind in rule.odd_flip_kinds:
            return True
    keys = [key for key, _ in keyed if key[0] in rule.odd_kinds]
    return len(set(keys)) != len(keys)


@lru_cache(maxsize=1 << 17)
def canonical_form(sk: Skeleton, rule: OrientationRule) -> tuple[GraphClass, int]:
    """
    Canonical class of a labelled skeleton and the sign with sk = sign * canonical.

    The sign is 0 exactly when the class is zero.
    """
    search = _Search(sk, rule)
    search.visit(search.initial_cells(), ())
    best = search.best
    assert best is not None

    colors, keys = best.encoding
    canonical = Skeleton(
        sk.n,
        tuple((a, b) for _, a, b in keys),
        tuple(kind for kind, _, _ in keys),
        colors,
    )
    fmt = infer_format(canonical)
    is_zero = search.odd_automorphism or _forced_zero(sk, rule, best.keyed)
    graph_class = GraphClass(
        key=f"{rule.tag}|{render_skeleton(canonical, fmt)}",
        skeleton=canonical,
        rule=rule,
        fmt=fmt,
        is_zero=is_zero,
    )
    return graph_class, 0 if is_zero else best.sign


def canonicalize(g: GraphLike, rule: OrientationRule) -> tuple[GraphClass, int]:
    """
    Canonical class of g under the rule's symmetry group and the sign relating
    g's orientation to the canonical representative's (0 for a zero class).
    """
    return canonical_form(as_skeleton(g), rule)


def canonical_key(g: GraphLike, rule: OrientationRule) -> str:
    return canonical_form(as_skeleton(g), rule)[0].key


def is_zero_class(g: GraphLike, rule: OrientationRule) -> bool:
    """True iff some automorphism induces an odd sign on the orientation."""
    return canonical_form(as_skeleton(g), rule)[0].is_zero


def automorphism_group(
    g: GraphLike, rule: OrientationRule = DIRECTED_SHAPE_RULE, bound: int = 12
) -> list[tuple[int, ...]]:
    """
    All vertex permutations preserving the graph, as 1-based image tuples.

    Raises:
        BoundExceededError: When the graph has more than `bound` vertices
    """
    sk = as_skeleton(g)
    if sk.n > bound:
        raise BoundExceededError(
            f"Automorphism search limited to {bound} vertices, got {sk.n}", field="v"
        )
    search = _Search(sk, rule)
    search.visit(search.initial_cells(), ())
    generators = tuple(search.automorphisms)

    identity = tuple(range(sk.n))
    group = {identity}
    frontier = [identity]
    while frontier:
        element = frontier.pop()
        for generator in generators:
            product = tuple(generator[element[x]] for x in range(sk.n))
            if product not in group:
                group.add(product)
                frontier.append(product)
    logger.debug("automorphism group of order %d", len(group))
    return sorted(tuple(y + 1 for y in element) for element in group)
