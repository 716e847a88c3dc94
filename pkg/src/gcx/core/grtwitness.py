"""
The tetrahedron classes of the sourced-and-targeted directed complex in k = 3.

Mixed graphs carry four edge kinds: solid (directed), s- and t-dotted and wavy
(undirected). The reduced complex is the quotient by graphs that mix s with t,
mix a dotted edge with a wavy one, or have two wavy edges. In it the two
tetrahedron cycles d(gamma^s) and d(gamma^t) are shown to be non-trivial by an
explicit 10 x 11 matrix, and each is lifted to an honest cycle of dGC^st.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Union

import networkx as nx

from gcx.core.canon import (
    S_DOTTED,
    SOLID,
    T_DOTTED,
    WAVY,
    GraphClass,
    canonical_form,
    directed_rule,
    mixed_rule,
)
from gcx.core.exactla import PRIME, SparseMatrix, in_column_span, rank, to_sms
from gcx.core.gcomplex import ComplexFlavor, LinearCombination, differential, vertex_split_terms
from gcx.core.graphcore import GraphLike, Skeleton, as_skeleton, undirected_shapes
from gcx.core.models import (
    DerivationSummand,
    DerivationTemplate,
    FieldChoice,
    GrtReport,
)
from gcx.core.validation import render_skeleton
from gcx.errors import InvalidGraphError, VerificationError

logger = logging.getLogger(__name__)

K = 3
RULE = mixed_rule(K)
DIRECTED = directed_rule(K)

Chain = LinearCombination
UNDIRECTED_KINDS = (S_DOTTED, T_DOTTED, WAVY)

# vertex letters in label order; a graph on fewer letters keeps the relative order
LETTERS = "tmlr"

A_S_GRAPHS = (
    "m>l r>m l>r | m-t l-t r-t",
    "l>m r>m l>r | m-t l-t r-t",
    "m>t m>l m>r | l-r t-l r-t",
    "t>m m>l m>r | l-r t-l r-t",
    "m>t l>m r>m | l-r t-l r-t",
    "t>m l>m r>m | l-r t-l r-t",
    "m>t l>m r>l | r-m l-t t-r",
    "m>t m>l r>l | r-m l-t t-r",
    "m>t m>l l>r | r-m l-t t-r",
    "t>m l>m r>l | r-m l-t t-r",
)

X_S_GRAPHS = (
    "m>t m>l r>m l>r | l-t r-t",
    "m>t l>m m>r l>r | l-t r-t",
    "m>t m>l m>r l>r | l-t r-t",
    "m>t l>m r>m l>r | l-t r-t",
    "t>m l>m r>m l>r | l-t r-t",
    "t>m l>m m>r l>r | l-t r-t",
    "t>m m>l m>r l>r | l-t r-t",
    "l>t l>m r>t m>r | l-r m-t",
    "l>m m>r | l-r l-m m-r",
    "l>m r>m | l-r l-m m-r",
    "m>l m>r | l-r l-m m-r",
)

GAMMA_S_GRAPH = "t>m m>l r>m l>r | l-t r-t"

# reference d_s(x_j) in the a_i, 1-based
REFERENCE_COLUMNS = (
    {1: 1, 4: 1, 7: -1, 9: -1},
    {2: 1, 4: 1, 8: -1, 9: 1},
    {2: 1, 3: 1, 8: -1, 9: -1},
    {2: 1, 5: 1, 7: -1, 9: 1},
    {2: 1, 6: 1, 8: 1, 10: -1},
    {2: 1, 5: 1, 8: 1, 10: 1},
    {2: 1, 4: 1, 7: 1, 10: 1},
    {7: 1, 8: 1, 9: -1, 10: 1},
    {4: -1, 5: 1, 7: -1, 8: 1},
    {5: -1, 6: 1, 10: -2},
    {3: -1, 4: 1, 9: 2},
)
REFERENCE_ALPHA = {1: 1, 5: 1, 7: 1, 10: -1}


# === Mixed Graphs ===


def mixed_graph(text: str, dotted: Union[str, Sequence[str]] = S_DOTTED) -> Skeleton:
    """
    Build a mixed graph from `solid edges | dotted edges`, e.g. "t>m m>l | l-t".

    Vertices are letters of "tmlr". Solid edges come first in the edge order,
    then the dotted ones, which all get the kind `dotted` or one kind each.
    """
    solid_part, _, dotted_part = text.partition("|")
    solid = [token.split(">") for token in solid_part.split()]
    undirected = [token.split("-") for token in dotted_part.split()]
    used = {letter for pair in solid + undirected for letter in pair}
    label = {letter: i for i, letter in enumerate((c for c in LETTERS if c in used), start=1)}
    kinds = [dotted] * len(undirected) if isinstance(dotted, str) else list(dotted)
    if len(kinds) != len(undirected):
        raise InvalidGraphError(f"{len(kinds)} kinds for {len(undirected)} dotted edges")
    edges = [(label[a], label[b]) for a, b in solid + undirected]
    return Skeleton(len(label), tuple(edges), (SOLID,) * len(solid) + tuple(kinds))


def mixed_degree(g: GraphLike, k: int = K) -> int:
    """(v-1)k + (1-k)e + e1 + 2 e2, with e1 dotted and e2 wavy edges."""
    sk = as_skeleton(g)
    dotted = sum(1 for kind in sk.kinds if kind in (S_DOTTED, T_DOTTED))
    wavy = sk.kinds.count(WAVY)
    return (sk.n - 1) * k + (1 - k) * sk.e + dotted + 2 * wavy


def reverse(g: GraphLike) -> Skeleton:
    """Reverse every solid edge and swap s with t; edge order is kept."""
    sk = as_skeleton(g)
    swap = {S_DOTTED: T_DOTTED, T_DOTTED: S_DOTTED}
    edges = tuple((h, t) if kind == SOLID else (t, h) for (t, h), kind in zip(sk.edges, sk.kinds))
    kinds = tuple(swap.get(kind, kind) for kind in sk.kinds)
    return Skeleton(sk.n, edges, kinds, sk.colors)


# === Membership ===


def z_d_killed(g: GraphLike) -> bool:
    """Whether a graph lies in the acyclic subcomplex the reduced complex divides out."""
    kinds = as_skeleton(g).kinds
    has_s, has_t, wavy = S_DOTTED in kinds, T_DOTTED in kinds, kinds.count(WAVY)
    return (has_s and has_t) or ((has_s or has_t) and wavy > 0) or wavy >= 2


def _attached(sk: Skeleton, x: int) -> Iterator[tuple[str, bool]]:
    """(kind, leaves x) for every edge end at x."""
    for (t, h), kind in zip(sk.edges, sk.kinds):
        if t == x:
            yield kind, True
        if h == x:
            yield kind, False


def has_solid_source(g: GraphLike) -> bool:
    """Some vertex whose edges are all solid and outgoing, or t-dotted."""
    sk = as_skeleton(g)
    return any(
        all((kind == SOLID and leaves) or kind == T_DOTTED for kind, leaves in _attached(sk, x))
        for x in range(1, sk.n + 1)
    )


def has_solid_target(g: GraphLike) -> bool:
    """Some vertex whose edges are all solid and incoming, or s-dotted."""
    sk = as_skeleton(g)
    return any(
        all((kind == SOLID and not leaves) or kind == S_DOTTED for kind, leaves in _attached(sk, x))
        for x in range(1, sk.n + 1)
    )


def overline_st_member(g: GraphLike) -> bool:
    """Membership in the sourced-and-targeted part before the quotient."""
    sk = as_skeleton(g)
    has_s, has_t = S_DOTTED in sk.kinds, T_DOTTED in sk.kinds
    if WAVY in sk.kinds or (has_s and has_t):
        return True
    if has_s:
        return has_solid_target(sk)
    if has_t:
        return has_solid_source(sk)
    return has_solid_source(sk) and has_solid_target(sk)


def hat_st_member(g: GraphLike) -> bool:
    """Membership in the sourced-and-targeted part of the reduced complex."""
    return not z_d_killed(g) and overline_st_member(g)


# === Differential ===


def _vertex_terms(sk: Skeleton) -> Iterator[tuple[Skeleton, int]]:
    # hair terms and splittings leaving a vertex below trivalence drop out
    for x in range(1, sk.n + 1):
        for term in vertex_split_terms(sk, x, RULE):
            if all(d >= 3 for d in term.skeleton.degrees()):
                yield term.skeleton, term.coefficient


def _edge_terms(sk: Skeleton) -> Iterator[tuple[Skeleton, int]]:
    odd = [kind in RULE.odd_kinds for kind in sk.kinds]
    for j, kind in enumerate(sk.kinds):
        if kind == SOLID:
            edges = sk.edges[:j] + sk.edges[j + 1 :] + (sk.edges[j],)
            rest = sk.kinds[:j] + sk.kinds[j + 1 :]
            yield Skeleton(sk.n, edges, rest + (T_DOTTED,), sk.colors), 1
            yield Skeleton(sk.n, edges, rest + (S_DOTTED,), sk.colors), -1
        elif kind in (S_DOTTED, T_DOTTED):
            kinds = sk.kinds[:j] + (WAVY,) + sk.kinds[j + 1 :]
            sign = -1 if sum(odd[j + 1 :]) % 2 else 1
            yield Skeleton(sk.n, sk.edges, kinds, sk.colors), sign


@lru_cache(maxsize=1 << 12)
def _graph_mixed_differential(sk: Skeleton, reduced: bool) -> tuple:
    terms = LinearCombination()
    for term, coefficient in itertools.chain(_vertex_terms(sk), _edge_terms(sk)):
        if not (reduced and z_d_killed(term)):
            terms.add_skeleton(term, RULE, coefficient)
    return tuple(terms.items())


def mixed_differential(chain: Chain, reduced: bool = True) -> Chain:
    """
    d = d_V + d_E on mixed graphs. d_V splits vertices into trivalent-or-more
    pieces; d_E sends solid to t minus s, dotted to wavy, wavy to zero.
    reduced=False keeps the graphs the quotient would kill.
    """

    def apply(graph_class) -> Chain:
        result = LinearCombination()
        for term_class, coefficient in _graph_mixed_differential(graph_class.skeleton, reduced):
            result.add_class(term_class, coefficient)
        return result

    return chain.extend_linearly(apply)


def mixed_chain(g: GraphLike, coefficient: int = 1) -> Chain:
    return LinearCombination.of(g, RULE, coefficient)


# === Bases and Matrix ===


@dataclass(frozen=True)
class Section:
    """One side (s or t) of the computation: the graphs around one tetrahedron class."""

    kind: str
    a_graphs: tuple[Skeleton, ...]
    x_graphs: tuple[Skeleton, ...]
    gamma: Skeleton

    @classmethod
    def build(cls, kind: str = S_DOTTED) -> "Section":
        """
        Raises:
            VerificationError: If a basis graph is zero or two are isomorphic
        """
        a_graphs = tuple(mixed_graph(text) for text in A_S_GRAPHS)
        x_graphs = tuple(mixed_graph(text) for text in X_S_GRAPHS)
        gamma = mixed_graph(GAMMA_S_GRAPH)
        if kind == T_DOTTED:
            a_graphs = tuple(reverse(g) for g in a_graphs)
            x_graphs = tuple(reverse(g) for g in x_graphs)
            gamma = reverse(gamma)
        for name, graphs in (("A", a_graphs), ("X", x_graphs)):
            keys = [mixed_chain(g).keys() for g in graphs]
            if any(not key for key in keys):
                raise VerificationError(f"A graph of {name}^{kind} is zero")
            if len({key[0] for key in keys}) != len(keys):
                raise VerificationError(f"Two graphs of {name}^{kind} are isomorphic")
        return cls(kind, a_graphs, x_graphs, gamma)

    def alpha(self) -> Chain:
        return mixed_differential(mixed_chain(self.gamma))


def build_bases(kind: str = S_DOTTED) -> tuple[tuple[Skeleton, ...], tuple[Skeleton, ...]]:
    """The ten degree-0 graphs A and eleven degree -1 graphs X of one side."""
    section = Section.build(kind)
    return section.a_graphs, section.x_graphs


def coordinates(chain: Chain, rows: Sequence[Skeleton]) -> list[Fraction]:
    """Coefficients of a chain on labelled basis graphs; other terms are projected away."""
    vector = [chain.coefficient_of(g, RULE) for g in rows]
    covered = {mixed_chain(g).keys()[0] for g in rows}
    dropped = [key for key in chain.keys() if key not in covered]
    if dropped:
        logger.debug("projection drops %d terms", len(dropped))
    return vector


def projection_matrix(rows: Sequence[Skeleton], cols: Sequence[Skeleton]) -> SparseMatrix:
    """Column j is the projection of d(cols[j]) onto span(rows)."""
    matrix = SparseMatrix(len(rows), len(cols))
    for j, g in enumerate(cols):
        for i, value in enumerate(coordinates(mixed_differential(mixed_chain(g)), rows)):
            matrix.set(i, j, value)
    return matrix


def section_matrix(kind: str = S_DOTTED) -> SparseMatrix:
    section = Section.build(kind)
    return projection_matrix(section.a_graphs, section.x_graphs)


def reference_matrix() -> SparseMatrix:
    matrix = SparseMatrix(len(A_S_GRAPHS), len(X_S_GRAPHS))
    for j, column in enumerate(REFERENCE_COLUMNS):
        for i, value in column.items():
            matrix.set(i - 1, j, value)
    return matrix


def sign_normalization(
    ours: SparseMatrix, reference: SparseMatrix
) -> tuple[bool, list[int], list[int]]:
    """
    Find r, c in {+1, -1} with reference[i][j] = r_i c_j ours[i][j].

    Signs propagate along the nonzero entries, one component at a time; the
    first row or column reached in a component gets +1.
    """
    rows, cols = ours.rows, ours.cols
    mine, theirs = ours.to_dense(), reference.to_dense()
    graph = nx.Graph()
    graph.add_nodes_from([("r", i) for i in range(rows)] + [("c", j) for j in range(cols)])
    matches = True
    for i in range(rows):
        for j in range(cols):
            a, b = mine[i][j], theirs[i][j]
            if abs(a) != abs(b):
                matches = False
            elif a:
                graph.add_edge(("r", i), ("c", j), ratio=1 if a == b else -1)

    sign: dict[tuple[str, int], int] = {}
    for component in nx.connected_components(graph):
        root = min(component)
        sign[root] = 1
        for u, v in nx.bfs_edges(graph, root):
            sign[v] = sign[u] * graph.edges[u, v]["ratio"]
    for u, v, ratio in graph.edges(data="ratio"):
        if sign[u] * sign[v] != ratio:
            matches = False
    return (
        matches,
        [sign[("r", i)] for i in range(rows)],
        [sign[("c", j)] for j in range(cols)],
    )


def alpha_matches(alpha: list[Fraction], row_signs: list[int]) -> bool:
    """alpha agrees with the reference expansion after the row signs, up to one global sign."""
    reference = [REFERENCE_ALPHA.get(i + 1, 0) * r for i, r in enumerate(row_signs)]
    return alpha == reference or alpha == [-value for value in reference]


def in_image(matrix: SparseMatrix, vector: list[Fraction], prime: Optional[int] = None) -> bool:
    """Column-span membership; over GF(p) by comparing ranks."""
    if prime is None:
        return in_column_span(matrix, vector)[0]
    augmented = SparseMatrix.from_dense(
        [row + [vector[i]] for i, row in enumerate(matrix.to_dense())]
    )
    return rank(augmented, prime) == rank(matrix, prime)


# === Lift to dGC^st ===


def to_directed(g: GraphLike) -> Chain:
    """
    The map f into dGC_3: an s-edge x-y becomes x<-w->y, a t-edge x->w<-y,
    a wavy edge [x->a<-b->y] - [x<-a->b<-y]. Wedge vertices follow the dotted
    edges' order, then each wavy pair as (b, a).
    """
    sk = as_skeleton(g)
    edges = [edge for edge, kind in zip(sk.edges, sk.kinds) if kind == SOLID]
    n = sk.n
    for (x, y), kind in zip(sk.edges, sk.kinds):
        if kind == S_DOTTED:
            n += 1
            edges += [(n, x), (n, y)]
        elif kind == T_DOTTED:
            n += 1
            edges += [(x, n), (y, n)]
    choices = []
    for (x, y), kind in zip(sk.edges, sk.kinds):
        if kind == WAVY:
            b, a = n + 1, n + 2
            n += 2
            choices.append((((x, a), (b, a), (b, y)), ((a, x), (a, b), (y, b))))
    result = LinearCombination()
    for picks in itertools.product((0, 1), repeat=len(choices)):
        extra = [edge for pick, pair in zip(picks, choices) for edge in pair[pick]]
        sign = -1 if sum(picks) % 2 else 1
        result.add_skeleton(Skeleton(n, tuple(edges + extra)), DIRECTED, sign)
    return result


def map_f(chain: Chain) -> Chain:
    return chain.extend_linearly(lambda graph_class: to_directed(graph_class.skeleton))


def f_failures(graphs: Sequence[Skeleton]) -> list[str]:
    """Graphs where f(d g) differs from d(f g), d taken before the quotient."""
    dgc = ComplexFlavor.parse("dGC", K)
    failures = []
    for g in graphs:
        chain = mixed_chain(g)
        if map_f(mixed_differential(chain, reduced=False)) != differential(map_f(chain), dgc):
            failures.append(render_skeleton(g))
    return failures


def big_gamma(section: Section) -> Chain:
    """gamma with every dotted edge replaced by (own kind - other kind); gamma is the first term."""
    sk = section.gamma
    other = T_DOTTED if section.kind == S_DOTTED else S_DOTTED
    dotted = [j for j, kind in enumerate(sk.kinds) if kind != SOLID]
    result = LinearCombination()
    for picks in itertools.product((0, 1), repeat=len(dotted)):
        kinds = list(sk.kinds)
        for j, pick in zip(dotted, picks):
            kinds[j] = other if pick else section.kind
        sign = -1 if sum(picks) % 2 else 1
        result.add_skeleton(Skeleton(sk.n, sk.edges, tuple(kinds)), RULE, sign)
    return result


@dataclass
class Lift:
    """d(f(Gamma)) and the facts that make it a lift of alpha to dGC^st."""

    kind: str
    expansion: Chain
    cycle: Chain
    closed: bool
    in_st: bool
    rest_in_st: bool
    contains_alpha: bool
    f_failures: list[str]

    @property
    def ok(self) -> bool:
        return (
            bool(self.cycle)
            and self.closed
            and self.in_st
            and self.rest_in_st
            and self.contains_alpha
            and not self.f_failures
        )


def lift(section: Section) -> Lift:
    dgc = ComplexFlavor.parse("dGC", K)
    st = ComplexFlavor.parse("dGC^st", K)
    expansion = big_gamma(section)
    cycle = differential(map_f(expansion), dgc)
    gamma_key = mixed_chain(section.gamma).keys()[0]
    f_alpha = map_f(section.alpha())
    lifted = Lift(
        kind=section.kind,
        expansion=expansion,
        cycle=cycle,
        closed=not differential(cycle, dgc),
        in_st=all(st.admits(graph_class.skeleton) for graph_class, _ in cycle.items()),
        rest_in_st=all(
            overline_st_member(graph_class.skeleton)
            for graph_class, _ in expansion.items()
            if graph_class.key != gamma_key
        ),
        contains_alpha=all(
            cycle.coefficient(graph_class.key) == c for graph_class, c in f_alpha.items()
        ),
        f_failures=f_failures(section.a_graphs + section.x_graphs + (section.gamma,)),
    )
    logger.info(
        "lift %s: %d terms, closed=%s, in dGC^st=%s",
        section.kind,
        len(cycle),
        lifted.closed,
        lifted.in_st,
    )
    return lifted


def derivation(section: Section, m: int, n: int) -> DerivationTemplate:
    """The derivation of the Lie bialgebra properad attached to one side's class."""
    alpha = section.alpha()
    summands = []
    for g in section.a_graphs:
        coefficient = alpha.coefficient_of(g, RULE)
        if coefficient:
            image = to_directed(g).items()[0][0]
            summands.append(
                DerivationSummand(
                    coefficient=int(coefficient),
                    graph=render_skeleton(image.skeleton),
                    hairs=f"{m} out, {n} in, summed over attachments to all vertices",
                )
            )
    return DerivationTemplate(
        name="D1" if section.kind == S_DOTTED else "D2", m=m, n=n, summands=summands
    )


# === Report ===


@dataclass(frozen=True)
class AlphaVerdicts:
    """Closedness and image membership of both alphas and of their difference."""

    vector_s: list[Fraction]
    s_closed: bool
    s_in_image: bool
    t_closed: bool
    t_in_image: bool
    difference_in_image: bool

    @property
    def nontrivial(self) -> bool:
        return (
            self.s_closed
            and self.t_closed
            and not self.s_in_image
            and not self.t_in_image
            and not self.difference_in_image
        )


def check_alpha_nontrivial(prime: Optional[int] = None) -> AlphaVerdicts:
    """
    d(alpha) = 0 and alpha outside the image of d from X, for both sides and
    for alpha^s - alpha^t over the combined bases.
    """
    side_s, side_t = Section.build(S_DOTTED), Section.build(T_DOTTED)
    alpha_s, alpha_t = side_s.alpha(), side_t.alpha()
    vector_s = coordinates(alpha_s, side_s.a_graphs)
    vector_t = coordinates(alpha_t, side_t.a_graphs)
    rows = side_s.a_graphs + side_t.a_graphs
    combined = projection_matrix(rows, side_s.x_graphs + side_t.x_graphs)
    verdicts = AlphaVerdicts(
        vector_s=vector_s,
        s_closed=not mixed_differential(alpha_s),
        s_in_image=in_image(projection_matrix(side_s.a_graphs, side_s.x_graphs), vector_s, prime),
        t_closed=not mixed_differential(alpha_t),
        t_in_image=in_image(projection_matrix(side_t.a_graphs, side_t.x_graphs), vector_t, prime),
        difference_in_image=in_image(combined, coordinates(alpha_s - alpha_t, rows), prime),
    )
    logger.info("alpha classes non-trivial: %s", verdicts.nontrivial)
    return verdicts


def lift_and_render(
    kind: str = S_DOTTED, m: int = 1, n: int = 1
) -> tuple[Lift, DerivationTemplate]:
    """The lift of one side's alpha to dGC^st and its derivation template."""
    section = Section.build(kind)
    return lift(section), derivation(section, m, n)


def mixed_classes(v: int, e: int, reduced: bool = True) -> tuple[GraphClass, ...]:
    """Nonzero mixed classes with v at least trivalent vertices and e edges."""
    found: dict[str, GraphClass] = {}
    for shape in undirected_shapes(v, e, False, True, 3):
        options = [
            [((a, b), SOLID), ((b, a), SOLID)] + [((a, b), kind) for kind in UNDIRECTED_KINDS]
            for a, b in shape.edges
        ]
        for choice in itertools.product(*options):
            sk = Skeleton(v, tuple(edge for edge, _ in choice), tuple(kind for _, kind in choice))
            if reduced and z_d_killed(sk):
                continue
            graph_class, sign = canonical_form(sk, RULE)
            if sign:
                found.setdefault(graph_class.key, graph_class)
    logger.debug("mixed v=%d e=%d: %d classes", v, e, len(found))
    return tuple(found[key] for key in sorted(found))


def run_grt(
    field: FieldChoice = FieldChoice.RATIONAL,
    emit_derivations: bool = False,
    m: int = 1,
    n: int = 1,
    lifts: bool = True,
) -> GrtReport:
    """
    The whole computation: bases, matrix, sign normalisation against the
    reference matrix, closedness and non-membership of both alphas and of
    their difference, and optionally the lifts and the derivations.
    """
    prime = PRIME if field == FieldChoice.GF32003 else None
    side_s, side_t = Section.build(S_DOTTED), Section.build(T_DOTTED)

    matrix = projection_matrix(side_s.a_graphs, side_s.x_graphs)
    matches, row_signs, col_signs = sign_normalization(matrix, reference_matrix())
    verdicts = check_alpha_nontrivial(prime)
    matches = matches and alpha_matches(verdicts.vector_s, row_signs)

    rank_here = rank(matrix, prime)
    logger.info("A^s x X^s matrix: rank %d, matches reference=%s", rank_here, matches)

    report = GrtReport(
        a_basis=[render_skeleton(g) for g in side_s.a_graphs],
        x_basis=[render_skeleton(g) for g in side_s.x_graphs],
        matrix_sms=to_sms(matrix.integer_scaled()),
        rank=rank_here,
        rank_mod_p=rank(matrix, PRIME),
        row_signs=row_signs,
        col_signs=col_signs,
        matrix_matches=matches,
        alpha_s={f"a{i + 1}": str(c) for i, c in enumerate(verdicts.vector_s) if c},
        alpha_s_closed=verdicts.s_closed,
        alpha_s_in_image=verdicts.s_in_image,
        alpha_t_closed=verdicts.t_closed,
        alpha_t_in_image=verdicts.t_in_image,
        difference_in_image=verdicts.difference_in_image,
    )
    if lifts:
        report.lift_s_ok = lift(side_s).ok
        report.lift_t_ok = lift(side_t).ok
    if emit_derivations:
        report.derivations = [derivation(side_s, m, n), derivation(side_t, m, n)]
    logger.info("tetrahedron classes: passed=%s", report.passed)
    return report
