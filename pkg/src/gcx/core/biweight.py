"""
Bi-weighted and decorated directed graph complexes.

Weighted graphs carry a pair (out-weight, in-weight) of integers per vertex as
their vertex colours. Decorated graphs carry one of the symbols oo, o0, 0o, 00
instead, where `o` stands for the formal sum of all weights >= 1. Both use the
directed orientation rule; colours take part in the canonical labelling.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterator, Sequence, Union

from gcx.core.canon import directed_rule
from gcx.core.gcomplex import (
    ComplexFlavor,
    LinearCombination,
    RawTerm,
    attach_univalent,
    differential,
    split_sign,
    vertex_split_terms,
)
from gcx.core.graphcore import (
    Constraints,
    GraphLike,
    Skeleton,
    as_skeleton,
    enumerate_graphs,
    has_long_antenna,
    vertex_class_of,
)
from gcx.core.models import Decoration, VertexClass
from gcx.errors import (
    CapError,
    DegreeMismatchError,
    FlavorViolationError,
    IllegalDecorationError,
    InvalidGraphError,
)

logger = logging.getLogger(__name__)

BiWeight = tuple[int, int]


# === Bi-weights ===


def biweighted(g: GraphLike, weights: Sequence[BiWeight]) -> Skeleton:
    """Attach one (out, in) weight pair per vertex."""
    sk = as_skeleton(g)
    if len(weights) != sk.n:
        raise InvalidGraphError(f"{len(weights)} bi-weights for {sk.n} vertices", field="w")
    return Skeleton(sk.n, sk.edges, sk.kinds, tuple((int(o), int(i)) for o, i in weights))


def _valid_vertex(out: int, inn: int, weight: BiWeight) -> bool:
    w_out, w_in = weight
    return w_out + out >= 1 and w_in + inn >= 1 and w_out + w_in + out + inn >= 3


def validate_biweight(g: GraphLike) -> bool:
    """Every vertex has an output, an input, and at least three legs counting weights."""
    sk = as_skeleton(g)
    return all(
        _valid_vertex(out, inn, weight) for (out, inn), weight in zip(sk.valences(), sk.colors)
    )


def _weight_splits(weight: BiWeight) -> Iterator[tuple[BiWeight, BiWeight]]:
    m, n = weight
    for m1 in range(m + 1):
        for n1 in range(n + 1):
            yield (m1, n1), (m - m1, n - n1)


def hair_weights(cap: int) -> list[BiWeight]:
    """Candidate bi-weights of a new univalent vertex: each part at most cap, sum at least 2."""
    return [(i, j) for i in range(cap + 1) for j in range(cap + 1) if i + j >= 2]


def bw_vertex_split(g: GraphLike, x: int, k: int) -> LinearCombination:
    """Splittings of x with every redistribution of its bi-weight; invalid terms are dropped."""
    sk = as_skeleton(g)
    rule = directed_rule(k)
    result = LinearCombination()
    for term in vertex_split_terms(sk, x, rule, color_splits=_weight_splits):
        if validate_biweight(term.skeleton):
            result.add_skeleton(term.skeleton, rule, term.coefficient)
    return result


def bw_add_univalent(g: GraphLike, x: int, direction: str, cap: int, k: int) -> LinearCombination:
    """
    Move one unit of x's out-weight ("out") or in-weight ("in") onto a new edge
    ending in a univalent vertex, summed over the valid weights of that vertex.
    No term when the weight is already zero.
    """
    sk = as_skeleton(g)
    rule = directed_rule(k)
    result = LinearCombination()
    for term in _hair_terms(sk, x, direction == "out", cap, split_sign(sk, rule)):
        if validate_biweight(term.skeleton):
            result.add_skeleton(term.skeleton, rule, term.coefficient)
    return result


def _hair_terms(sk: Skeleton, x: int, outgoing: bool, cap: int, sign: int) -> Iterator[RawTerm]:
    m, n = sk.colors[x - 1]
    if (m if outgoing else n) < 1:
        return
    x_color = (m - 1, n) if outgoing else (m, n - 1)
    for weight in hair_weights(cap):
        hair = attach_univalent(sk, x, outgoing, x_color=x_color, new_color=weight)
        yield RawTerm(hair, sign, True)


def bw_raw_terms(sk: Skeleton, k: int, cap: int) -> Iterator[RawTerm]:
    rule = directed_rule(k)
    sign = split_sign(sk, rule)
    for x in range(1, sk.n + 1):
        yield from vertex_split_terms(sk, x, rule, color_splits=_weight_splits)
        for outgoing in (True, False):
            for term in _hair_terms(sk, x, outgoing, cap, sign):
                yield RawTerm(term.skeleton, -sign, True)


def bw_differential(chain: LinearCombination, k: int, cap: int) -> LinearCombination:
    """The weighted differential, new univalent weights truncated at cap."""
    rule = directed_rule(k)

    def apply(graph_class) -> LinearCombination:
        result = LinearCombination()
        for term in bw_raw_terms(graph_class.skeleton, k, cap):
            if validate_biweight(term.skeleton):
                result.add_skeleton(term.skeleton, rule, term.coefficient)
        return result

    return chain.extend_linearly(apply)


def is_interior(g: GraphLike, cap: int) -> bool:
    """
    Total out-weight and total in-weight both at most cap-1. Weights along d
    never shrink in total, so no term of d(d(.)) landing here was truncated.
    """
    sk = as_skeleton(g)
    return sum(o for o, _ in sk.colors) <= cap - 1 and sum(i for _, i in sk.colors) <= cap - 1


def bw_interior_d2(g: GraphLike, k: int, cap: int) -> LinearCombination:
    """The part of d(d(g)) made of interior graphs; zero for a complex."""
    once = bw_differential(LinearCombination.of(g, directed_rule(k)), k, cap)
    twice = bw_differential(once, k, cap)
    return twice.filter(lambda graph_class: is_interior(graph_class.skeleton, cap))


@dataclass(frozen=True)
class InfinityWeight:
    """The formal sum of all integer weights >= threshold."""

    threshold: int = 1


WeightSlot = Union[int, InfinityWeight]


def expand_infinity(
    g: GraphLike, weights: Sequence[tuple[WeightSlot, WeightSlot]], cap: int, k: int
) -> LinearCombination:
    """
    Expand every infinity slot over threshold..cap independently; invalid
    combinations are dropped.

    Raises:
        CapError: If cap is below some threshold
    """
    sk = as_skeleton(g)
    if len(weights) != sk.n:
        raise InvalidGraphError(f"{len(weights)} bi-weights for {sk.n} vertices", field="w")
    ranges = []
    for pair in weights:
        for slot in pair:
            if isinstance(slot, InfinityWeight):
                if cap < slot.threshold:
                    raise CapError(
                        f"cap {cap} is below the threshold {slot.threshold}", field="cap"
                    )
                ranges.append(range(slot.threshold, cap + 1))
            else:
                ranges.append(range(slot, slot + 1))
    rule = directed_rule(k)
    result = LinearCombination()
    for flat in product(*ranges):
        pairs = tuple((flat[2 * x], flat[2 * x + 1]) for x in range(sk.n))
        candidate = biweighted(sk, pairs)
        if validate_biweight(candidate):
            result.add_skeleton(candidate, rule)
    return result


def fwgc_membership(g: GraphLike, which: str) -> bool:
    """
    plus: some vertex with out-weight > 0 and some with in-weight > 0 (possibly
    the same); zero: all weights (0, 0); star: not zero.
    """
    colors = as_skeleton(g).colors
    zero = all(weight == (0, 0) for weight in colors)
    if which == "zero":
        return zero
    if which == "star":
        return not zero
    if which == "plus":
        return any(o > 0 for o, _ in colors) and any(i > 0 for _, i in colors)
    raise ValueError(f"which must be plus, zero or star, got {which!r}")


def holieb_degree(g: GraphLike, p: int, q: int) -> int:
    """
    Degree of the weighted graph as an element of the deformation complex,
    computed as (v-1)(p+q+1) - e(p+q) and again as a sum over corollas.

    Raises:
        DegreeMismatchError: If the two computations disagree
    """
    sk = as_skeleton(g)
    direct = (sk.n - 1) * (p + q + 1) - sk.e * (p + q)
    m = sum(o for o, _ in sk.colors)
    n = sum(i for _, i in sk.colors)
    corollas = sum(
        1 - p * (out + w_out - 1) - q * (inn + w_in - 1)
        for (out, inn), (w_out, w_in) in zip(sk.valences(), sk.colors)
    )
    summed = corollas - 1 - p * (1 - m) - q * (1 - n)
    if direct != summed:
        raise DegreeMismatchError(
            f"degree formulas disagree: {direct} != {summed} for p={p}, q={q}"
        )
    return direct


def weighted_graphs(v_max: int, e_max: int, weight_max: int) -> Iterator[Skeleton]:
    """Valid bi-weightings (each part <= weight_max) of enumerated directed graphs."""
    values = [(o, i) for o in range(weight_max + 1) for i in range(weight_max + 1)]
    for v in range(1, v_max + 1):
        for e in range(v - 1, e_max + 1):
            for graph in enumerate_graphs(v, e, Constraints()):
                sk = graph.skeleton()
                for weights in product(values, repeat=v):
                    candidate = biweighted(sk, weights)
                    if validate_biweight(candidate):
                        yield candidate


def loop_zero_series(cap: int, k: int) -> LinearCombination:
    """Sum over i, j >= 1 with i+j >= 3 of (i+j-2) times the one-vertex graph of weight (i, j)."""
    rule = directed_rule(k)
    result = LinearCombination()
    for i in range(1, cap + 1):
        for j in range(1, cap + 1):
            if i + j >= 3:
                result.add_skeleton(Skeleton(1, colors=((i, j),)), rule, i + j - 2)
    return result


# === Decorations ===

OO = Decoration.INF_INF.value
O0 = Decoration.INF_ZERO.value
ZO = Decoration.ZERO_INF.value
ZZ = Decoration.ZERO_ZERO.value

LEGAL_DECORATIONS: dict[VertexClass, frozenset[str]] = {
    VertexClass.UNIVALENT_OUT: frozenset({OO}),
    VertexClass.UNIVALENT_IN: frozenset({OO}),
    VertexClass.SOURCE: frozenset({OO, ZO}),
    VertexClass.TARGET: frozenset({OO, O0}),
    VertexClass.PASSING: frozenset({OO, O0, ZO}),
    VertexClass.GENERIC: frozenset({OO, O0, ZO, ZZ}),
}


def legal_decorations(out: int, inn: int) -> frozenset[str]:
    """Decorations a vertex with these valences may carry; none when it has no edges."""
    if out + inn == 0:
        return frozenset()
    return LEGAL_DECORATIONS[vertex_class_of(out, inn)]


def is_legal(g: GraphLike) -> bool:
    sk = as_skeleton(g)
    return all(
        color in legal_decorations(out, inn) for (out, inn), color in zip(sk.valences(), sk.colors)
    )


def decorated(g: GraphLike, decorations: Sequence[Union[str, Decoration]]) -> Skeleton:
    sk = as_skeleton(g)
    values = tuple(Decoration(d).value for d in decorations)
    if len(values) != sk.n:
        raise InvalidGraphError(f"{len(values)} decorations for {sk.n} vertices", field="dec")
    return Skeleton(sk.n, sk.edges, sk.kinds, values)


def _or_pairs(infinite: bool) -> list[tuple[bool, bool]]:
    if infinite:
        return [(True, True), (True, False), (False, True)]
    return [(False, False)]


def _or_splits(color: str) -> Iterator[tuple[str, str]]:
    """(kept, moved) with kept OR moved equal to the original, part by part."""
    dec = Decoration(color)
    for o1, o2 in _or_pairs(dec.out_inf):
        for i1, i2 in _or_pairs(dec.in_inf):
            yield Decoration.of(o1, i1).value, Decoration.of(o2, i2).value


def qgc_raw_terms(sk: Skeleton, k: int) -> Iterator[RawTerm]:
    """
    Splittings with or-split decorations, then for an infinite out-part the new
    outgoing hair (x keeps o or drops to 0), likewise for the in-part.
    New univalent vertices are always oo.
    """
    rule = directed_rule(k)
    sign = split_sign(sk, rule)
    for x in range(1, sk.n + 1):
        yield from vertex_split_terms(sk, x, rule, color_splits=_or_splits)
        dec = Decoration(sk.colors[x - 1])
        if dec.out_inf:
            for keep in (True, False):
                hair = attach_univalent(
                    sk, x, True, x_color=Decoration.of(keep, dec.in_inf).value, new_color=OO
                )
                yield RawTerm(hair, -sign, True)
        if dec.in_inf:
            for keep in (True, False):
                hair = attach_univalent(
                    sk, x, False, x_color=Decoration.of(dec.out_inf, keep).value, new_color=OO
                )
                yield RawTerm(hair, -sign, True)


def _check_legal(chain: LinearCombination) -> None:
    for graph_class, _ in chain.items():
        if not is_legal(graph_class.skeleton):
            raise IllegalDecorationError(
                f"Decoration not allowed on its vertex class: {graph_class.key}", field="dec"
            )


def d_split(
    chain: LinearCombination, k: int, drop_zero_zero: bool = False
) -> tuple[LinearCombination, LinearCombination]:
    """
    (d_s, d_u): the splitting part and the part creating a univalent vertex.
    Terms with an illegal decoration are dropped; with drop_zero_zero so are
    terms containing 00, which is the differential of tGC.

    Raises:
        IllegalDecorationError: If an input term is not legally decorated
    """
    _check_legal(chain)
    rule = directed_rule(k)
    d_s = LinearCombination()
    d_u = LinearCombination()
    for graph_class, coefficient in chain.items():
        for term in qgc_raw_terms(graph_class.skeleton, k):
            sk = term.skeleton
            if not is_legal(sk) or (drop_zero_zero and ZZ in sk.colors):
                continue
            (d_u if term.univalent else d_s).add_skeleton(sk, rule, term.coefficient * coefficient)
    logger.debug("d_split: %d terms in, %d split, %d univalent", len(chain), len(d_s), len(d_u))
    return d_s, d_u


def qgc_differential(
    chain: LinearCombination, k: int, drop_zero_zero: bool = False
) -> LinearCombination:
    """
    The decorated differential; drop_zero_zero gives tGC.

    Raises:
        IllegalDecorationError: If an input term is not legally decorated
    """
    d_s, d_u = d_split(chain, k, drop_zero_zero)
    return d_s + d_u


def in_tgc_plus(g: GraphLike) -> bool:
    """No 00, and some oo or both an 0o and an o0."""
    colors = as_skeleton(g).colors
    if ZZ in colors:
        return False
    return OO in colors or (ZO in colors and O0 in colors)


class MonoDecoration(str, Enum):
    OMEGA = "omega"
    OUT_INF = "out_inf"
    IN_INF = "in_inf"


def omega_assignments(g: GraphLike) -> Iterator[Skeleton]:
    """Every labelled legal decoration of g lying in tGC^+."""
    sk = as_skeleton(g)
    valences = sk.valences()
    if any(out + inn == 1 for out, inn in valences):
        raise IllegalDecorationError("omega decoration needs a graph without univalent vertices")
    options = [sorted(legal_decorations(out, inn) - {ZZ}) for out, inn in valences]
    for assignment in product(*options):
        candidate = sk.with_colors(assignment)
        if in_tgc_plus(candidate):
            yield candidate


def mono_decorate(g: GraphLike, which: MonoDecoration, k: int) -> LinearCombination:
    """
    omega: the sum of all tGC^+ decorations. out_inf / in_inf: every
    non-univalent vertex o0 / 0o and univalent ones oo, which is zero as soon
    as some vertex cannot carry it (a source for o0, a target for 0o).
    """
    sk = as_skeleton(g)
    rule = directed_rule(k)
    result = LinearCombination()
    if which == MonoDecoration.OMEGA:
        for candidate in omega_assignments(sk):
            result.add_skeleton(candidate, rule)
        return result
    fill = O0 if which == MonoDecoration.OUT_INF else ZO
    colors = tuple(OO if out + inn == 1 else fill for out, inn in sk.valences())
    candidate = sk.with_colors(colors)
    if is_legal(candidate):
        result.add_skeleton(candidate, rule)
    return result


def decorated_graphs(v_max: int, e_max: int) -> Iterator[Skeleton]:
    """Every legal decoration of the enumerated directed graphs in the window."""
    for v in range(1, v_max + 1):
        for e in range(v - 1, e_max + 1):
            for graph in enumerate_graphs(v, e, Constraints()):
                sk = graph.skeleton()
                options = [sorted(legal_decorations(out, inn)) for out, inn in sk.valences()]
                for assignment in product(*options):
                    yield sk.with_colors(assignment)


def univalent_count(g: GraphLike) -> int:
    return sum(1 for out, inn in as_skeleton(g).valences() if out + inn == 1)


def fm_project(chain: LinearCombination) -> LinearCombination:
    """Onto fM^+: tGC^+ graphs without a long antenna."""
    return chain.filter(
        lambda graph_class: in_tgc_plus(graph_class.skeleton)
        and not has_long_antenna(graph_class.skeleton)
    )


def forget_colors(chain: LinearCombination, k: int) -> LinearCombination:
    """Drop weights or decorations, keeping the directed graph."""
    rule = directed_rule(k)
    result = LinearCombination()
    for graph_class, coefficient in chain.items():
        sk = graph_class.skeleton
        result.add_skeleton(Skeleton(sk.n, sk.edges, sk.kinds), rule, coefficient)
    return result


def zero_weight_agrees(g: GraphLike, k: int, cap: int = 2) -> bool:
    """
    Compare the all-(0,0) part of the weighted differential of g, weights
    forgotten, with d of g in the wheeled quotient dGC^wheeled.

    Raises:
        FlavorViolationError: If g is not a generator of dGC^wheeled
    """
    sk = as_skeleton(g)
    plain = Skeleton(sk.n, sk.edges, sk.kinds)
    wheeled = ComplexFlavor.parse("dGC^wheeled", k)
    if not wheeled.admits(plain):
        raise FlavorViolationError("Only wheeled generators have all weights zero", field="g")
    rule = directed_rule(k)
    zeros = biweighted(plain, [(0, 0)] * sk.n)
    weighted = bw_differential(LinearCombination.of(zeros, rule), k, cap)
    zero_part = weighted.filter(
        lambda graph_class: all(w == (0, 0) for w in graph_class.skeleton.colors)
    )
    return forget_colors(zero_part, k) == differential(LinearCombination.of(plain, rule), wheeled)
