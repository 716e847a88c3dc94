"""Graded bases, differential matrices and cohomology dimensions."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from pathlib import Path
from typing import Callable, Optional, Sequence, TypeVar

from gcx.core.canon import GraphClass, canonical_form, is_zero_class, undirected_rule
from gcx.core.exactla import SparseMatrix, rank, to_sms
from gcx.core.gcomplex import ComplexFlavor, FlavorBase, graph_differential
from gcx.core.graphcore import Skeleton, bidegree_size, loop_graph, orientations, undirected_shapes
from gcx.core.models import CohomologyReport, DegreeRow, FieldChoice, LoopGraphReport, LoopGraphRow
from gcx.errors import BoundExceededError, EmptyDomainError, FlavorViolationError

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

# shorter work lists run in-process
PARALLEL_THRESHOLD = 64


def parallel_map(fn: Callable[[T], R], items: Sequence[T], workers: int = 1) -> list[R]:
    """Map in worker processes when worthwhile; results keep input order."""
    if workers <= 1 or len(items) < PARALLEL_THRESHOLD:
        return [fn(item) for item in items]
    chunksize = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))


# === Bases ===


@dataclass(frozen=True)
class GradedBasis:
    """Nonzero classes of one flavor in one (loop number, degree) bidegree, in key order."""

    flavor: ComplexFlavor
    b: int
    degree: int
    v: int
    e: int
    classes: tuple[GraphClass, ...] = ()

    @property
    def keys(self) -> list[str]:
        return [graph_class.key for graph_class in self.classes]

    def index(self) -> dict[str, int]:
        return {graph_class.key: i for i, graph_class in enumerate(self.classes)}

    def __len__(self) -> int:
        return len(self.classes)


def level_classes(flavor: ComplexFlavor, v: int, e: int) -> tuple[GraphClass, ...]:
    """All nonzero classes of the flavor with v vertices and e edges."""
    if v < 1 or e < v - 1:
        return ()
    rule = flavor.rule
    found: dict[str, GraphClass] = {}
    for shape in undirected_shapes(v, e, flavor.allow_tadpoles, True, flavor.min_degree):
        candidates = [shape] if flavor.undirected else [sk for sk, _ in orientations(shape)]
        for sk in candidates:
            if not flavor.admits(sk):
                continue
            graph_class, sign = canonical_form(sk, rule)
            if sign:
                found.setdefault(graph_class.key, graph_class)
    logger.debug("%s_%d v=%d e=%d: %d classes", flavor.name, flavor.k, v, e, len(found))
    return tuple(found[key] for key in sorted(found))


def build_basis(
    flavor: ComplexFlavor,
    b: int,
    d: int,
    v_max: Optional[int] = None,
    e_max: Optional[int] = None,
) -> GradedBasis:
    """
    The basis in loop number b and degree d. Both fix v and e, so every
    bidegree of these flavors is finite; the window only guards the size.

    Raises:
        BoundExceededError: When the bidegree lies outside the window
    """
    v, e = bidegree_size(b, d, flavor.k)
    if (v_max is not None and v > v_max) or (e_max is not None and e > e_max):
        raise BoundExceededError(
            f"Bidegree (b={b}, d={d}) needs v={v}, e={e}, outside the window "
            f"v<={v_max}, e<={e_max}",
            field="v_max",
        )
    return GradedBasis(flavor, b, d, v, e, level_classes(flavor, v, e))


# === Matrices ===


def _column(flavor: ComplexFlavor, sk: Skeleton) -> dict[str, Fraction]:
    return {graph_class.key: c for graph_class, c in graph_differential(sk, flavor).items()}


def differential_matrix(
    source: GradedBasis, target: GradedBasis, workers: int = 1
) -> SparseMatrix:
    """
    Matrix of d from source to target; column j is d of source class j.

    Raises:
        FlavorViolationError: If a term of d is missing from the target basis
    """
    index = target.index()
    skeletons = [graph_class.skeleton for graph_class in source.classes]
    columns = parallel_map(partial(_column, source.flavor), skeletons, workers)
    matrix = SparseMatrix(len(target), len(source))
    for j, column in enumerate(columns):
        for key, value in column.items():
            if key not in index:
                raise FlavorViolationError(
                    f"d({source.keys[j]}) has term {key} outside degree {target.degree}"
                )
            matrix.set(index[key], j, value)
    logger.info(
        "d: degree %d -> %d, %dx%d, nnz=%d",
        source.degree,
        target.degree,
        matrix.rows,
        matrix.cols,
        matrix.nnz,
    )
    return matrix


def sms_filename(flavor: ComplexFlavor, b: int, d: int) -> str:
    name = (flavor.name or flavor.base.value).replace("/", "%")
    return f"{name}_k{flavor.k}_b{b}_d{d}.sms"


# === Cohomology ===


def window_degrees(flavor: ComplexFlavor, b: int, v_max: int, e_max: int) -> list[int]:
    """
    Degrees at loop number b whose (v, e) fit the window. GC is additionally
    cut at v <= 2b-2, since 3v <= 2e leaves nothing above.
    """
    top = v_max
    if flavor.base == FlavorBase.UNDIRECTED_GC:
        top = min(top, max(1, 2 * b - 2))
    degrees = []
    for v in range(1, top + 1):
        e = v + b - 1
        if 0 <= e <= e_max:
            degrees.append(e - b * flavor.k)
    return degrees


def cohomology_dims(
    flavor: ComplexFlavor,
    b: int,
    v_max: int = 6,
    e_max: int = 9,
    prime: Optional[int] = None,
    workers: int = 1,
    sms_dir: Optional[str] = None,
    degree_min: Optional[int] = None,
    degree_max: Optional[int] = None,
) -> CohomologyReport:
    """
    dim H^d = dim C^d - rank d^d - rank d^(d-1) for each degree of the window.

    The degree just above the window is assembled as the target of the top
    differential, so the bases are built with v_max + 1 and e_max + 1 as the
    bound. Ranks mod a prime are lower bounds, so the dimensions are
    then upper bounds.

    Raises:
        EmptyDomainError: When no degree of the window lies in the requested range
    """
    degrees = [
        d
        for d in window_degrees(flavor, b, v_max, e_max)
        if (degree_min is None or d >= degree_min) and (degree_max is None or d <= degree_max)
    ]
    if not degrees:
        raise EmptyDomainError(
            f"No degree of {flavor.name} at b={b} fits v<={v_max}, e<={e_max}", field="degree"
        )

    bases = {
        d: build_basis(flavor, b, d, v_max + 1, e_max + 1)
        for d in range(degrees[0] - 1, degrees[-1] + 2)
    }
    ranks: dict[int, int] = {}
    sms_files: list[str] = []
    for d in range(degrees[0] - 1, degrees[-1] + 1):
        source, target = bases[d], bases[d + 1]
        if not len(source) or not len(target):
            ranks[d] = 0
            continue
        matrix = differential_matrix(source, target, workers)
        ranks[d] = rank(matrix, prime)
        if sms_dir is not None and d in degrees:
            path = Path(sms_dir) / sms_filename(flavor, b, d)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(to_sms(matrix.integer_scaled()))
            sms_files.append(str(path))

    rows = []
    for d in degrees:
        dim = len(bases[d])
        rows.append(
            DegreeRow(
                degree=d,
                dim=dim,
                rank_out=ranks[d],
                rank_in=ranks[d - 1],
                dim_h=dim - ranks[d] - ranks[d - 1],
            )
        )
        logger.info("%s_%d b=%d H^%d: %d", flavor.name, flavor.k, b, d, rows[-1].dim_h)

    return CohomologyReport(
        flavor=flavor.name,
        k=flavor.k,
        b=b,
        field=FieldChoice.RATIONAL if prime is None else FieldChoice.GF32003,
        lower_bound_ranks=prime is not None,
        rows=rows,
        sms_files=sms_files,
    )


def loop_graph_report(k: int, i_max: int, workers: int = 1) -> LoopGraphReport:
    """Cohomology of the bivalent complex, one loop graph per degree."""
    flavor = ComplexFlavor.parse("b2GC", k)
    report = cohomology_dims(flavor, 1, v_max=i_max, e_max=i_max, workers=workers)
    rule = undirected_rule(k)
    rows = []
    for i in range(1, i_max + 1):
        degree = i - k
        rows.append(
            LoopGraphRow(
                i=i,
                degree=degree,
                nonzero=not is_zero_class(loop_graph(i), rule),
                dim_h=report.dim_h(degree),
            )
        )
    return LoopGraphReport(k=k, rows=rows)
