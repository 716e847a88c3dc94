"""Core graph complex service - protocol independent."""

from __future__ import annotations

import logging
from functools import lru_cache, partial
from pathlib import Path
from typing import Callable, Iterable

from gcx.core.models import (
    ApiResponse,
    ChainMapRequest,
    D2Report,
    GraphListData,
    GrtRequest,
    RunConfig,
    Warning,
)
from gcx.errors import (
    EmptyDomainError,
    FlavorViolationError,
    InfiniteBidegreeError,
    error_response,
    partial_success_response,
    success_response,
)

logger = logging.getLogger(__name__)

# warning codes that mean a requested check did not pass
FAILED_CHECK_CODES = frozenset(
    {"D2_NONZERO", "NOT_A_CHAIN_MAP", "BOUND_VIOLATED", "GRT_CHECK_FAILED"}
)


class GraphComplexService:
    """
    Core service behind every command.

    Library functions raise; this class turns their results and errors into
    ApiResponse objects, so any front end (CLI, notebooks, tests) can use it.
    """

    def enumerate(self, config: RunConfig) -> ApiResponse:
        """List the nonzero generators with exactly v vertices and e edges."""
        try:
            from gcx.core.validation import render_skeleton

            if config.v is None or config.e is None:
                raise EmptyDomainError("enumerate needs both v and e", field="v")
            classes = _generators(config, config.v, config.e)
            graphs = [render_skeleton(graph_class.skeleton) for graph_class in classes]
            if config.output:
                path = Path(config.output)
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text("".join(f"{line}\n" for line in graphs))
            logger.info(
                "%s_%s v=%d e=%d: %d generators",
                config.flavor,
                config.k,
                config.v,
                config.e,
                len(graphs),
            )
            return success_response(
                GraphListData(
                    flavor=config.flavor,
                    k=config.k,
                    v=config.v,
                    e=config.e,
                    count=len(graphs),
                    graphs=graphs,
                    output=config.output,
                )
            )
        except Exception as e:
            return error_response(e)

    def cohomology(self, config: RunConfig) -> ApiResponse:
        """Cohomology dimensions on a window of degrees at one loop number."""
        try:
            from gcx.core.gcomplex import ComplexFlavor
            from gcx.core.homology import cohomology_dims, loop_graph_report

            if config.flavor == "b2GC" and config.i_max is not None:
                return success_response(loop_graph_report(config.k, config.i_max, config.workers))
            if config.b is None:
                raise InfiniteBidegreeError(
                    f"{config.flavor} needs a loop number to fix a finite bidegree", field="b"
                )
            flavor = ComplexFlavor.parse(config.flavor, config.k, config.allow_tadpoles or None)
            report = cohomology_dims(
                flavor,
                config.b,
                v_max=config.v_max,
                e_max=config.e_max,
                prime=config.prime,
                workers=config.workers,
                sms_dir=config.sms_dir,
                degree_min=config.degree_min,
                degree_max=config.degree_max,
            )
            if report.lower_bound_ranks:
                return partial_success_response(
                    report,
                    [Warning(code="UPPER_BOUNDS", message="Ranks mod p bound dimensions above")],
                )
            return success_response(report)
        except Exception as e:
            return error_response(e)

    def verify_d2(self, config: RunConfig) -> ApiResponse:
        """Check d(d(g)) = 0 for every generator of the window."""
        try:
            checked, failures = _d2_failures(config)
            report = D2Report(
                flavor=config.flavor,
                k=config.k,
                v_max=config.v_max,
                e_max=config.e_max,
                checked=checked,
                failures=failures,
            )
            logger.info(
                "d^2 on %s_%d: %d checked, %d failures",
                config.flavor,
                config.k,
                checked,
                len(failures),
            )
            return _verdict(report, report.passed, "D2_NONZERO", "d^2 does not vanish")
        except Exception as e:
            return error_response(e)

    def verify_chain_map(self, request: ChainMapRequest) -> ApiResponse:
        """Check that a named map commutes with the differentials on a window."""
        try:
            from gcx.core.chainmaps import verify_chain_map

            report = verify_chain_map(
                request.name, request.k, request.v_max, request.e_max, request.workers
            )
            return _verdict(report, report.passed, "NOT_A_CHAIN_MAP", f"{report.name} fails")
        except Exception as e:
            return error_response(e)

    def verify_degree_bound(self, config: RunConfig) -> ApiResponse:
        """Confirm that GC has nothing above degree (3-k)b-3."""
        try:
            from gcx.core.gcomplex import degree_bound_check

            if config.b is None:
                raise InfiniteBidegreeError("The degree bound needs a loop number", field="b")
            report = degree_bound_check(config.k, config.b)
            return _verdict(
                report, report.verified_empty_above, "BOUND_VIOLATED", "generators above the bound"
            )
        except Exception as e:
            return error_response(e)

    def grt(self, request: GrtRequest) -> ApiResponse:
        """The tetrahedron classes of dGC^st in k = 3."""
        try:
            from gcx.core.grtwitness import run_grt

            report = run_grt(
                request.field, request.emit_derivations, request.m, request.n, request.lifts
            )
            return _verdict(report, report.passed, "GRT_CHECK_FAILED", "a tetrahedron check fails")
        except Exception as e:
            return error_response(e)


def _verdict(report, passed: bool, code: str, message: str) -> ApiResponse:
    if passed:
        return success_response(report)
    return partial_success_response(report, [Warning(code=code, message=message)])


def _dedupe(candidates: Iterable, rule) -> list:
    from gcx.core.canon import canonical_form

    found = {}
    for sk in candidates:
        graph_class, sign = canonical_form(sk, rule)
        if sign:
            found.setdefault(graph_class.key, graph_class)
    return [found[key] for key in sorted(found)]


def _generators(config: RunConfig, v: int, e: int) -> list:
    """Nonzero classes of the configured complex with v vertices and e edges."""
    classes = _flavor_generators(config, v, e)
    if not config.allow_multiedges:
        classes = [c for c in classes if not c.skeleton.has_multiedge()]
    return classes


def _flavor_generators(config: RunConfig, v: int, e: int) -> list:
    from gcx.core.biweight import decorated_graphs, weighted_graphs
    from gcx.core.canon import directed_rule
    from gcx.core.gcomplex import ComplexFlavor
    from gcx.core.grtwitness import mixed_classes
    from gcx.core.homology import level_classes

    def sized(graphs: Iterable) -> Iterable:
        return (sk for sk in graphs if sk.n == v and sk.e == e)

    if config.flavor == "mixed":
        if config.k != 3:
            raise FlavorViolationError("The mixed complex is only built for k = 3", field="k")
        return list(mixed_classes(v, e))
    if config.flavor == "fwGC":
        return _dedupe(sized(weighted_graphs(v, e, config.cap - 1)), directed_rule(config.k))
    if config.flavor in ("qGC", "tGC"):
        graphs = sized(decorated_graphs(v, e))
        if config.flavor == "tGC":
            graphs = (sk for sk in graphs if "00" not in sk.colors)
        return _dedupe(graphs, directed_rule(config.k))
    flavor = ComplexFlavor.parse(config.flavor, config.k, config.allow_tadpoles or None)
    return list(level_classes(flavor, v, e))


def _d2_failures(config: RunConfig) -> tuple[int, list[str]]:
    from gcx.core.biweight import bw_interior_d2, qgc_differential
    from gcx.core.gcomplex import ComplexFlavor, LinearCombination, d_squared_failures, differential
    from gcx.core.grtwitness import mixed_differential

    k = config.k
    d: Callable[[LinearCombination], LinearCombination]
    if config.flavor == "fwGC":
        classes = _window(config)
        failures = [c.key for c in classes if bw_interior_d2(c.skeleton, k, config.cap)]
        return len(classes), failures
    if config.flavor in ("qGC", "tGC"):
        d = partial(qgc_differential, k=k, drop_zero_zero=config.flavor == "tGC")
    elif config.flavor == "mixed":
        d = mixed_differential
    else:
        flavor = ComplexFlavor.parse(config.flavor, k, config.allow_tadpoles or None)
        d = partial(differential, flavor=flavor)

    classes = _window(config)
    return len(classes), d_squared_failures(classes, d)


def _window(config: RunConfig) -> list:
    classes = []
    for v in range(1, config.v_max + 1):
        for e in range(max(0, v - 1), config.e_max + 1):
            classes.extend(_generators(config, v, e))
    return classes


@lru_cache(maxsize=1)
def get_service() -> GraphComplexService:
    """Get or create the singleton service instance."""
    return GraphComplexService()
