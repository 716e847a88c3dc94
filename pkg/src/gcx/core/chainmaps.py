"""
Maps between graph complexes and a termwise chain-map verifier.

Every check runs over the basis classes of a (v_max, e_max) window and
compares phi(d g) with d(phi g) exactly; a mismatch records g as a witness.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional, Union

from gcx.core.biweight import (
    MonoDecoration,
    d_split,
    fm_project,
    mono_decorate,
    omega_assignments,
    qgc_differential,
)
from gcx.core.canon import GraphClass, directed_rule, undirected_rule
from gcx.core.gcomplex import ComplexFlavor, LinearCombination, differential
from gcx.core.graphcore import GraphLike, as_skeleton, orientations
from gcx.core.homology import level_classes, parallel_map
from gcx.core.models import ChainMapName, ChainMapReport
from gcx.errors import IllegalDecorationError

logger = logging.getLogger(__name__)

Chain = LinearCombination
Check = Callable[[GraphClass], bool]


# === Maps ===


def orient_sum(g: GraphLike, k: int, skip_identity: bool = False) -> Chain:
    """
    Sum of every orientation of an undirected graph, signed by the reversals
    when edge reversal is odd. skip_identity leaves out the graph as stored.
    """
    sk = as_skeleton(g)
    flips_odd = bool(undirected_rule(k).odd_flip_kinds)
    rule = directed_rule(k)
    result = LinearCombination()
    for oriented, flipped in orientations(sk):
        if skip_identity and not flipped:
            continue
        sign = -1 if flips_odd and flipped % 2 else 1
        result.add_skeleton(oriented, rule, sign)
    return result


def map_b(chain: Chain, k: int) -> Chain:
    """Gamma to Gamma(omega), extended linearly."""
    return chain.extend_linearly(
        lambda graph_class: mono_decorate(graph_class.skeleton, MonoDecoration.OMEGA, k)
    )


def corrupt_b(chain: Chain, k: int) -> Chain:
    """map_b without the all-oo decoration."""

    def apply(graph_class: GraphClass) -> Chain:
        result = LinearCombination()
        for decorated in omega_assignments(graph_class.skeleton):
            if any(color != "oo" for color in decorated.colors):
                result.add_skeleton(decorated, directed_rule(k))
        return result

    return chain.extend_linearly(apply)


def map_fs(chain: Chain, k: int) -> Chain:
    """Gamma to Gamma(o0); zero on graphs with a source."""
    return chain.extend_linearly(
        lambda graph_class: mono_decorate(graph_class.skeleton, MonoDecoration.OUT_INF, k)
    )


def map_ft(chain: Chain, k: int) -> Chain:
    """Gamma to Gamma(0o); zero on graphs with a target."""
    return chain.extend_linearly(
        lambda graph_class: mono_decorate(graph_class.skeleton, MonoDecoration.IN_INF, k)
    )


def map_a(gamma1: Chain, gamma2: Chain, k: int) -> Chain:
    """d_u(Gamma1(o0) + Gamma2(0o)) in the complex without 00 decorations."""
    _, d_u = d_split(map_fs(gamma1, k) + map_ft(gamma2, k), k, drop_zero_zero=True)
    return d_u


def fm_differential(chain: Chain, k: int) -> Chain:
    """The differential of fM^+: tGC followed by the long-antenna projection."""
    return fm_project(qgc_differential(chain, k, drop_zero_zero=True))


# === Cone ===


def project_sourced(chain: Chain) -> Chain:
    """P_s: dGC -> dGC/dGC^s."""
    return chain.filter(lambda graph_class: _lacks(graph_class, "source"))


def project_targeted(chain: Chain) -> Chain:
    """P_t: dGC -> dGC/dGC^t."""
    return chain.filter(lambda graph_class: _lacks(graph_class, "target"))


def _lacks(graph_class: GraphClass, what: str) -> bool:
    valences = graph_class.skeleton.valences()
    if what == "source":
        return not any(o >= 1 and i == 0 for o, i in valences)
    return not any(i >= 1 and o == 0 for o, i in valences)


@dataclass
class ConeElement:
    """(Gamma, (Gamma1, Gamma2)) in dGC + dGC/dGC^s[1] + dGC/dGC^t[1]."""

    gamma: Chain = field(default_factory=LinearCombination)
    gamma1: Chain = field(default_factory=LinearCombination)
    gamma2: Chain = field(default_factory=LinearCombination)

    def __bool__(self) -> bool:
        return bool(self.gamma or self.gamma1 or self.gamma2)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConeElement):
            return NotImplemented
        return (self.gamma, self.gamma1, self.gamma2) == (other.gamma, other.gamma1, other.gamma2)

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class ConeFlavors:
    whole: ComplexFlavor
    no_source: ComplexFlavor
    no_target: ComplexFlavor

    @classmethod
    def of(cls, k: int) -> "ConeFlavors":
        return cls(
            ComplexFlavor.parse("dGC", k),
            ComplexFlavor.parse("dGC/s", k),
            ComplexFlavor.parse("dGC/t", k),
        )


def cone_differential(x: ConeElement, k: int) -> ConeElement:
    """d_c(G, (G1, G2)) = (dG, (-P_s G - dG1, -P_t G - dG2))."""
    flavors = ConeFlavors.of(k)
    return ConeElement(
        differential(x.gamma, flavors.whole),
        -project_sourced(x.gamma) - differential(x.gamma1, flavors.no_source),
        -project_targeted(x.gamma) - differential(x.gamma2, flavors.no_target),
    )


def map_g(x: ConeElement, k: int) -> Chain:
    """a + b on the cone."""
    return map_b(x.gamma, k) + map_a(x.gamma1, x.gamma2, k)


# === Verification ===


def window_classes(
    flavor: ComplexFlavor,
    v_max: int,
    e_max: int,
    keep: Optional[Callable[[GraphClass], bool]] = None,
) -> list[GraphClass]:
    classes = []
    for v in range(1, v_max + 1):
        for e in range(max(0, v - 1), e_max + 1):
            classes.extend(c for c in level_classes(flavor, v, e) if keep is None or keep(c))
    return classes


def _no_univalent(graph_class: GraphClass) -> bool:
    return all(d >= 2 for d in graph_class.skeleton.degrees())


def _f_commutes(k: int, skip_identity: bool, graph_class: GraphClass) -> bool:
    source = ComplexFlavor.parse("GC", k)
    target = ComplexFlavor.parse("dGC", k)

    def f(chain: Chain) -> Chain:
        return chain.extend_linearly(lambda term: orient_sum(term.skeleton, k, skip_identity))

    chain = LinearCombination.from_class(graph_class)
    return f(differential(chain, source)) == differential(f(chain), target)


def _b_commutes(k: int, corrupted: bool, graph_class: GraphClass) -> bool:
    b = corrupt_b if corrupted else map_b
    chain = LinearCombination.from_class(graph_class)
    d_s, _ = d_split(b(chain, k), k, drop_zero_zero=True)
    return b(differential(chain, ComplexFlavor.parse("cfdGC", k)), k) == d_s


def _quotient_commutes(k: int, name: str, graph_class: GraphClass) -> bool:
    phi = map_fs if name == "dGC/s" else map_ft
    chain = LinearCombination.from_class(graph_class)
    d_s, _ = d_split(phi(chain, k), k, drop_zero_zero=True)
    return phi(differential(chain, ComplexFlavor.parse(name, k)), k) == d_s


def _a_commutes(k: int, graph_class: GraphClass) -> bool:
    flavors = ConeFlavors.of(k)
    chain = LinearCombination.from_class(graph_class)
    zero = LinearCombination()
    ok = True
    # the shifted complexes carry -d
    if _lacks(graph_class, "source"):
        shifted = -differential(chain, flavors.no_source)
        ok = ok and fm_differential(map_a(chain, zero, k), k) == map_a(shifted, zero, k)
    if _lacks(graph_class, "target"):
        shifted = -differential(chain, flavors.no_target)
        ok = ok and fm_differential(map_a(zero, chain, k), k) == map_a(zero, shifted, k)
    return ok


def _cone_elements(graph_class: GraphClass) -> list[ConeElement]:
    """The basis class in every cone slot it belongs to."""
    chain = LinearCombination.from_class(graph_class)
    elements = [ConeElement(gamma=chain)]
    if _lacks(graph_class, "source"):
        elements.append(ConeElement(gamma1=chain))
    if _lacks(graph_class, "target"):
        elements.append(ConeElement(gamma2=chain))
    return elements


def _g_commutes(k: int, graph_class: GraphClass) -> bool:
    return all(
        fm_differential(map_g(x, k), k) == map_g(cone_differential(x, k), k)
        for x in _cone_elements(graph_class)
    )


def _cone_d2_vanishes(k: int, graph_class: GraphClass) -> bool:
    return all(
        not cone_differential(cone_differential(x, k), k) for x in _cone_elements(graph_class)
    )


def _st_exact(k: int, graph_class: GraphClass) -> bool:
    """
    A dGC class is killed by both projections exactly when it has a source and
    a target, and then d_c(G, 0, 0) = (dG, 0, 0) with dG again sourced and targeted.
    """
    st = ComplexFlavor.parse("dGC^st", k)
    chain = LinearCombination.from_class(graph_class)
    killed = not project_sourced(chain) and not project_targeted(chain)
    if killed != st.admits(graph_class.skeleton):
        return False
    if not killed:
        return True
    return cone_differential(ConeElement(gamma=chain), k) == ConeElement(
        gamma=differential(chain, st)
    )


def _setup(name: ChainMapName, k: int) -> tuple[ComplexFlavor, Check, Optional[Check]]:
    """Window flavor, the per-class check, and a basis filter."""
    if name in (ChainMapName.F, ChainMapName.F_CORRUPT):
        check = partial(_f_commutes, k, name == ChainMapName.F_CORRUPT)
        return ComplexFlavor.parse("GC", k), check, None
    if name in (ChainMapName.B, ChainMapName.B_CORRUPT):
        check = partial(_b_commutes, k, name == ChainMapName.B_CORRUPT)
        return ComplexFlavor.parse("cfdGC", k), check, _no_univalent
    if name in (ChainMapName.FS, ChainMapName.FT):
        quotient = "dGC/s" if name == ChainMapName.FS else "dGC/t"
        return ComplexFlavor.parse(quotient, k), partial(_quotient_commutes, k, quotient), None
    checks = {
        ChainMapName.A: _a_commutes,
        ChainMapName.A_PLUS_B: _g_commutes,
        ChainMapName.CONE_D2: _cone_d2_vanishes,
        ChainMapName.ST_EXACTNESS: _st_exact,
    }
    return ComplexFlavor.parse("dGC", k), partial(checks[name], k), None


def _run_check(check: Check, graph_class: GraphClass) -> bool:
    try:
        return check(graph_class)
    except IllegalDecorationError:
        logger.debug("illegal decoration while checking %s", graph_class.key)
        return False


def verify_chain_map(
    name: Union[ChainMapName, str],
    k: int = 3,
    v_max: int = 3,
    e_max: int = 5,
    workers: int = 1,
) -> ChainMapReport:
    """Check a named map or identity on every basis class of the window."""
    name = ChainMapName(name)
    flavor, check, keep = _setup(name, k)
    classes = window_classes(flavor, v_max, e_max, keep)
    verdicts = parallel_map(partial(_run_check, check), classes, workers)
    witnesses = [c.key for c, ok in zip(classes, verdicts) if not ok]
    logger.info(
        "chain map %s, k=%d: %d classes, %d witnesses", name.value, k, len(classes), len(witnesses)
    )
    return ChainMapReport(
        name=name.value,
        k=k,
        v_max=v_max,
        e_max=e_max,
        checked=len(classes),
        passed=not witnesses,
        witnesses=witnesses,
    )
