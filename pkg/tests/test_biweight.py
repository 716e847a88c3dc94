"""Tests for bi-weighted and decorated graph complexes."""

import random

import pytest

from gcx.core.biweight import (
    InfinityWeight,
    MonoDecoration,
    bw_add_univalent,
    bw_interior_d2,
    bw_vertex_split,
    decorated,
    decorated_graphs,
    expand_infinity,
    fm_project,
    fwgc_membership,
    hair_weights,
    holieb_degree,
    in_tgc_plus,
    is_interior,
    is_legal,
    legal_decorations,
    loop_zero_series,
    mono_decorate,
    omega_assignments,
    qgc_differential,
    univalent_count,
    validate_biweight,
    weighted_graphs,
    zero_weight_agrees,
)
from gcx.core.canon import directed_rule
from gcx.core.gcomplex import ComplexFlavor, LinearCombination
from gcx.core.graphcore import Skeleton
from gcx.core.homology import level_classes
from gcx.errors import CapError, FlavorViolationError, IllegalDecorationError, InvalidGraphError


class TestBiWeights:
    """Tests for weight validity and the weighted grading."""

    def test_single_vertex(self):
        """One vertex needs an output, an input and three legs."""
        assert not validate_biweight(Skeleton(1, colors=((1, 1),)))
        assert validate_biweight(Skeleton(1, colors=((2, 1),)))
        assert not validate_biweight(Skeleton(1, colors=((3, 0),)))

    def test_edge_counts_as_leg(self):
        """Edges supply outputs and inputs."""
        edge = Skeleton(2, ((1, 2),), colors=((0, 2), (2, 0)))
        assert validate_biweight(edge)

    def test_hair_weights(self):
        """New univalent vertices get parts up to the cap and total at least 2."""
        assert set(hair_weights(2)) == {(1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (2, 2)}

    def test_holieb_degree(self):
        """The corolla with weight (2, 1) has degree 0 for p = q = 1."""
        assert holieb_degree(Skeleton(1, colors=((2, 1),)), 1, 1) == 0
        edge = Skeleton(2, ((1, 2),), colors=((1, 1), (1, 1)))
        assert holieb_degree(edge, 1, 1) == 1

    @pytest.mark.parametrize("p,q", [(1, 1), (0, 1), (2, -1)])
    def test_holieb_degree_random(self, p, q):
        """Both degree formulas agree on 1000 random weighted graphs."""
        rng = random.Random(p * 10 + q)
        for _ in range(1000):
            n = rng.randint(1, 6)
            edges = []
            for _ in range(rng.randint(0, 9) if n > 1 else 0):
                tail, head = rng.sample(range(1, n + 1), 2)
                edges.append((tail, head))
            colors = tuple((rng.randint(0, 3), rng.randint(0, 3)) for _ in range(n))
            sk = Skeleton(n, tuple(edges), colors=colors)
            assert holieb_degree(sk, p, q) == (n - 1) * (p + q + 1) - len(edges) * (p + q)

    def test_membership(self):
        """plus needs out- and in-weight somewhere; zero means all weights vanish."""
        edge = Skeleton(2, ((1, 2),), colors=((1, 0), (0, 1)))
        assert fwgc_membership(edge, "plus")
        assert fwgc_membership(edge, "star")
        assert not fwgc_membership(edge, "zero")
        with pytest.raises(ValueError):
            fwgc_membership(edge, "other")

    def test_interior(self):
        """Interior means both weight totals stay below the cap."""
        edge = Skeleton(2, ((1, 2),), colors=((1, 1), (1, 1)))
        assert is_interior(edge, 3)
        assert not is_interior(edge, 2)


class TestInfinityExpansion:
    """Tests for expanding the formal infinite weight."""

    def test_single_vertex(self):
        """Both parts run over 1..cap; (1, 1) is dropped as invalid."""
        sk = Skeleton(1)
        chain = expand_infinity(sk, [(InfinityWeight(), InfinityWeight())], 2, 3)
        assert len(chain) == 3

    def test_cap_below_threshold(self):
        """The cap must reach the threshold."""
        with pytest.raises(CapError):
            expand_infinity(Skeleton(1), [(InfinityWeight(3), 0)], 2, 3)

    def test_wrong_length(self):
        """One pair per vertex."""
        with pytest.raises(InvalidGraphError):
            expand_infinity(Skeleton(2, ((1, 2),)), [(1, 1)], 2, 3)

    def test_loop_zero_series(self):
        """Coefficients i+j-2 on the one-vertex graphs."""
        series = loop_zero_series(2, 3)
        rule = directed_rule(3)
        assert series.coefficient_of(Skeleton(1, colors=((2, 1),)), rule) == 1
        assert series.coefficient_of(Skeleton(1, colors=((2, 2),)), rule) == 2
        assert len(series) == 3


class TestWeightedDifferential:
    """Tests for d^2 on the interior of the truncated weighted complex."""

    @pytest.mark.parametrize("k", [2, 3])
    def test_interior_d_squared(self, k):
        """d^2 has no interior terms on small weighted graphs."""
        graphs = list(weighted_graphs(2, 2, 1))
        assert graphs
        for sk in graphs:
            assert not bw_interior_d2(sk, k, 3)

    @pytest.mark.slow
    @pytest.mark.parametrize("k", [2, 3])
    def test_interior_d_squared_three_vertices(self, k):
        """d^2 has no interior terms up to 3 vertices and 4 edges with cap 3."""
        graphs = list(weighted_graphs(3, 4, 1))
        assert any(sk.n == 3 for sk in graphs)
        for sk in graphs:
            assert not bw_interior_d2(sk, k, 3)

    @pytest.mark.parametrize("k", [2, 3])
    def test_zero_weights_match_wheeled(self, k):
        """The all-zero-weight part of d is the wheeled quotient differential."""
        g = Skeleton(3, ((1, 2), (2, 3), (3, 1), (2, 1), (1, 3)))
        assert zero_weight_agrees(g, k)

    def test_zero_weights_match_wheeled_window(self):
        """The comparison holds for every wheeled generator of a small window."""
        flavor = ComplexFlavor.parse("dGC^wheeled", 3)
        for e in range(5, 7):
            for graph_class in level_classes(flavor, 3, e):
                assert zero_weight_agrees(graph_class.skeleton, 3)

    def test_zero_weights_need_wheeled(self, cycle3):
        """Graphs with passing vertices have no all-zero weighting."""
        with pytest.raises(FlavorViolationError):
            zero_weight_agrees(cycle3, 3)

    def test_corolla_splittings(self):
        """A (2,2) corolla splits validly in two ways; a (2,1) corolla in none."""
        assert len(bw_vertex_split(Skeleton(1, colors=((2, 2),)), 1, 3)) == 2
        assert not bw_vertex_split(Skeleton(1, colors=((2, 1),)), 1, 3)

    def test_hairs_take_one_unit_of_weight(self):
        """Each valid weight of the new univalent vertex gives one term."""
        corolla = Skeleton(1, colors=((2, 2),))
        assert len(bw_add_univalent(corolla, 1, "out", 2, 3)) == 5
        assert not bw_add_univalent(Skeleton(1, colors=((0, 3),)), 1, "out", 2, 3)


class TestDecorations:
    """Tests for the decoration legality table."""

    def test_table(self):
        """Allowed decorations per vertex class."""
        assert legal_decorations(1, 0) == {"oo"}
        assert legal_decorations(2, 0) == {"oo", "0o"}
        assert legal_decorations(0, 2) == {"oo", "o0"}
        assert legal_decorations(1, 1) == {"oo", "o0", "0o"}
        assert legal_decorations(2, 1) == {"oo", "o0", "0o", "00"}

    def test_isolated_vertex(self):
        """A vertex without edges takes no decoration."""
        assert legal_decorations(0, 0) == frozenset()
        assert not list(decorated_graphs(1, 0))

    def test_is_legal(self):
        """A source cannot be o0."""
        edge = Skeleton(3, ((1, 2), (1, 3)))
        assert is_legal(decorated(edge, ["0o", "oo", "oo"]))
        assert not is_legal(decorated(edge, ["o0", "oo", "oo"]))

    def test_decorated_length(self):
        """One decoration per vertex."""
        with pytest.raises(InvalidGraphError):
            decorated(Skeleton(2, ((1, 2),)), ["oo"])

    def test_tgc_plus(self):
        """tGC^+ needs an oo or both half-infinite kinds."""
        cycle = Skeleton(2, ((1, 2), (2, 1)))
        assert in_tgc_plus(decorated(cycle, ["o0", "0o"]))
        assert not in_tgc_plus(decorated(cycle, ["o0", "o0"]))


class TestDecoratedDifferential:
    """Tests for the qGC and tGC differentials."""

    @pytest.mark.parametrize("drop", [False, True])
    def test_d_squared(self, drop):
        """d^2 = 0 on every legal decoration of small graphs."""
        for sk in decorated_graphs(2, 3):
            if drop and "00" in sk.colors:
                continue
            chain = LinearCombination.of(sk, directed_rule(3))
            once = qgc_differential(chain, 3, drop_zero_zero=drop)
            assert not qgc_differential(once, 3, drop_zero_zero=drop)

    @pytest.mark.slow
    @pytest.mark.parametrize("drop", [False, True])
    def test_d_squared_three_vertices(self, drop):
        """d^2 = 0 on every legal decoration up to 3 vertices and 4 edges."""
        for sk in decorated_graphs(3, 4):
            if drop and "00" in sk.colors:
                continue
            chain = LinearCombination.of(sk, directed_rule(3))
            once = qgc_differential(chain, 3, drop_zero_zero=drop)
            assert not qgc_differential(once, 3, drop_zero_zero=drop)

    def test_illegal_input(self):
        """The differential refuses illegal decorations."""
        source = Skeleton(2, ((1, 2), (1, 2)), colors=("o0", "oo"))
        with pytest.raises(IllegalDecorationError):
            qgc_differential(LinearCombination.of(source, directed_rule(3)), 3)


class TestMonoDecorations:
    """Tests for the maps into the decorated complexes."""

    def test_omega_on_cycle(self, cycle3):
        """27 decorations of a 3-cycle minus the two all-o0 / all-0o ones."""
        assert len(list(omega_assignments(cycle3))) == 25

    def test_omega_needs_no_univalent(self):
        """Univalent vertices are refused."""
        with pytest.raises(IllegalDecorationError):
            list(omega_assignments(Skeleton(2, ((1, 2),))))

    def test_out_inf_kills_sources(self, transitive3, cycle3):
        """A source cannot carry o0, so the decoration is zero."""
        assert not mono_decorate(transitive3, MonoDecoration.OUT_INF, 3)
        assert len(mono_decorate(cycle3, MonoDecoration.OUT_INF, 3)) == 1

    def test_fm_project_drops_long_antennas(self):
        """fM^+ keeps tGC^+ graphs without long antennas."""
        rule = directed_rule(3)
        hanging = Skeleton(5, ((1, 2), (2, 3), (3, 1), (3, 4), (4, 5)))
        short = Skeleton(4, ((1, 2), (2, 3), (3, 1), (3, 4)))
        chain = LinearCombination.of(decorated(hanging, ["oo", "oo", "oo", "oo", "oo"]), rule)
        chain.add_skeleton(decorated(short, ["oo", "oo", "oo", "oo"]), rule)
        assert len(fm_project(chain)) == 1

    def test_univalent_count(self, k4):
        """The fM^+ grading counts univalent vertices."""
        assert univalent_count(Skeleton(3, ((1, 2), (1, 3)))) == 2
        assert univalent_count(k4) == 0
