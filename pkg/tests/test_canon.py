"""Tests for canonical labelling, orientation signs and automorphisms."""

from itertools import combinations_with_replacement, permutations

import networkx as nx
import pytest

from gcx.core.canon import (
    DIRECTED_SHAPE_RULE,
    SHAPE_RULE,
    automorphism_group,
    canonical_key,
    canonicalize,
    directed_rule,
    is_zero_class,
    mixed_rule,
    permutation_sign,
    rule_for,
    undirected_rule,
)
from gcx.core.graphcore import Skeleton, loop_graph, orientations
from gcx.errors import BoundExceededError


SMALL_SIZES = [
    (v, e) if (v, e) != (4, 5) else pytest.param(4, 5, marks=pytest.mark.slow)
    for v in range(1, 5)
    for e in range(v - 1, 6)
]


def _labelled_graphs(v: int, e: int) -> list[Skeleton]:
    """Every connected loopless directed multigraph on vertices 1..v with e edges."""
    pairs = [(a, b) for a in range(1, v + 1) for b in range(1, v + 1) if a != b]
    graphs = []
    for edges in combinations_with_replacement(pairs, e):
        sk = Skeleton(v, edges)
        if nx.is_weakly_connected(sk.to_networkx()):
            graphs.append(sk)
    return graphs


class TestPermutationSign:
    """Tests for permutation parity."""

    def test_identity(self):
        """The identity is even."""
        assert permutation_sign([0, 1, 2, 3]) == 1

    def test_transposition(self):
        """A swap is odd."""
        assert permutation_sign([1, 0, 2]) == -1

    def test_three_cycle(self):
        """A 3-cycle is even."""
        assert permutation_sign([1, 2, 0]) == 1


class TestRules:
    """Tests for the orientation rules of each family."""

    def test_directed_parity(self):
        """Even k orders edges, odd k orders vertices."""
        assert directed_rule(2).odd_kinds == frozenset({"solid"})
        assert directed_rule(3).odd_vertices
        assert not directed_rule(3).odd_kinds

    def test_undirected_flips(self):
        """Edge reversal is a sign only for odd k."""
        assert undirected_rule(3).odd_flip_kinds == frozenset({"solid"})
        assert not undirected_rule(2).odd_flip_kinds

    def test_mixed_odd(self):
        """For k = 3 the dotted kinds are the odd objects and nothing flips."""
        rule = mixed_rule(3)
        assert rule.odd_kinds == frozenset({"s", "t"})
        assert not rule.odd_flip_kinds

    def test_rule_for(self):
        """Family names select rules."""
        assert rule_for("undirected", 3) == undirected_rule(3)
        assert rule_for("mixed", 3) == mixed_rule(3)
        assert rule_for("directed", 2) == directed_rule(2)


class TestCanonicalKey:
    """Tests for isomorphism invariance of canonical keys."""

    def test_relabel_invariance(self, k4):
        """Every relabelling of the tetrahedron gets one key."""
        rule = directed_rule(3)
        expected = canonical_key(k4, rule)
        for images in permutations(range(1, 5)):
            new_of = dict(zip(range(1, 5), images))
            assert canonical_key(k4.relabel(new_of), rule) == expected

    def test_edge_order_invariance(self, transitive3):
        """The stored edge order does not matter for the key."""
        reordered = Skeleton(3, tuple(reversed(transitive3.edges)))
        assert canonical_key(reordered, directed_rule(2)) == canonical_key(
            transitive3, directed_rule(2)
        )

    def test_keys_agree_with_networkx(self, k4):
        """Orientations of the tetrahedron share a key exactly when isomorphic."""
        graphs = [sk for sk, _ in orientations(k4)]
        keys = [canonical_key(sk, DIRECTED_SHAPE_RULE) for sk in graphs]
        nx_graphs = [sk.to_networkx() for sk in graphs]
        for i in range(len(graphs)):
            for j in range(i + 1, len(graphs)):
                same = nx.is_isomorphic(nx_graphs[i], nx_graphs[j])
                assert (keys[i] == keys[j]) == same

    @pytest.mark.parametrize("v,e", SMALL_SIZES)
    def test_key_partition_matches_networkx(self, v, e):
        """Labelled graphs of one size share a key exactly when isomorphic."""
        by_key: dict[str, list[nx.MultiDiGraph]] = {}
        for sk in _labelled_graphs(v, e):
            by_key.setdefault(canonical_key(sk, DIRECTED_SHAPE_RULE), []).append(sk.to_networkx())
        representatives = []
        for members in by_key.values():
            assert all(nx.is_isomorphic(members[0], other) for other in members[1:])
            representatives.append(members[0])
        for i, first in enumerate(representatives):
            for second in representatives[i + 1 :]:
                assert not nx.is_isomorphic(first, second)

    def test_key_carries_rule_tag(self, cycle3):
        """Keys of different rules never collide."""
        assert canonical_key(cycle3, directed_rule(2)).startswith("dir-even|")
        assert canonical_key(cycle3, directed_rule(3)).startswith("dir-odd|")

    def test_canonical_graph(self, k4):
        """The canonical representative has the class key."""
        rule = directed_rule(2)
        graph_class, _ = canonicalize(k4, rule)
        assert graph_class.canonical_graph.vertex_count == 4
        assert canonical_key(graph_class.canonical_graph, rule) == graph_class.key


class TestSigns:
    """Tests for the sign relating a graph to its canonical representative."""

    def test_vertex_swap_flips_sign_for_odd_k(self, transitive3):
        """With odd vertices, a transposition of labels is a sign."""
        rule = directed_rule(3)
        _, sign = canonicalize(transitive3, rule)
        _, swapped = canonicalize(transitive3.relabel({1: 2, 2: 1, 3: 3}), rule)
        assert sign in (1, -1)
        assert swapped == -sign

    def test_edge_swap_flips_sign_for_even_k(self, transitive3):
        """With odd edges, reordering two edges is a sign."""
        rule = directed_rule(2)
        edges = transitive3.edges
        _, sign = canonicalize(transitive3, rule)
        _, swapped = canonicalize(Skeleton(3, (edges[1], edges[0], edges[2])), rule)
        assert swapped == -sign

    def test_reversal_sign_for_odd_undirected(self, transitive3):
        """Reversing one undirected edge is a sign for odd k."""
        rule = undirected_rule(3)
        _, sign = canonicalize(transitive3, rule)
        flipped = Skeleton(3, ((2, 1), (1, 3), (2, 3)))
        _, reversed_sign = canonicalize(flipped, rule)
        assert reversed_sign == -sign

    def test_zero_class_has_zero_sign(self, theta):
        """Zero classes report sign 0."""
        graph_class, sign = canonicalize(theta, undirected_rule(2))
        assert graph_class.is_zero
        assert sign == 0


class TestZeroClasses:
    """Tests for classes killed by odd automorphisms."""

    def test_theta(self, theta):
        """Swapping parallel edges kills the theta graph for even k only."""
        assert is_zero_class(theta, undirected_rule(2))
        assert not is_zero_class(theta, undirected_rule(3))

    def test_directed_double_edge(self):
        """Parallel directed edges vanish when edges are odd."""
        double = Skeleton(2, ((1, 2), (1, 2)))
        assert is_zero_class(double, directed_rule(2))
        assert not is_zero_class(double, directed_rule(3))

    def test_tetrahedron_survives_in_even_k(self, k4):
        """The tetrahedron is a nonzero class of GC for k = 2."""
        assert not is_zero_class(k4, undirected_rule(2))

    @pytest.mark.parametrize("i", range(1, 10))
    def test_loop_graphs_even_k(self, i):
        """For k = 2 the loop graph survives exactly when i = 1 mod 4."""
        assert is_zero_class(loop_graph(i), undirected_rule(2)) == (i % 4 != 1)

    @pytest.mark.parametrize("i", range(1, 10))
    def test_loop_graphs_odd_k(self, i):
        """For k = 3 the loop graph survives exactly when i = 3 mod 4."""
        assert is_zero_class(loop_graph(i), undirected_rule(3)) == (i % 4 != 3)


class TestAutomorphisms:
    """Tests for the automorphism group."""

    def test_cycle(self, cycle3):
        """Rotations of the directed 3-cycle."""
        assert len(automorphism_group(cycle3)) == 3

    def test_tetrahedron_shape(self, k4):
        """The undirected tetrahedron has the full symmetric group."""
        assert len(automorphism_group(k4, SHAPE_RULE)) == 24

    def test_single_edge(self):
        """A directed edge has only the identity."""
        assert automorphism_group(Skeleton(2, ((1, 2),))) == [(1, 2)]

    def test_bound(self):
        """The search refuses graphs above the bound."""
        with pytest.raises(BoundExceededError):
            automorphism_group(loop_graph(5), bound=4)
