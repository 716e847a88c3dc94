"""Tests for the tetrahedron classes of the sourced-and-targeted complex in k = 3."""

from fractions import Fraction

import pytest

from gcx.core.canon import mixed_rule
from gcx.core.exactla import SparseMatrix
from gcx.core.graphcore import Skeleton
from gcx.core.grtwitness import (
    A_S_GRAPHS,
    RULE,
    X_S_GRAPHS,
    Section,
    alpha_matches,
    big_gamma,
    build_bases,
    check_alpha_nontrivial,
    derivation,
    f_failures,
    hat_st_member,
    lift_and_render,
    mixed_chain,
    mixed_classes,
    mixed_degree,
    mixed_differential,
    mixed_graph,
    reference_matrix,
    reverse,
    run_grt,
    section_matrix,
    sign_normalization,
    to_directed,
    z_d_killed,
)
from gcx.core.models import FieldChoice
from gcx.errors import InvalidGraphError


@pytest.fixture(scope="module")
def side_s():
    return Section.build("s")


@pytest.fixture(scope="module")
def side_t():
    return Section.build("t")


class TestMixedGraphs:
    """Tests for building mixed graphs from letter notation."""

    def test_letters_in_order(self):
        """Letters t, m, l, r become 1..4; solid edges come first."""
        g = mixed_graph("t>m m>l r>m l>r | l-t r-t")
        assert g.n == 4
        assert g.edges == ((1, 2), (2, 3), (4, 2), (3, 4), (3, 1), (4, 1))
        assert g.kinds == ("solid",) * 4 + ("s", "s")

    def test_three_letters(self):
        """Unused letters are skipped."""
        g = mixed_graph("l>m m>r | l-r l-m m-r")
        assert g.n == 3
        assert g.edges[0] == (2, 1)

    def test_kind_per_edge(self):
        """Dotted edges may get individual kinds."""
        g = mixed_graph("t>m | m-t", dotted=["wavy"])
        assert g.kinds == ("solid", "wavy")

    def test_kind_count(self):
        """One kind per dotted edge."""
        with pytest.raises(InvalidGraphError):
            mixed_graph("t>m | m-t", dotted=["s", "t"])

    def test_reverse_is_an_involution(self):
        """Reversing twice gives the graph back, with s and t swapped once."""
        g = mixed_graph("t>m m>l r>m l>r | l-t r-t")
        assert reverse(g).kinds[-1] == "t"
        assert reverse(reverse(g)) == g


class TestReducedQuotient:
    """Tests for the subcomplex divided out by the reduced complex."""

    @pytest.mark.parametrize(
        "kinds,killed",
        [
            (("s", "t"), True),
            (("s", "wavy"), True),
            (("wavy", "wavy"), True),
            (("s", "s"), False),
            (("wavy", "solid"), False),
            (("t", "t"), False),
        ],
    )
    def test_z_d_killed(self, kinds, killed):
        """Mixing s with t, dotted with wavy, or two wavy edges."""
        g = Skeleton(2, ((1, 2), (1, 2)), kinds)
        assert z_d_killed(g) == killed

    def test_hat_st(self):
        """A graph with s-edges needs a target, where s-edges count as incoming."""
        assert hat_st_member(mixed_graph("m>l r>m l>r | m-t l-t r-t"))
        assert not hat_st_member(mixed_graph("t>m m>l r>m l>r | l-t r-t"))


class TestBases:
    """Tests for the degree-0 and degree -1 graphs of both sides."""

    def test_sizes(self):
        """Ten graphs in A, eleven in X."""
        a_graphs, x_graphs = build_bases("s")
        assert len(a_graphs) == len(A_S_GRAPHS) == 10
        assert len(x_graphs) == len(X_S_GRAPHS) == 11

    def test_degrees(self, side_s, side_t):
        """A sits in degree 0, X and gamma in degree -1."""
        for side in (side_s, side_t):
            assert all(mixed_degree(g) == 0 for g in side.a_graphs)
            assert all(mixed_degree(g) == -1 for g in side.x_graphs)
            assert mixed_degree(side.gamma) == -1

    def test_a_graphs_shape(self, side_s):
        """Every a_i has three solid and three s-dotted edges."""
        for g in side_s.a_graphs:
            assert g.kinds.count("solid") == 3
            assert g.kinds.count("s") == 3

    def test_distinct_classes(self, side_s):
        """No two basis graphs are isomorphic."""
        keys = [mixed_chain(g).keys()[0] for g in side_s.a_graphs + side_s.x_graphs]
        assert len(set(keys)) == 21

    def test_t_side_is_reversed(self, side_s, side_t):
        """The t side is the s side with every edge reversed."""
        assert side_t.a_graphs == tuple(reverse(g) for g in side_s.a_graphs)
        assert all("t" in g.kinds and "s" not in g.kinds for g in side_t.a_graphs)

    def test_rule(self):
        """The mixed rule for k = 3."""
        assert RULE == mixed_rule(3)


class TestDifferential:
    """Tests for the mixed differential."""

    def test_degree_of_terms(self, side_s):
        """d raises the mixed degree by one."""
        for graph_class, _ in mixed_differential(mixed_chain(side_s.gamma)).items():
            assert mixed_degree(graph_class.skeleton) == 0

    @pytest.mark.parametrize("reduced", [True, False])
    def test_d_squared(self, side_s, reduced):
        """d^2 = 0 on the basis graphs."""
        for g in side_s.a_graphs + side_s.x_graphs + (side_s.gamma,):
            once = mixed_differential(mixed_chain(g), reduced=reduced)
            assert not mixed_differential(once, reduced=reduced)

    @pytest.mark.parametrize("reduced", [True, False])
    def test_d_squared_four_vertices(self, reduced):
        """d^2 = 0 on every mixed class with 4 vertices and 6 edges."""
        classes = mixed_classes(4, 6, reduced=reduced)
        assert classes
        for graph_class in classes:
            once = mixed_differential(mixed_chain(graph_class.skeleton), reduced=reduced)
            assert not mixed_differential(once, reduced=reduced)

    def test_alpha_closed(self, side_s, side_t):
        """alpha = d(gamma) is a nonzero cycle on both sides."""
        for side in (side_s, side_t):
            alpha = side.alpha()
            assert alpha
            assert not mixed_differential(alpha)


class TestMatrix:
    """Tests for the 10 x 11 matrix and its comparison with the reference one."""

    def test_shape(self):
        """Rows are A, columns X."""
        matrix = section_matrix("s")
        assert (matrix.rows, matrix.cols) == (10, 11)

    def test_matches_reference_up_to_signs(self):
        """Row and column signs turn our matrix into the reference one."""
        matches, row_signs, col_signs = sign_normalization(section_matrix("s"), reference_matrix())
        assert matches
        assert set(row_signs) <= {1, -1}
        assert len(col_signs) == 11

    def test_sign_normalization_finds_signs(self):
        """A negated row is recovered."""
        ours = SparseMatrix.from_dense([[1, 2], [0, 3]])
        theirs = SparseMatrix.from_dense([[-1, -2], [0, 3]])
        assert sign_normalization(ours, theirs) == (True, [-1, 1], [1, 1])

    def test_sign_normalization_rejects(self):
        """Signs that no r_i c_j explains are reported."""
        ours = SparseMatrix.from_dense([[1, 1], [1, 1]])
        theirs = SparseMatrix.from_dense([[1, 1], [1, -1]])
        assert not sign_normalization(ours, theirs)[0]

    def test_alpha_matches_global_sign(self):
        """The expansion may differ by one overall sign."""
        signs = [1] * 10
        reference = [Fraction(v) for v in (1, 0, 0, 0, 1, 0, 1, 0, 0, -1)]
        assert alpha_matches(reference, signs)
        assert alpha_matches([-v for v in reference], signs)
        assert not alpha_matches([Fraction(0)] * 10, signs)


class TestNontriviality:
    """Tests for the non-triviality of both classes."""

    def test_alpha_not_exact(self):
        """Both alphas and their difference stay out of the image."""
        verdicts = check_alpha_nontrivial()
        assert verdicts.nontrivial
        support = [i + 1 for i, c in enumerate(verdicts.vector_s) if c]
        assert support == [1, 5, 7, 10]

    def test_mod_p_agrees(self):
        """The same verdicts modulo the prime."""
        assert check_alpha_nontrivial(prime=32003).nontrivial


class TestLift:
    """Tests for the lift to dGC^st."""

    def test_expansion_signs(self, side_s):
        """Gamma is gamma minus both one-swap terms plus the two-swap term."""
        expansion = big_gamma(side_s)
        g = side_s.gamma
        signs = []
        for kinds in (("s", "s"), ("t", "s"), ("s", "t"), ("t", "t")):
            term = Skeleton(g.n, g.edges, g.kinds[:4] + kinds)
            signs.append(expansion.coefficient_of(term, RULE))
        assert len(expansion) == 4
        assert signs == [1, -1, -1, 1]

    def test_solid_graph_maps_to_itself(self):
        """f leaves a graph without dotted edges alone."""
        g = Skeleton(2, ((1, 2), (1, 2), (2, 1)))
        assert len(to_directed(g)) == 1

    def test_wavy_edge_gives_two_terms(self):
        """A wavy edge becomes a difference of two zigzags."""
        g = Skeleton(2, ((1, 2), (1, 2), (2, 1)), ("solid", "solid", "wavy"))
        chain = to_directed(g)
        assert all(graph_class.skeleton.n == 4 for graph_class, _ in chain.items())

    def test_f_commutes_on_bases(self, side_s):
        """f(d g) = d(f g) before the quotient."""
        assert f_failures(side_s.a_graphs + side_s.x_graphs + (side_s.gamma,)) == []

    def test_derivation_summands(self, side_s):
        """One summand per a_i in the support of alpha."""
        template = derivation(side_s, 2, 1)
        assert template.name == "D1"
        assert (template.m, template.n) == (2, 1)
        assert len(template.summands) == 4

    @pytest.mark.slow
    @pytest.mark.parametrize("kind,name", [("s", "D1"), ("t", "D2")])
    def test_lift_is_a_cycle(self, kind, name):
        """d(f(Gamma)) is a nonzero closed element of dGC^st containing f(alpha)."""
        lifted, template = lift_and_render(kind)
        assert lifted.cycle
        assert lifted.closed
        assert lifted.in_st
        assert lifted.rest_in_st
        assert lifted.contains_alpha
        assert lifted.ok
        assert template.name == name


class TestRunGrt:
    """Tests for the whole computation."""

    @pytest.mark.slow
    def test_report(self):
        """Everything checks out and the derivations are attached."""
        report = run_grt(FieldChoice.RATIONAL, emit_derivations=True)
        assert report.passed
        assert report.matrix_matches
        assert set(report.alpha_s) == {"a1", "a5", "a7", "a10"}
        assert report.lift_s_ok and report.lift_t_ok
        assert [t.name for t in report.derivations] == ["D1", "D2"]
        assert report.matrix_sms.startswith("10 11 M\n")

    def test_report_without_lifts(self):
        """Skipping the lifts leaves their verdicts unset."""
        report = run_grt(lifts=False)
        assert report.lift_s_ok is None
        assert report.matrix_matches
        assert report.passed
        assert report.rank == report.rank_mod_p
