"""Tests for graded bases, differential matrices and cohomology tables."""

from pathlib import Path

import pytest

from gcx.core import homology
from gcx.core.exactla import PRIME, parse_sms
from gcx.core.gcomplex import ComplexFlavor
from gcx.core.homology import (
    build_basis,
    cohomology_dims,
    differential_matrix,
    level_classes,
    loop_graph_report,
    parallel_map,
    sms_filename,
    window_degrees,
)
from gcx.core.models import FieldChoice
from gcx.errors import BoundExceededError, EmptyDomainError


@pytest.fixture
def gc2():
    return ComplexFlavor.parse("GC", 2)


class TestBases:
    """Tests for graded bases."""

    def test_tetrahedron_degree(self, gc2):
        """GC_2 in loop number 3 and degree 0 is spanned by the tetrahedron."""
        basis = build_basis(gc2, 3, 0)
        assert (basis.v, basis.e) == (4, 6)
        assert len(basis) == 1

    def test_multiedges_vanish_for_even_k(self, gc2):
        """Every trivalent graph with 3 vertices and 5 edges has a double edge."""
        assert level_classes(gc2, 3, 5) == ()

    def test_outside_window(self, gc2):
        """A bidegree beyond the window is refused."""
        with pytest.raises(BoundExceededError):
            build_basis(gc2, 3, 0, v_max=3)

    def test_no_vertices(self, gc2):
        """Negative vertex counts give an empty level."""
        assert level_classes(gc2, 0, 2) == ()

    def test_window_degrees_cut_for_gc(self, gc2):
        """GC stops at 2b-2 vertices."""
        assert window_degrees(gc2, 3, 6, 9) == [-3, -2, -1, 0]


class TestMatrices:
    """Tests for differential matrices."""

    def test_theta_to_next_level(self):
        """The matrix has one column per source class and one row per target class."""
        flavor = ComplexFlavor.parse("dGC", 3)
        source = build_basis(flavor, 2, -3)
        target = build_basis(flavor, 2, -2)
        matrix = differential_matrix(source, target)
        assert (matrix.rows, matrix.cols) == (len(target), len(source))

    def test_sms_filename(self):
        """Quotient slashes are escaped."""
        flavor = ComplexFlavor.parse("dGC/s", 3)
        assert sms_filename(flavor, 2, -3) == "dGC%s_k3_b2_d-3.sms"


class TestCohomology:
    """Tests for cohomology tables."""

    def test_gc2_tetrahedron_class(self, gc2):
        """GC_2 at three loops has one class in degree 0."""
        report = cohomology_dims(gc2, 3, workers=1)
        assert report.dim_h(0) == 1
        assert report.rows[-1].degree == 0

    def test_mod_p_flags_lower_bounds(self, gc2):
        """Ranks mod p are marked as lower bounds."""
        report = cohomology_dims(gc2, 3, prime=PRIME, workers=1)
        assert report.lower_bound_ranks
        assert report.field == FieldChoice.GF32003
        assert report.dim_h(0) == 1

    def test_empty_range(self, gc2):
        """A degree range outside the window is an error."""
        with pytest.raises(EmptyDomainError):
            cohomology_dims(gc2, 3, degree_min=5, workers=1)

    def test_degree_above_window_is_bounded(self, gc2, monkeypatch):
        """The bases, including the one above the window, are built within one step of it."""
        calls = []

        def recording_build_basis(flavor, b, d, v_max=None, e_max=None):
            calls.append((d, v_max, e_max))
            return build_basis(flavor, b, d, v_max, e_max)

        monkeypatch.setattr(homology, "build_basis", recording_build_basis)
        report = cohomology_dims(gc2, 3, v_max=3, e_max=5, workers=1)
        assert [row.degree for row in report.rows] == [-3, -2, -1]
        assert {(v_max, e_max) for _, v_max, e_max in calls} == {(4, 6)}
        assert max(d for d, _, _ in calls) == 0

    def test_euler_characteristic(self, gc2):
        """Each row satisfies dim H = dim C - rank out - rank in."""
        for row in cohomology_dims(gc2, 3, workers=1).rows:
            assert row.dim_h == row.dim - row.rank_out - row.rank_in

    @pytest.mark.slow
    def test_dgc3_two_loops(self, tmp_path):
        """dGC_3 at two loops has nothing in degrees -2..0."""
        flavor = ComplexFlavor.parse("dGC", 3)
        report = cohomology_dims(
            flavor, 2, degree_min=-2, degree_max=0, workers=1, sms_dir=str(tmp_path)
        )
        assert [row.degree for row in report.rows] == [-2, -1, 0]
        assert all(row.dim_h == 0 for row in report.rows)
        for path in report.sms_files:
            parse_sms(Path(path).read_text())


class TestLoopGraphs:
    """Tests for the bivalent complex."""

    @pytest.mark.parametrize("k,residue", [(2, 1), (3, 3)])
    def test_classes(self, k, residue):
        """A loop graph carries a class exactly when it is nonzero."""
        report = loop_graph_report(k, 9)
        for row in report.rows:
            assert row.nonzero == (row.i % 4 == residue)
            assert row.dim_h == int(row.nonzero)
            assert row.degree == row.i - k


class TestParallelMap:
    """Tests for the worker pool helper."""

    def test_serial_keeps_order(self):
        """Small inputs run in-process, in order."""
        assert parallel_map(abs, [-3, 1, -2], workers=4) == [3, 1, 2]
