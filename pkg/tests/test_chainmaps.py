"""Tests for the maps between complexes and the chain-map verifier."""

import pytest

from gcx.core.canon import directed_rule
from gcx.core.chainmaps import (
    ConeElement,
    cone_differential,
    orient_sum,
    project_sourced,
    project_targeted,
    verify_chain_map,
)
from gcx.core.gcomplex import LinearCombination
from gcx.core.graphcore import Skeleton
from gcx.core.models import ChainMapName


class TestOrientSum:
    """Tests for the map from undirected to directed graphs."""

    def test_single_edge_even(self):
        """Both directions of an edge are the same class; they add for even k."""
        chain = orient_sum(Skeleton(2, ((1, 2),)), 2)
        assert len(chain) == 1
        assert chain.items()[0][1] == 2

    def test_skip_identity(self, k4):
        """Leaving out the stored orientation changes the sum."""
        assert orient_sum(k4, 2) != orient_sum(k4, 2, skip_identity=True)


class TestProjections:
    """Tests for the quotient projections of the cone."""

    def test_sourced_dropped(self, k4, cycle3):
        """P_s kills graphs with a source, P_t graphs with a target."""
        rule = directed_rule(3)
        chain = LinearCombination.of(k4, rule) + LinearCombination.of(cycle3, rule)
        assert len(project_sourced(chain)) == 1
        assert len(project_targeted(chain)) == 1

    def test_cone_element_truth(self):
        """An empty cone element is falsy."""
        assert not ConeElement()

    def test_cone_d_squared_on_theta(self):
        """d_c(d_c(x)) = 0 on a graph of every slot."""
        theta = Skeleton(2, ((1, 2), (1, 2), (2, 1)))
        chain = LinearCombination.of(theta, directed_rule(3))
        for x in (ConeElement(gamma=chain), ConeElement(gamma1=chain), ConeElement(gamma2=chain)):
            assert not cone_differential(cone_differential(x, 3), 3)


class TestVerifyChainMap:
    """Tests for the termwise chain-map checks."""

    @pytest.mark.parametrize(
        "name",
        [
            ChainMapName.F,
            ChainMapName.B,
            ChainMapName.FS,
            ChainMapName.FT,
            ChainMapName.CONE_D2,
            ChainMapName.ST_EXACTNESS,
        ],
    )
    def test_maps_commute(self, name):
        """The maps commute with d for k = 3 up to 3 vertices and 5 edges."""
        report = verify_chain_map(name, k=3, v_max=3, e_max=5, workers=1)
        assert report.checked > 0
        assert report.passed, report.witnesses

    @pytest.mark.parametrize("name", [ChainMapName.A, ChainMapName.A_PLUS_B])
    def test_cone_map_commutes(self, name):
        """a and a + b are chain maps from the cone up to 3 vertices and 5 edges."""
        report = verify_chain_map(name, k=3, v_max=3, e_max=5, workers=1)
        assert report.checked > 0
        assert report.passed, report.witnesses

    @pytest.mark.parametrize("name", [ChainMapName.B_CORRUPT, ChainMapName.F_CORRUPT])
    def test_negative_controls_fail(self, name):
        """Corrupted maps are caught with witnesses."""
        report = verify_chain_map(name, k=3, v_max=3, e_max=3, workers=1)
        assert not report.passed
        assert report.witnesses

    def test_name_string(self):
        """Names can be given as strings."""
        report = verify_chain_map("f", k=2, v_max=2, e_max=3, workers=1)
        assert report.name == "f"
        assert report.k == 2
