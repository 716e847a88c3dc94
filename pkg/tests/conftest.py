"""Shared graphs for the test suite."""

import pytest

from gcx.core.graphcore import Skeleton


@pytest.fixture
def cycle3():
    """Directed 3-cycle 1->2->3->1."""
    return Skeleton(3, ((1, 2), (2, 3), (3, 1)))


@pytest.fixture
def transitive3():
    """Triangle with a source 1 and a target 3; no non-trivial automorphism."""
    return Skeleton(3, ((1, 2), (1, 3), (2, 3)))


@pytest.fixture
def theta():
    """Two vertices joined by three parallel edges."""
    return Skeleton(2, ((1, 2), (1, 2), (1, 2)))


@pytest.fixture
def k4():
    """The tetrahedron with every edge pointing to the larger label."""
    return Skeleton(4, ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)))
