from __future__ import annotations

import pytest

from matroid_oseq.complexes import from_circuits, from_facets, simplex_boundary


@pytest.fixture
def example_complex():
    return from_circuits(6, [[1, 2, 5, 6], [1, 2, 3, 4], [3, 4, 5, 6]])


@pytest.fixture
def square():
    return from_facets(4, [[1, 2], [2, 3], [3, 4], [1, 4]])


@pytest.fixture
def triangle():
    return simplex_boundary(3)


@pytest.fixture
def octahedron():
    return from_circuits(6, [[1, 2], [3, 4], [5, 6]])
