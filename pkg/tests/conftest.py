"""
Pytest configuration and fixtures for balkit tests.
"""

import os
import tempfile

import pytest

# Set environment variables before importing balkit modules
# so the certificate cache never touches the user's home directory
os.environ.setdefault("PAPER_KIT_CACHE", tempfile.mkdtemp(prefix="balkit-test-"))
os.environ.setdefault("BALKIT_LOG_LEVEL", "WARNING")

from balkit.services.complex import from_facets
from balkit.services.construct import cross_polytope, cycle, rp2_6, torus7
from balkit.services.homology import homology_engine
from balkit.store import store


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long searches, run with BALKIT_RUN_SLOW=1")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("BALKIT_RUN_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="slow; set BALKIT_RUN_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="function")
def reset_store(tmp_path):
    """
    Point the certificate store at an empty directory for one test.
    Ensures test isolation - cached census results do not leak in.
    """
    previous = store.root
    store.use_root(tmp_path / "cache")
    homology_engine.clear_cache()
    yield store
    store.clear_all()
    store.use_root(previous)


@pytest.fixture
def octahedron():
    return cross_polytope(3)


@pytest.fixture
def cross4():
    return cross_polytope(4)


@pytest.fixture
def square():
    """4-cycle colored 1, 2, 1, 2."""
    return cycle(4)


@pytest.fixture
def torus():
    return torus7()


@pytest.fixture
def projective_plane():
    return rp2_6()


@pytest.fixture
def dangling_edge():
    """Boundary of a tetrahedron with an extra edge hanging off vertex 0."""
    return from_facets([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3], [0, 4]])


@pytest.fixture
def sphere_fixtures():
    """Small balanced spheres used by the identity tests."""
    from balkit.services.construct import s1, s2, sigma
    return [cross_polytope(3), cross_polytope(4), sigma(2), s1(), s2()]
