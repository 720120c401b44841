import pytest

from pgaw.geometry import build_geometry
from pgaw.operators import build_geometry_operators
from pgaw.rings import QuadRing

_CACHE = {}


def get_geometry(q, h, k):
    key = ("geom", q, h, k)
    if key not in _CACHE:
        _CACHE[key] = build_geometry(q, h, k)
    return _CACHE[key]


def get_ops(q, h, k):
    key = ("ops", q, h, k)
    if key not in _CACHE:
        _CACHE[key] = build_geometry_operators(get_geometry(q, h, k), QuadRing(q))
    return _CACHE[key]


@pytest.fixture(scope="session")
def geometry_cache():
    """Callable (q, h, k) -> GeometryIndex, shared across the whole session."""
    return get_geometry


@pytest.fixture(scope="session")
def ops_cache():
    """Callable (q, h, k) -> OperatorSet over the cached geometry."""
    return get_ops
