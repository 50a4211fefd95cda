import pytest
from hypothesis import settings

settings.register_profile("det", derandomize=True, max_examples=60)
settings.load_profile("det")

from facering import (
    Balancing,
    FieldSpec,
    barycentric_subdivision,
    build_from_facets,
    build_from_poset,
)

RATIONAL = FieldSpec.rational()
GF2 = FieldSpec.gf(2)
GF5 = FieldSpec.gf(5)


@pytest.fixture(scope="session")
def rational():
    return RATIONAL


@pytest.fixture(scope="session")
def gf2():
    return GF2


@pytest.fixture(scope="session")
def gf5():
    return GF5


@pytest.fixture(scope="session", params=["rational", "gf:2", "gf:5"])
def any_field(request):
    return FieldSpec.parse(request.param)


def make_double_edge():
    # two vertices joined by a pair of parallel edges (a circle)
    return build_from_poset([
        {"id": "v"}, {"id": "w"},
        {"id": "alpha", "covers": ["v", "w"]},
        {"id": "beta", "covers": ["v", "w"]},
    ])


def make_disk():
    # a balanced 2-disk: two label-1 vertices s,t; u and v carry labels 2,3
    return build_from_poset([
        {"id": "s"}, {"id": "t"}, {"id": "u"}, {"id": "v"},
        {"id": "alpha", "covers": ["s", "u"]},
        {"id": "beta", "covers": ["t", "u"]},
        {"id": "gamma", "covers": ["s", "v"]},
        {"id": "delta", "covers": ["t", "v"]},
        {"id": "epsilon", "covers": ["u", "v"]},
        {"id": "zeta", "covers": ["u", "v"]},
        {"id": "P", "covers": ["alpha", "gamma", "epsilon"]},
        {"id": "Q", "covers": ["beta", "delta", "epsilon"]},
        {"id": "R", "covers": ["beta", "delta", "zeta"]},
    ])


@pytest.fixture(scope="session")
def double_edge():
    return make_double_edge()


@pytest.fixture(scope="session")
def double_edge_balancing(double_edge):
    return Balancing(double_edge, {"v": 1, "w": 2})


@pytest.fixture(scope="session")
def double_edge_sd(double_edge):
    return barycentric_subdivision(double_edge)


@pytest.fixture(scope="session")
def disk():
    return make_disk()


@pytest.fixture(scope="session")
def disk_balancing(disk):
    return Balancing(disk, {"s": 1, "t": 1, "u": 2, "v": 3})


@pytest.fixture(scope="session")
def disjoint_edges():
    return build_from_facets([["a", "c"], ["b", "d"]])


@pytest.fixture(scope="session")
def disjoint_edges_balancing(disjoint_edges):
    return Balancing(disjoint_edges, {"a": 1, "b": 1, "c": 2, "d": 2})


@pytest.fixture(scope="session")
def triangle():
    return build_from_facets([["0", "1", "2"]])


@pytest.fixture(scope="session")
def triangle_sd(triangle):
    return barycentric_subdivision(triangle)
