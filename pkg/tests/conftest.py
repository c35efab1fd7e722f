import pytest

from bbpoly.constructions import cube, fixture, permutahedron, product, simplex
from bbpoly.flow import is_admissible


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run slow stress cases")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow; use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def prism714():
    return fixture("Prism714")


@pytest.fixture(scope="session")
def prism_tall():
    return fixture("PrismTall")


@pytest.fixture(scope="session")
def twice_blown():
    return fixture("TwiceBlownP3")


@pytest.fixture(scope="session")
def pop_simplex3():
    return fixture("PopSimplex3")


@pytest.fixture(scope="session")
def pentagon():
    return fixture("Pentagon2D")


@pytest.fixture(scope="session")
def cube3():
    return cube(3)


@pytest.fixture(scope="session")
def prism_lattice():
    return product(simplex(2), simplex(1))


@pytest.fixture(scope="session")
def perm3():
    return permutahedron(3)


def admissible_box(P, bound, limit=None):
    """Admissible cocharacters with coordinates in [-bound, bound], in a
    fixed lexicographic order; deterministic across runs."""
    from bbpoly.criteria import enumerate_cocharacters

    out = []
    for v in enumerate_cocharacters(P.dim, bound):
        if is_admissible(P, v)[0]:
            out.append(v)
            if limit is not None and len(out) >= limit:
                break
    return out
