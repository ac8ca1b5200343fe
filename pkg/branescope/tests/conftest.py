import pytest

from branescope.polytope import from_vertices
from branescope.services.hypersurface_service import HypersurfaceService
from branescope.settings import BranescopeSettings
from branescope.toric import normal_fan

P2_VERTICES = [(-1, -1), (2, -1), (-1, 2)]
SQUARE_VERTICES = [(-1, -1), (1, -1), (1, 1), (-1, 1)]
P3_VERTICES = [(-1, -1, -1), (3, -1, -1), (-1, 3, -1), (-1, -1, 3)]
OCTAHEDRON_VERTICES = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]


@pytest.fixture(autouse=True)
def _clean_environment(monkeypatch):
    for name in ("BRANESCOPE_SEED", "BRANESCOPE_OUTPUT_FORMAT", "BRANESCOPE_LOG_LEVEL", "BRANESCOPE_PRIME"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture(scope="session")
def p2():
    return from_vertices(P2_VERTICES, "p2")


@pytest.fixture(scope="session")
def square():
    return from_vertices(SQUARE_VERTICES, "square")


@pytest.fixture(scope="session")
def p3():
    return from_vertices(P3_VERTICES, "p3")


@pytest.fixture(scope="session")
def octahedron():
    return from_vertices(OCTAHEDRON_VERTICES, "octahedron")


@pytest.fixture(scope="session")
def p2_fan(p2):
    return normal_fan(p2)


@pytest.fixture(scope="session")
def square_fan(square):
    return normal_fan(square)


@pytest.fixture(scope="session")
def p3_fan(p3):
    return normal_fan(p3)


@pytest.fixture(scope="session")
def service():
    return HypersurfaceService(BranescopeSettings(_env_file=None))


@pytest.fixture(scope="session")
def elliptic(p2, service):
    return service.create_model(p2)


@pytest.fixture(scope="session")
def square_curve(square, service):
    return service.create_model(square)


@pytest.fixture(scope="session")
def quartic(p3, service):
    return service.create_model(p3)
