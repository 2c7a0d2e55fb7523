import pytest

from varchenko.faces import enumerate_faces
from varchenko.files import bundled_text, parse_arrangement

BUNDLED = ("r1", "crossing", "generic3", "parallel2", "two_pairs", "r3")


@pytest.fixture(scope="session")
def complexes():
    """One face complex per bundled arrangement, built once per session."""
    return {
        name: enumerate_faces(parse_arrangement(bundled_text(f"{name}.arr")))
        for name in BUNDLED
    }


@pytest.fixture(scope="session")
def r1(complexes):
    return complexes["r1"]


@pytest.fixture(scope="session")
def crossing(complexes):
    return complexes["crossing"]


@pytest.fixture(scope="session")
def generic3(complexes):
    return complexes["generic3"]


@pytest.fixture(scope="session")
def parallel2(complexes):
    return complexes["parallel2"]


@pytest.fixture(scope="session")
def two_pairs(complexes):
    return complexes["two_pairs"]


@pytest.fixture(scope="session")
def r3(complexes):
    return complexes["r3"]
