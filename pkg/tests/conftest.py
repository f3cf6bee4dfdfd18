import os
from pathlib import Path

import hypothesis
import pytest

from pyperverse.app import app
from pyperverse.complex import SimplicialComplex, parse_complex
from pyperverse.models import Settings

hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=25, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def load_complex(name: str) -> SimplicialComplex:
    return parse_complex((FIXTURES / name).read_text())


@pytest.fixture(scope="session")
def point() -> SimplicialComplex:
    return load_complex("point.json")


@pytest.fixture(scope="session")
def interval() -> SimplicialComplex:
    return load_complex("interval.json")


@pytest.fixture(scope="session")
def triangle() -> SimplicialComplex:
    return load_complex("triangle.json")


@pytest.fixture(scope="session")
def boundary() -> SimplicialComplex:
    return load_complex("tetra_boundary.json")


@pytest.fixture(scope="session")
def tetrahedron() -> SimplicialComplex:
    return load_complex("tetrahedron.json")


@pytest.fixture
def cli(capsys):
    """Run the command line and return the exit code and stdout."""
    app.load_commands()
    app._settings = Settings()
    app._store = None

    def run(*argv):
        code = app.run([str(a) for a in argv])
        return code, capsys.readouterr().out

    return run
