#conftest.py
import sys
from pathlib import Path

import pytest

BACKEND_ROOT = Path(__file__).resolve().parents[1]
if str(BACKEND_ROOT) not in sys.path:
    sys.path.insert(0, str(BACKEND_ROOT))

from analysis.face_lattice import face_lattice
from analysis.model_builder import k_interaction_statistics, ngon_statistics
from analysis.sample_space import SampleSpace


@pytest.fixture(autouse=True)
def _sequential_defaults(monkeypatch):
    """Tests run single-threaded with the shipped guards, whatever the local .env says."""
    monkeypatch.setenv("SSET_KIT_THREADS", "1")
    monkeypatch.setenv("SSET_KIT_ENUMERATION_GUARD", "16")
    monkeypatch.setenv("SSET_KIT_SEED", "0")


@pytest.fixture(scope="session")
def cube3():
    return SampleSpace.binary(3)


@pytest.fixture(scope="session")
def cube3_e1(cube3):
    """Independence model on {0,1}^3: the 3-cube."""
    return k_interaction_statistics(cube3, 1)


@pytest.fixture(scope="session")
def cube3_e2(cube3):
    """Pair interactions on {0,1}^3: eight points with a single affine relation."""
    return k_interaction_statistics(cube3, 2)


@pytest.fixture(scope="session")
def cube4_e2():
    return k_interaction_statistics(SampleSpace.binary(4), 2)


@pytest.fixture(scope="session")
def cube4_e2_lattice(cube4_e2):
    return face_lattice(cube4_e2)


@pytest.fixture(scope="session")
def pentagon():
    return ngon_statistics(5)


@pytest.fixture(scope="session")
def pentagon_lattice(pentagon):
    return face_lattice(pentagon)
