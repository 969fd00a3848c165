import pathlib
import sys

import pytest

# Ensure project root on sys.path so tests can import project modules
ROOT = pathlib.Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from skeinlab.algebra.model import ModelContext  # noqa: E402
from skeinlab.algebra.permgroup import cyclic_group, symmetric_group, trivial_group  # noqa: E402
from skeinlab.petersen.kneser import KneserModel, build_kneser  # noqa: E402

CORPUS = ROOT / "corpus"


@pytest.fixture(scope="session")
def petersen() -> KneserModel:
    """The Kneser graph KG(5,2) with its S5 action, built once per session."""
    return build_kneser()


@pytest.fixture(scope="session")
def petersen_ctx(petersen: KneserModel) -> ModelContext:
    return petersen.ctx


@pytest.fixture(scope="session")
def small_contexts():
    """The small builtin groups the relation suite is run against."""
    return {
        "trivial:3": ModelContext(trivial_group(3), "trivial:3"),
        "sym:3": ModelContext(symmetric_group(3), "sym:3"),
        "cyclic:3": ModelContext(cyclic_group(3), "cyclic:3"),
        "cyclic:4": ModelContext(cyclic_group(4), "cyclic:4"),
        "sym:4": ModelContext(symmetric_group(4), "sym:4"),
    }


@pytest.fixture(scope="session")
def corpus_dir() -> pathlib.Path:
    return CORPUS
