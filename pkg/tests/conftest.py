from pathlib import Path

import numpy as np
import pytest

from tmkit.core.types import ModelDocument
from tmkit.parser import parse_file

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"
CORPUS = sorted(p.stem for p in FIXTURES_DIR.glob("*.tm"))


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture(scope="session")
def corpus() -> dict:
    """Every shipped fixture, parsed once per session."""
    return {name: parse_file(FIXTURES_DIR / f"{name}.tm") for name in CORPUS}


@pytest.fixture
def car(corpus) -> ModelDocument:
    return corpus["car"]


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)
