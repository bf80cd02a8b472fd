"""Shared fixtures: scenario models and the derivation corpus."""
from pathlib import Path

import pytest

from dependence_core.models import SDModel, Signature, load_model

ROOT = Path(__file__).parent
FIXTURES = ROOT / "fixtures"
PROOFS = ROOT / "proofs"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def proofs_dir() -> Path:
    return PROOFS


@pytest.fixture
def scenario():
    """Load a fixtures/<name>.sdm model."""
    def load(name: str) -> SDModel:
        return load_model(FIXTURES / f"{name}.sdm")
    return load


@pytest.fixture
def pq() -> Signature:
    return Signature(("p", "q"))


@pytest.fixture
def pqr() -> Signature:
    return Signature(("p", "q", "r"))
