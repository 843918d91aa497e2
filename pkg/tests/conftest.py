"""Shared pytest fixtures for the scarpis test suite."""
import os

import numpy as np
import pytest

from scarpis.construction.paley import paley_hadamard
from scarpis.field.gf import FieldSpec, field_make
from scarpis.matrix.sign import SignMatrix, from_signs, normalize


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep SCARPIS_* variables from the calling shell out of every test."""
    for name in list(os.environ):
        if name.upper().startswith("SCARPIS_"):
            monkeypatch.delenv(name)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so randomized tests are reproducible."""
    return np.random.default_rng(20240917)


@pytest.fixture
def h2() -> SignMatrix:
    """Order-2 Hadamard matrix [[+, +], [+, -]]."""
    return from_signs([[1, 1], [1, -1]])


@pytest.fixture
def gf3() -> FieldSpec:
    return field_make(3, 1)


@pytest.fixture
def gf7() -> FieldSpec:
    return field_make(7, 1)


@pytest.fixture
def gf27() -> FieldSpec:
    return field_make(3, 3)


@pytest.fixture
def paley4(gf3: FieldSpec) -> SignMatrix:
    """Paley matrix of order 4 (not normalized)."""
    return paley_hadamard(gf3)


@pytest.fixture
def h4_normalized(paley4: SignMatrix) -> SignMatrix:
    """Normalized order-4 Hadamard: ++++ / +-+- / +--+ / ++--."""
    return normalize(paley4)
