import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from blockdesigns.catalog import catalog_names
from blockdesigns.generators import (
    affine_hyperplane_design,
    sub_factorization_embedding,
    trivial_design,
)
from blockdesigns.reproduce import reproduce_entry


@pytest.fixture(scope="session")
def repro():
    """Full reproduction reports for every catalog entry, computed once."""
    return {name: reproduce_entry(name) for name in catalog_names()}


@pytest.fixture(scope="session")
def ag23():
    return affine_hyperplane_design(2, 3)


@pytest.fixture(scope="session")
def ag28():
    return affine_hyperplane_design(2, 8)


@pytest.fixture(scope="session")
def ag32():
    return affine_hyperplane_design(3, 2)


@pytest.fixture(scope="session")
def k8_subfac():
    return sub_factorization_embedding(2)


@pytest.fixture(scope="session")
def trivial_4_2():
    return trivial_design(4, 2)
