from pathlib import Path

import pytest

from core.size_guard import SizeGuard
from fingroup import cyclic, inversion_pair, standard_pairs, trivial_matched_pair

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def guard() -> SizeGuard:
    return SizeGuard()


@pytest.fixture
def trivial_c2():
    return trivial_matched_pair(cyclic(2), cyclic(2), name="C2×C2")


@pytest.fixture
def s3_pair():
    """C2 acting on C3 by inversion; the bismash product is S3"""
    return inversion_pair(3)


@pytest.fixture
def library():
    return standard_pairs()
