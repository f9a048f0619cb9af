import random

import pytest

from thompson.group_tools.numerics import ONE, ZERO, PLMap, validate_map


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240917)


@pytest.fixture(params=[1, 7, 42])
def seeded_rng(request) -> random.Random:
    return random.Random(request.param)


def assert_valid_map(f: PLMap) -> None:
    """Проверка инвариантов PLMap после каждой операции."""
    validate_map(f)
    assert f.breakpoints[0] == (ZERO, ZERO)
    assert f.breakpoints[-1] == (ONE, ONE)
