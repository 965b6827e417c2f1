import functools

import pytest

from skewcodes.galois import Level, make_tower


@functools.lru_cache(maxsize=None)
def tower(p, a, m):
    return make_tower(p, a, m)


def level_values(T, level):
    return [v for v in range(T.order) if T.in_level(v, level)]


@pytest.fixture
def f4():
    return tower(2, 1, 2)


@pytest.fixture
def f16():
    return tower(2, 1, 4)


@pytest.fixture
def f4_skew():
    """F_4[X; sigma] as the middle level of F_4 with a = 2."""
    return tower(2, 2, 2)


__all__ = ["tower", "level_values", "Level"]
