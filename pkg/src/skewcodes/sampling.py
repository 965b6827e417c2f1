"""Seeded random instances for property checks and the verification suite."""

from .galois import Level
from .nrscode import NrsCode
from .skewpoly import SkewPoly
from .smithform import SkewMatrix
from .sqccode import SqcCode


def level_values(tower, level):
    return [v for v in range(tower.order) if tower.in_level(v, level)]


def random_skewpoly(rng, tower, max_degree, level=Level.MIDDLE, values=None):
    values = level_values(tower, level) if values is None else values
    n = rng.randint(0, max_degree + 1)
    return SkewPoly._make(tower, [rng.choice(values) for _ in range(n)], Level.parse(level))


def random_matrix(rng, tower, max_dim=4, max_degree=3, level=Level.MIDDLE):
    values = level_values(tower, level)
    rows, cols = rng.randint(1, max_dim), rng.randint(1, max_dim)
    grid = [[random_skewpoly(rng, tower, max_degree, level, values) for _ in range(cols)]
            for _ in range(rows)]
    return SkewMatrix(tower, rows, cols, grid, level)


def random_nrs_code(rng, tower, max_length, max_k=None):
    """Distinct random evaluation points; ``k`` up to ``max_k`` (default length * m)."""
    n = rng.randint(1, min(max_length, tower.order))
    points = rng.sample(range(tower.order), n)
    top = n * tower.m if max_k is None else max_k
    k = rng.randint(1, top)
    return NrsCode(tower, tuple(tower.from_value(v) for v in points), k)


def random_sqc_code(rng, tower, n, ell, max_generators=3):
    values = list(range(tower.order))
    gens = []
    for _ in range(rng.randint(0, max_generators)):
        gens.append(tuple(SkewPoly._make(tower, [rng.choice(values) for _ in range(n)], Level.TOP)
                          for _ in range(ell)))
    return SqcCode(tower, n, ell, tuple(gens))
