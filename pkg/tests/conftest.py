import random

import pytest
from hypothesis import settings

from hpdraw.geometry import Point
from hpdraw.model import FlatVisibilityRep, Graph

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def triangle_vr() -> FlatVisibilityRep:
    # a: bottom row [1,3]; b, c: row 2 at columns 1 and 3
    g = Graph(3, ((0, 1), (0, 2), (1, 2)))
    return FlatVisibilityRep(
        g,
        [(1, 1, 3), (2, 1, 1), (2, 3, 3)],
        [((1, 1), (1, 2)), ((3, 1), (3, 2)), ((1, 2), (3, 2))],
    )


def random_cfg(seed, n=(2, 40), h=(1, 10)):
    from hpdraw.generators import GenConfig

    r = random.Random(seed)
    return GenConfig(seed=seed, n=r.randint(*n), h=r.randint(*h))


@pytest.fixture
def tri():
    return triangle_vr()


def P(x, y):
    return Point(x, y)
