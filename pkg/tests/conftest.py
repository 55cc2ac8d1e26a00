import os
import random
from fractions import Fraction

import pytest

from polyext.geometry import SimplePolygon, pt
from polyext.model import Instance
from polyext.triangulation import validate_triangulation, root_dual, ear_clip

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def suite_seed() -> int:
    return int(os.environ.get("POLYEXT_SEED", "20260826"))


@pytest.fixture
def rng():
    return random.Random(suite_seed())


@pytest.fixture
def unit_square():
    return SimplePolygon.from_points([pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)])


@pytest.fixture
def square_diag(unit_square):
    """Square triangulated by the (p2, p4) diagonal, ear-rooted."""
    return root_dual(validate_triangulation(unit_square, [(1, 3)]))


@pytest.fixture
def hub_instance():
    """C4 plus a hub adjacent to all four cycle vertices."""
    return Instance(n=5,
                    edges=[(0, 1), (1, 2), (2, 3), (0, 3),
                           (0, 4), (1, 4), (2, 4), (3, 4)],
                    cycle=[0, 1, 2, 3])


@pytest.fixture
def l_polygon():
    return SimplePolygon.from_points(
        [pt(0, 0), pt(2, 0), pt(2, 1), pt(1, 1), pt(1, 2), pt(0, 2)])
