import itertools
import math

import pytest

from affsemi.semigroup import detect_extremal_rays


def numerical(*gens):
    return detect_extremal_rays([[g] for g in gens], 1)


def numerical_triples(limit):
    """All minimally generated numerical semigroups with 2 or 3 generators <= limit."""
    out = []
    for k in (2, 3):
        for gs in itertools.combinations(range(2, limit + 1), k):
            if math.gcd(*gs) != 1:
                continue
            try:
                out.append(numerical(*gs))
            except Exception:
                continue  # not minimal
    return out


PLANE = [[0, 2], [2, 1], [0, 3], [1, 2]]


@pytest.fixture
def plane():
    return detect_extremal_rays(PLANE, 2)


@pytest.fixture
def s469():
    return numerical(4, 6, 9)
