import pytest

from adlvkit import affine_weyl as aw
from adlvkit.root_datum import build_root_datum


@pytest.fixture(scope="session")
def a1():
    return build_root_datum("A1:adj")


@pytest.fixture(scope="session")
def a2():
    return build_root_datum("A2:adj")


@pytest.fixture(scope="session")
def a5gl():
    return build_root_datum("A5:gl")


@pytest.fixture(scope="session")
def c2sc():
    return build_root_datum("C2:sc")


@pytest.fixture(scope="session")
def a4tw():
    return build_root_datum("2A4:sc")


@pytest.fixture(scope="session")
def gl2():
    return build_root_datum("A1:gl")


def length_ball(datum, radius):
    """Word-search oracle: distance from the identity in the affine
    generators, for every element within the given word length."""
    start = aw.identity(datum)
    dist = {start: 0}
    frontier = [start]
    gens = [aw.simple_reflection(datum, i) for i in range(datum.rank + 1)]
    for d in range(1, radius + 1):
        new = []
        for x in frontier:
            for g in gens:
                y = aw.multiply(x, g)
                if y not in dist:
                    dist[y] = d
                    new.append(y)
        frontier = new
    return dist
