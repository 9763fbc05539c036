import pytest

from nexakt.fp import FieldSpec
from nexakt.quivers import PathWord, Quiver, Relation, build_algebra


def linear_a3_j2(p=101):
    """Vertices 0 <- 1 <- 2, all length-2 paths zero."""
    q = Quiver.build(["0", "1", "2"], [("a", "1", "0"), ("b", "2", "1")])
    rel = Relation(((1, PathWord(("b", "a"))),))
    return build_algebra(q, [rel], 2, FieldSpec(p))


def preprojective_a2(p=101):
    """Doubled A_2: arrows a: 1->2 and b: 2->1 with ab = ba = 0."""
    q = Quiver.build(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    rels = [Relation(((1, PathWord(("a", "b"))),)),
            Relation(((1, PathWord(("b", "a"))),))]
    return build_algebra(q, rels, 2, FieldSpec(p))


@pytest.fixture
def a3():
    return linear_a3_j2()


@pytest.fixture
def pi2():
    return preprojective_a2()
