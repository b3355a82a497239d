import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nagata.cremona import (
    QuadraticStep,
    cremona_reduce,
    is_minus_one_class,
    is_standard,
    pull_back,
    quadratic_transform,
    three_largest,
)
from nagata.errors import NagataError
from nagata.lattice import ClassVector, arithmetic_genus, intersect, k_pairing, virtual_dimension

C = ClassVector.of


def with_triple(lo=-20, hi=20):
    def build(k):
        cls = st.builds(ClassVector, st.integers(lo, hi), st.lists(st.integers(lo, hi), min_size=k, max_size=k).map(tuple))
        triple = st.lists(st.integers(0, k - 1), min_size=3, max_size=3, unique=True)
        return st.tuples(cls, cls, triple)

    return st.integers(3, 12).flatmap(build)


def test_transform_examples():
    assert quadratic_transform(C(2, (1, 5)), 0, 1, 2) == C(1, 0, 0, 0, 1, 1)
    c = C(15, 6, (4, 3), (5, 5), 4)
    assert quadratic_transform(quadratic_transform(c, 0, 4, 5), 0, 4, 5) == c


@pytest.mark.parametrize("triple", [(0, 0, 1), (0, 1, 1), (0, 1, 5)])
def test_transform_rejects_bad_triples(triple):
    with pytest.raises(NagataError):
        quadratic_transform(C(2, (1, 5)), *triple)


def test_is_standard_examples():
    assert is_standard(C(13, 5, (4, 9)))
    assert not is_standard(C(2, (1, 5)))
    assert not is_standard(C(1, 1, 1))
    assert not is_standard(C(3, -1, 1))


def test_reduce_examples():
    red = cremona_reduce(C(15, 6, (4, 3), (5, 5), 4))
    assert red.final.canonical() == C(13, 5, (4, 9))
    assert len(red.steps) == 2 and red.status == "standard"
    red = cremona_reduce(C(4, (2, 5)))
    assert sorted(red.final.m) == [-2, 0, 0, 0, 0] and red.final.d == 0
    assert len(red.steps) == 2 and red.status == "degenerate"
    red = cremona_reduce(C(3, (1, 9)))
    assert red.final == C(3, (1, 9)) and red.steps == []


def test_three_largest_is_stable():
    assert three_largest(C(5, 1, 2, 2, 2, 2)) == (1, 2, 3)


def test_step_log_json_round_trip():
    red = cremona_reduce(C(15, 6, (4, 3), (5, 5), 4))
    data = json.loads(json.dumps([s.to_json() for s in red.steps]))
    assert [QuadraticStep.from_json(s) for s in data] == red.steps
    assert set(data[0]) == {"triple", "before", "after"}


def test_minus_one_examples():
    assert is_minus_one_class(C(3, 2, (1, 6), (0, 3)))
    assert is_minus_one_class(C(0, -1, (0, 5)))
    assert is_minus_one_class(C(2, (1, 5)))
    assert not is_minus_one_class(C(3, (1, 9)))
    # numerically a (-1)-class but reduces to a class with a negative degree
    assert not is_minus_one_class(C(5, 3, 3, (1, 8)))


@given(with_triple())
def test_transform_involution_and_isometry(data):
    a, b, (i, j, k) = data
    ta, tb = quadratic_transform(a, i, j, k), quadratic_transform(b, i, j, k)
    assert quadratic_transform(ta, i, j, k) == a
    assert intersect(ta, tb) == intersect(a, b)
    assert k_pairing(ta) == k_pairing(a)


@given(st.integers(1, 12).flatmap(lambda k: st.builds(
    ClassVector, st.integers(0, 50), st.lists(st.integers(-3, 30), min_size=k, max_size=k).map(tuple))))
def test_reduction_log_invariants(c):
    red = cremona_reduce(c)
    assert len(red.steps) <= max(c.d, 0)
    cur = c
    for step in red.steps:
        assert step.before == cur
        assert step.after == quadratic_transform(cur, *step.triple)
        assert step.after.d < step.before.d
        for f in (virtual_dimension, arithmetic_genus, k_pairing):
            assert f(step.after) == f(c)
        cur = step.after
    assert cur == red.final
    assert pull_back(red.final, red.steps) == c
    assert (red.status == "standard") == is_standard(red.final)


@given(st.integers(1, 10).flatmap(lambda k: st.builds(
    ClassVector, st.integers(0, 12), st.lists(st.integers(-1, 6), min_size=k, max_size=k).map(tuple))))
def test_minus_one_classes_have_genus_zero(c):
    if is_minus_one_class(c):
        assert arithmetic_genus(c) == 0
