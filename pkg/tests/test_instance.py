import json

import pytest
from hypothesis import given

from pigeonsum.instance import (Instance, NonPositive, PromiseViolated, SolutionPair, TooLarge,
                                ValidationError, format_text, parse_text, prefix_reduce,
                                validate, verify)
from conftest import raw_instances


def test_validate_sorted_instance():
    inst = validate([1, 2, 4, 7])
    assert isinstance(inst, Instance)
    assert inst.n == 4 and inst.total == 14 and inst.weights == (1, 2, 4, 7)


def test_validate_duplicate_short_circuits():
    pair = validate([3, 1, 3])
    assert pair == SolutionPair(frozenset({1}), frozenset({3}), 3)


def test_validate_errors():
    with pytest.raises(PromiseViolated):
        validate([1, 2, 4, 8])
    with pytest.raises(NonPositive):
        validate([1, 0, 3])
    with pytest.raises(TooLarge):
        validate([1, 2, 9])
    with pytest.raises(TooLarge):
        validate(list(range(1, 64)))
    with pytest.raises(ValidationError):
        validate([])


def test_validate_records_permutation():
    inst = validate([7, 1, 4, 2])
    assert inst.weights == (1, 2, 4, 7)
    assert inst.orig_index == (1, 3, 2, 0)


@pytest.mark.parametrize("raw, expect", [
    ([1, 2, 3, 8], (1, 2, 3)),
    ([1, 2, 4, 7], (1, 2, 4, 7)),
    ([1, 2], None),
])
def test_prefix_reduce_examples(raw, expect):
    inst = validate(raw) if raw != [1, 2] else Instance(2, (1, 2), 3, (0, 1))
    assert prefix_reduce(inst).weights == (expect or (1, 2))


@given(raw_instances(2, 16))
def test_prefix_reduce_invariants(raw):
    red = prefix_reduce(validate(raw))
    s = 0
    for i, w in enumerate(red.weights[:-1], start=1):
        s += w
        assert s >= (1 << i) - 1
    assert red.total == sum(red.weights) < (1 << red.n) - 1
    assert sorted(raw[j] for j in red.orig_index) == list(red.weights)


@given(raw_instances(2, 16))
def test_sort_permutation_is_bijection(raw):
    inst = validate(raw)
    assert sorted(inst.orig_index) == list(range(len(raw)))
    assert [raw[j] for j in inst.orig_index] == list(inst.weights)


def test_verify_examples():
    raw = [1, 2, 4, 7]
    assert verify(raw, SolutionPair(frozenset({4}), frozenset({1, 2, 3}), 7))
    assert not verify(raw, SolutionPair(frozenset({1}), frozenset({1}), 1))
    assert not verify(raw, SolutionPair(frozenset({1}), frozenset({2}), 1))
    assert not verify(raw, SolutionPair(frozenset({5}), frozenset({1, 2, 3}), 7))
    assert not verify(raw, None)


def test_solution_json_roundtrip():
    pair = SolutionPair.make({1, 2, 3}, {4}, 7)
    assert pair.a == {4}
    obj = json.loads(pair.dumps())
    assert obj == {"a": [4], "b": [1, 2, 3], "sum": 7}
    assert SolutionPair.from_json(obj) == pair


def test_text_format_roundtrip():
    vals = [5, 3, 9]
    assert parse_text(format_text(vals)) == vals
    with pytest.raises(ValidationError):
        parse_text("3\n1 2\n")
