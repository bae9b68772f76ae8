import pytest

from pigeonsum import smalld
from pigeonsum.gen import KINDS, GenSpec, Unsatisfiable, generate
from pigeonsum.instance import Instance, SolutionPair, format_text, parse_text, validate


def test_near_binary_example():
    assert generate(GenSpec("near-binary", 4)) == [1, 2, 4, 7]


def test_duplicate_triggers_short_circuit():
    for n in (2, 3, 10):
        assert isinstance(validate(generate(GenSpec("duplicate", n, 1))), SolutionPair)


def test_dense_range():
    for seed in range(20):
        vals = generate(GenSpec("dense", 4, seed))
        assert len(set(vals)) == 4 and max(vals) <= 64
    vals = generate(GenSpec("dense", 20, 0))
    assert max(vals) <= 20 ** 3


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("n", [3, 4, 9, 17, 30, 62])
def test_valid_and_reproducible(kind, n):
    a = generate(GenSpec(kind, n, 5))
    assert a == generate(GenSpec(kind, n, 5))
    checked = validate(a)
    assert isinstance(checked, SolutionPair if kind == "duplicate" else Instance)
    assert parse_text(format_text(a)) == a


@pytest.mark.parametrize("n", [3, 8, 20, 40, 62])
def test_near_binary_structure(n):
    inst = validate(generate(GenSpec("near-binary", n)))
    for delta in range(1, n + 1):
        assert smalld.check_structure(inst, delta).ok


def test_unsatisfiable():
    with pytest.raises(Unsatisfiable):
        generate(GenSpec("random", 2))
    with pytest.raises(Unsatisfiable):
        generate(GenSpec("duplicate", 1))
