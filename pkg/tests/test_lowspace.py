import tracemalloc

import pytest
from hypothesis import given, strategies as st

from pigeonsum import lowspace, oracle, smalld
from pigeonsum.gen import GenSpec, generate
from pigeonsum.instance import Instance, prefix_reduce, validate, verify
from pigeonsum.larged import BudgetExhausted
from pigeonsum.metrics import Metrics
from conftest import instances, structured


def _inst(ws):
    return Instance(len(ws), tuple(ws), sum(ws), tuple(range(len(ws))))


def _raw(inst):
    raw = [0] * inst.n
    for pos, orig in enumerate(inst.orig_index):
        raw[orig] = inst.weights[pos]
    return raw


def test_count_stream_examples():
    inst = _inst([1, 2, 4, 7])
    assert lowspace.count_le_stream(inst, 7) == 9
    assert lowspace.count_le_stream(inst, -1) == 0
    assert lowspace.count_le_stream(inst, 14) == 16


@given(instances(2, 16), st.randoms(use_true_random=False))
def test_count_stream_matches_oracle(inst, rnd):
    ft = oracle.frequencies(inst)
    for t in [rnd.randint(-1, inst.total + 1) for _ in range(5)]:
        assert lowspace.count_le_stream(inst, t) == int(ft.cumulative(t))


def test_stream_uses_small_chunks():
    inst = validate(generate(GenSpec("random", 20, 0)))
    meter = lowspace.SpaceMeter(lowspace.SpaceBudget(64))
    assert lowspace.count_le_stream(inst, inst.total // 2, meter) == \
        int(oracle.frequencies(inst).cumulative(inst.total // 2))
    assert meter.peak <= 64


@pytest.mark.parametrize("n", [2, 3, 5, 8, 11])
def test_permute_is_bijection(n):
    for key in (0, 1, 12345):
        assert sorted(lowspace._permute(v, key, n) for v in range(2 ** n)) == list(range(2 ** n))


@given(structured(8, 16))
def test_smalld_ps_matches_smalld(case):
    inst, rep = case
    red = prefix_reduce(inst)
    delta = min(rep.delta, smalld.delta_max(red.n))
    if delta < 1:
        return
    try:
        expect = smalld.solve(inst, delta)
    except smalld.StructureViolated:
        with pytest.raises(smalld.StructureViolated):
            lowspace.solve_smalld_ps(inst, delta)
        return
    meter = lowspace.SpaceMeter(lowspace.SpaceBudget.for_n(red.n))
    assert lowspace.solve_smalld_ps(inst, delta, meter) == expect
    assert meter.peak <= meter.budget.max_words


@pytest.mark.parametrize("kind", ["random", "dense"])
@pytest.mark.parametrize("seed", range(5))
def test_rho_finds_collisions(kind, seed):
    raw = generate(GenSpec(kind, 18, seed))
    inst = validate(raw)
    m = Metrics()
    assert verify(raw, lowspace.solve_larged_ps(inst, seed, metrics=m))
    assert m.subsets_enumerated > 0


def test_rho_budget():
    inst = validate(generate(GenSpec("near-binary", 16)))
    with pytest.raises(BudgetExhausted):
        lowspace.solve_larged_ps(inst, 0, budget=500)


def test_fallback_stream_branch():
    raw = generate(GenSpec("near-binary", 7))
    out = lowspace.solve_ps(validate(raw), 0, rho_budget=50)
    assert out.branch == "stream" and verify(raw, out.pair)


def test_space_meter_enforces():
    meter = lowspace.SpaceMeter(lowspace.SpaceBudget(10))
    with pytest.raises(lowspace.SpaceExceeded):
        with meter.hold(11, "too big"):
            pass
    assert meter.live == 0


@pytest.mark.parametrize("kind", ["random", "dense", "near-binary"])
def test_solve_ps_memory_is_polynomial(kind):
    n = 22
    raw = generate(GenSpec(kind, n, 1))
    tracemalloc.start()
    out = lowspace.solve_ps(validate(raw), 1)
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    assert verify(raw, out.pair)
    # bounded by the word budget, not by 2^n (a full sum table would be 32 MiB)
    assert peak < 16 * 64 * n * n + 64 * 1024
