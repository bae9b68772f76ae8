import os

import hypothesis
from hypothesis import assume, strategies as st

from pigeonsum.instance import Instance, validate
from pigeonsum.smalld import check_structure, delta_max

hypothesis.settings.register_profile("ci", max_examples=60, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@st.composite
def raw_instances(draw, min_n=3, max_n=14):
    """Distinct positive weights satisfying the pigeonhole promise, unsorted."""
    n = draw(st.integers(min_n, max_n))
    top = max(n, ((1 << n) - 2) // n)
    u = draw(st.integers(n, 2 * top))
    vals = draw(st.lists(st.integers(1, u), min_size=n, max_size=n, unique=True))
    assume(sum(vals) < (1 << n) - 1)
    return vals


@st.composite
def instances(draw, min_n=3, max_n=14):
    inst = validate(draw(raw_instances(min_n, max_n)))
    assert isinstance(inst, Instance)
    return inst


@st.composite
def structured(draw, min_n=8, max_n=16):
    """Instances near powers of two that pass the window check at their delta."""
    n = draw(st.integers(min_n, max_n))
    delta = draw(st.integers(1, delta_max(n)))
    vals = []
    for i in range(1, n + 1):
        w = (1 << (i - 1)) + draw(st.integers(-i * delta, delta))
        vals.append(max(w, vals[-1] + 1 if vals else 1))
    vals[-1] = min(vals[-1], (1 << n) - 2 - sum(vals[:-1]))
    assume(vals[-1] > vals[-2])
    if draw(st.booleans()):
        vals.reverse()
    inst = validate(vals)
    rep = check_structure(inst, delta)
    assume(rep.ok)
    return inst, rep
