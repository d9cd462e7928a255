import random

import pytest
from hypothesis import given, strategies as st

from skewknh import kernels
from skewknh.field import FieldCtx

pytestmark = pytest.mark.skipif(not kernels.HAVE_COMPILED, reason="compiled kernels not built")

FIELDS = [FieldCtx(2, 2), FieldCtx(2, 4, gamma=3), FieldCtx(3, 3, aut_power=2), FieldCtx(5, 2, gamma=7),
          FieldCtx(2, 8), FieldCtx(521, 2)]


def _pair(F):
    return kernels.make_context(F), kernels.make_context(F, prefer_compiled=False)


@pytest.mark.skipif(kernels._force_pure, reason="pure kernels forced")
def test_backend_selection():
    fast, slow = _pair(FieldCtx(2, 4))
    assert fast.compiled and not slow.compiled
    assert not kernels.make_context(FieldCtx(2, 21)).compiled     # no tables


@given(st.sampled_from(FIELDS), st.integers(0, 2 ** 32), st.integers(0, 40), st.integers(0, 40))
def test_compiled_matches_pure(F, seed, la, lb):
    rng = random.Random(seed)
    f = [rng.randrange(F.order) for _ in range(la)]
    g = [rng.randrange(F.order) for _ in range(lb)]
    c, b = rng.randrange(F.order), rng.randrange(F.order)
    k = rng.randrange(-3, 4)
    fast, slow = _pair(F)
    assert fast.mul(f, g) == slow.mul(f, g)
    assert fast.add(f, g) == slow.add(f, g)
    assert fast.sub(f, g) == slow.sub(f, g)
    assert fast.axpy(f, c, g) == slow.axpy(f, c, g)
    assert fast.scale(c, f) == slow.scale(c, f)
    assert fast.xmul(f) == slow.xmul(f)
    assert fast.twist(f, k) == slow.twist(f, k)
    assert fast.op_eval(f, c, b) == slow.op_eval(f, c, b)
    g = g + [rng.randrange(1, F.order)]
    assert fast.rdivmod(f, g) == slow.rdivmod(f, g)


@given(st.sampled_from(FIELDS), st.integers(0, 2 ** 32))
def test_counters_agree(F, seed):
    rng = random.Random(seed)
    f = [rng.randrange(F.order) for _ in range(12)]
    g = [rng.randrange(F.order) for _ in range(7)] + [1]
    counts = []
    for kc in _pair(F):
        before = (kc.nmul, kc.nadd, kc.ninv, kc.nsig, kc.ndel)
        kc.mul(f, g)
        kc.rdivmod(f, g)
        kc.op_eval(f, 3 % F.order, 1)
        counts.append(tuple(a - b for a, b in zip((kc.nmul, kc.nadd, kc.ninv, kc.nsig, kc.ndel), before)))
    assert counts[0] == counts[1]
