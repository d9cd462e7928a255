import itertools
import random

import pytest
from hypothesis import given, strategies as st

from skewknh.field import FieldCtx
from skewknh.functionals import make_functionals
from skewknh.module import LengthMismatch
from skewknh.rank_codes import (DecodingFailure, DegreeTooLarge, GabidulinCode, RankInfeasible,
                                build_decoding_instance, gabidulin_decode, gabidulin_encode,
                                q_rank, random_message, random_rank_error)
from skewknh.ring import SkewPoly


def test_encode_examples(F4, alpha, P):
    code = GabidulinCode(F4, 2, 1, (1, alpha))
    assert gabidulin_encode(code, P(alpha)) == [alpha, F4.mul(alpha, alpha)]
    assert gabidulin_encode(code, P()) == [0, 0]
    with pytest.raises(DegreeTooLarge):
        gabidulin_encode(code, P(0, 1))
    F = FieldCtx(2, 4)
    big = GabidulinCode(F, 4, 2)
    assert gabidulin_encode(big, SkewPoly.x(F)) == [F.sigma(g) for g in big.g]


def test_code_checks(F4, F4d, alpha):
    with pytest.raises(ValueError):
        GabidulinCode(F4d, 2, 1)
    with pytest.raises(ValueError):
        GabidulinCode(F4, 3, 1)
    with pytest.raises(ValueError):
        GabidulinCode(F4, 2, 2)
    with pytest.raises(ValueError):
        GabidulinCode(F4, 2, 1, (alpha, alpha))
    with pytest.raises(ValueError):
        GabidulinCode(FieldCtx(2, 4, aut_power=2), 4, 2)
    with pytest.raises(LengthMismatch):
        GabidulinCode(F4, 2, 1, (1,))


def test_decoding_instance(F4, alpha):
    code = GabidulinCode(F4, 2, 1, (1, alpha))
    Fs, w = build_decoding_instance(code, [alpha, 3])
    assert w == (0, 0)
    assert Fs.slice(0, 0) == make_functionals("operator", F4, [[1, alpha]], [1])
    assert Fs.bs == (1, 1)
    with pytest.raises(LengthMismatch):
        build_decoding_instance(code, [1])


@pytest.mark.parametrize("t", [0, 1, 2, 3, 4])
def test_rank_error_has_exact_rank(t):
    F = FieldCtx(2, 8)
    for seed in range(20):
        e = random_rank_error(6, t, F, seed)
        assert len(e) == 6 and q_rank(F, e) == t
    if t == 0:
        assert random_rank_error(6, 0, F, 1) == [0] * 6


def test_rank_one_error_is_scaled_binary_vector():
    F = FieldCtx(3, 4)
    e = random_rank_error(4, 1, F, 9)
    a = next(x for x in e if x)
    assert all(F.div(x, a) in (0, 1, 2) for x in e)


def test_rank_infeasible(F4):
    with pytest.raises(RankInfeasible):
        random_rank_error(2, 3, F4, 0)
    with pytest.raises(RankInfeasible):
        random_rank_error(4, 3, F4, 0)


def test_q_rank_oracle():
    F = FieldCtx(2, 3)
    assert q_rank(F, [1, 2, 3]) == 2          # 3 = 1 + 2
    assert q_rank(F, [1, 2, 4]) == 3
    assert q_rank(F, [0, 0]) == 0


CODES = [(FieldCtx(2, 2), 2, 1), (FieldCtx(2, 3), 3, 1), (FieldCtx(2, 3), 3, 2),
         (FieldCtx(2, 3, aut_power=2), 3, 2), (FieldCtx(2, 4), 4, 1), (FieldCtx(2, 4), 4, 2),
         (FieldCtx(2, 4, aut_power=3), 4, 2)]


@pytest.mark.parametrize("F,n,k", CODES)
def test_decode_encode_exhaustive(F, n, k):
    code = GabidulinCode(F, n, k)
    for coeffs in itertools.product(range(F.order), repeat=k):
        f = SkewPoly(F, coeffs)
        assert gabidulin_decode(code, gabidulin_encode(code, f)) == f


@pytest.mark.parametrize("F,n,k", [(FieldCtx(2, 4), 4, 2), (FieldCtx(3, 3), 3, 1),
                                   (FieldCtx(2, 6), 6, 2), (FieldCtx(2, 5, aut_power=2), 5, 1)])
def test_decodes_within_radius(F, n, k):
    code = GabidulinCode(F, n, k)
    rng = random.Random(F.order * n + k)
    for trial in range(30):
        f = random_message(code, rng)
        e = random_rank_error(n, rng.randint(0, code.radius), F, trial)
        r = [F.add(a, b) for a, b in zip(gabidulin_encode(code, f), e)]
        assert gabidulin_decode(code, r, "fast") == f == gabidulin_decode(code, r, "baseline")


@given(st.integers(0, 10 ** 6))
def test_encode_is_additive(seed):
    F = FieldCtx(2, 6)
    code = GabidulinCode(F, 6, 3)
    rng = random.Random(seed)
    f, g = random_message(code, rng), random_message(code, rng)
    cf, cg = gabidulin_encode(code, f), gabidulin_encode(code, g)
    assert gabidulin_encode(code, f + g) == [F.add(a, b) for a, b in zip(cf, cg)]


def test_beyond_radius_never_accepts_a_far_codeword():
    """Past the radius the decoder either fails or returns a codeword within
    the radius of r; it can never return one farther away."""
    F = FieldCtx(2, 8)
    code = GabidulinCode(F, 8, 4)
    rng = random.Random(11)
    failures = 0
    for trial in range(40):
        f = random_message(code, rng)
        r = [F.add(a, b) for a, b in zip(gabidulin_encode(code, f),
                                          random_rank_error(8, 4, F, trial))]
        out = gabidulin_decode(code, r)
        if isinstance(out, DecodingFailure):
            failures += 1
            assert not out
            continue
        c = gabidulin_encode(code, out)
        assert q_rank(F, [F.sub(a, b) for a, b in zip(r, c)]) <= code.radius
        assert out != f
    assert failures > 0


def test_solvers_agree_on_arbitrary_words():
    F = FieldCtx(2, 6)
    code = GabidulinCode(F, 6, 2)
    rng = random.Random(2)
    for _ in range(40):
        r = [rng.randrange(F.order) for _ in range(6)]
        assert gabidulin_decode(code, r, "fast") == gabidulin_decode(code, r, "baseline")
    with pytest.raises(ValueError):
        gabidulin_decode(code, r, "other")
