import random

import pytest
from hypothesis import given, strategies as st

from skewknh.field import FieldCtx
from skewknh.module import (DimensionMismatch, LengthMismatch, SkewMat, ZeroModulus, identity,
                            is_wowpb, mat_add, mat_mul, unit_vector, vec, vec_mod_r, wdeg_pivot)
from skewknh.ring import SkewPoly

NEG_INF = float("-inf")


def test_wdeg_pivot_examples(F4, alpha, P):
    assert wdeg_pivot([P(1, 0, 1), P(0, alpha)], (0, 3)) == (4, 1)
    assert wdeg_pivot(unit_vector(F4, 3, 1), (5, 2, 7)) == (2, 1)
    assert wdeg_pivot([P(), P()], (0, 0)) == (NEG_INF, None)
    with pytest.raises(LengthMismatch):
        wdeg_pivot([P(1)], (0, 0))


def test_pivot_prefers_largest_index(P):
    assert wdeg_pivot([P(0, 1), P(1)], (0, 1)) == (1, 1)


def test_is_wowpb_examples(F4, alpha, P):
    for w in ((0, 0), (3, 1)):
        assert is_wowpb(identity(F4, 2), w)
    assert is_wowpb([[P(1, 1), P()], [P(alpha), P(1)]], (0, 0))
    swapped = [identity(F4, 2)[1], identity(F4, 2)[0]]
    assert not is_wowpb(swapped, (0, 0))
    assert not is_wowpb([[P(1), P()], [P(), P()]], (0, 0))


def test_mat_mul_examples(F4, alpha, P):
    U = SkewMat([[P(1, 1), P()], [P(alpha), P(1)]])
    assert mat_mul(U, identity(F4, 2)) == U
    assert mat_mul([[P(0, 1)]], [[P(alpha)]]) == SkewMat([[P(0, 3)]])
    with pytest.raises(DimensionMismatch):
        mat_mul(U, [[P(1)]])


def test_vec_mod_r_examples(F4, alpha, P):
    assert vec_mod_r([P(1, 0, 1), P(0, 1)], [P(1, 1), P(alpha, 1)]) == vec(F4, [P(), P(alpha)])
    assert vec_mod_r([P(alpha, 1), P(3, 3, 3)], [P(1), P(1)]) == vec(F4, [P(), P()])
    assert vec_mod_r([P(alpha), P(alpha)], [P(1, 1), P(1, 1)]) == vec(F4, [P(alpha), P(alpha)])
    with pytest.raises(ZeroModulus):
        vec_mod_r([P(1)], [P()])


FIELDS = [FieldCtx(2, 4), FieldCtx(2, 4, gamma=3), FieldCtx(3, 2, gamma=1), FieldCtx(5, 2)]


@st.composite
def matrices(draw, k=2, max_deg=5):
    F = draw(st.sampled_from(FIELDS))
    seed = draw(st.integers(0, 2 ** 32))
    rng = random.Random(seed)

    def mat():
        return SkewMat([[SkewPoly(F, [rng.randrange(F.order) for _ in range(rng.randint(0, max_deg))])
                         for _ in range(k)] for _ in range(k)])
    return F, mat(), mat(), mat()


@given(matrices())
def test_matrix_ring_laws(t):
    F, A, B, C = t
    assert mat_mul(mat_mul(A, B), C) == mat_mul(A, mat_mul(B, C))
    assert mat_mul(A, mat_add(B, C)) == mat_add(mat_mul(A, B), mat_mul(A, C))


@given(matrices(k=3), st.lists(st.integers(0, 6), min_size=3, max_size=3))
def test_reduced_weighted_degree(t, w):
    F, A, B, _ = t
    M = [m if m.c else SkewPoly(F, [1]) for m in (r[0] for r in B)]
    M = [m.monic() if m.c else SkewPoly(F, [1]) for m in M]
    for row in A:
        red = vec_mod_r(row, M)
        for j, e in enumerate(red):
            assert e.deg < M[j].deg or not e.c


@given(matrices(k=3), st.lists(st.integers(0, 6), min_size=3, max_size=3))
def test_wowpb_pivots_are_a_permutation(t, w):
    _, A, _, _ = t
    if is_wowpb(A, w):
        assert [wdeg_pivot(r, w)[1] for r in A] == [0, 1, 2]
