import itertools

import pytest
from hypothesis import given, strategies as st

from skewknh.functionals import RangeError, build_minpoly_tree, make_functionals
from skewknh.instances import random_instance
from skewknh.knh import knh_interpolate
from skewknh.knh_fast import (SolveOptions, interpolate_point, interpolate_tree,
                              solve_interpolation)
from skewknh.module import SkewMat, identity, mat_mod_r, mat_mul, wdeg


def test_point_step_matches_worked_trace(F4, alpha, P):
    E = make_functionals("operator", F4, [[1, alpha]])
    T, d = interpolate_point(E, 0, identity(F4, 2), (0, 0))
    assert T == SkewMat([[P(1, 1), P()], [P(alpha), P(1)]])
    assert d == (1, 0)


def test_point_step_without_update(F4):
    E = make_functionals("operator", F4, [[0, 0]])
    assert interpolate_point(E, 0, identity(F4, 2), (3, 1)) == (identity(F4, 2), (3, 1))


def test_tie_selects_smallest_index(F4, alpha):
    E = make_functionals("operator", F4, [[alpha, 1]])
    T, d = interpolate_point(E, 0, identity(F4, 2), (2, 2))
    assert d == (3, 2)
    # the tracked degrees decide, not the reduced rows
    T, d = interpolate_point(E, 0, identity(F4, 2), (5, 2))
    assert d == (5, 3)


def test_solver_worked_trace(F4, alpha, P):
    E = make_functionals("operator", F4, [[1, alpha]])
    B, d, stats = solve_interpolation(E, (0, 0), SolveOptions(verify=True))
    assert B == SkewMat([[P(1, 1), P()], [P(alpha), P(1)]]) and d == (1, 0)
    assert stats["updates"] == 1


def _two_step_instances(F):
    els = list(F.elements())
    for u0, u1, v0, v1 in itertools.product(els, repeat=4):
        yield make_functionals("operator", F, [[u0, u1], [v0, v1]])


def test_product_order(F4):
    """T = T2 T1; on an instance where the factors do not commute only that
    order reproduces the reference basis."""
    found = False
    for E in _two_step_instances(F4):
        trace = []
        B, _ = knh_interpolate(E, (0, 0), trace)
        if len(trace) != 2:
            continue
        U0, U1 = (u.matrix(F4) for u in trace)
        if mat_mul(U1, U0) == mat_mul(U0, U1):
            continue
        tree = build_minpoly_tree(E)
        B0 = mat_mod_r(identity(F4, 2), tree.root)
        T, _ = interpolate_tree(E, 0, 1, B0, (0, 0), tree, SolveOptions(leaf_size=1))
        assert T == mat_mul(U1, U0) == B
        assert T != mat_mul(U0, U1)
        found = True
        break
    assert found


def test_tree_range_checked(F4, alpha):
    E = make_functionals("operator", F4, [[1, alpha]])
    tree = build_minpoly_tree(E)
    with pytest.raises(RangeError):
        interpolate_tree(E, 0, 1, identity(F4, 2), (0, 0), tree)


def test_random_s1_n16_matches_reference():
    inst = random_instance(7, 2, 4, 1, 16, "operator")
    ref = knh_interpolate(inst.functionals, inst.weights)
    B, d, _ = solve_interpolation(inst.functionals, inst.weights, SolveOptions(verify=True))
    assert (B, d) == ref


def test_option_checks(F4, alpha):
    E = make_functionals("operator", F4, [[1, alpha]])
    with pytest.raises(ValueError):
        solve_interpolation(E, (0,))
    with pytest.raises(ValueError):
        solve_interpolation(E, (0, 0), SolveOptions(leaf_size=0))


@st.composite
def instances(draw, max_n=40):
    p, m = draw(st.sampled_from([(2, 2), (2, 4), (3, 2), (5, 2), (2, 6), (3, 3), (2, 8)]))
    return random_instance(draw(st.integers(0, 10 ** 6)), p, m, draw(st.integers(0, 3)),
                           draw(st.integers(1, max_n)), draw(st.sampled_from(["operator", "remainder"])),
                           delta=draw(st.booleans()), zero_rate=draw(st.sampled_from([0.0, 0.2])))


@given(instances(), st.sampled_from([1, 2, 4, 16, 64]), st.sampled_from([None, 2, 8, 32]))
def test_matches_reference(inst, leaf, th):
    ref_trace = []
    ref = knh_interpolate(inst.functionals, inst.weights, ref_trace)
    opts = SolveOptions(verify=True, debug=True, leaf_size=leaf, fast_threshold=th)
    B, d, stats = solve_interpolation(inst.functionals, inst.weights, opts)
    assert (B, d) == ref
    assert d == tuple(wdeg(r, inst.weights) for r in B)
    # the same update factors, in the same order
    F = inst.field
    assert [(u.index, u.jstar) for u in stats["factors"]] == [(u.index, u.jstar) for u in ref_trace]
    assert [u.matrix(F) for u in stats["factors"]] == [u.matrix(F) for u in ref_trace]
    assert stats["updates"] == len(ref_trace)


@given(instances(max_n=24))
def test_leaf_sizes_agree(inst):
    outs = {tuple(map(tuple, solve_interpolation(inst.functionals, inst.weights,
                                                 SolveOptions(leaf_size=k))[0]))
            for k in (1, 3, 100)}
    assert len(outs) == 1


def test_precomputed_tree_is_reused():
    inst = random_instance(3, 3, 2, 2, 30, "remainder")
    tree = build_minpoly_tree(inst.functionals)
    a = solve_interpolation(inst.functionals, inst.weights, tree=tree)
    b = solve_interpolation(inst.functionals, inst.weights)
    assert a[:2] == b[:2]
    assert a[2]["tree_mult"] == 0 < b[2]["tree_mult"]
