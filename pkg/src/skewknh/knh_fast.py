"""Divide-and-conquer interpolation on degree-reduced bases.

The recursion never touches the full basis.  A node for E_[i1,i2] receives B
reduced modulo M_[i1,i2]; since every E_l in the range only sees Q through
Q mod_r M_[i1,i2], the Δ values, the choice of j* and E_l(x b*) computed on
the reduced rows agree with those of the reference algorithm, and the node
returns the product T of the same update matrices.  The true weighted row
degrees are carried alongside in ``d`` because the reduced rows no longer
have them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .functionals import (FunctionalSet, MinPolyTree, build_minpoly_tree, eval_functional,
                          x_shift_value)
from .knh import Update
from .module import (InternalInvariant, SkewMat, SkewVec, identity, is_wowpb, mat_mod_r,
                     mat_mul, wdeg)
from .ring import SkewPoly, fast_arithmetic, rmod_lists


class VerificationFailed(AssertionError):
    pass


@dataclass
class SolveOptions:
    verify: bool = False
    debug: bool = False
    leaf_size: int = 16          # sequential loop once i2 - i1 < leaf_size
    fast_threshold: int | None = 32   # None: schoolbook products and division
    check_degrees: bool = True


@dataclass
class _Run:
    Fs: FunctionalSet
    tree: MinPolyTree
    opts: SolveOptions
    factors: list = dc_field(default_factory=list)
    updates: int = 0


def _point_update(Fs: FunctionalSet, i: int, rows, d: Sequence[int]):
    """Update for E_i from reduced rows (lists of SkewPoly) and tracked d."""
    F = Fs.field
    width = Fs.s + 1
    vals = [eval_functional(Fs, i, r, parts=True) for r in rows]
    J = [j for j in range(width) if vals[j][0]]
    if not J:
        return None
    jstar = min((d[j], j) for j in J)[1]
    dstar, parts = vals[jstar]
    if not dstar:
        raise InternalInvariant("selected row has Δ = 0")
    inv = F.inv(dstar)
    c = F.mul(x_shift_value(Fs, i, dstar, parts), inv)
    coefs = [F.mul(v, inv) if v and j != jstar else 0 for j, (v, _) in enumerate(vals)]
    return Update(i, jstar, coefs, c, width)


def interpolate_point(Fs: FunctionalSet, i: int, B: Sequence[Sequence[SkewPoly]],
                      d: Sequence[int]):
    """One step: (U_i, d with d_j* + 1), or (identity, d) when all Δ_j = 0."""
    upd = _point_update(Fs, i, B, d)
    if upd is None:
        return identity(Fs.field, Fs.s + 1), tuple(d)
    d2 = list(d)
    d2[upd.jstar] += 1
    return upd.matrix(Fs.field), tuple(d2)


def _rows_to_lists(B) -> list:
    return [[q.c for q in r] for r in B]


def _lists_to_mat(F, rows) -> SkewMat:
    return SkewMat(SkewVec(SkewPoly._raw(F, c) for c in r) for r in rows)


def _check_reduced(B, M, i1, i2) -> None:
    for r in B:
        for q, m in zip(r, M):
            if len(q.c) >= len(m.c):
                raise InternalInvariant(
                    f"entry of degree {len(q.c) - 1} not reduced modulo degree "
                    f"{len(m.c) - 1} at node [{i1}, {i2}]")


def _sequential(run: _Run, i1: int, i2: int, B: SkewMat, d: tuple):
    """Point-by-point processing of E_[i1,i2] keeping the rows reduced mod M_[i1,i2]."""
    Fs = run.Fs
    F = Fs.field
    M = run.tree[i1, i2]
    mods = [m.c for m in M]
    rows = _rows_to_lists(B)
    width = Fs.s + 1
    T = [[[1] if k == j else [] for k in range(width)] for j in range(width)]
    d = list(d)
    touched = False
    for i in range(i1, i2 + 1):
        view = [[SkewPoly._raw(F, c) for c in r] for r in rows]
        upd = _point_update(Fs, i, view, d)
        if upd is None:
            continue
        touched = True
        run.updates += 1
        if run.opts.debug:
            run.factors.append(upd)
        d[upd.jstar] += 1
        if i < i2:
            rows = upd.apply(F, rows)
            rows = [[rmod_lists(F, c, m, mp) for c, m, mp in zip(r, mods, M)] for r in rows]
        T = upd.apply(F, T)
    if not touched:
        return identity(F, width), tuple(d)
    return _lists_to_mat(F, T), tuple(d)


def _tree(run: _Run, i1: int, i2: int, B: SkewMat, d: tuple):
    if run.opts.check_degrees:
        _check_reduced(B, run.tree[i1, i2], i1, i2)
    if i1 == i2 or i2 - i1 < run.opts.leaf_size:
        if i1 == i2 and run.opts.leaf_size <= 1:
            upd = _point_update(run.Fs, i1, B, d)
            if upd is None:
                return identity(run.Fs.field, run.Fs.s + 1), d
            run.updates += 1
            if run.opts.debug:
                run.factors.append(upd)
            d2 = list(d)
            d2[upd.jstar] += 1
            return upd.matrix(run.Fs.field), tuple(d2)
        return _sequential(run, i1, i2, B, d)
    z = (i1 + i2) // 2
    B1 = mat_mod_r(B, run.tree[i1, z])
    T1, d1 = _tree(run, i1, z, B1, d)
    B2 = mat_mod_r(mat_mul(T1, B), run.tree[z + 1, i2])
    T2, d2 = _tree(run, z + 1, i2, B2, d1)
    return mat_mul(T2, T1), d2


def interpolate_tree(Fs: FunctionalSet, i1: int, i2: int, B: SkewMat, d: Sequence[int],
                     tree: MinPolyTree, options: SolveOptions | None = None):
    """T such that the rows of T*B span <B> ∩ K_i1 ∩ ... ∩ K_i2 in w-ordered
    weak Popov form, with the tracked degrees of T*B.

    B must be reduced modulo M_[i1,i2] and d must hold the true weighted
    degrees of the unreduced rows it stands for.
    """
    if not (0 <= i1 <= i2 < Fs.n):
        from .functionals import RangeError
        raise RangeError(f"index range [{i1}, {i2}] outside [0, {Fs.n - 1}]")
    opts = options or SolveOptions()
    run = _Run(Fs, tree, opts)
    with fast_arithmetic(opts.fast_threshold):
        return _tree(run, i1, i2, B, tuple(d))


def verify_basis(Fs: FunctionalSet, B: SkewMat, w: Sequence[int], d: Sequence[int]) -> None:
    if not is_wowpb(B, w):
        raise VerificationFailed("output is not in w-ordered weak Popov form")
    for j, row in enumerate(B):
        if wdeg(row, w) != d[j]:
            raise VerificationFailed(f"tracked degree {d[j]} of row {j} is not its weighted degree")
        for i in range(Fs.n):
            if eval_functional(Fs, i, row):
                raise VerificationFailed(f"row {j} is not in the kernel of E_{i}")


def solve_interpolation(Fs: FunctionalSet, w: Sequence[int], options: SolveOptions | None = None,
                        tree: MinPolyTree | None = None):
    """Fast solver.  Returns (B, d, stats).

    stats holds operation counts for the tree precomputation ("tree_*") and
    the interpolation proper ("interp_*"), their sums, timings and, in debug
    mode, the update factors in application order.
    """
    opts = options or SolveOptions()
    w = [int(x) for x in w]
    if any(x < 0 for x in w):
        raise ValueError("weights must be non-negative")
    if len(w) != Fs.s + 1:
        raise ValueError(f"{len(w)} weights for {Fs.s + 1} coordinates")
    if opts.leaf_size < 1:
        raise ValueError("leaf_size must be at least 1")
    F = Fs.field
    t0 = time.perf_counter_ns()
    with fast_arithmetic(opts.fast_threshold):
        with F.counting() as tc:
            if tree is None:
                tree = build_minpoly_tree(Fs)
        t1 = time.perf_counter_ns()
        run = _Run(Fs, tree, opts)
        with F.counting() as ic:
            B0 = mat_mod_r(identity(F, Fs.s + 1), tree.root)
            T, d = _tree(run, 0, Fs.n - 1, B0, tuple(w))
    t2 = time.perf_counter_ns()
    # B_0 = I, so the basis is T itself
    stats = {
        "tree_mult": tc.mul, "tree_add": tc.add,
        "interp_mult": ic.mul, "interp_add": ic.add,
        "mult": tc.mul + ic.mul, "add": tc.add + ic.add,
        "inv": tc.inv + ic.inv, "sigma": tc.sigma + ic.sigma, "delta": tc.delta + ic.delta,
        "updates": run.updates,
        "tree_time_ns": t1 - t0, "interp_time_ns": t2 - t1, "wall_time_ns": t2 - t0,
    }
    if opts.debug:
        stats["factors"] = run.factors
    if opts.verify:
        verify_basis(Fs, T, w, d)
        if opts.debug:
            P = identity(F, Fs.s + 1)
            for u in run.factors:
                P = mat_mul(u.matrix(F), P)
            if P != T:
                raise VerificationFailed("recorded update factors do not multiply to T")
    return T, d, stats
