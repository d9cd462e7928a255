"""Reference Koetter-Nielsen-Hoeholdt interpolation over the skew ring.

Processes one functional at a time on the full basis rows.  Δ values are
recomputed from the rows every iteration and E_i(x b*) is evaluated on the
actual product x*b*, so this module shares no shortcuts with the fast
variant and serves as its equivalence oracle.
"""

from __future__ import annotations

import time
from typing import Sequence

from .functionals import FunctionalSet, eval_functional
from .module import SkewMat, SkewVec, identity, wdeg
from .ring import SkewPoly


class Update:
    """The update matrix of one iteration: identity except column ``jstar``,
    which holds -Δ_j/Δ_j* off the diagonal and x - c on it."""

    __slots__ = ("index", "jstar", "coefs", "c", "width")

    def __init__(self, index: int, jstar: int, coefs: list[int], c: int, width: int):
        self.index = index
        self.jstar = jstar
        self.coefs = coefs      # coefs[j] = Δ_j / Δ_j*  (coefs[jstar] unused)
        self.c = c              # E_i(x b*) / Δ_j*
        self.width = width

    def matrix(self, F) -> SkewMat:
        js = self.jstar
        rows = []
        for j in range(self.width):
            row = [SkewPoly(F, [1] if k == j else []) for k in range(self.width)]
            if j == js:
                row[js] = SkewPoly(F, [F.neg(self.c), 1])
            else:
                row[js] = SkewPoly(F, [F.neg(self.coefs[j])])
            rows.append(row)
        return SkewMat(rows)

    def apply(self, F, rows: list[list[list]]) -> list[list[list]]:
        """U * rows on coefficient lists (rows[j][k] is a coefficient list)."""
        kc = F.kernel()
        js = self.jstar
        star = rows[js]
        out = list(rows)
        neg = F.neg
        for j, cf in enumerate(self.coefs):
            if j != js and cf:
                out[j] = [kc.axpy(a, neg(cf), b) for a, b in zip(rows[j], star)]
        nc = neg(self.c)
        out[js] = [kc.axpy(kc.xmul(b), nc, b) for b in star]
        return out


def knh_interpolate(Fs: FunctionalSet | None, w: Sequence[int], trace: list | None = None,
                    field=None):
    """Basis in w-ordered weak Popov form of the common kernel of all E_i.

    Returns ``(B, d)`` with d_j the w-weighted degree of row j.  ``trace``,
    if given, receives one :class:`Update` per iteration that changed B.
    With no functionals (``Fs`` None) pass ``field``; the result is the
    identity with d = w.
    """
    w = [int(x) for x in w]
    if any(x < 0 for x in w):
        raise ValueError("weights must be non-negative")
    if Fs is None:
        if field is None:
            raise ValueError("without functionals the field must be given")
        return identity(field, len(w)), tuple(w)
    if len(w) != Fs.s + 1:
        raise ValueError(f"{len(w)} weights for {Fs.s + 1} coordinates")
    F = Fs.field
    kc = F.kernel()
    width = Fs.s + 1
    B = [list(r) for r in identity(F, width)]
    for i in range(Fs.n):
        deltas = [eval_functional(Fs, i, row) for row in B]
        J = [j for j in range(width) if deltas[j]]
        if not J:
            continue
        degs = [wdeg(B[j], w) for j in J]
        jstar = min(zip(degs, J))[1]
        star = B[jstar]
        inv = F.inv(deltas[jstar])
        xstar = [SkewPoly._raw(F, kc.xmul(q.c)) for q in star]
        c = F.mul(eval_functional(Fs, i, xstar), inv)
        coefs = [F.mul(dj, inv) if dj and j != jstar else 0 for j, dj in enumerate(deltas)]
        for j in J:
            if j == jstar:
                # degree-increasing step: (x - c) b*
                B[j] = [SkewPoly._raw(F, kc.axpy(xq.c, F.neg(c), q.c))
                        for xq, q in zip(xstar, star)]
            else:
                # cross-evaluation step: b_j - (Δ_j/Δ_j*) b*
                nc = F.neg(coefs[j])
                B[j] = [SkewPoly._raw(F, kc.axpy(a.c, nc, q.c)) for a, q in zip(B[j], star)]
        if trace is not None:
            trace.append(Update(i, jstar, coefs, c, width))
    Bm = SkewMat(SkewVec(r) for r in B)
    d = tuple(wdeg(r, w) for r in Bm)
    return Bm, d


def knh_solve(Fs: FunctionalSet, w: Sequence[int]):
    """knh_interpolate plus operation counts and wall time."""
    F = Fs.field
    t0 = time.perf_counter_ns()
    with F.counting() as cnt:
        B, d = knh_interpolate(Fs, w)
    stats = {"mult": cnt.mul, "add": cnt.add, "inv": cnt.inv, "sigma": cnt.sigma,
             "delta": cnt.delta, "wall_time_ns": time.perf_counter_ns() - t0}
    return B, d, stats
