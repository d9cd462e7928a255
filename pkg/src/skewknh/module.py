"""Row vectors and square matrices over the skew ring.

Vectors are tuples of :class:`SkewPoly`; matrices are tuples of vectors
(rows).  Weighted degrees use the convention deg(0) = -inf, and the pivot of
a vector is the largest index attaining its weighted degree.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .field import FieldCtx
from .ring import NEG_INF, SkewPoly, mul_lists, rmod_lists

MAX_WIDTH = 17


class LengthMismatch(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class ZeroModulus(ZeroDivisionError):
    pass


class InternalInvariant(AssertionError):
    """An algorithm invariant failed; this means a bug, not bad input."""


class SkewVec(tuple):
    """Immutable row vector of skew polynomials."""

    def __new__(cls, entries: Iterable[SkewPoly]):
        return super().__new__(cls, entries)

    @property
    def field(self) -> FieldCtx:
        return self[0].field

    def __add__(self, other):  # elementwise, not tuple concatenation
        if len(other) != len(self):
            raise LengthMismatch("vector lengths differ")
        return SkewVec(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        if len(other) != len(self):
            raise LengthMismatch("vector lengths differ")
        return SkewVec(a - b for a, b in zip(self, other))

    def lmul(self, f: SkewPoly) -> "SkewVec":
        """Left multiple f * v."""
        return SkewVec(f * a for a in self)

    def is_zero(self) -> bool:
        return all(not a.c for a in self)

    def to_json(self) -> list:
        return [a.to_json() for a in self]

    def __repr__(self) -> str:
        return "SkewVec(" + ", ".join(a.pretty() for a in self) + ")"


class SkewMat(tuple):
    """Immutable matrix stored as a tuple of SkewVec rows."""

    def __new__(cls, rows: Iterable[Iterable[SkewPoly]]):
        return super().__new__(cls, (r if isinstance(r, SkewVec) else SkewVec(r) for r in rows))

    @property
    def field(self) -> FieldCtx:
        return self[0][0].field

    @property
    def shape(self) -> tuple[int, int]:
        return len(self), (len(self[0]) if self else 0)

    def entry(self, i: int, j: int) -> SkewPoly:
        return self[i][j]

    def to_json(self) -> list:
        return [r.to_json() for r in self]

    @classmethod
    def from_json(cls, field: FieldCtx, obj) -> "SkewMat":
        return cls([SkewPoly.from_json(field, e) for e in row] for row in obj)

    def __repr__(self) -> str:
        return "SkewMat(\n  " + ",\n  ".join(repr(r) for r in self) + ")"


def vec(field: FieldCtx, entries: Sequence) -> SkewVec:
    return SkewVec(e if isinstance(e, SkewPoly) else SkewPoly(field, e) for e in entries)


def unit_vector(field: FieldCtx, n: int, j: int) -> SkewVec:
    return SkewVec(SkewPoly(field, [1] if k == j else []) for k in range(n))


def identity(field: FieldCtx, n: int) -> SkewMat:
    return SkewMat(unit_vector(field, n, j) for j in range(n))


def wdeg_pivot(v: Sequence[SkewPoly], w: Sequence[int]):
    """(max_j deg v_j + w_j, largest index attaining it); (-inf, None) for 0."""
    if len(v) != len(w):
        raise LengthMismatch(f"vector has {len(v)} entries, weights {len(w)}")
    best, piv = NEG_INF, None
    for j, (a, wj) in enumerate(zip(v, w)):
        if a.c:
            d = len(a.c) - 1 + wj
            if d >= best:
                best, piv = d, j
    return best, piv


def wdeg(v: Sequence[SkewPoly], w: Sequence[int]):
    return wdeg_pivot(v, w)[0]


def is_wowpb(B: Sequence[Sequence[SkewPoly]], w: Sequence[int]) -> bool:
    """True iff B is square, no row is zero and row pivots strictly increase."""
    n = len(B)
    if any(len(r) != n for r in B):
        return False
    last = -1
    for r in B:
        _, piv = wdeg_pivot(r, w)
        if piv is None or piv <= last:
            return False
        last = piv
    return True


def mat_mul(A: Sequence[Sequence[SkewPoly]], B: Sequence[Sequence[SkewPoly]]) -> SkewMat:
    """A*B over the skew ring (order matters)."""
    if not A or not B:
        raise DimensionMismatch("empty matrix")
    inner = len(A[0])
    if inner != len(B) or any(len(r) != inner for r in A):
        raise DimensionMismatch(f"cannot multiply {len(A)}x{inner} by {len(B)}x{len(B[0])}")
    F = A[0][0].field
    kc = F.kernel()
    cols = len(B[0])
    rows = []
    for Ai in A:
        row = []
        for k in range(cols):
            acc = []
            for j in range(inner):
                a, b = Ai[j].c, B[j][k].c
                if a and b:
                    if len(a) == 1 and a[0] == 1:
                        prod = b
                    elif len(b) == 1 and b[0] == 1:
                        prod = a
                    else:
                        prod = mul_lists(F, a, b)
                    acc = kc.add(acc, prod) if acc else list(prod)
            row.append(SkewPoly._raw(F, acc))
        rows.append(SkewVec(row))
    return SkewMat(rows)


def mat_add(A, B) -> SkewMat:
    return SkewMat(SkewVec(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def vec_mod_r(v: Sequence[SkewPoly], M: Sequence[SkewPoly]) -> SkewVec:
    """Componentwise right remainder v_j mod_r M_j."""
    if len(v) != len(M):
        raise LengthMismatch(f"vector has {len(v)} entries, modulus {len(M)}")
    out = []
    for a, m in zip(v, M):
        if not m.c:
            raise ZeroModulus("zero component in the modulus vector")
        out.append(SkewPoly._raw(a.field, rmod_lists(a.field, a.c, m.c, m)))
    return SkewVec(out)


def mat_mod_r(B: Sequence[Sequence[SkewPoly]], M: Sequence[SkewPoly]) -> SkewMat:
    """Apply vec_mod_r to every row."""
    return SkewMat(vec_mod_r(r, M) for r in B)
