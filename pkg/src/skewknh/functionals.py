"""Vector evaluation functionals, their minimal polynomial vectors and the
precomputed tree of those vectors over midpoint-split index ranges.

Two families are implemented.

operator:  E_i(Q) = sum_j op_eval(Q_j, u[i][j], b[i])
remainder: E_i(Q) = sum_j rem_eval(Q_j, p[i][j]); a coordinate may carry no
           point (None), in which case it does not contribute.  All points
           of one functional must coincide: with distinct p[i][j] the
           kernel of E_i is not closed under left multiplication by x
           (E_i(xQ) = sum_j sigma(c_j) p_ij + delta(c_j) is not a function
           of sum_j c_j), so the intersected kernels would not be modules.

Both are left-linear, and their kernels are closed under left multiplication
by x because E_i(xQ) is determined by data that survives reduction modulo the
minimal polynomial vectors (see :func:`eval_x_shift`).
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .field import FieldCtx
from .module import MAX_WIDTH, DimensionMismatch, LengthMismatch, SkewVec
from .ring import SkewPoly, annihilator, gcrd_lclm, min_poly_set

FAMILIES = ("operator", "remainder")


class RangeError(IndexError):
    pass


class MissingTreeNode(KeyError):
    pass


class FunctionalSet:
    """n functionals on F[x; sigma, delta]^(s+1); immutable after construction.

    ``points[i][j]`` is u_{i,j} (operator) or p_{i,j} / None (remainder);
    ``bs[i]`` is the operator parameter shared by the coordinates of E_i.
    """

    __slots__ = ("family", "field", "points", "bs", "n", "s")

    def __init__(self, family: str, field: FieldCtx, points: Sequence[Sequence],
                 bs: Sequence[int] | None = None):
        if family not in FAMILIES:
            raise ValueError(f"unknown evaluation family {family!r}")
        pts = tuple(tuple(row) for row in points)
        if not pts:
            raise DimensionMismatch("at least one functional is required")
        width = len(pts[0])
        if width < 1 or any(len(r) != width for r in pts):
            raise DimensionMismatch("every functional needs the same number of coordinates")
        if width > MAX_WIDTH:
            raise DimensionMismatch(f"at most {MAX_WIDTH} coordinates are supported")
        order = field.order
        for row in pts:
            for a in row:
                if a is None:
                    if family == "operator":
                        raise ValueError("operator points must be field elements")
                elif not 0 <= a < order:
                    raise ValueError(f"point {a} is not an element of the field")
        if family == "operator":
            if bs is None:
                bs = [1] * len(pts)
            bs = tuple(int(b) for b in bs)
            if len(bs) != len(pts):
                raise DimensionMismatch("one operator parameter per functional")
            if any(not 0 <= b < order for b in bs):
                raise ValueError("operator parameter is not a field element")
        else:
            if bs is not None:
                raise ValueError("remainder functionals take no operator parameter")
            for i, row in enumerate(pts):
                if len({a for a in row if a is not None}) > 1:
                    raise ValueError(f"remainder functional {i} mixes evaluation points; "
                                     "its kernel would not be a left submodule")
            bs = None
        self.family = family
        self.field = field
        self.points = pts
        self.bs = bs
        self.n = len(pts)
        self.s = width - 1

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return (isinstance(other, FunctionalSet) and self.family == other.family
                and self.field == other.field and self.points == other.points
                and self.bs == other.bs)

    def b(self, i: int) -> int:
        return self.bs[i] if self.bs is not None else 0

    def leaf(self, i: int) -> SkewVec:
        """Per-coordinate annihilators of functional i."""
        F = self.field
        if self.family == "operator":
            b = self.bs[i]
            return SkewVec(annihilator("operator", u, b, F) for u in self.points[i])
        return SkewVec(SkewPoly(F, [1]) if p is None else annihilator("remainder", p, 0, F)
                       for p in self.points[i])

    def slice(self, i: int, j: int) -> "FunctionalSet":
        """The functionals E_i..E_j as a new set (indices restart at 0)."""
        _check_range(self, i, j)
        bs = self.bs[i:j + 1] if self.bs is not None else None
        return FunctionalSet(self.family, self.field, self.points[i:j + 1], bs)

    def to_json(self) -> dict:
        F = self.field
        enc = lambda a: None if a is None else list(F.coeffs(a))
        if self.family == "operator":
            pts = [{"b": enc(b), "u": [enc(u) for u in row]}
                   for b, row in zip(self.bs, self.points)]
        else:
            pts = [{"p": [enc(p) for p in row]} for row in self.points]
        return {"family": self.family, "points": pts}

    @classmethod
    def from_json(cls, field: FieldCtx, obj: dict) -> "FunctionalSet":
        def dec(a):
            if a is None:
                return None
            if isinstance(a, int):
                return a
            return field.elem(a)
        family = obj["family"]
        if family == "operator":
            rows = [[dec(u) for u in e["u"]] for e in obj["points"]]
            bs = [dec(e.get("b", 1)) for e in obj["points"]]
            return cls(family, field, rows, bs)
        rows = [[dec(p) for p in e["p"]] for e in obj["points"]]
        return cls(family, field, rows)


def make_functionals(family: str, field: FieldCtx, points: Sequence[Sequence],
                     bs: Sequence[int] | None = None) -> FunctionalSet:
    return FunctionalSet(family, field, points, bs)


def _check_width(Fs: FunctionalSet, Q) -> None:
    if len(Q) != Fs.s + 1:
        raise DimensionMismatch(f"vector has {len(Q)} entries, functionals expect {Fs.s + 1}")


def eval_parts(Fs: FunctionalSet, i: int, Q: Sequence[SkewPoly]) -> list[int]:
    """Per-coordinate summands of E_i(Q)."""
    _check_width(Fs, Q)
    kc = Fs.field.kernel()
    row = Fs.points[i]
    if Fs.family == "operator":
        b = Fs.bs[i]
        return [kc.op_eval(q.c, u, b) if q.c and u else 0 for q, u in zip(Q, row)]
    return [kc.op_eval(q.c, 1, p) if q.c and p is not None else 0 for q, p in zip(Q, row)]


def eval_functional(Fs: FunctionalSet, i: int, Q: Sequence[SkewPoly],
                    parts: bool = False):
    """E_i(Q); with ``parts`` also return the per-coordinate summands."""
    terms = eval_parts(Fs, i, Q)
    F = Fs.field
    acc = 0
    for t in terms:
        if t:
            acc = F.add(acc, t) if acc else t
    return (acc, terms) if parts else acc


def x_shift_value(Fs: FunctionalSet, i: int, delta_value: int,
                  residues: Sequence[int] | None = None) -> int:
    """E_i(xQ) from E_i(Q) (operator) or from the residues Q_j mod_r (x - p_ij)
    (remainder)."""
    F = Fs.field
    if Fs.family == "operator":
        if not delta_value:
            return 0
        v = F.mul(F.sigma(delta_value), Fs.bs[i])
        if F.has_delta:
            v = F.add(v, F.delta(delta_value))
        return v
    acc = 0
    for c, p in zip(residues, Fs.points[i]):
        if c and p is not None:
            t = F.mul(F.sigma(c), p)
            if F.has_delta:
                t = F.add(t, F.delta(c))
            acc = F.add(acc, t)
    return acc


def eval_x_shift(Fs: FunctionalSet, i: int, Q: Sequence[SkewPoly]) -> int:
    """E_i(x*Q) through the shift identity (no product with x is formed)."""
    value, parts = eval_functional(Fs, i, Q, parts=True)
    return x_shift_value(Fs, i, value, parts)


def eval_x_shift_direct(Fs: FunctionalSet, i: int, Q: Sequence[SkewPoly]) -> int:
    """E_i(x*Q) by forming x*Q and evaluating it."""
    _check_width(Fs, Q)
    kc = Fs.field.kernel()
    xQ = [SkewPoly._raw(Fs.field, kc.xmul(q.c)) for q in Q]
    return eval_functional(Fs, i, xQ)


def _check_range(Fs: FunctionalSet, i: int, j: int) -> None:
    if not (0 <= i <= j < Fs.n):
        raise RangeError(f"index range [{i}, {j}] outside [0, {Fs.n - 1}]")


def min_vector_range(Fs: FunctionalSet, i: int, j: int, tree: "MinPolyTree | None" = None) -> SkewVec:
    """M_[i,j]: per coordinate, the monic LCLM of the annihilators of E_i..E_j.

    Uses the tree when it holds the range, otherwise the point-by-point
    construction.
    """
    _check_range(Fs, i, j)
    if tree is not None and (i, j) in tree:
        return tree[i, j]
    F = Fs.field
    out = []
    for k in range(Fs.s + 1):
        if Fs.family == "operator":
            out.append(min_poly_set("operator", [Fs.points[l][k] for l in range(i, j + 1)],
                                    list(Fs.bs[i:j + 1]), F))
        else:
            pts = [Fs.points[l][k] for l in range(i, j + 1) if Fs.points[l][k] is not None]
            out.append(min_poly_set("remainder", pts, None, F))
    return SkewVec(out)


def split_ranges(i1: int, i2: int) -> Iterator[tuple[int, int]]:
    """All ranges visited by the midpoint recursion on [i1, i2], parents first."""
    stack = [(i1, i2)]
    while stack:
        a, b = stack.pop()
        yield a, b
        if a < b:
            z = (a + b) // 2
            stack.append((z + 1, b))
            stack.append((a, z))


class MinPolyTree:
    """Map from midpoint-split ranges [i, j] to M_[i,j]."""

    __slots__ = ("nodes", "n")

    def __init__(self, nodes: dict, n: int):
        self.nodes = nodes
        self.n = n

    def __getitem__(self, key) -> SkewVec:
        try:
            return self.nodes[key]
        except KeyError:
            raise MissingTreeNode(f"no minimal polynomial vector for range {key}") from None

    def __contains__(self, key) -> bool:
        return key in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    @property
    def root(self) -> SkewVec:
        return self.nodes[0, self.n - 1]


def lclm_vec(a: Sequence[SkewPoly], b: Sequence[SkewPoly]) -> SkewVec:
    if len(a) != len(b):
        raise LengthMismatch("vector lengths differ")
    out = []
    for p, q in zip(a, b):
        if p.deg == 0:
            out.append(q)
        elif q.deg == 0:
            out.append(p)
        else:
            out.append(gcrd_lclm(p, q)[1])
    return SkewVec(out)


def build_minpoly_tree(Fs: FunctionalSet) -> MinPolyTree:
    """Leaves are annihilator vectors; each parent is the componentwise LCLM
    of its two children, split at z = (i1 + i2) // 2."""
    nodes: dict = {}

    def build(i1: int, i2: int) -> SkewVec:
        if i1 == i2:
            v = Fs.leaf(i1)
        else:
            z = (i1 + i2) // 2
            v = lclm_vec(build(i1, z), build(z + 1, i2))
        nodes[i1, i2] = v
        return v

    build(0, Fs.n - 1)
    return MinPolyTree(nodes, Fs.n)
