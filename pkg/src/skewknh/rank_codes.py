"""Gabidulin codes on top of the interpolation solvers.

Codewords are operator evaluations c_i = f(g_i) with b = 1 of a message
polynomial f of degree < k.  Decoding interpolates (Q_0, Q_1) with
Q_0(g_i) + Q_1(r_i) = 0 and weights (0, k - 1), then recovers f as the exact
left quotient of -Q_0 by Q_1.  Rank is measured over the fixed field of
sigma, which is F_p because the code requires gcd(r, m) = 1.
"""

from __future__ import annotations

import math
import random
from typing import Sequence

from .field import FieldCtx
from .functionals import FunctionalSet
from .knh import knh_interpolate
from .knh_fast import solve_interpolation
from .module import LengthMismatch, wdeg
from .ring import SkewPoly, left_divmod, op_eval


class DegreeTooLarge(ValueError):
    pass


class RankInfeasible(ValueError):
    pass


class DecodingFailure:
    """Decoder result when no codeword within the radius was found (falsy)."""

    __slots__ = ("reason",)

    def __init__(self, reason: str):
        self.reason = reason

    def __bool__(self) -> bool:
        return False

    def __eq__(self, other) -> bool:
        return isinstance(other, DecodingFailure)

    def __hash__(self) -> int:
        return hash(DecodingFailure)

    def __repr__(self) -> str:
        return f"DecodingFailure({self.reason!r})"


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        prow = [v * inv % p for v in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def q_rank(F: FieldCtx, word: Sequence[int]) -> int:
    """Rank over F_p of the m x n matrix of base-p digits of the word."""
    if not word:
        return 0
    return _rank_mod_p([list(F.coeffs(a)) for a in word], F.p)


class GabidulinCode:
    """[n, k] Gabidulin code over F_{p^m} with evaluation points g."""

    def __init__(self, field: FieldCtx, n: int, k: int, g: Sequence[int] | None = None):
        if field.has_delta or field.gamma:
            raise ValueError("Gabidulin codes need delta = 0")
        if field.m > 1 and math.gcd(field.aut_power, field.m) != 1:
            raise ValueError("sigma must generate the Galois group (gcd(r, m) = 1)")
        if not 0 < n <= field.m:
            raise ValueError(f"length must satisfy 0 < n <= m = {field.m}")
        if not 0 < k < n:
            raise ValueError("dimension must satisfy 0 < k < n")
        if g is None:
            g = [field.p ** i for i in range(n)]    # z^0 .. z^(n-1)
        g = tuple(int(a) for a in g)
        if len(g) != n:
            raise LengthMismatch(f"{len(g)} evaluation points for length {n}")
        if q_rank(field, g) != n:
            raise ValueError("evaluation points are not linearly independent over F_p")
        self.field = field
        self.n = n
        self.k = k
        self.g = g

    @property
    def radius(self) -> int:
        return (self.n - self.k) // 2

    def __repr__(self) -> str:
        return f"GabidulinCode(n={self.n}, k={self.k}, field=F_{self.field.p}^{self.field.m})"


def gabidulin_encode(code: GabidulinCode, f: SkewPoly) -> list[int]:
    if f.deg >= code.k:
        raise DegreeTooLarge(f"message degree {f.deg} is not below k = {code.k}")
    return [op_eval(f, gi, 1) for gi in code.g]


def random_message(code: GabidulinCode, rng: random.Random) -> SkewPoly:
    return SkewPoly(code.field, [rng.randrange(code.field.order) for _ in range(code.k)])


def random_rank_error(n: int, t: int, ctx: FieldCtx, seed: int) -> list[int]:
    """Length-n word of rank exactly t: sum over l of a_l * lambda_l with a_l
    independent in F_{p^m} and lambda_l independent in F_p^n."""
    if not 0 <= t <= min(n, ctx.m):
        raise RankInfeasible(f"rank {t} impossible for length {n} over F_{ctx.p}^{ctx.m}")
    rng = random.Random(seed)
    if t == 0:
        return [0] * n
    while True:
        a = [rng.randrange(1, ctx.order) for _ in range(t)]
        if q_rank(ctx, a) == t:
            break
    while True:
        lam = [[rng.randrange(ctx.p) for _ in range(n)] for _ in range(t)]
        if _rank_mod_p(lam, ctx.p) == t:
            break
    out = []
    for j in range(n):
        acc = 0
        for al, row in zip(a, lam):
            if row[j]:
                acc = ctx._add(acc, ctx._mul(al, row[j]))
        out.append(acc)
    return out


def build_decoding_instance(code: GabidulinCode, r: Sequence[int]):
    """Functionals E_i(Q) = Q_0(g_i) + Q_1(r_i) (operator family, b = 1) and
    weights (0, k - 1)."""
    if len(r) != code.n:
        raise LengthMismatch(f"received word has length {len(r)}, code length is {code.n}")
    Fs = FunctionalSet("operator", code.field, [(gi, ri) for gi, ri in zip(code.g, r)],
                       [1] * code.n)
    return Fs, (0, code.k - 1)


def gabidulin_decode(code: GabidulinCode, r: Sequence[int], solver: str = "fast"):
    """Message polynomial, or a DecodingFailure result."""
    F = code.field
    Fs, w = build_decoding_instance(code, r)
    if solver == "fast":
        B, d, _ = solve_interpolation(Fs, w)
    elif solver == "baseline":
        B, d = knh_interpolate(Fs, w)
    else:
        raise ValueError(f"unknown solver {solver!r}")
    for j in sorted(range(len(B)), key=lambda j: (wdeg(B[j], w), j)):
        Q0, Q1 = B[j]
        if not Q1.c:
            continue
        f, rem = left_divmod(-Q0, Q1)
        if rem.c or f.deg >= code.k:
            continue
        c = gabidulin_encode(code, f)
        if q_rank(F, [F.sub(a, b) for a, b in zip(r, c)]) <= code.radius:
            return f
    return DecodingFailure("no interpolation row yields a codeword within the decoding radius")
