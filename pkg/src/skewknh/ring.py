"""The skew polynomial ring F_{p^m}[x; sigma, delta].

Products follow ``x a = sigma(a) x + delta(a)``.  Polynomials are stored as
lists of packed field elements, ascending in degree, without trailing zeros.

Two arithmetic paths exist.  The schoolbook kernels are always available.
When delta = 0 and the fast path is enabled (see :func:`fast_arithmetic`),
products of long operands use Karatsuba splitting at multiples of the order
mu of sigma, where x^mu is central, and right division switches to Newton
inversion of the reversed divisor in F[[y; sigma^-1]] when a count estimate
says it is cheaper than schoolbook.  Both paths return identical results.
"""

from __future__ import annotations

import contextvars
from contextlib import contextmanager
from functools import lru_cache
from typing import Iterable, Sequence

from .field import DivisionByZero, FieldCtx

NEG_INF = float("-inf")

_FAST_THRESHOLD: contextvars.ContextVar[int | None] = contextvars.ContextVar(
    "skewknh_fast_threshold", default=32)


class BothZero(ValueError):
    pass


@contextmanager
def fast_arithmetic(threshold: int | None = 32):
    """Enable (threshold = operand length cut-off) or disable (None) the
    Karatsuba/Newton path inside the block."""
    if threshold is not None and threshold < 2:
        raise ValueError("threshold must be at least 2")
    token = _FAST_THRESHOLD.set(threshold)
    try:
        yield
    finally:
        _FAST_THRESHOLD.reset(token)


def fast_threshold() -> int | None:
    return _FAST_THRESHOLD.get()


class SkewPoly:
    """An element of F[x; sigma, delta]; treat as immutable."""

    __slots__ = ("field", "c", "_rinv")

    def __init__(self, field: FieldCtx, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.c = c
        self._rinv = None

    @classmethod
    def _raw(cls, field: FieldCtx, c: list) -> "SkewPoly":
        obj = cls.__new__(cls)
        obj.field = field
        obj.c = c
        obj._rinv = None
        return obj

    @classmethod
    def x(cls, field: FieldCtx) -> "SkewPoly":
        return cls._raw(field, [0, 1])

    @classmethod
    def const(cls, field: FieldCtx, a: int) -> "SkewPoly":
        return cls._raw(field, [a] if a else [])

    @classmethod
    def monomial(cls, field: FieldCtx, a: int, k: int) -> "SkewPoly":
        return cls._raw(field, [0] * k + [a] if a else [])

    # -- basic queries ----------------------------------------------------

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.c)

    @property
    def deg(self):
        """Degree, or -inf for the zero polynomial."""
        return len(self.c) - 1 if self.c else NEG_INF

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    @property
    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def __getitem__(self, i: int) -> int:
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __len__(self) -> int:
        return len(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, SkewPoly):
            return self.c == other.c and self.field == other.field
        if isinstance(other, int):
            return self.c == ([other] if other else [])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self.c))

    def monic(self) -> "SkewPoly":
        if not self.c or self.c[-1] == 1:
            return self
        inv = self.field.inv(self.c[-1])
        return SkewPoly._raw(self.field, self.field.kernel().scale(inv, self.c))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "SkewPoly":
        if isinstance(other, SkewPoly):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("polynomials over different rings")
            return other
        if isinstance(other, int):
            return SkewPoly.const(self.field, other)
        raise TypeError(f"cannot combine SkewPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return SkewPoly._raw(self.field, self.field.kernel().add(self.c, other.c))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return SkewPoly._raw(self.field, self.field.kernel().sub(self.c, other.c))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return SkewPoly._raw(self.field, self.field.kernel().sub([], self.c))

    def __mul__(self, other):
        other = self._coerce(other)
        return skew_mul(self, other)

    def __rmul__(self, other):
        # int * poly is the left scalar multiple
        return skew_mul(self._coerce(other), self)

    def scale(self, a: int) -> "SkewPoly":
        """Left scalar multiple a*f."""
        return SkewPoly._raw(self.field, self.field.kernel().scale(a, self.c))

    def __repr__(self) -> str:
        return f"SkewPoly({self.pretty()})"

    def pretty(self, var: str = "x") -> str:
        F = self.field
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            s = F.fmt(a)
            if "+" in s and mono:
                s = f"({s})"
            if mono:
                terms.append(mono if a == 1 else f"{s}*{mono}")
            else:
                terms.append(s)
        return " + ".join(terms)

    def to_json(self) -> list:
        return [list(self.field.coeffs(a)) for a in self.c]

    @classmethod
    def from_json(cls, field: FieldCtx, obj: Sequence) -> "SkewPoly":
        return cls(field, [field.elem(a) if not isinstance(a, int) else a % field.order
                           for a in obj])


def poly(field: FieldCtx, coeffs: Iterable[int]) -> SkewPoly:
    return SkewPoly(field, coeffs)


# ---------------------------------------------------------------------------
# list-level arithmetic shared by the algorithm modules


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _add_at(kc, acc: list, part: list, off: int) -> None:
    """acc += part * x^off, in place; acc must already be long enough."""
    n = len(part)
    if not n:
        return
    seg = kc.add(acc[off:off + n], part)
    seg.extend([0] * (n - len(seg)))
    acc[off:off + n] = seg


def _karatsuba(kc, f: list, g: list, e: int, th: int) -> list:
    lf, lg = len(f), len(g)
    if not lf or not lg:
        return []
    short, long_ = (lf, lg) if lf <= lg else (lg, lf)
    if short <= th:
        return kc.mul(f, g, e)
    mu = kc.mu
    k = -(-((long_ + 1) // 2) // mu) * mu
    if k >= short:
        blk = -(-short // mu) * mu
        if blk >= long_:
            return kc.mul(f, g, e)
        out = [0] * (lf + lg - 1)
        for start in range(0, long_, blk):
            if lf >= lg:
                piece = _trim(f[start:start + blk])
                prod = _karatsuba(kc, piece, g, e, th)
            else:
                piece = _trim(g[start:start + blk])
                prod = _karatsuba(kc, f, piece, e, th)
            _add_at(kc, out, prod, start)
        return _trim(out)
    f0, f1 = _trim(f[:k]), f[k:]
    g0, g1 = _trim(g[:k]), g[k:]
    p0 = _karatsuba(kc, f0, g0, e, th)
    p2 = _karatsuba(kc, f1, g1, e, th)
    mid = _karatsuba(kc, kc.add(f0, f1), kc.add(g0, g1), e, th)
    mid = kc.sub(kc.sub(mid, p0), p2)
    out = [0] * (lf + lg - 1)
    _add_at(kc, out, p0, 0)
    _add_at(kc, out, mid, k)
    _add_at(kc, out, p2, 2 * k)
    return _trim(out)


@lru_cache(maxsize=4096)
def _mul_cost(a: int, b: int, th: int, mu: int) -> int:
    """Field multiplications _karatsuba spends on dense operands of lengths a, b."""
    short, long_ = (a, b) if a <= b else (b, a)
    if short <= th:
        return a * b
    k = -(-((long_ + 1) // 2) // mu) * mu
    if k >= short:
        blk = -(-short // mu) * mu
        if blk >= long_:
            return a * b
        full, rest = divmod(long_, blk)
        return full * _mul_cost(short, blk, th, mu) + (_mul_cost(short, rest, th, mu) if rest else 0)
    return (_mul_cost(k, k, th, mu) + _mul_cost(short - k, long_ - k, th, mu)
            + _mul_cost(k, k, th, mu))


def _newton_pays(nq: int, lg: int, have: int, th: int, mu: int) -> bool:
    """Compare the estimated Newton division cost against schoolbook nq*lg."""
    cost = _mul_cost(nq, nq, th, mu) + _mul_cost(nq, lg, th, mu)
    prec = have
    while prec < nq:
        prec = min(2 * prec, nq) if prec else 1
        cost += 2 * _mul_cost(prec, prec, th, mu)
    return cost < nq * lg


def mul_lists(field: FieldCtx, f: list, g: list, e: int = 1) -> list:
    kc = field.kernel()
    th = _FAST_THRESHOLD.get()
    if th is None or field.has_delta:
        return kc.mul(f, g, e)
    return _karatsuba(kc, f, g, e, th)


def _series_inverse(field: FieldCtx, h: list, n: int, cached=None) -> list:
    """v with h*v = 1 mod y^n in F[[y; sigma^-1]] (delta = 0)."""
    kc = field.kernel()
    if cached is not None and cached[1] >= n:
        return cached[0][:n]
    if cached is not None:
        v, prec = list(cached[0]), cached[1]
    else:
        v, prec = [field.inv(h[0])], 1
    while prec < n:
        prec = min(2 * prec, n)
        hv = mul_lists(field, _trim(h[:prec]), v, -1)[:prec]
        err = kc.sub([1], hv)
        corr = mul_lists(field, v, err, -1)[:prec]
        v = kc.add(v, corr)[:prec]
    return v


def rdivmod_lists(field: FieldCtx, f: list, g: list, gobj: SkewPoly | None = None):
    """Right division on coefficient lists: f = q*g + r with deg r < deg g.

    ``gobj`` (the divisor as a SkewPoly) lets the Newton path cache the
    inverse of the reversed divisor across calls.
    """
    if not g:
        raise DivisionByZero("division by the zero polynomial")
    kc = field.kernel()
    lf, lg = len(f), len(g)
    if lf < lg:
        return [], list(f)
    th = _FAST_THRESHOLD.get()
    nq = lf - lg + 1
    if th is None or field.has_delta or nq <= th or lg <= th:
        return kc.rdivmod(f, g)
    cached = gobj._rinv if gobj is not None else None
    if not _newton_pays(nq, lg, cached[1] if cached else 0, th, field.mu):
        return kc.rdivmod(f, g)
    dq = nq - 1
    inv = _series_inverse(field, g[::-1], nq, cached)
    if gobj is not None and (cached is None or cached[1] < nq):
        gobj._rinv = (inv, nq)
    rq = mul_lists(field, _trim(f[::-1][:nq]), kc.twist(_trim(list(inv)), dq), -1)[:nq]
    rq.extend([0] * (nq - len(rq)))
    q = _trim(rq[::-1])
    prod = mul_lists(field, q, g)
    r = kc.sub(f[:lg - 1], prod[:lg - 1])
    return q, r


def rmod_lists(field: FieldCtx, f: list, g: list, gobj: SkewPoly | None = None) -> list:
    if len(f) < len(g):
        return list(f)
    return rdivmod_lists(field, f, g, gobj)[1]


# ---------------------------------------------------------------------------
# public operations


def _same_field(f: SkewPoly, g: SkewPoly) -> FieldCtx:
    if f.field is not g.field and f.field != g.field:
        raise ValueError("polynomials over different rings")
    return f.field


def skew_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    F = _same_field(f, g)
    return SkewPoly._raw(F, mul_lists(F, f.c, g.c))


def schoolbook_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    F = _same_field(f, g)
    return SkewPoly._raw(F, F.kernel().mul(f.c, g.c))


def right_divmod(f: SkewPoly, g: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """(q, r) with f = q*g + r and deg r < deg g."""
    F = _same_field(f, g)
    q, r = rdivmod_lists(F, f.c, g.c, g)
    return SkewPoly._raw(F, q), SkewPoly._raw(F, r)


def rmod(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    F = _same_field(f, g)
    if not g.c:
        raise DivisionByZero("division by the zero polynomial")
    return SkewPoly._raw(F, rmod_lists(F, f.c, g.c, g))


def left_divmod(f: SkewPoly, g: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """(q, r) with f = g*q + r and deg r < deg g."""
    F = _same_field(f, g)
    if not g.c:
        raise DivisionByZero("division by the zero polynomial")
    kc = F.kernel()
    dg = len(g.c) - 1
    inv_lc = F.inv(g.c[-1])
    r = list(f.c)
    q = [0] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg:
        k = len(r) - 1 - dg
        # g * (c x^k) has leading coefficient lc(g) sigma^dg(c)
        c = F.sigma(F.mul(r[-1], inv_lc), -dg)
        q[k] = c
        term = [0] * k + [c]
        r = kc.sub(r, mul_lists(F, g.c, term))
    return SkewPoly._raw(F, _trim(q)), SkewPoly._raw(F, r)


def gcrd_lclm(f: SkewPoly, g: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """Monic greatest common right divisor and least common left multiple,
    via the cofactor sequence of the right Euclidean algorithm."""
    F = _same_field(f, g)
    if not f.c and not g.c:
        raise BothZero("gcrd/lclm of two zero polynomials")
    if not f.c or not g.c:
        return (g if not f.c else f).monic(), SkewPoly(F)
    kc = F.kernel()
    r0, r1 = f.c, g.c
    s0, s1 = [1], []
    while r1:
        q, rem = rdivmod_lists(F, r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, kc.sub(s0, mul_lists(F, q, s1))
    # s1 * f + t1 * g = 0 (the remainder paired with s1 vanished)
    lclm = SkewPoly._raw(F, mul_lists(F, s1, f.c)).monic()
    return SkewPoly._raw(F, r0).monic(), lclm


def lclm(*polys: SkewPoly) -> SkewPoly:
    out = polys[0].monic()
    for p in polys[1:]:
        out = gcrd_lclm(out, p)[1]
    return out


def op_eval(f: SkewPoly, c: int, b: int = 1) -> int:
    """Generalized operator evaluation sum_i f_i D_b^i(c),
    D_b(c) = sigma(c) b + delta(c)."""
    return f.field.kernel().op_eval(f.c, c, b)


def rem_eval(f: SkewPoly, b: int) -> int:
    """Remainder of the right division of f by (x - b)."""
    # N_0 = 1, N_{i+1} = D_b(N_i) gives f mod_r (x - b) = sum f_i N_i(b)
    return f.field.kernel().op_eval(f.c, 1, b)


def conjugate_root(F: FieldCtx, u: int, b: int) -> int:
    """D_b(u) u^{-1}; the root a with op_eval(f, u, b) = rem_eval(f, a) u."""
    d = F.add(F.mul(F.sigma(u), b), F.delta(u))
    return F.mul(d, F.inv(u))


def annihilator(family: str, point: int, b: int, F: FieldCtx) -> SkewPoly:
    """Monic polynomial of least degree whose evaluation at the point vanishes.

    ``family`` is "operator" (point u, parameter b) or "remainder" (point p;
    b ignored).
    """
    if family == "operator":
        if point == 0:
            return SkewPoly._raw(F, [1])
        return SkewPoly._raw(F, _trim([F.neg(conjugate_root(F, point, b)), 1]))
    if family == "remainder":
        return SkewPoly._raw(F, _trim([F.neg(point), 1]))
    raise ValueError(f"unknown evaluation family {family!r}")


def evaluate(family: str, f: SkewPoly, point: int, b: int = 1) -> int:
    if family == "operator":
        return op_eval(f, point, b)
    if family == "remainder":
        return rem_eval(f, point)
    raise ValueError(f"unknown evaluation family {family!r}")


def min_poly_set(family: str, points: Sequence[int], bs: Sequence[int] | int | None,
                 F: FieldCtx) -> SkewPoly:
    """Monic LCLM of the annihilators of the points, built one point at a time."""
    if bs is None or isinstance(bs, int):
        bs = [1 if bs is None else bs] * len(points)
    m = SkewPoly._raw(F, [1])
    for pt, b in zip(points, bs):
        if family == "operator":
            e = op_eval(m, pt, b)
            if e:
                m = annihilator("operator", e, b, F) * m
        elif family == "remainder":
            e = rem_eval(m, pt)
            if e:
                # lclm(m, x - p) = (x - p^e) m with p^e = D_p(e) e^{-1}
                m = annihilator("operator", e, pt, F) * m
        else:
            raise ValueError(f"unknown evaluation family {family!r}")
    return m
