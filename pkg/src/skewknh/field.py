"""Arithmetic in F_{p^m} with a Frobenius-power automorphism and an inner derivation.

Elements are plain Python ints holding the packed base-p digits of the
residue class, ``a = c_0 + c_1 p + ... + c_{m-1} p^{m-1}`` with ``c_i`` the
coefficient of ``z^i`` in ``F_p[z]/(h(z))``.  Fields with at most
``TABLE_LIMIT`` elements get exp/log (and Zech) tables; larger fields fall
back to digit-level polynomial arithmetic.

The automorphism is ``sigma(a) = a^(p^r)`` and the derivation is the inner one
``delta(a) = gamma * (sigma(a) - a)``; ``gamma = 0`` gives ``delta = 0``.
"""

from __future__ import annotations

import math
from array import array
from contextlib import contextmanager
from typing import Iterable, Sequence

import numpy as np

TABLE_LIMIT = 1 << 20
_BRUTE_LIMIT = 1 << 20

FieldElem = int


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class Reducible(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


# ---------------------------------------------------------------------------
# helpers over F_p[z] (dense ascending lists)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factorize(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _ptrim(list(a))
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _ptrim(a)
    return a


def _pmulmod(a: list[int], b: list[int], h: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, h, p)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: list[int], e: int, h: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, h, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, h, p)
        base = _pmulmod(base, base, h, p)
        e >>= 1
    return result


def _has_small_factor(h: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..m//2."""
    m = len(h) - 1
    for d in range(1, m // 2 + 1):
        for low in range(p ** d):
            cand = [(low // p ** i) % p for i in range(d)] + [1]
            if not _pmod(h, cand, p):
                return True
    return False


def _rabin_irreducible(h: list[int], p: int) -> bool:
    m = len(h) - 1
    x = [0, 1]
    if _ppowmod(x, p ** m, h, p) != _ptrim(_pmod(x, h, p)):
        return False
    for q in _factorize(m):
        t = _ppowmod(x, p ** (m // q), h, p)
        diff = list(t) + [0] * max(0, 2 - len(t))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(h, _ptrim(diff), p)
        if len(g) > 1:
            return False
    return True


def is_irreducible(h: Sequence[int], p: int) -> bool:
    h = [c % p for c in h]
    m = len(h) - 1
    if m < 1 or h[-1] == 0:
        return False
    if m == 1:
        return True
    if h[0] == 0:
        return False
    if p ** m <= _BRUTE_LIMIT:
        return not _has_small_factor(h, p)
    return _rabin_irreducible(h, p)


def smallest_irreducible(p: int, m: int) -> list[int]:
    """Monic irreducible of degree m whose lower coefficients, read as the
    base-p integer c_0 + c_1 p + ..., are smallest."""
    for low in range(p ** m):
        cand = [(low // p ** i) % p for i in range(m)] + [1]
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {m} over F_{p}")


# ---------------------------------------------------------------------------


class OpCounts:
    """Snapshot of field-operation counters."""

    __slots__ = ("mul", "add", "inv", "sigma", "delta")

    def __init__(self, mul=0, add=0, inv=0, sigma=0, delta=0):
        self.mul, self.add, self.inv, self.sigma, self.delta = mul, add, inv, sigma, delta

    def as_dict(self) -> dict:
        return {"mul": self.mul, "add": self.add, "inv": self.inv,
                "sigma": self.sigma, "delta": self.delta}

    def __add__(self, other: "OpCounts") -> "OpCounts":
        return OpCounts(*(getattr(self, k) + getattr(other, k) for k in self.__slots__))

    def __repr__(self) -> str:
        return "OpCounts(" + ", ".join(f"{k}={getattr(self, k)}" for k in self.__slots__) + ")"


class FieldCtx:
    """The field F_{p^m} = F_p[z]/(modulus) together with sigma and delta.

    ``aut_power`` is r in sigma(a) = a^(p^r); ``gamma`` parameterises the
    derivation.  Instances are treated as immutable.
    """

    def __init__(self, p: int, m: int, modulus: Sequence[int] | None = None,
                 aut_power: int | None = None, gamma: int | Sequence[int] = 0):
        if p < 2 or not is_prime(p):
            raise NotPrime(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError("extension degree must be >= 1")
        if modulus is None:
            modulus = smallest_irreducible(p, m)
        else:
            modulus = [int(c) % p for c in modulus]
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise FieldError(f"modulus must be monic of degree {m}")
            if not is_irreducible(modulus, p):
                raise Reducible(f"modulus {modulus} is reducible over F_{p}")
        if aut_power is None:
            aut_power = 1 if m > 1 else 0
        if not 0 <= aut_power < m:
            raise FieldError(f"aut_power must lie in [0, {m})")
        self.p = p
        self.m = m
        self.order = p ** m
        self.modulus = tuple(modulus)
        self.aut_power = aut_power
        # order of sigma as an automorphism
        self.mu = m // math.gcd(aut_power, m) if aut_power else 1
        # sigma^k(a) = a^(p^(r k)); exponents kept mod (order - 1)
        self._frob = [pow(p, aut_power * k, self.order - 1) if self.order > 2 else 1
                      for k in range(self.mu)]
        self.has_tables = self.order <= TABLE_LIMIT
        if self.has_tables:
            self._build_tables()
        self.gamma = self.elem(gamma) if not isinstance(gamma, int) else gamma % self.order
        if not 0 <= self.gamma < self.order:
            raise FieldError("gamma out of range")
        self.has_delta = self.gamma != 0 and self.mu > 1
        self._counts = [0, 0, 0, 0, 0]
        self._kernel = None

    # -- encoding ---------------------------------------------------------

    def elem(self, coeffs: Iterable[int]) -> int:
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.m:
            coeffs = _pmod(coeffs, list(self.modulus), self.p)
        return sum(c * self.p ** i for i, c in enumerate(coeffs))

    def coeffs(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.m):
            a, c = divmod(a, p)
            out.append(c)
        return tuple(out)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    @property
    def z(self) -> int:
        """Class of the indeterminate z (the usual generator alpha)."""
        return self.elem([0, 1])

    def elements(self) -> range:
        return range(self.order)

    def from_int(self, k: int) -> int:
        """Image of the integer k under Z -> F_p -> F_{p^m}."""
        return k % self.p

    def fmt(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self.coeffs(a)):
            if c:
                mono = "1" if i == 0 else ("z" if i == 1 else f"z^{i}")
                terms.append(mono if c == 1 and i else (str(c) if i == 0 else f"{c}{mono}"))
        return "+".join(reversed(terms)) if terms else "0"

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus),
                "aut_power": self.aut_power, "gamma": list(self.coeffs(self.gamma))}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldCtx":
        gamma = obj.get("gamma", 0)
        return cls(int(obj["p"]), int(obj["m"]), obj.get("modulus"),
                   obj.get("aut_power"), gamma if isinstance(gamma, int) else list(gamma))

    def with_params(self, aut_power: int | None = None, gamma: int | None = None) -> "FieldCtx":
        return FieldCtx(self.p, self.m, self.modulus,
                        self.aut_power if aut_power is None else aut_power,
                        self.gamma if gamma is None else gamma)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldCtx) and self.p == other.p and self.m == other.m
                and self.modulus == other.modulus and self.aut_power == other.aut_power
                and self.gamma == other.gamma)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus, self.aut_power, self.gamma))

    def __repr__(self) -> str:
        return (f"FieldCtx(p={self.p}, m={self.m}, modulus={list(self.modulus)}, "
                f"aut_power={self.aut_power}, gamma={self.fmt(self.gamma)})")

    # -- tables -------------------------------------------------------------

    def _mul_matrix(self, g: int) -> np.ndarray:
        """Matrix of a -> a*g on coefficient rows (row i is the image of z^i)."""
        zi = 1
        rows = []
        for _ in range(self.m):
            rows.append(self.coeffs(self._mul_slow(zi, g)))
            zi *= self.p
        return np.array(rows, dtype=np.int64)

    def _build_tables(self) -> None:
        Q, p, m = self.order, self.p, self.m
        q1 = Q - 1
        gen = self._find_generator()
        # powers gen^k in blocks: rows for k < blk, then repeated products by gen^blk
        blk = max(1, math.isqrt(q1))
        step = self._mul_matrix(gen)
        first = np.zeros((blk, m), dtype=np.int64)
        first[0, 0] = 1
        for k in range(1, blk):
            first[k] = first[k - 1] @ step % p
        jump = self._mul_matrix(self._pow_slow(gen, blk))
        parts, cur = [], first
        for _ in range(-(-q1 // blk)):
            parts.append(cur)
            cur = cur @ jump % p
        coeff_rows = np.concatenate(parts)[:q1]
        powers = coeff_rows @ (p ** np.arange(m, dtype=np.int64))
        log_np = np.full(Q, -1, dtype=np.int64)
        log_np[powers] = np.arange(q1, dtype=np.int64)
        exp = array("q", np.concatenate([powers, powers, powers[:1]]).tobytes())
        log = array("q", log_np.tobytes())
        self._gen = gen
        self._exp = exp
        self._log = log
        self._q1 = q1
        if p == 2:
            self._zech = None
            self._half = 0
        else:
            self._half = q1 // 2
            # log(1 + a) from log a: add one to the constant digit
            low = powers % p
            succ = powers - low + (low + 1) % p
            zech_np = np.where(succ != 0, log_np[succ], -1)
            self._zech = array("q", zech_np.astype(np.int64).tobytes())

    def _find_generator(self) -> int:
        Q = self.order
        if Q == 2:
            return 1
        factors = _factorize(Q - 1)
        for g in range(2 if Q > 2 else 1, Q):
            if all(self._pow_slow(g, (Q - 1) // f) != 1 for f in factors):
                return g
        raise FieldError("no primitive element found")

    # -- slow digit arithmetic (table construction and large fields) ---------

    def _add_slow(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        out, pw = 0, 1
        while a or b:
            a, ca = divmod(a, p)
            b, cb = divmod(b, p)
            out += ((ca + cb) % p) * pw
            pw *= p
        return out

    def _neg_slow(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        out, pw = 0, 1
        while a:
            a, c = divmod(a, p)
            out += ((-c) % p) * pw
            pw *= p
        return out

    def _mul_slow(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        p, h = self.p, list(self.modulus)
        return self.elem(_pmulmod(list(self.coeffs(a)), list(self.coeffs(b)), h, p))

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    # -- counted public arithmetic -----------------------------------------

    def add(self, a: int, b: int) -> int:
        self._counts[1] += 1
        return self._add(a, b)

    def sub(self, a: int, b: int) -> int:
        self._counts[1] += 1
        return self._add(a, self._neg(b))

    def neg(self, a: int) -> int:
        return self._neg(a)

    def mul(self, a: int, b: int) -> int:
        self._counts[0] += 1
        return self._mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        self._counts[2] += 1
        return self._inv(a)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.has_tables:
            self._counts[0] += 1
            return self._exp[(self._log[a] * e) % self._q1]
        return self._pow_slow(a, e)

    def sigma(self, a: int, k: int = 1) -> int:
        """k-fold iterate of the automorphism (negative k allowed)."""
        self._counts[3] += 1
        return self._sig(a, k)

    def delta(self, a: int) -> int:
        self._counts[4] += 1
        return self._dlt(a)

    def arith(self, op: str, a: int, b: int = 0) -> int:
        if op == "add":
            return self.add(a, b)
        if op == "sub":
            return self.sub(a, b)
        if op == "mul":
            return self.mul(a, b)
        if op == "inv":
            return self.inv(a)
        if op == "pow":
            return self.pow(a, b)
        raise ValueError(f"unknown field operation {op!r}")

    # -- uncounted primitives used by kernels -------------------------------

    def _add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if not self.has_tables:
            return self._add_slow(a, b)
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        d = self._log[b] - la
        if d < 0:
            d += self._q1
        z = self._zech[d]
        return 0 if z < 0 else self._exp[la + z]

    def _neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        if not self.has_tables:
            return self._neg_slow(a)
        return self._exp[self._log[a] + self._half]

    def _mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.has_tables:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def _inv(self, a: int) -> int:
        if self.has_tables:
            return self._exp[self._q1 - self._log[a]]
        return self._pow_slow(a, self.order - 2)

    def _sig(self, a: int, k: int = 1) -> int:
        k %= self.mu
        if k == 0 or a == 0:
            return a
        if self.has_tables:
            return self._exp[(self._log[a] * self._frob[k]) % self._q1]
        return self._pow_slow(a, self.p ** (self.aut_power * k))

    def _dlt(self, a: int) -> int:
        if not self.has_delta:
            return 0
        return self._mul(self.gamma, self._add(self._sig(a, 1), self._neg(a)))

    # -- counting -------------------------------------------------------------

    def kernel(self):
        """Kernel context (compiled when available) bound to this field."""
        if self._kernel is None:
            from . import kernels
            self._kernel = kernels.make_context(self)
        return self._kernel

    def snapshot(self) -> OpCounts:
        c = self._counts
        kc = self._kernel
        if kc is None:
            return OpCounts(*c)
        return OpCounts(c[0] + kc.nmul, c[1] + kc.nadd, c[2] + kc.ninv,
                        c[3] + kc.nsig, c[4] + kc.ndel)

    @contextmanager
    def counting(self):
        """Yield an OpCounts filled in with the operations done inside the block.

        Counters are per field context and per process.
        """
        start = self.snapshot()
        box = OpCounts()
        try:
            yield box
        finally:
            end = self.snapshot()
            for k in OpCounts.__slots__:
                setattr(box, k, getattr(end, k) - getattr(start, k))


def field_make(p: int, m: int, modulus: Sequence[int] | None = None,
               aut_power: int | None = None, gamma: int | Sequence[int] = 0) -> FieldCtx:
    return FieldCtx(p, m, modulus, aut_power, gamma)
