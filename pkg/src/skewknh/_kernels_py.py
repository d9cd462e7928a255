"""Pure-Python inner loops for skew polynomial arithmetic.

Polynomials are lists of packed field elements in ascending degree with no
trailing zeros.  Every kernel updates the operation counters on its context
using the same cost model as the compiled twin in ``_kernels.pyx``; the two
must stay observationally identical (results and counts).
"""

from __future__ import annotations


class KernelCtx:
    __slots__ = ("field", "mu", "has_delta", "nmul", "nadd", "ninv", "nsig", "ndel",
                 "_mul", "_add", "_neg", "_inv", "_sig", "_dlt")

    def __init__(self, field):
        self.field = field
        self.mu = field.mu
        self.has_delta = field.has_delta
        self.nmul = self.nadd = self.ninv = self.nsig = self.ndel = 0
        self._mul = field._mul
        self._add = field._add
        self._neg = field._neg
        self._inv = field._inv
        self._sig = field._sig
        self._dlt = field._dlt


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _twists(kc, g, count, e):
    """g twisted by sigma^(e t) for t = 0..count-1."""
    sig = kc._sig
    out = [g]
    for t in range(1, count):
        out.append([sig(x, e * t) for x in g])
    if count > 1:
        kc.nsig += (count - 1) * len(g)
    return out


def mul(kc, f, g, e=1):
    """Skew product f*g.  With delta = 0 the twist sigma may be replaced by
    sigma^e (e = -1 gives the reversed ring used by Newton inversion)."""
    if not f or not g:
        return []
    lf, lg = len(f), len(g)
    m, a = kc._mul, kc._add
    h = [0] * (lf + lg - 1)
    if not kc.has_delta:
        mu = kc.mu
        tw = _twists(kc, g, min(lf, mu), e)
        rows = 0
        for i, fi in enumerate(f):
            if fi == 0:
                continue
            rows += 1
            gt = tw[i % mu]
            for j, gj in enumerate(gt):
                h[i + j] = a(h[i + j], m(fi, gj))
        kc.nmul += rows * lg
        kc.nadd += rows * lg
        return _trim(h)
    if e % kc.mu != 1 % kc.mu:
        raise ValueError("twisted products need delta = 0")
    cur = list(g)
    for i, fi in enumerate(f):
        if fi:
            for j, cj in enumerate(cur):
                h[j] = a(h[j], m(fi, cj))
            kc.nmul += len(cur)
            kc.nadd += len(cur)
        if i < lf - 1:
            cur = xmul(kc, cur)
    return _trim(h)


def xmul(kc, f):
    """x*f using x a = sigma(a) x + delta(a)."""
    if not f:
        return []
    sig = kc._sig
    if kc.mu > 1:
        kc.nsig += len(f)
    if not kc.has_delta:
        return [0] + [sig(c) for c in f]
    dlt, a = kc._dlt, kc._add
    out = [0] * (len(f) + 1)
    for j, c in enumerate(f):
        out[j + 1] = a(out[j + 1], sig(c))
        out[j] = a(out[j], dlt(c))
    kc.ndel += len(f)
    kc.nadd += len(f)
    return _trim(out)


def rdivmod(kc, f, g):
    """(q, r) with f = q*g + r and deg r < deg g."""
    lf, lg = len(f), len(g)
    if lg == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    if lf < lg:
        return [], list(f)
    K = lf - lg
    m, a, neg = kc._mul, kc._add, kc._neg
    inv_lc = kc._inv(g[-1])
    kc.ninv += 1
    r = list(f)
    q = [0] * (K + 1)
    if not kc.has_delta:
        mu = kc.mu
        tw = _twists(kc, list(g[:-1]) + [inv_lc], min(K + 1, mu), 1)
        for k in range(K, -1, -1):
            c = r[k + lg - 1]
            if c == 0:
                continue
            t = tw[k % mu]
            coef = m(c, t[lg - 1])
            q[k] = coef
            nc = neg(coef)
            for j in range(lg - 1):
                r[k + j] = a(r[k + j], m(nc, t[j]))
            r[k + lg - 1] = 0
            kc.nmul += lg
            kc.nadd += lg - 1
        return _trim(q), _trim(r[:lg - 1])
    sig = kc._sig
    powers = [list(g)]
    for _ in range(K):
        powers.append(xmul(kc, powers[-1]))
    for k in range(K, -1, -1):
        c = r[k + lg - 1]
        if c == 0:
            continue
        if k % kc.mu:
            kc.nsig += 1
        coef = m(c, sig(inv_lc, k))
        q[k] = coef
        nc = neg(coef)
        pk = powers[k]
        for j in range(k + lg - 1):
            r[j] = a(r[j], m(nc, pk[j]))
        r[k + lg - 1] = 0
        kc.nmul += k + lg
        kc.nadd += k + lg - 1
    return _trim(q), _trim(r[:lg - 1])


def op_eval(kc, f, c, b):
    """sum_i f_i D_b^i(c) with D_b(c) = sigma(c) b + delta(c)."""
    if not f:
        return 0
    m, a, sig = kc._mul, kc._add, kc._sig
    dlt = kc._dlt if kc.has_delta else None
    acc = 0
    t = c
    n = len(f)
    for i, fi in enumerate(f):
        if i:
            t2 = m(sig(t), b)
            if dlt is not None:
                t2 = a(t2, dlt(t))
            t = t2
        acc = a(acc, m(fi, t))
    kc.nmul += 2 * n - 1
    kc.nadd += n
    if kc.mu > 1:
        kc.nsig += n - 1
    if dlt is not None:
        kc.ndel += n - 1
        kc.nadd += n - 1
    return acc


def add(kc, f, g):
    a = kc._add
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for j, gj in enumerate(g):
        out[j] = a(out[j], gj)
    kc.nadd += len(g)
    return _trim(out)


def sub(kc, f, g):
    a, neg = kc._add, kc._neg
    n = max(len(f), len(g))
    out = list(f) + [0] * (n - len(f))
    for j, gj in enumerate(g):
        out[j] = a(out[j], neg(gj))
    kc.nadd += min(len(f), len(g))
    return _trim(out)


def axpy(kc, f, c, g):
    """f + c*g for a scalar c."""
    if c == 0 or not g:
        return list(f)
    m, a = kc._mul, kc._add
    n = max(len(f), len(g))
    out = list(f) + [0] * (n - len(f))
    for j, gj in enumerate(g):
        out[j] = a(out[j], m(c, gj))
    kc.nmul += len(g)
    kc.nadd += min(len(f), len(g))
    return _trim(out)


def scale(kc, c, f):
    if c == 0 or not f:
        return []
    m = kc._mul
    kc.nmul += len(f)
    return [m(c, x) for x in f]


def twist(kc, f, k):
    """Apply sigma^k to every coefficient."""
    if k % kc.mu == 0 or not f:
        return list(f)
    sig = kc._sig
    kc.nsig += len(f)
    return [sig(x, k) for x in f]
