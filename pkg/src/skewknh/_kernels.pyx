# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops for skew polynomial arithmetic over table fields.

Same API, results and operation counts as ``_kernels_py``.
"""

from libc.stdlib cimport malloc, free

ctypedef long long i64



cdef class KernelCtx:
    cdef public object field
    cdef public int mu
    cdef public bint has_delta
    cdef public i64 nmul, nadd, ninv, nsig, ndel
    cdef const i64[:] exp_t
    cdef const i64[:] log_t
    cdef const i64[:] zech_t
    cdef i64 q1, half, gamma
    cdef bint char2
    cdef i64 frob[64]

    def __init__(self, field):
        if not field.has_tables:
            raise ValueError("compiled kernels need a table field")
        if field.mu > 64:
            raise ValueError("automorphism order too large for compiled kernels")
        self.field = field
        self.mu = field.mu
        self.has_delta = field.has_delta
        self.nmul = self.nadd = self.ninv = self.nsig = self.ndel = 0
        self.exp_t = field._exp
        self.log_t = field._log
        self.char2 = field.p == 2
        self.zech_t = field._zech if field._zech is not None else field._log
        self.q1 = field._q1
        self.half = field._half
        self.gamma = field.gamma
        cdef int k
        for k in range(self.mu):
            self.frob[k] = field._frob[k]

    cdef inline i64 fmul(self, i64 a, i64 b) noexcept nogil:
        if a == 0 or b == 0:
            return 0
        return self.exp_t[self.log_t[a] + self.log_t[b]]

    cdef inline i64 fadd(self, i64 a, i64 b) noexcept nogil:
        cdef i64 la, d, z
        if self.char2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log_t[a]
        d = self.log_t[b] - la
        if d < 0:
            d += self.q1
        z = self.zech_t[d]
        if z < 0:
            return 0
        return self.exp_t[la + z]

    cdef inline i64 fneg(self, i64 a) noexcept nogil:
        if self.char2 or a == 0:
            return a
        return self.exp_t[self.log_t[a] + self.half]

    cdef inline i64 finv(self, i64 a) noexcept nogil:
        return self.exp_t[self.q1 - self.log_t[a]]

    cdef inline i64 fsig(self, i64 a, i64 k) noexcept nogil:
        k = k % self.mu
        if k < 0:
            k += self.mu
        if k == 0 or a == 0:
            return a
        return self.exp_t[(self.log_t[a] * self.frob[k]) % self.q1]

    cdef inline i64 fdlt(self, i64 a) noexcept nogil:
        if not self.has_delta:
            return 0
        return self.fmul(self.gamma, self.fadd(self.fsig(a, 1), self.fneg(a)))


cdef i64* _carr(list f, Py_ssize_t n) except NULL:
    cdef i64* out = <i64*> malloc((n if n > 0 else 1) * sizeof(i64))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    cdef Py_ssize_t lf = len(f)
    for i in range(n):
        out[i] = f[i] if i < lf else 0
    return out


cdef list _trim(list a):
    cdef Py_ssize_t n = len(a)
    while n > 0 and a[n - 1] == 0:
        n -= 1
    del a[n:]
    return a


cdef list _tolist(i64* a, Py_ssize_t n):
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return [a[i] for i in range(n)]


def mul(KernelCtx kc, list f, list g, long e=1):
    cdef Py_ssize_t lf = len(f), lg = len(g), i, j, t, cnt, rows, ncur
    if lf == 0 or lg == 0:
        return []
    cdef i64* fa = _carr(f, lf)
    cdef i64* h = _carr([], lf + lg - 1)
    cdef i64* tw = NULL
    cdef i64* cur = NULL
    cdef i64* nxt = NULL
    cdef i64 fi, c
    cdef int mu = kc.mu
    try:
        for i in range(lf + lg - 1):
            h[i] = 0
        if not kc.has_delta:
            cnt = lf if lf < mu else mu
            tw = <i64*> malloc(cnt * lg * sizeof(i64))
            if tw == NULL:
                raise MemoryError()
            for j in range(lg):
                tw[j] = g[j]
            for t in range(1, cnt):
                for j in range(lg):
                    tw[t * lg + j] = kc.fsig(tw[j], e * t)
            if cnt > 1:
                kc.nsig += (cnt - 1) * lg
            rows = 0
            with nogil:
                for i in range(lf):
                    fi = fa[i]
                    if fi == 0:
                        continue
                    rows += 1
                    t = (i % mu) * lg
                    for j in range(lg):
                        h[i + j] = kc.fadd(h[i + j], kc.fmul(fi, tw[t + j]))
            kc.nmul += rows * lg
            kc.nadd += rows * lg
            return _tolist(h, lf + lg - 1)
        if (e - 1) % mu != 0:
            raise ValueError("twisted products need delta = 0")
        cur = _carr(g, lf + lg)
        nxt = _carr([], lf + lg)
        ncur = lg
        for i in range(lf):
            fi = fa[i]
            if fi != 0:
                for j in range(ncur):
                    h[j] = kc.fadd(h[j], kc.fmul(fi, cur[j]))
                kc.nmul += ncur
                kc.nadd += ncur
            if i < lf - 1:
                ncur = _xmul_into(kc, cur, ncur, nxt)
                cur, nxt = nxt, cur
        return _tolist(h, lf + lg - 1)
    finally:
        free(fa)
        free(h)
        if tw != NULL:
            free(tw)
        if cur != NULL:
            free(cur)
        if nxt != NULL:
            free(nxt)


cdef Py_ssize_t _xmul_into(KernelCtx kc, i64* f, Py_ssize_t n, i64* out):
    """out = x*f (delta != 0 path); returns trimmed length."""
    cdef Py_ssize_t j
    for j in range(n + 1):
        out[j] = 0
    for j in range(n):
        out[j + 1] = kc.fadd(out[j + 1], kc.fsig(f[j], 1))
        out[j] = kc.fadd(out[j], kc.fdlt(f[j]))
    if kc.mu > 1:
        kc.nsig += n
    kc.ndel += n
    kc.nadd += n
    n += 1
    while n > 0 and out[n - 1] == 0:
        n -= 1
    return n


def xmul(KernelCtx kc, list f):
    cdef Py_ssize_t n = len(f), j
    if n == 0:
        return []
    if not kc.has_delta:
        if kc.mu > 1:
            kc.nsig += n
        return [0] + [kc.fsig(f[j], 1) for j in range(n)]
    cdef i64* fa = _carr(f, n)
    cdef i64* out = _carr([], n + 1)
    cdef Py_ssize_t m
    try:
        m = _xmul_into(kc, fa, n, out)
        return [out[j] for j in range(m)]
    finally:
        free(fa)
        free(out)


def rdivmod(KernelCtx kc, list f, list g):
    cdef Py_ssize_t lf = len(f), lg = len(g), K, k, j, t, cnt, plen
    if lg == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    if lf < lg:
        return [], list(f)
    K = lf - lg
    cdef int mu = kc.mu
    cdef i64 inv_lc = kc.finv(g[lg - 1])
    kc.ninv += 1
    cdef i64* r = _carr(f, lf)
    cdef i64* q = _carr([], K + 1)
    cdef i64* tw = NULL
    cdef i64* pw = NULL
    cdef i64 c, coef, nc
    try:
        for k in range(K + 1):
            q[k] = 0
        if not kc.has_delta:
            cnt = (K + 1) if (K + 1) < mu else mu
            tw = <i64*> malloc(cnt * lg * sizeof(i64))
            if tw == NULL:
                raise MemoryError()
            for j in range(lg - 1):
                tw[j] = g[j]
            tw[lg - 1] = inv_lc
            for t in range(1, cnt):
                for j in range(lg):
                    tw[t * lg + j] = kc.fsig(tw[j], t)
            if cnt > 1:
                kc.nsig += (cnt - 1) * lg
            with nogil:
                for k in range(K, -1, -1):
                    c = r[k + lg - 1]
                    if c == 0:
                        continue
                    t = (k % mu) * lg
                    coef = kc.fmul(c, tw[t + lg - 1])
                    q[k] = coef
                    nc = kc.fneg(coef)
                    for j in range(lg - 1):
                        r[k + j] = kc.fadd(r[k + j], kc.fmul(nc, tw[t + j]))
                    r[k + lg - 1] = 0
                    kc.nmul += lg
                    kc.nadd += lg - 1
            return _tolist(q, K + 1), _tolist(r, lg - 1)
        # powers x^k g stored row by row with stride lf
        pw = _carr([], (K + 1) * lf)
        for j in range(lg):
            pw[j] = g[j]
        for j in range(lg, lf):
            pw[j] = 0
        plen = lg
        for k in range(1, K + 1):
            plen = _xmul_into(kc, pw + (k - 1) * lf, plen, pw + k * lf)
            for j in range(plen, lf):
                pw[k * lf + j] = 0
        for k in range(K, -1, -1):
            c = r[k + lg - 1]
            if c == 0:
                continue
            if k % mu:
                kc.nsig += 1
            coef = kc.fmul(c, kc.fsig(inv_lc, k))
            q[k] = coef
            nc = kc.fneg(coef)
            for j in range(k + lg - 1):
                r[j] = kc.fadd(r[j], kc.fmul(nc, pw[k * lf + j]))
            r[k + lg - 1] = 0
            kc.nmul += k + lg
            kc.nadd += k + lg - 1
        return _tolist(q, K + 1), _tolist(r, lg - 1)
    finally:
        free(r)
        free(q)
        if tw != NULL:
            free(tw)
        if pw != NULL:
            free(pw)


def op_eval(KernelCtx kc, list f, i64 c, i64 b):
    cdef Py_ssize_t n = len(f), i
    if n == 0:
        return 0
    cdef i64 acc = 0, t = c, t2
    cdef bint hd = kc.has_delta
    for i in range(n):
        if i:
            t2 = kc.fmul(kc.fsig(t, 1), b)
            if hd:
                t2 = kc.fadd(t2, kc.fdlt(t))
            t = t2
        acc = kc.fadd(acc, kc.fmul(<i64> f[i], t))
    kc.nmul += 2 * n - 1
    kc.nadd += n
    if kc.mu > 1:
        kc.nsig += n - 1
    if hd:
        kc.ndel += n - 1
        kc.nadd += n - 1
    return acc


def add(KernelCtx kc, list f, list g):
    if len(f) < len(g):
        f, g = g, f
    cdef Py_ssize_t j, lg = len(g)
    out = list(f)
    for j in range(lg):
        out[j] = kc.fadd(out[j], g[j])
    kc.nadd += lg
    return _trim(out)


def sub(KernelCtx kc, list f, list g):
    cdef Py_ssize_t j, lf = len(f), lg = len(g)
    cdef Py_ssize_t n = lf if lf > lg else lg
    out = list(f) + [0] * (n - lf)
    for j in range(lg):
        out[j] = kc.fadd(out[j], kc.fneg(g[j]))
    kc.nadd += lf if lf < lg else lg
    return _trim(out)


def axpy(KernelCtx kc, list f, i64 c, list g):
    cdef Py_ssize_t j, lf = len(f), lg = len(g)
    if c == 0 or lg == 0:
        return list(f)
    cdef Py_ssize_t n = lf if lf > lg else lg
    out = list(f) + [0] * (n - lf)
    for j in range(lg):
        out[j] = kc.fadd(out[j], kc.fmul(c, g[j]))
    kc.nmul += lg
    kc.nadd += lf if lf < lg else lg
    return _trim(out)


def scale(KernelCtx kc, i64 c, list f):
    cdef Py_ssize_t j, n = len(f)
    if c == 0 or n == 0:
        return []
    kc.nmul += n
    return [kc.fmul(c, f[j]) for j in range(n)]


def twist(KernelCtx kc, list f, long k):
    cdef Py_ssize_t j, n = len(f)
    if k % kc.mu == 0 or n == 0:
        return list(f)
    kc.nsig += n
    return [kc.fsig(f[j], k) for j in range(n)]
