"""Kernel backend selection.

The compiled extension is used for table fields when it imported cleanly;
the pure-Python module covers everything else.  Set ``SKEWKNH_PURE=1`` to
force the fallback (used by the backend benchmark and the twin tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

try:  # pragma: no cover - depends on the build
    from . import _kernels as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

HAVE_COMPILED = _compiled is not None
_force_pure = os.environ.get("SKEWKNH_PURE", "") not in ("", "0")


def backend_for(field, prefer_compiled: bool = True):
    if prefer_compiled and not _force_pure and HAVE_COMPILED and field.has_tables and field.mu <= 64:
        return _compiled
    return _kernels_py


def make_context(field, prefer_compiled: bool = True):
    mod = backend_for(field, prefer_compiled)
    return _Bound(mod.KernelCtx(field), mod)


class _Bound:
    """A kernel context bundled with its backend module.

    Attribute access for the counters passes through to the context so
    ``FieldCtx.snapshot`` can read them without caring about the backend.
    """

    __slots__ = ("kc", "mod", "mu", "has_delta")

    def __init__(self, kc, mod):
        self.kc = kc
        self.mod = mod
        self.mu = kc.mu
        self.has_delta = kc.has_delta

    @property
    def compiled(self) -> bool:
        return self.mod is not _kernels_py

    nmul = property(lambda self: self.kc.nmul)
    nadd = property(lambda self: self.kc.nadd)
    ninv = property(lambda self: self.kc.ninv)
    nsig = property(lambda self: self.kc.nsig)
    ndel = property(lambda self: self.kc.ndel)

    def mul(self, f, g, e=1):
        return self.mod.mul(self.kc, f, g, e)

    def rdivmod(self, f, g):
        return self.mod.rdivmod(self.kc, f, g)

    def op_eval(self, f, c, b):
        return self.mod.op_eval(self.kc, f, c, b)

    def add(self, f, g):
        return self.mod.add(self.kc, f, g)

    def sub(self, f, g):
        return self.mod.sub(self.kc, f, g)

    def axpy(self, f, c, g):
        return self.mod.axpy(self.kc, f, c, g)

    def scale(self, c, f):
        return self.mod.scale(self.kc, c, f)

    def xmul(self, f):
        return self.mod.xmul(self.kc, f)

    def twist(self, f, k):
        return self.mod.twist(self.kc, f, k)
