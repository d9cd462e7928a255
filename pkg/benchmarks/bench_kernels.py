"""Compiled vs pure-Python kernel timings.

    python benchmarks/bench_kernels.py [--repeat 5]

Each row times one operation on both backends over the same inputs and
checks that they return the same result.
"""

from __future__ import annotations

import argparse
import random
import time

from skewknh import kernels
from skewknh.field import FieldCtx
from skewknh.instances import random_instance
from skewknh.knh_fast import solve_interpolation


def _bind(F: FieldCtx, compiled: bool) -> None:
    F._kernel = kernels.make_context(F, prefer_compiled=compiled)


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def kernel_cases(rng: random.Random):
    for p, m, gamma in ((2, 8, 0), (2, 8, 3), (521, 2, 0), (3, 7, 5)):
        F = FieldCtx(p, m, gamma=gamma)
        rp = lambda n: [rng.randrange(F.order) for _ in range(n - 1)] + [1]
        f, g = rp(200), rp(120)
        tag = f"F_{p}^{m}" + (" delta" if F.has_delta else "")
        yield tag, "mul 200x120", F, lambda kc: kc.mul(f, g)
        yield tag, "rdivmod 320/120", F, lambda kc, h=kc_prod(F, f, g): kc.rdivmod(h, g)
        yield tag, "op_eval deg 200", F, lambda kc: kc.op_eval(f, 3, 5)


def kc_prod(F: FieldCtx, f, g):
    return kernels.make_context(F, prefer_compiled=False).mul(f, g)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--solve-n", type=int, default=128)
    args = ap.parse_args()
    if not kernels.HAVE_COMPILED:
        print("compiled kernels are not built; only the pure backend is available")
        return
    rng = random.Random(1)
    print(f"{'field':<16}{'operation':<20}{'compiled ms':>12}{'pure ms':>10}{'speedup':>9}")
    for tag, name, F, op in kernel_cases(rng):
        cc = kernels.make_context(F, prefer_compiled=True)
        pc = kernels.make_context(F, prefer_compiled=False)
        assert op(cc) == op(pc), f"backends disagree on {name}"
        tc, tp = _best(lambda: op(cc), args.repeat), _best(lambda: op(pc), args.repeat)
        print(f"{tag:<16}{name:<20}{tc * 1e3:>12.3f}{tp * 1e3:>10.3f}{tp / tc:>8.1f}x")

    for p, m in ((2, 8), (521, 2)):
        inst = random_instance(0, p, m, 2, args.solve_n, "operator", max_weight=0)
        F = inst.field
        res = {}
        for compiled in (True, False):
            _bind(F, compiled)
            t = time.perf_counter()
            B, d, _ = solve_interpolation(inst.functionals, inst.weights)
            res[compiled] = (time.perf_counter() - t, B, d)
        assert res[True][1:] == res[False][1:], "backends disagree on the solver output"
        tc, tp = res[True][0], res[False][0]
        name = f"solve s=2 n={args.solve_n}"
        print(f"{'F_%d^%d' % (p, m):<16}{name:<20}{tc * 1e3:>12.1f}{tp * 1e3:>10.1f}{tp / tc:>8.1f}x")
        _bind(F, True)


if __name__ == "__main__":
    main()
