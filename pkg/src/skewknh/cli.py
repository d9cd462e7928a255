"""Command-line interface.

Exit codes: 0 ok, 1 usage error, 2 bad input, 3 internal invariant violation.
Outputs are deterministic; wall-clock times are written only with --timing.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from array import array
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import instances
from .field import FieldCtx, FieldError
from .functionals import (build_minpoly_tree, eval_functional, eval_x_shift,
                          eval_x_shift_direct, min_vector_range)
from .instances import BadInstance, Instance, cached_field, random_instance
from .knh import knh_interpolate, knh_solve
from .knh_fast import SolveOptions, VerificationFailed, solve_interpolation, verify_basis
from .module import InternalInvariant, is_wowpb, vec_mod_r
from .rank_codes import (GabidulinCode, gabidulin_decode, gabidulin_encode, q_rank,
                         random_message, random_rank_error)
from .ring import SkewPoly, fast_arithmetic, right_divmod, schoolbook_mul

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3

CSV_HEADER = ["family", "p", "m", "s", "n", "algorithm", "mult_count", "add_count",
              "wall_time_ns", "seed"]
GRID_KEYS = ("family", "p", "m", "s", "n")
ALGORITHMS = ("baseline", "fast")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- interpolate --------------------------------------------------------------


def basis_json(B, d) -> dict:
    return {"rows": [r.to_json() for r in B], "degrees": list(d)}


def run_solver(inst: Instance, algorithm: str, verify: bool = False,
               options: SolveOptions | None = None):
    """(B, d, stats) from either solver; stats share the fast solver's keys."""
    if algorithm == "baseline":
        B, d, stats = knh_solve(inst.functionals, inst.weights)
        if verify:
            verify_basis(inst.functionals, B, inst.weights, d)
        return B, d, stats
    if algorithm == "fast":
        opts = options or SolveOptions()
        opts.verify = opts.verify or verify
        B, d, stats = solve_interpolation(inst.functionals, inst.weights, opts)
        return B, d, stats
    raise ValueError(f"unknown algorithm {algorithm!r}")


def cmd_interpolate(args) -> int:
    inst = instances.load(args.instance)
    opts = SolveOptions(leaf_size=args.leaf_size, fast_threshold=args.threshold)
    B, d, stats = run_solver(inst, args.algorithm, args.verify, opts)
    out = basis_json(B, d)
    if args.stats:
        keep = ["mult", "add", "inv", "sigma", "delta"]
        if args.algorithm == "fast":
            keep += ["tree_mult", "tree_add", "interp_mult", "interp_add", "updates"]
        st = {k: stats[k] for k in keep}
        if args.timing:
            st["wall_time_ns"] = stats["wall_time_ns"]
        out["stats"] = st
    _emit(instances.dumps(out), args.out)
    return EXIT_OK


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- generate -----------------------------------------------------------------


def cmd_generate(args) -> int:
    try:
        inst = random_instance(args.seed, args.p, args.m, args.s, args.n, args.family,
                               delta=args.delta, max_weight=args.max_weight,
                               zero_rate=args.zero_rate)
    except (FieldError, ValueError) as exc:
        raise BadInstance(str(exc)) from exc
    _emit(inst.dumps(), args.out)
    return EXIT_OK


# -- bench --------------------------------------------------------------------


def parse_grid(spec: str) -> list[dict]:
    """Grid points from JSON (inline or a file path) or "key=v,v;key=v" text.

    An empty specification, or any empty list, yields no points.
    """
    spec = spec.strip()
    if not spec:
        return []
    if not spec.startswith("{") and os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            spec = fh.read().strip()
    if spec.startswith("{"):
        try:
            raw = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise UsageError(f"grid is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise UsageError("grid must be a JSON object")
    else:
        raw = {}
        for part in filter(None, (p.strip() for p in spec.split(";"))):
            if "=" not in part:
                raise UsageError(f"grid entry {part!r} is not key=values")
            key, vals = part.split("=", 1)
            raw[key.strip()] = [v.strip() for v in vals.split(",") if v.strip()]
    if not raw or any(v == [] for v in raw.values()):
        return []
    unknown = set(raw) - set(GRID_KEYS) - {"algorithm"}
    if unknown:
        raise UsageError(f"unknown grid keys: {', '.join(sorted(unknown))}")
    missing = [k for k in GRID_KEYS if k not in raw]
    if missing:
        raise UsageError(f"grid is missing: {', '.join(missing)}")
    axes = {}
    for k in GRID_KEYS + ("algorithm",):
        v = raw.get(k, list(ALGORITHMS) if k == "algorithm" else None)
        v = v if isinstance(v, list) else [v]
        try:
            axes[k] = [str(x) for x in v] if k in ("family", "algorithm") else [int(x) for x in v]
        except (TypeError, ValueError) as exc:
            raise UsageError(f"grid values for {k} must be integers") from exc
    for fam in axes["family"]:
        if fam not in ("operator", "remainder"):
            raise UsageError(f"unknown family {fam!r}")
    for alg in axes["algorithm"]:
        if alg not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {alg!r}")
    points = []
    for fam in axes["family"]:
        for p in axes["p"]:
            for m in axes["m"]:
                for s in axes["s"]:
                    for n in axes["n"]:
                        if s < 0 or n < 1 or m < 1:
                            raise UsageError("grid needs s >= 0, n >= 1, m >= 1")
                        points.append({"family": fam, "p": p, "m": m, "s": s, "n": n,
                                       "algorithms": axes["algorithm"]})
    return points


def bench_instance(family: str, p: int, m: int, s: int, n: int, seed: int) -> Instance:
    # zero weights: degree growth then reflects n only
    return random_instance(seed, p, m, s, n, family, max_weight=0)


def bench_one(task: tuple) -> dict:
    """One CSV record.  For the fast solver the minimal polynomial tree is
    built before the meter starts: it is a per-point precomputation, so the
    counts cover the interpolation itself."""
    family, p, m, s, n, algorithm, seed, threshold = task
    inst = bench_instance(family, p, m, s, n, seed)
    if algorithm == "fast":
        with fast_arithmetic(threshold):
            tree = build_minpoly_tree(inst.functionals)
        _, _, stats = solve_interpolation(inst.functionals, inst.weights,
                                          SolveOptions(fast_threshold=threshold), tree=tree)
    else:
        _, _, stats = run_solver(inst, algorithm)
    return {"family": family, "p": p, "m": m, "s": s, "n": n, "algorithm": algorithm,
            "mult_count": stats["mult"], "add_count": stats["add"],
            "wall_time_ns": stats["wall_time_ns"], "seed": seed}


def run_bench(points: Sequence[dict], seeds: Sequence[int], jobs: int = 1,
              threshold: int | None = 32) -> list[dict]:
    tasks = sorted({(pt["family"], pt["p"], pt["m"], pt["s"], pt["n"], alg, seed, threshold)
                    for pt in points for alg in pt["algorithms"] for seed in seeds},
                   key=lambda t: (t[0], t[1], t[2], t[3], t[4], t[6], t[5]))
    for t in tasks:
        # validate field parameters before any worker starts
        cached_field(t[1], t[2])
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
            return list(pool.map(bench_one, tasks))
    return [bench_one(t) for t in tasks]


def bench_csv(records: Sequence[dict], timing: bool) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        row = dict(r)
        if not timing:
            row["wall_time_ns"] = 0
        w.writerow([row[k] for k in CSV_HEADER])
    return buf.getvalue()


def cmd_bench(args) -> int:
    points = parse_grid(args.grid)
    if args.seeds < 1:
        raise UsageError("--seeds must be at least 1")
    try:
        records = run_bench(points, list(range(args.seeds)), args.jobs, args.threshold)
    except FieldError as exc:
        raise BadInstance(str(exc)) from exc
    _emit(bench_csv(records, args.timing), args.csv)
    return EXIT_OK


# -- decode -------------------------------------------------------------------


def cmd_decode(args) -> int:
    try:
        n, k, p, m = (int(v) for v in args.code.split(","))
    except ValueError as exc:
        raise UsageError("--code expects n,k,p,m") from exc
    try:
        F = cached_field(p, m)
        code = GabidulinCode(F, n, k)
        rng = random.Random(f"decode/{args.code}/{args.errors}/{args.seed}")
        f = random_message(code, rng)
        e = random_rank_error(n, args.errors, F, rng.randrange(2 ** 32))
    except (FieldError, ValueError) as exc:
        raise BadInstance(str(exc)) from exc
    r = [F.add(a, b) for a, b in zip(gabidulin_encode(code, f), e)]
    res = gabidulin_decode(code, r, args.solver)
    ok = isinstance(res, SkewPoly) and res == f
    lines = [
        f"code: [{n},{k}] Gabidulin over F_{p}^{m}, radius {code.radius}",
        f"transmitted f: {f.pretty()}",
        f"error rank: {q_rank(F, e)}",
        f"decoded: {res.pretty() if isinstance(res, SkewPoly) else repr(res)}",
        f"success: {'true' if ok else 'false'}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


# -- selftest -----------------------------------------------------------------


def corrupt_field(F: FieldCtx) -> None:
    """Break one entry of the exponent table (fault injection)."""
    if not F.has_tables:
        raise ValueError("fault injection needs a table field")
    exp = array("q", F._exp)
    k = 1 if F._q1 > 2 else 0
    exp[k] = exp[k + 1]
    exp[k + F._q1] = exp[k + 1]
    F._exp = exp
    F._kernel = None


def _selftest_fields(fault: bool) -> list[FieldCtx]:
    specs = [(2, 4, 1, 0), (2, 4, 1, 3), (3, 3, 1, 0), (5, 2, 1, 2), (2, 6, 2, 0)]
    out = []
    for p, m, r, g in specs:
        F = FieldCtx(p, m, aut_power=r, gamma=g)
        if fault:
            corrupt_field(F)
        out.append(F)
    return out


def selftest_checks(fault: bool = False):
    """Yield (group, passed) pairs."""
    rng = random.Random(20240601)
    fields = _selftest_fields(fault)

    def rp(F, deg):
        return SkewPoly(F, [rng.randrange(F.order) for _ in range(deg)] + [rng.randrange(1, F.order)])

    for F in fields:
        for _ in range(6):
            f, g, h = (rp(F, rng.randrange(0, 40)) for _ in range(3))
            yield "ring axioms", (f * g) * h == f * (g * h)
            yield "ring axioms", f * (g + h) == f * g + f * h
            yield "ring axioms", (f * g).deg == f.deg + g.deg
            with fast_arithmetic(4):
                yield "ring axioms", f * g == schoolbook_mul(f, g)
            q, r = right_divmod(f * g + h, g)
            yield "ring axioms", q * g + r == f * g + h and r.deg < g.deg
        a, b = rng.randrange(1, F.order), rng.randrange(1, F.order)
        yield "ring axioms", F.mul(F.mul(a, b), F.inv(b)) == a
        yield "ring axioms", F.sigma(F.mul(a, b)) == F.mul(F.sigma(a), F.sigma(b))

    for F in fields:
        for fam in ("operator", "remainder"):
            inst = random_instance(7, F.p, F.m, 1, 6, fam, field=F, zero_rate=0.2)
            Fs = inst.functionals
            try:
                tree = build_minpoly_tree(Fs)
            except Exception:
                yield "assumption 1", False
                continue
            for _ in range(8):
                i = rng.randrange(Fs.n)
                j = rng.randrange(i, Fs.n)
                M = min_vector_range(Fs, i, j)
                Q = [rp(F, rng.randrange(0, 12)) for _ in range(Fs.s + 1)]
                R = vec_mod_r(Q, M)
                for l in range(i, j + 1):
                    yield "assumption 1", eval_functional(Fs, l, Q) == eval_functional(Fs, l, R)
                    yield "assumption 1", eval_x_shift(Fs, l, Q) == eval_x_shift_direct(Fs, l, Q)
            yield "assumption 1", tree.root == min_vector_range(Fs, 0, Fs.n - 1)

    for seed in range(12):
        F = fields[seed % len(fields)]
        fam = ("operator", "remainder")[seed % 2]
        inst = random_instance(seed, F.p, F.m, 1 + seed % 3, 4 + 3 * seed, fam, field=F,
                               zero_rate=0.1)
        B0, d0 = knh_interpolate(inst.functionals, inst.weights)
        B1, d1, _ = solve_interpolation(inst.functionals, inst.weights,
                                        SolveOptions(leaf_size=1 + seed % 5, fast_threshold=4))
        yield "fast equals baseline", B0 == B1 and d0 == d1
        yield "weak Popov", is_wowpb(B1, inst.weights)
        try:
            verify_basis(inst.functionals, B1, inst.weights, d1)
            yield "kernel membership", True
        except VerificationFailed:
            yield "kernel membership", False


def cmd_selftest(args) -> int:
    counts: dict[str, list[int]] = {}
    failed = False
    checks = selftest_checks(args.inject_fault)
    while True:
        try:
            group, ok = next(checks)
        except StopIteration:
            break
        except Exception as exc:   # a corrupted build may fail anywhere
            counts.setdefault("aborted", [0, 0])[1] += 1
            sys.stdout.write(f"aborted: {type(exc).__name__}: {exc}\n")
            failed = True
            break
        c = counts.setdefault(group, [0, 0])
        c[0] += bool(ok)
        c[1] += 1
        failed |= not ok
    total = sum(c[1] for c in counts.values())
    for group, (good, n) in counts.items():
        sys.stdout.write(f"{group}: {good}/{n} passed\n")
    sys.stdout.write(f"checks run: {total}\n")
    sys.stdout.write("selftest " + ("FAILED" if failed else "passed") + "\n")
    return EXIT_INVARIANT if failed else EXIT_OK


# -- entry point --------------------------------------------------------------


def _threshold(text: str) -> int | None:
    if text.lower() in ("none", "off"):
        return None
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("threshold must be at least 2 (or 'none')")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="skewknh", description="Skew polynomial interpolation toolkit")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("interpolate", help="solve an instance file")
    p.add_argument("instance")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="fast")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out")
    p.add_argument("--stats", action="store_true", help="include operation counts")
    p.add_argument("--timing", action="store_true", help="include wall time (nondeterministic)")
    p.add_argument("--leaf-size", type=_positive, default=16)
    p.add_argument("--threshold", type=_threshold, default=32,
                   help="Karatsuba operand length cut-off, or 'none'")
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("generate", help="write a random instance")
    p.add_argument("--family", choices=("operator", "remainder"), default="operator")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", action="store_true", help="use a nonzero inner derivation")
    p.add_argument("--max-weight", type=int)
    p.add_argument("--zero-rate", type=float, default=0.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="operation counts over a grid")
    p.add_argument("--grid", required=True,
                   help='JSON object, JSON file, or "family=operator;p=2;m=8;s=2;n=16,32"')
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--csv")
    p.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1)
    p.add_argument("--threshold", type=_threshold, default=32)
    p.add_argument("--timing", action="store_true", help="record wall time (nondeterministic)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("decode", help="Gabidulin encode / corrupt / decode round")
    p.add_argument("--code", required=True, help="n,k,p,m")
    p.add_argument("--errors", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--solver", choices=ALGORITHMS, default="fast")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("selftest", help="run the embedded invariant checks")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a command is required (interpolate, generate, bench, decode, selftest)")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except BadInstance as exc:
        sys.stderr.write(f"bad input: {exc}\n")
        return EXIT_INPUT
    except (InternalInvariant, VerificationFailed) as exc:
        sys.stderr.write(f"invariant violation: {exc}\n")
        return EXIT_INVARIANT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
