"""Interpolation problem instances: JSON round-trip and seeded generation."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .field import FieldCtx, FieldError
from .functionals import FAMILIES, FunctionalSet
from .module import DimensionMismatch


class BadInstance(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    field: FieldCtx
    functionals: FunctionalSet
    weights: tuple[int, ...]
    seed: int | None = None

    @property
    def s(self) -> int:
        return self.functionals.s

    @property
    def n(self) -> int:
        return self.functionals.n

    @property
    def family(self) -> str:
        return self.functionals.family

    def to_json(self) -> dict:
        obj = {"field": self.field.to_json(), "s": self.s, "n": self.n, "family": self.family,
               "weights": list(self.weights),
               "points": self.functionals.to_json()["points"]}
        if self.seed is not None:
            obj["seed"] = self.seed
        return obj

    def dumps(self) -> str:
        return dumps(self.to_json())


def dumps(obj) -> str:
    """Canonical JSON text (sorted keys, no whitespace variation)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


@lru_cache(maxsize=64)
def cached_field(p: int, m: int, modulus: tuple | None = None, aut_power: int | None = None,
                 gamma: int | tuple = 0) -> FieldCtx:
    return FieldCtx(p, m, list(modulus) if modulus is not None else None, aut_power,
                    list(gamma) if isinstance(gamma, tuple) else gamma)


def instance_from_json(obj) -> Instance:
    """Parse and validate; every defect surfaces as BadInstance."""
    try:
        if not isinstance(obj, dict):
            raise BadInstance("instance must be a JSON object")
        fobj = obj["field"]
        F = FieldCtx.from_json(fobj)
        Fs = FunctionalSet.from_json(F, {"family": obj["family"], "points": obj["points"]})
        weights = tuple(int(x) for x in obj["weights"])
        if "s" in obj and int(obj["s"]) != Fs.s:
            raise BadInstance(f"s = {obj['s']} but the points have {Fs.s + 1} coordinates")
        if "n" in obj and int(obj["n"]) != Fs.n:
            raise BadInstance(f"n = {obj['n']} but {Fs.n} functionals are given")
        if len(weights) != Fs.s + 1 or any(x < 0 for x in weights):
            raise BadInstance("weights must be s + 1 non-negative integers")
        seed = obj.get("seed")
        return Instance(F, Fs, weights, None if seed is None else int(seed))
    except BadInstance:
        raise
    except (KeyError, TypeError, ValueError, IndexError, AttributeError, FieldError,
            DimensionMismatch) as exc:
        raise BadInstance(f"malformed instance: {type(exc).__name__}: {exc}") from exc


def loads(text: str) -> Instance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadInstance(f"invalid JSON: {exc}") from exc
    return instance_from_json(obj)


def load(path: str) -> Instance:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise BadInstance(f"cannot read {path}: {exc}") from exc
    return loads(text)


def random_instance(seed: int, p: int, m: int, s: int, n: int, family: str = "operator",
                    delta: bool = False, max_weight: int | None = None,
                    zero_rate: float = 0.0, field: FieldCtx | None = None) -> Instance:
    """Seeded random instance.

    ``zero_rate`` is the chance that a point is 0 (operator) or absent
    (remainder); ``delta`` picks a random nonzero gamma.  Weights are drawn
    from [0, max_weight] (default n).
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown evaluation family {family!r}")
    rng = random.Random(f"{family}/{p}/{m}/{s}/{n}/{int(delta)}/{seed}")
    if field is None:
        gamma = rng.randrange(1, p ** m) if delta and m > 1 else 0
        field = cached_field(p, m, None, None, gamma)
    Q = field.order
    width = s + 1
    if family == "operator":
        pts = [[0 if rng.random() < zero_rate else rng.randrange(1, Q) for _ in range(width)]
               for _ in range(n)]
        bs = [rng.randrange(1, Q) for _ in range(n)]
    else:
        pts = []
        for _ in range(n):
            pt = rng.randrange(Q)
            row = [None if rng.random() < zero_rate else pt for _ in range(width)]
            pts.append(row)
        bs = None
    top = n if max_weight is None else max_weight
    w = tuple(rng.randint(0, top) for _ in range(width))
    return Instance(field, FunctionalSet(family, field, pts, bs), w, seed)


def instance(field: FieldCtx, family: str, points: Sequence[Sequence], weights: Sequence[int],
             bs: Sequence[int] | None = None, seed: int | None = None) -> Instance:
    return Instance(field, FunctionalSet(family, field, points, bs),
                    tuple(int(x) for x in weights), seed)
