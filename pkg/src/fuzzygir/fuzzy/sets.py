"""One-dimensional fuzzy sets and linguistic hedges.

All sets are piecewise linear and evaluate elementwise on numpy arrays.
``upper_bound(alpha)`` gives the largest ``x`` whose membership is still at
least ``alpha``; this is what the alpha-cut box computation needs for
distance sets, which always decay to the right.
"""
import enum
import math
from dataclasses import dataclass

import numpy as np


class Hedge(enum.Enum):
    VERY = "Very"
    SOMEWHAT = "Somewhat"


@dataclass(frozen=True)
class Trapezoid:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        params = (self.a, self.b, self.c, self.d)
        if not all(math.isfinite(p) for p in params):
            raise ValueError(f"non-finite trapezoid parameters {params}")
        if not self.a <= self.b <= self.c <= self.d:
            raise ValueError(f"trapezoid needs a <= b <= c <= d, got {params}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        a, b, c, d = self.a, self.b, self.c, self.d
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            rise = np.where(b > a, (x - a) / (b - a if b > a else 1.0), 0.0)
            fall = np.where(d > c, (d - x) / (d - c if d > c else 1.0), 0.0)
        mu = np.where(x < b, rise, np.where(x <= c, 1.0, fall))
        return np.clip(mu, 0.0, 1.0)

    @property
    def core(self):
        return self.b, self.c

    @property
    def support(self):
        return self.a, self.d

    def upper_bound(self, alpha):
        if self.d == self.c:
            return self.c
        return self.d - alpha * (self.d - self.c)

    def to_config(self):
        return {"shape": "trapezoid", "params": [self.a, self.b, self.c, self.d]}


def Triangle(a, b, c):
    """Triangular set with peak at ``b``; a trapezoid with a one-point core."""
    return Trapezoid(a, b, b, c)


@dataclass(frozen=True)
class RampUp:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo <= self.hi):
            raise ValueError(f"ramp needs finite lo <= hi, got {(self.lo, self.hi)}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.hi == self.lo:
            return np.where(x >= self.hi, 1.0, 0.0)
        return np.clip((x - self.lo) / (self.hi - self.lo), 0.0, 1.0)

    @property
    def core(self):
        return self.hi, math.inf

    @property
    def support(self):
        return self.lo, math.inf

    def upper_bound(self, alpha):
        return math.inf

    def to_config(self):
        return {"shape": "ramp_up", "params": [self.lo, self.hi]}


@dataclass(frozen=True)
class RampDown:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo <= self.hi):
            raise ValueError(f"ramp needs finite lo <= hi, got {(self.lo, self.hi)}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.hi == self.lo:
            return np.where(x <= self.lo, 1.0, 0.0)
        return np.clip((self.hi - x) / (self.hi - self.lo), 0.0, 1.0)

    @property
    def core(self):
        return -math.inf, self.lo

    @property
    def support(self):
        return -math.inf, self.hi

    def upper_bound(self, alpha):
        return self.hi - alpha * (self.hi - self.lo)

    def to_config(self):
        return {"shape": "ramp_down", "params": [self.lo, self.hi]}


@dataclass(frozen=True)
class Hedged:
    """A fuzzy set seen through a hedge: ``very`` squares, ``somewhat`` takes the root."""

    base: object
    hedge: Hedge

    def __call__(self, x):
        mu = self.base(x)
        return mu * mu if self.hedge is Hedge.VERY else np.sqrt(mu)

    @property
    def core(self):
        return self.base.core

    @property
    def support(self):
        return self.base.support

    def upper_bound(self, alpha):
        inner = math.sqrt(alpha) if self.hedge is Hedge.VERY else alpha * alpha
        return self.base.upper_bound(inner)

    def to_config(self):
        return {"hedge": self.hedge.value, **self.base.to_config()}


def membership(fuzzy_set, x):
    """Membership of scalar ``x`` as a plain float."""
    return float(fuzzy_set(x))


def apply_hedge(fuzzy_set, hedge):
    if hedge is None:
        return fuzzy_set
    return Hedged(fuzzy_set, Hedge(hedge) if not isinstance(hedge, Hedge) else hedge)


_SHAPES = {
    "trapezoid": lambda p: Trapezoid(*p),
    "triangle": lambda p: Triangle(*p),
    "ramp_up": lambda p: RampUp(*p),
    "ramp_down": lambda p: RampDown(*p),
}


def set_from_config(spec):
    try:
        build = _SHAPES[spec["shape"]]
    except KeyError:
        raise ValueError(f"unknown fuzzy set shape in {spec!r}") from None
    fuzzy_set = build([float(v) for v in spec["params"]])
    if "hedge" in spec:
        fuzzy_set = Hedged(fuzzy_set, Hedge(spec["hedge"]))
    return fuzzy_set
