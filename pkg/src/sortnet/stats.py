"""Streaming mean/variance accumulators and Monte Carlo estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class Estimate:
    """Sample mean with its standard error."""

    mean: float
    stderr: float
    count: int

    def zscore(self, target: float | Fraction) -> float:
        diff = self.mean - float(target)
        if self.stderr == 0:
            return 0.0 if diff == 0 else math.copysign(math.inf, diff)
        return diff / self.stderr

    def within(self, target: float | Fraction, k: float = 3.0) -> bool:
        return abs(self.zscore(target)) <= k

    def as_dict(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr, "n": self.count}

    def __str__(self) -> str:
        return f"{self.mean:.12g} ± {self.stderr:.3g} (n={self.count})"


@dataclass(frozen=True)
class Accumulator:
    """Welford ``(count, mean, M2)`` state; combine partial states with :func:`welford_merge`."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    @classmethod
    def of(cls, values) -> "Accumulator":
        x = np.asarray(values, dtype=np.float64).ravel()
        if x.size == 0:
            return cls()
        mean = float(x.mean())
        return cls(int(x.size), mean, float(((x - mean) ** 2).sum()))

    def add(self, x: float) -> "Accumulator":
        count = self.count + 1
        delta = x - self.mean
        mean = self.mean + delta / count
        return Accumulator(count, mean, self.m2 + delta * (x - mean))

    def estimate(self) -> Estimate:
        if self.count == 0:
            raise ValueError("no samples")
        if self.count == 1:
            return Estimate(self.mean, 0.0, 1)
        var = self.m2 / (self.count - 1)
        return Estimate(self.mean, math.sqrt(var / self.count), self.count)


def welford_merge(a: Accumulator, b: Accumulator) -> Accumulator:
    """Chan et al. pairwise combination of two accumulators."""
    if a.count == 0:
        return b
    if b.count == 0:
        return a
    count = a.count + b.count
    delta = b.mean - a.mean
    mean = a.mean + delta * b.count / count
    m2 = a.m2 + b.m2 + delta * delta * a.count * b.count / count
    return Accumulator(count, mean, m2)


def merge_all(parts) -> Accumulator:
    """Left fold in the given order; callers pass parts sorted by worker index."""
    acc = Accumulator()
    for p in parts:
        acc = welford_merge(acc, p)
    return acc
