"""Polya urn started from 3/2 white and 3/2 black balls.

Each step adds one ball, white with probability ``white / (white + black)``.
After ``n - 2`` additions, one plus the number of white balls added has
the same law as the first swap location of a uniform ``n``-network; one
urn path therefore couples those first-swap laws across all ``n``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Sequence

import numpy as np

WHITE, BLACK = "W", "B"
INITIAL = Fraction(3, 2)


@dataclass(frozen=True)
class UrnState:
    white: Fraction = INITIAL
    black: Fraction = INITIAL

    def __post_init__(self):
        object.__setattr__(self, "white", Fraction(self.white))
        object.__setattr__(self, "black", Fraction(self.black))
        if self.white < 0 or self.black < 0 or self.white + self.black <= 0:
            raise ValueError(f"invalid urn ({self.white} white, {self.black} black)")

    @property
    def total(self) -> Fraction:
        return self.white + self.black

    @property
    def p_white(self) -> Fraction:
        return self.white / self.total

    def add(self, color: str) -> "UrnState":
        if color == WHITE:
            return UrnState(self.white + 1, self.black)
        if color == BLACK:
            return UrnState(self.white, self.black + 1)
        raise ValueError(f"unknown color {color!r}")


def draw_white(p: Fraction, rng: np.random.Generator) -> bool:
    """Bernoulli(p) for rational ``p``.

    Exact when the denominator fits in int64 (a uniform integer below
    the denominator is compared with the numerator); otherwise a 64-bit
    uniform variate is compared against ``p`` in integer arithmetic.
    """
    num, den = p.numerator, p.denominator
    if den < 2**63:
        return int(rng.integers(0, den)) < num
    u = int(rng.integers(0, 2**64, dtype=np.uint64))
    return u * den < num * 2**64


def step(state: UrnState, rng: np.random.Generator) -> tuple[UrnState, str]:
    color = WHITE if draw_white(state.p_white, rng) else BLACK
    return state.add(color), color


def sequence_probability(colors: Sequence[str], state: UrnState = UrnState()) -> Fraction:
    """Exact probability that the first additions have the given colors."""
    p = Fraction(1)
    for c in colors:
        p *= state.p_white if c == WHITE else 1 - state.p_white
        state = state.add(c)
    return p


def white_count_pmf(n: int) -> list[Fraction]:
    """Law of ``1 + #white`` after ``n - 2`` additions, as a list over ``k = 1..n-1``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    L = n - 2
    return [comb(L, k - 1) * sequence_probability([WHITE] * (k - 1) + [BLACK] * (L - k + 1))
            for k in range(1, n)]


def exchangeability_check(n: int) -> bool:
    """True iff every color sequence of length ``n - 2`` has the probability of its sorted rearrangement."""
    L = n - 2
    if not 0 <= L <= 12:
        raise ValueError("exchangeability check needs 2 <= n <= 14")
    by_whites: dict[int, set[Fraction]] = defaultdict(set)
    total = Fraction(0)
    for colors in product((WHITE, BLACK), repeat=L):
        p = sequence_probability(colors)
        by_whites[colors.count(WHITE)].add(p)
        total += p
    return total == 1 and all(len(ps) == 1 for ps in by_whites.values())


def coupled_first_swaps(n_max: int, rng: np.random.Generator) -> list[int]:
    """One urn path read as ``[s(2), s(3), ..., s(n_max)]``, ``s(n) = 1 + #white in first n - 2``."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    state = UrnState()
    out = [1]
    for _ in range(n_max - 2):
        state, color = step(state, rng)
        out.append(out[-1] + (color == WHITE))
    return out


def coupled_first_swaps_batch(n_max: int, paths: int, rng: np.random.Generator) -> np.ndarray:
    """``paths`` independent coupled paths as a ``(paths, n_max - 1)`` array; column ``n - 2`` is ``s(n)``.

    Counts are doubled so every threshold is an integer: before step
    ``t`` (0-based) the urn holds ``3 + 2 * whites`` white out of ``6 + 2 * t``.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    out = np.ones((paths, n_max - 1), dtype=np.int64)
    whites = np.zeros(paths, dtype=np.int64)
    for t in range(n_max - 2):
        u = rng.integers(0, 6 + 2 * t, size=paths)
        whites += u < 3 + 2 * whites
        out[:, t + 1] = 1 + whites
    return out
