"""Exact enumeration and rational-valued laws for small sorting networks.

Everything here returns :class:`fractions.Fraction` values; nothing is
rounded.  Brute-force averages run over the full set of ``n``-networks
held as a numpy array, with every ``m``-subset of particles visited in
lexicographic order and all (network, subset) pairs weighted equally.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod
from typing import Iterator

import numpy as np

from .core import SortingNetwork

MAX_ENUM_N = 6
"""Largest n enumerated without ``allow_large=True``."""

COROLLARY_NETWORKS: tuple[tuple[int, ...], ...] = (
    (1, 2, 3, 2, 1, 2),
    (3, 2, 1, 2, 3, 2),
    (2, 1, 2, 3, 2, 1),
    (2, 3, 2, 1, 2, 3),
)
"""The four 4-networks in which one point lies inside the triangle of the others."""

SwapCountLaw = dict[int, Fraction]


def _check_enum_range(n: int, allow_large: bool = False) -> None:
    limit = 7 if allow_large else MAX_ENUM_N
    if not 2 <= n <= limit:
        hint = "" if allow_large or n != 7 else " (n=7 needs allow_large=True)"
        raise ValueError(f"enumeration needs 2 <= n <= {limit}, got n={n}{hint}")


def iter_swap_sequences(n: int, *, allow_large: bool = False) -> Iterator[tuple[int, ...]]:
    """Depth-first enumeration of reduced words of the reverse permutation.

    Uses an explicit stack; a prefix is extended by ``s`` whenever the
    particles at ``s, s + 1`` are still in increasing order.  Words come
    out in lexicographic order.
    """
    _check_enum_range(n, allow_large)
    N = n * (n - 1) // 2
    sigma = list(range(1, n + 1))
    word: list[int] = []
    # stack holds the next candidate location to try at each depth
    stack = [1]
    while stack:
        depth = len(stack) - 1
        s = stack[-1]
        while s <= n - 1 and sigma[s - 1] > sigma[s]:
            s += 1
        if s > n - 1:
            stack.pop()
            if word:
                t = word.pop()
                sigma[t - 1], sigma[t] = sigma[t], sigma[t - 1]
                stack[-1] = t + 1
            continue
        sigma[s - 1], sigma[s] = sigma[s], sigma[s - 1]
        word.append(s)
        if depth + 1 == N:
            yield tuple(word)
            word.pop()
            sigma[s - 1], sigma[s] = sigma[s], sigma[s - 1]
            stack[-1] = s + 1
        else:
            stack[-1] = s
            stack.append(1)


def enumerate_networks(n: int, *, allow_large: bool = False) -> Iterator[SortingNetwork]:
    """Stream every ``n``-particle sorting network exactly once."""
    for word in iter_swap_sequences(n, allow_large=allow_large):
        yield SortingNetwork(n, word)


@lru_cache(maxsize=None)
def network_array(n: int) -> np.ndarray:
    """All ``n``-networks as a read-only ``(count, C(n,2))`` int8 array."""
    N = n * (n - 1) // 2
    flat = np.fromiter((s for w in iter_swap_sequences(n) for s in w), dtype=np.int8)
    arr = flat.reshape(-1, N)
    arr.flags.writeable = False
    return arr


@lru_cache(maxsize=2)
def configuration_array(n: int) -> np.ndarray:
    """``cfg[w, t]`` is the configuration of network ``w`` just before swap ``t + 1``."""
    nets = network_array(n)
    M, N = nets.shape
    cfg = np.empty((M, N, n), dtype=np.int8)
    sigma = np.tile(np.arange(1, n + 1, dtype=np.int8), (M, 1))
    rows = np.arange(M)
    for t in range(N):
        cfg[:, t] = sigma
        idx = nets[:, t].astype(np.intp) - 1
        a = sigma[rows, idx].copy()
        sigma[rows, idx] = sigma[rows, idx + 1]
        sigma[rows, idx + 1] = a
    cfg.flags.writeable = False
    return cfg


def restrict_all(n: int, subset: tuple[int, ...]) -> np.ndarray:
    """Subnetworks of every ``n``-network on ``subset``, as a ``(count, C(m,2))`` array."""
    nets = network_array(n)
    cfg = configuration_array(n)
    m = len(subset)
    inside = np.zeros(n + 1, dtype=bool)
    inside[list(subset)] = True
    in_cfg = inside[cfg]
    below = np.cumsum(in_cfg, axis=2, dtype=np.int8)
    idx = nets.astype(np.intp)[..., None] - 1
    hit = (np.take_along_axis(in_cfg, idx, 2) & np.take_along_axis(in_cfg, idx + 1, 2))[..., 0]
    loc = np.take_along_axis(below, idx, 2)[..., 0]
    return loc[hit].reshape(len(nets), m * (m - 1) // 2)


@lru_cache(maxsize=4)
def _subnet_arrays(n: int, m: int) -> tuple[np.ndarray, ...]:
    _check_pair(n, m)
    return tuple(restrict_all(n, A) for A in combinations(range(1, n + 1), m))


def _check_pair(n: int, m: int) -> None:
    if not 2 <= m <= n:
        raise ValueError(f"need 2 <= m <= n, got m={m}, n={n}")
    _check_enum_range(n)


def _check_location(m: int, j: int) -> None:
    if not 1 <= j <= m - 1:
        raise ValueError(f"location j={j} outside 1..{m - 1}")


# -- closed forms ---------------------------------------------------------------

def count_networks(n: int) -> int:
    """Number of ``n``-networks: ``N!`` over the staircase hook product."""
    if n < 2:
        raise ValueError("n must be at least 2")
    N = n * (n - 1) // 2
    hooks = prod(2 * (n - i - j) + 1 for i in range(1, n) for j in range(1, n - i + 1))
    q, r = divmod(factorial(N), hooks)
    assert r == 0
    return q


def falling_factorial(a: Fraction | int, r: int) -> Fraction:
    """``(a)_r = a (a - 1) ... (a - r + 1)``, with ``(a)_0 = 1``."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    a = Fraction(a)
    out = Fraction(1)
    for i in range(r):
        out *= a - i
    return out


_HALF = Fraction(1, 2)


def _swap_weight(m: int, j: int) -> Fraction:
    return (falling_factorial(j - _HALF, j - 1) * falling_factorial(m - j - _HALF, m - j - 1)
            / (factorial(j - 1) * factorial(m - j - 1)))


def first_swap_pmf(n: int, k: int) -> Fraction:
    """``P(s_1 = k)`` for the uniform ``n``-network; zero outside ``1..n-1``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 1 <= k <= n - 1:
        return Fraction(0)
    return _swap_weight(n, k) / comb(n, 2)


def first_swap_law(n: int) -> list[Fraction]:
    """``[p_n(1), ..., p_n(n-1)]``."""
    return [first_swap_pmf(n, k) for k in range(1, n)]


def theorem1_expectation(m: int, j: int) -> Fraction:
    """Expected number of location-``j`` swaps in a random ``m``-out-of-``n`` subnetwork."""
    if m < 2:
        raise ValueError("m must be at least 2")
    _check_location(m, j)
    return _swap_weight(m, j)


def hypergeometric_pmf(n: int, m: int, k: int, i: int) -> Fraction:
    """Probability of ``i`` white among ``m`` drawn from ``n`` balls, ``k`` white."""
    if not (0 <= m <= n and 0 <= k <= n):
        raise ValueError(f"need 0 <= m, k <= n, got n={n}, m={m}, k={k}")
    return Fraction(_binom(k, i) * _binom(n - k, m - i), comb(n, m))


def _binom(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def lemma6_check(n: int, m: int, j: int) -> tuple[bool, Fraction, Fraction]:
    """Evaluate ``sum_k p_n(k) h^{n-2}_{m-2,k-1}(j-1)`` and ``p_m(j)``.

    Returns ``(equal, left, right)``.
    """
    if not 2 <= m <= n:
        raise ValueError(f"need 2 <= m <= n, got m={m}, n={n}")
    _check_location(m, j)
    left = sum((first_swap_pmf(n, k) * hypergeometric_pmf(n - 2, m - 2, k - 1, j - 1)
                for k in range(1, n)), Fraction(0))
    right = first_swap_pmf(m, j)
    return left == right, left, right


# -- brute force over enumerations -------------------------------------------------

def location_pmf(n: int, t: int) -> list[Fraction]:
    """Enumerated law of ``s_t`` for the uniform ``n``-network, as ``[P(s_t=1), ...]``."""
    nets = network_array(n)
    if not 1 <= t <= nets.shape[1]:
        raise ValueError(f"time t={t} outside 1..{nets.shape[1]}")
    counts = np.bincount(nets[:, t - 1], minlength=n)[1:n]
    return [Fraction(int(c), len(nets)) for c in counts]


def expected_subnet_swaps_bruteforce(n: int, m: int, j: int) -> Fraction:
    """Average of ``#{t: s_t(w|_A) = j}`` over all ``n``-networks ``w`` and ``m``-subsets ``A``."""
    _check_pair(n, m)
    _check_location(m, j)
    arrays = _subnet_arrays(n, m)
    total = sum(int(np.count_nonzero(a == j)) for a in arrays)
    return Fraction(total, len(arrays) * arrays[0].shape[0])


def swap_count_law(n: int, m: int, j: int) -> SwapCountLaw:
    """Exact law of the number of location-``j`` swaps in the random ``m``-out-of-``n`` subnetwork."""
    _check_pair(n, m)
    _check_location(m, j)
    arrays = _subnet_arrays(n, m)
    hist: Counter[int] = Counter()
    for a in arrays:
        per_net = np.count_nonzero(a == j, axis=1)
        values, counts = np.unique(per_net, return_counts=True)
        hist.update(dict(zip(values.tolist(), counts.tolist())))
    total = len(arrays) * arrays[0].shape[0]
    return {c: Fraction(k, total) for c, k in sorted(hist.items())}


def law_mean(law: SwapCountLaw) -> Fraction:
    return sum((c * p for c, p in law.items()), Fraction(0))


def subnetwork_law(n: int, m: int) -> dict[tuple[int, ...], Fraction]:
    """Exact law of the random ``m``-out-of-``n`` subnetwork, keyed by swap word."""
    _check_pair(n, m)
    arrays = _subnet_arrays(n, m)
    hist: Counter[tuple[int, ...]] = Counter()
    for a in arrays:
        rows, counts = np.unique(a, axis=0, return_counts=True)
        for row, c in zip(rows, counts):
            hist[tuple(int(s) for s in row)] += int(c)
    total = len(arrays) * arrays[0].shape[0]
    return {w: Fraction(c, total) for w, c in sorted(hist.items())}


def corollary2_probability(n: int) -> Fraction:
    """Exact probability that the random 4-out-of-``n`` subnetwork is one of :data:`COROLLARY_NETWORKS`."""
    if not 4 <= n <= MAX_ENUM_N:
        raise ValueError(f"need 4 <= n <= {MAX_ENUM_N}, got n={n}")
    targets = np.array(COROLLARY_NETWORKS, dtype=np.int8)
    arrays = _subnet_arrays(n, 4)
    hits = 0
    for a in arrays:
        hits += int(np.count_nonzero((a[:, None, :] == targets[None]).all(axis=2).any(axis=1)))
    return Fraction(hits, len(arrays) * arrays[0].shape[0])


def subnet_first_vs_second_swap(n: int, m: int) -> tuple[list[Fraction], list[Fraction]]:
    """Exact laws of ``s_1`` and ``s_2`` of the random ``m``-out-of-``n`` subnetwork.

    Both are lists indexed by location ``1..m-1``.  Requires ``m >= 3``
    so that a second swap exists.
    """
    if m < 3:
        raise ValueError("a second swap needs m >= 3")
    _check_pair(n, m)
    arrays = _subnet_arrays(n, m)
    total = len(arrays) * arrays[0].shape[0]
    laws = []
    for t in (0, 1):
        counts = sum(np.bincount(a[:, t], minlength=m) for a in arrays)
        laws.append([Fraction(int(c), total) for c in counts[1:m]])
    return laws[0], laws[1]
