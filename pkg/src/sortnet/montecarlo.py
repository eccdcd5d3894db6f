"""Monte Carlo experiments on random subnetworks of uniform sorting networks.

Every stochastic routine takes a ``numpy.random.Generator`` (or an int
seed).  With ``workers > 1`` the generator is split with
``Generator.spawn`` into one child per worker, each worker handles a
fixed share of the samples, and partial accumulators are merged in
worker order, so ``(seed, workers)`` determines the result bit for bit.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from . import _kernels
from .exact import COROLLARY_NETWORKS, theorem1_expectation
from .geometry import geometric_location_samples, mc_geometric_swap_expectation
from .stats import Accumulator, Estimate, merge_all, welford_merge
from .tableau import sample_network_array
from .urn import coupled_first_swaps_batch

__all__ = [
    "Accumulator", "Estimate", "welford_merge", "subnet_batches", "mc_subnet_swap_expectation",
    "mc_corollary2", "subnet_law_m4", "geometric_law_m4", "tv_distance", "compare_m4_laws",
    "ExperimentConfig", "run_experiment", "EXPERIMENTS",
]

CHUNK = 4096


def as_rng(rng: np.random.Generator | int) -> np.random.Generator:
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def _split(samples: int, workers: int) -> list[int]:
    base, extra = divmod(samples, workers)
    return [base + (w < extra) for w in range(workers)]


def _parallel(task: Callable[[int, np.random.Generator], Accumulator], samples: int,
              rng: np.random.Generator | int, workers: int) -> Accumulator:
    if samples < 1:
        raise ValueError("samples must be positive")
    if workers < 1:
        raise ValueError("workers must be positive")
    rng = as_rng(rng)
    if workers == 1:
        return task(samples, rng)
    children = rng.spawn(workers)
    shares = _split(samples, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(task, shares, children))
    return merge_all(parts)


def subnet_batches(n: int, m: int, samples: int, rng: np.random.Generator,
                   chunk: int = CHUNK) -> Iterator[np.ndarray]:
    """Yield ``(S, C(m,2))`` arrays of random ``m``-out-of-``n`` subnetworks, ``samples`` rows in total."""
    if not 2 <= m <= n:
        raise ValueError(f"need 2 <= m <= n, got m={m}, n={n}")
    P = m * (m - 1) // 2
    remaining = samples
    while remaining > 0:
        size = min(chunk, remaining)
        nets = sample_network_array(n, size, rng)
        subsets = np.empty((size, m), dtype=np.int64)
        _kernels.random_subsets(n, m, size, int(rng.integers(0, 2**63 - 1)), subsets)
        out = np.empty((size, P), dtype=np.int64)
        _kernels.restrict_batch(n, nets, subsets, out)
        remaining -= size
        yield out


def mc_subnet_swap_expectation(n: int, m: int, j: int, samples: int,
                               rng: np.random.Generator | int, workers: int = 1) -> Estimate:
    """Estimate the expected number of location-``j`` swaps in the random ``m``-out-of-``n`` subnetwork."""
    if not 1 <= j <= m - 1:
        raise ValueError(f"location j={j} outside 1..{m - 1}")

    def task(count: int, g: np.random.Generator) -> Accumulator:
        return merge_all(Accumulator.of(np.count_nonzero(b == j, axis=1))
                         for b in subnet_batches(n, m, count, g))

    return _parallel(task, samples, rng, workers).estimate()


def _corollary_hits(batch: np.ndarray) -> np.ndarray:
    targets = np.asarray(COROLLARY_NETWORKS)
    return (batch[:, None, :] == targets[None]).all(axis=2).any(axis=1)


def mc_corollary2(n: int, samples: int, rng: np.random.Generator | int, workers: int = 1) -> Estimate:
    """Estimate the probability that the random 4-out-of-``n`` subnetwork is one of the four triangle-type 4-networks."""
    if n < 4:
        raise ValueError("n must be at least 4")

    def task(count: int, g: np.random.Generator) -> Accumulator:
        return merge_all(Accumulator.of(_corollary_hits(b)) for b in subnet_batches(n, 4, count, g))

    return _parallel(task, samples, rng, workers).estimate()


# -- laws of 4-networks ------------------------------------------------------------

def _law(batches) -> dict[tuple[int, ...], int]:
    counts: Counter[tuple[int, ...]] = Counter()
    for b in batches:
        rows, c = np.unique(b, axis=0, return_counts=True)
        for row, k in zip(rows, c):
            counts[tuple(int(s) for s in row)] += int(k)
    return dict(sorted(counts.items()))


def subnet_law_m4(n: int, samples: int, rng: np.random.Generator | int) -> dict[tuple[int, ...], int]:
    """Observed counts of each 4-network as the random 4-out-of-``n`` subnetwork."""
    if n < 4:
        raise ValueError("n must be at least 4")
    return _law(subnet_batches(n, 4, samples, as_rng(rng)))


def geometric_law_m4(samples: int, rng: np.random.Generator | int) -> dict[tuple[int, ...], int]:
    """Observed counts of each 4-network as the Archimedes geometric network."""
    return _law(geometric_location_samples(4, samples, as_rng(rng)))


def tv_distance(p: dict, q: dict) -> float:
    """Total variation distance between two count (or probability) tables."""
    sp, sq = sum(p.values()), sum(q.values())
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0) / sp - q.get(k, 0) / sq) for k in keys)


@dataclass
class LawComparison:
    n: int
    subnet_counts: dict
    geometric_counts: dict
    tv: float
    tv_bootstrap_se: float
    bootstrap: int = field(default=0)

    def as_dict(self) -> dict:
        fmt = lambda d: {"".join(map(str, k)): v for k, v in d.items()}  # noqa: E731
        return {"n": self.n, "tv": self.tv, "tv_bootstrap_se": self.tv_bootstrap_se,
                "bootstrap": self.bootstrap, "subnet_counts": fmt(self.subnet_counts),
                "geometric_counts": fmt(self.geometric_counts)}


def compare_m4_laws(n: int, samples: int, rng: np.random.Generator | int,
                    bootstrap: int = 200) -> LawComparison:
    """Empirical laws of the 4-out-of-``n`` subnetwork and the geometric 4-network, with their
    total variation distance and a parametric-bootstrap standard error for it.

    Descriptive only: nothing is known about how fast (or whether) the
    distance goes to zero.
    """
    rng = as_rng(rng)
    sub = subnet_law_m4(n, samples, rng)
    geo = geometric_law_m4(samples, rng)
    tv = tv_distance(sub, geo)
    keys = sorted(set(sub) | set(geo))
    ps = np.array([sub.get(k, 0) for k in keys], float) / samples
    pg = np.array([geo.get(k, 0) for k in keys], float) / samples
    reps = []
    for _ in range(bootstrap):
        a = rng.multinomial(samples, ps) / samples
        b = rng.multinomial(samples, pg) / samples
        reps.append(0.5 * np.abs(a - b).sum())
    se = float(np.std(reps, ddof=1)) if bootstrap > 1 else 0.0
    return LawComparison(n, sub, geo, tv, se, bootstrap)


# -- experiment configs -------------------------------------------------------------

def _need(params: dict, *names: str) -> list[int]:
    missing = [k for k in names if k not in params]
    if missing:
        raise ValueError(f"missing parameters: {', '.join(missing)}")
    extra = set(params) - set(names)
    if extra:
        raise ValueError(f"unexpected parameters: {', '.join(sorted(extra))}")
    return [int(params[k]) for k in names]


def _exp_subnet_swaps(p, samples, rng, workers):
    n, m, j = _need(p, "n", "m", "j")
    if not (2 <= m <= n and 1 <= j <= m - 1):
        raise ValueError("need 2 <= m <= n and 1 <= j <= m - 1")
    est = mc_subnet_swap_expectation(n, m, j, samples, rng, workers)
    target = theorem1_expectation(m, j)
    return {**est.as_dict(), "target": str(target), "zscore": est.zscore(target)}


def _exp_corollary2(p, samples, rng, workers):
    (n,) = _need(p, "n")
    if n < 4:
        raise ValueError("need n >= 4")
    est = mc_corollary2(n, samples, rng, workers)
    return {**est.as_dict(), "target": "1/4", "zscore": est.zscore(Fraction(1, 4))}


def _exp_geom_swaps(p, samples, rng, workers):
    m, j = _need(p, "m", "j")
    if not (m >= 2 and 1 <= j <= m - 1):
        raise ValueError("need m >= 2 and 1 <= j <= m - 1")
    est = mc_geometric_swap_expectation(m, j, samples, rng)
    target = theorem1_expectation(m, j)
    return {**est.as_dict(), "target": str(target), "zscore": est.zscore(target)}


def _exp_m4_law(p, samples, rng, workers):
    (n,) = _need(p, "n")
    if n < 4:
        raise ValueError("need n >= 4")
    return compare_m4_laws(n, samples, rng).as_dict()


def _exp_urn_couple(p, samples, rng, workers):
    (n_max,) = _need(p, "n_max")
    if n_max < 2:
        raise ValueError("need n_max >= 2")
    paths = coupled_first_swaps_batch(n_max, samples, rng)
    diffs = np.diff(paths, axis=1)
    violations = int(np.count_nonzero((diffs != 0) & (diffs != 1)))
    return {"paths": samples, "violations": violations,
            "final_mean": float(paths[:, -1].mean())}


EXPERIMENTS: dict[str, Callable] = {
    "subnet-swaps": _exp_subnet_swaps,
    "corollary2": _exp_corollary2,
    "geom-swaps": _exp_geom_swaps,
    "m4-law": _exp_m4_law,
    "urn-couple": _exp_urn_couple,
}


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    parameters: dict
    samples: int
    seed: int
    workers: int = 1

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; choose from {sorted(EXPERIMENTS)}")
        if self.samples < 1 or self.workers < 1:
            raise ValueError("samples and workers must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        return cls(d["experiment"], dict(d.get("parameters", {})), int(d["samples"]),
                   int(d["seed"]), int(d.get("workers", 1)))

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def run_experiment(config: ExperimentConfig, log: str | Path | None = None) -> dict:
    """Run ``config`` and optionally append ``{"config": ..., "result": ...}`` to a JSON-lines log."""
    fn = EXPERIMENTS[config.experiment]
    result = fn(config.parameters, config.samples, np.random.default_rng(config.seed), config.workers)
    record = {"config": {"experiment": config.experiment, "parameters": config.parameters,
                         "samples": config.samples, "seed": config.seed, "workers": config.workers},
              "result": result}
    if log is not None:
        with open(log, "a") as fh:
            fh.write(json.dumps(record) + "\n")
    return record
