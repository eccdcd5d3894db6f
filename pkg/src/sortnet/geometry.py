"""Geometric sorting networks of Archimedes-distributed points.

Points are labelled by increasing x-coordinate.  Rotating the projection
direction ``(cos t, sin t)`` from ``t = 0`` to ``t = pi``, the pair
``i < j`` swaps at the angle perpendicular to the segment joining them;
replaying the pair swaps in angle order gives the sorting network.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb, gamma, pi

import numpy as np
from scipy import integrate

from .core import SortingNetwork
from .stats import Accumulator, Estimate, merge_all

TIE_TOL = 1e-12


class DegenerateConfiguration(ValueError):
    """Point set not in general position (shared vertical line, collinear triple or tied swap angles)."""


@dataclass(frozen=True)
class PointSet:
    """Points strictly inside the unit disc, stored in increasing x order."""

    points: tuple[tuple[float, float], ...]
    resamples: int = field(default=0, compare=False)

    def __post_init__(self):
        pts = tuple(sorted((float(x), float(y)) for x, y in self.points))
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise ValueError("need at least two points")
        if any(x * x + y * y >= 1 for x, y in pts):
            raise ValueError("points must lie in the open unit disc")
        if not np.all(np.diff([p[0] for p in pts]) > TIE_TOL):
            raise DegenerateConfiguration("two points share a vertical line")
        a = np.asarray(pts)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                for k in range(j + 1, len(pts)):
                    if abs(_cross(a[j] - a[i], a[k] - a[i])) < TIE_TOL:
                        raise DegenerateConfiguration(f"points {i + 1}, {j + 1}, {k + 1} are collinear")

    @property
    def m(self) -> int:
        return len(self.points)

    def array(self) -> np.ndarray:
        return np.asarray(self.points)


def _cross(u, v) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


# -- sampling ---------------------------------------------------------------

def archimedes_array(count: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """``(count, m, 2)`` points with the Archimedes density, each row sorted by x.

    Uniform points on the unit sphere with the third coordinate dropped.
    """
    g = rng.standard_normal((count, m, 3))
    g /= np.linalg.norm(g, axis=2, keepdims=True)
    pts = g[..., :2]
    order = np.argsort(pts[..., 0], axis=1)
    return np.take_along_axis(pts, order[..., None], axis=1)


def sample_archimedes(m: int, rng: np.random.Generator, max_tries: int = 1000) -> PointSet:
    """``m`` i.i.d. Archimedes points in general position (resampling on degeneracy)."""
    if m < 2:
        raise ValueError("m must be at least 2")
    for tries in range(max_tries):
        pts = archimedes_array(1, m, rng)[0]
        try:
            ps = PointSet(tuple(map(tuple, pts)), resamples=tries)
            geometric_network(ps)
            return ps
        except DegenerateConfiguration:
            continue
    raise RuntimeError(f"no general-position sample in {max_tries} tries")


# -- networks -----------------------------------------------------------------

def _pairs(m: int) -> tuple[np.ndarray, np.ndarray]:
    I, J = np.triu_indices(m, k=1)
    return I, J


def swap_angles(points: np.ndarray) -> np.ndarray:
    """Swap angle in (0, pi) of every pair ``i < j`` (``np.triu_indices`` order); shape ``(..., C(m,2))``."""
    I, J = _pairs(points.shape[-2])
    d = points[..., J, :] - points[..., I, :]
    return np.arctan2(d[..., 1], d[..., 0]) + pi / 2


def geometric_network_array(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Replay pair swaps for a ``(S, m, 2)`` batch of x-sorted point sets.

    Returns ``(locations, ok)``: a ``(S, C(m,2))`` array of 1-based swap
    locations and a mask of rows that were in general position.  Rows
    with ``ok == False`` hold garbage.
    """
    S, m, _ = points.shape
    I, J = _pairs(m)
    d = points[:, J, :] - points[:, I, :]
    ang = np.arctan2(d[..., 1], d[..., 0]) + pi / 2
    order = np.argsort(ang, axis=1)
    sorted_ang = np.take_along_axis(ang, order, axis=1)
    ok = np.all(d[..., 0] > TIE_TOL, axis=1)
    if m > 2:
        ok &= np.all(np.diff(sorted_ang, axis=1) > TIE_TOL, axis=1)
    rows = np.arange(S)
    pos = np.tile(np.arange(m), (S, 1))
    locs = np.empty((S, len(I)), dtype=np.int64)
    for k in range(len(I)):
        pair = order[:, k]
        pi_, pj_ = pos[rows, I[pair]], pos[rows, J[pair]]
        ok &= np.abs(pi_ - pj_) == 1
        locs[:, k] = np.minimum(pi_, pj_) + 1
        pos[rows, I[pair]] = pj_
        pos[rows, J[pair]] = pi_
    return locs, ok


def geometric_network(points: PointSet) -> SortingNetwork:
    """The sorting network traced by the rotating projection order of ``points``."""
    locs, ok = geometric_network_array(points.array()[None])
    if not ok[0]:
        raise DegenerateConfiguration("tied swap angles or non-adjacent swap")
    return SortingNetwork(points.m, tuple(locs[0].tolist()))


def pair_projection_distance(points: PointSet, i: int, j: int) -> float:
    """Signed distance from the origin to the line through points ``i`` and ``j`` (1-based).

    Positive when the origin lies to the left of the segment directed
    from the lower label to the higher one.
    """
    if i == j:
        raise ValueError("need two distinct points")
    if i > j:
        i, j = j, i
    p, q = np.asarray(points.points[i - 1]), np.asarray(points.points[j - 1])
    return float(signed_line_distance(p[None], q[None])[0])


def signed_line_distance(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Vectorised :func:`pair_projection_distance` for ``(S, 2)`` arrays of endpoints."""
    d = q - p
    norm = np.hypot(d[:, 0], d[:, 1])
    if np.any(norm == 0):
        raise ValueError("coincident points")
    return (d[:, 1] * p[:, 0] - d[:, 0] * p[:, 1]) / norm


def semicircle_cdf(r):
    r = np.clip(r, -1.0, 1.0)
    return 0.5 + (r * np.sqrt(1 - r * r) + np.arcsin(r)) / pi


def one_inside_triangle(points: np.ndarray) -> np.ndarray:
    """For ``(S, 4, 2)`` batches: does some point lie in the triangle of the other three?"""
    out = np.zeros(points.shape[0], dtype=bool)
    for k in range(4):
        a, b, c = (points[:, i] for i in range(4) if i != k)
        p = points[:, k]
        s1 = _cross_batch(b - a, p - a)
        s2 = _cross_batch(c - b, p - b)
        s3 = _cross_batch(a - c, p - c)
        out |= ((s1 > 0) & (s2 > 0) & (s3 > 0)) | ((s1 < 0) & (s2 < 0) & (s3 < 0))
    return out


def _cross_batch(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]


# -- integrals ------------------------------------------------------------------

QUAD_EPSABS = 1e-12


def archimedes_expected_swaps(m: int, j: int) -> float:
    """Expected location-``j`` swaps of the Archimedes geometric ``m``-network, by quadrature.

    The swap position ``r`` of a fixed pair has the semicircle law; each of
    the other ``m - 2`` projections falls left of it with probability
    ``(1 + r) / 2``.  Substituting ``r = cos(phi)`` removes the square-root
    endpoint behaviour.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if not 1 <= j <= m - 1:
        raise ValueError(f"location j={j} outside 1..{m - 1}")
    const = comb(m, 2) * comb(m - 2, j - 1) * 2 / pi

    def f(phi):
        c = math.cos(phi)
        return ((1 + c) / 2) ** (j - 1) * ((1 - c) / 2) ** (m - j - 1) * math.sin(phi) ** 2

    value, _ = integrate.quad(f, 0.0, pi, epsabs=QUAD_EPSABS / const, epsrel=1e-13, limit=200)
    return const * value


def beta_integral(j: int, m: int) -> tuple[float, float]:
    """``int_0^1 t^(j-1/2) (1-t)^(m-j-1/2) dt`` two ways: ``(quadrature, gamma form)``.

    The quadrature substitutes ``t = sin^2(phi / 2)``, giving the smooth
    integrand ``sin^(2j)(phi/2) cos^(2m-2j)(phi/2)`` on ``[0, pi]``.
    """
    if not 1 <= j <= m - 1:
        raise ValueError(f"need 1 <= j <= m - 1, got j={j}, m={m}")

    def f(phi):
        return math.sin(phi / 2) ** (2 * j) * math.cos(phi / 2) ** (2 * (m - j))

    quad, _ = integrate.quad(f, 0.0, pi, epsabs=0.0, epsrel=1e-13, limit=200)
    closed = gamma(j + 0.5) * gamma(m - j + 0.5) / gamma(m + 1)
    return quad, closed


# -- Monte Carlo ------------------------------------------------------------------

def geometric_location_samples(m: int, samples: int, rng: np.random.Generator,
                               chunk: int = 200_000):
    """Yield ``(S, C(m,2))`` arrays of geometric-network swap locations, degenerate rows dropped
    and replaced so exactly ``samples`` rows are produced in total."""
    remaining = samples
    while remaining > 0:
        size = min(chunk, remaining)
        pts = archimedes_array(size, m, rng)
        locs, ok = geometric_network_array(pts)
        locs = locs[ok]
        remaining -= len(locs)
        yield locs


def mc_geometric_swap_expectation(m: int, j: int, samples: int, rng: np.random.Generator) -> Estimate:
    """Mean and standard error of the location-``j`` swap count of the Archimedes ``m``-network."""
    if samples < 1:
        raise ValueError("samples must be positive")
    if not 1 <= j <= m - 1:
        raise ValueError(f"location j={j} outside 1..{m - 1}")
    parts = [Accumulator.of(np.count_nonzero(locs == j, axis=1))
             for locs in geometric_location_samples(m, samples, rng)]
    return merge_all(parts).estimate()


def geometric_location_law(m: int, t: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Empirical law of ``s_t`` of the Archimedes ``m``-network over locations ``1..m-1``."""
    counts = np.zeros(m, dtype=np.int64)
    for locs in geometric_location_samples(m, samples, rng):
        counts += np.bincount(locs[:, t - 1], minlength=m)
    return counts[1:] / samples
