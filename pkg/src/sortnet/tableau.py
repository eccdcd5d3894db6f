"""Staircase standard Young tableaux and the Edelman-Greene correspondence.

An ``n``-particle sorting network corresponds to a standard Young tableau
of staircase shape ``(n-1, n-2, ..., 1)``: the recording tableau of
Edelman-Greene insertion applied to the network's swap word read from
the end.  With that orientation the cell holding the largest entry sits
in column ``s_1``, so the law of the first swap is the law of the column
of the largest entry under a uniform tableau.

Uniform tableaux come from the Greene-Nijenhuis-Wilf hook walk, which
makes :func:`sample_uniform_network` exactly uniform.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, prod
from typing import Iterator

import numpy as np

from . import _kernels
from .core import Failure, InvalidNetwork, SortingNetwork

Cell = tuple[int, int]


@dataclass(frozen=True)
class StaircaseSYT:
    """A standard Young tableau of shape ``(n-1, ..., 1)``.

    ``rows[i]`` is row ``i + 1`` (top row first, English convention).
    """

    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        problem = _staircase_problem(self.n, rows)
        if problem:
            raise ValueError(f"not a staircase SYT: {problem}")

    @property
    def size(self) -> int:
        return self.n * (self.n - 1) // 2

    def __getitem__(self, cell: Cell) -> int:
        i, j = cell
        return self.rows[i - 1][j - 1]

    def cells(self) -> dict[int, Cell]:
        """Map entry -> 1-based (row, col)."""
        return {v: (i, j) for i, row in enumerate(self.rows, 1) for j, v in enumerate(row, 1)}

    def max_corner(self) -> int:
        """Column of the cell holding the largest entry ``N``."""
        return self.cells()[self.size][1]

    def __str__(self) -> str:
        return format_tableau(self)


def _staircase_problem(n: int, rows) -> str | None:
    if n < 2:
        return "n must be at least 2"
    if [len(r) for r in rows] != list(range(n - 1, 0, -1)):
        return f"shape {[len(r) for r in rows]} is not a staircase"
    N = n * (n - 1) // 2
    if sorted(v for r in rows for v in r) != list(range(1, N + 1)):
        return f"entries are not 1..{N}"
    for i, row in enumerate(rows):
        if any(a >= b for a, b in zip(row, row[1:])):
            return f"row {i + 1} not increasing"
        if i > 0 and any(rows[i - 1][j] >= row[j] for j in range(len(row))):
            return f"column violation between rows {i} and {i + 1}"
    return None


def format_tableau(tableau: StaircaseSYT) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in tableau.rows)


def parse_tableau(text: str) -> StaircaseSYT:
    rows = tuple(tuple(int(v) for v in line.split()) for line in text.splitlines() if line.strip())
    return StaircaseSYT(len(rows) + 1, rows)


# -- hooks -----------------------------------------------------------------

def hook_length(n: int, cell: Cell) -> int:
    """Hook length of 1-based ``cell`` in the staircase ``(n-1, ..., 1)``."""
    i, j = cell
    if not (1 <= i <= n - 1 and 1 <= j <= n - i):
        raise ValueError(f"cell {cell} outside the staircase of order {n}")
    arm = (n - i) - j
    leg = (n - j) - i
    return arm + leg + 1


def hook_product(n: int) -> int:
    return prod(hook_length(n, (i, j)) for i in range(1, n) for j in range(1, n - i + 1))


def count_syt(n: int) -> int:
    """Hook-length count of staircase tableaux."""
    return factorial(n * (n - 1) // 2) // hook_product(n)


def enumerate_syt(n: int) -> Iterator[StaircaseSYT]:
    """Every staircase SYT, built by placing ``N, N-1, ...`` at outer corners."""
    if not 2 <= n <= 6:
        raise ValueError("tableau enumeration supports 2 <= n <= 6")
    N = n * (n - 1) // 2
    grid = [[0] * (n - 1 - i) for i in range(n - 1)]
    lengths = [n - 1 - i for i in range(n - 1)]

    def rec(v: int):
        if v == 0:
            yield StaircaseSYT(n, tuple(tuple(r) for r in grid))
            return
        for i in range(n - 1):
            L = lengths[i]
            if L and (i + 1 == n - 1 or lengths[i + 1] < L):
                grid[i][L - 1] = v
                lengths[i] -= 1
                yield from rec(v - 1)
                lengths[i] += 1

    yield from rec(N)


# -- Edelman-Greene -----------------------------------------------------------

def _cell_arrays(tableau: StaircaseSYT) -> tuple[np.ndarray, np.ndarray]:
    N = tableau.size
    rows = np.full(N + 1, -1, dtype=np.int64)
    cols = np.full(N + 1, -1, dtype=np.int64)
    for i, row in enumerate(tableau.rows):
        for j, v in enumerate(row):
            rows[v] = i
            cols[v] = j
    return rows, cols


def _tableau_from_cells(n: int, rows: np.ndarray, cols: np.ndarray) -> StaircaseSYT:
    grid = [[0] * (n - 1 - i) for i in range(n - 1)]
    for v in range(1, len(rows)):
        grid[rows[v]][cols[v]] = v
    return StaircaseSYT(n, tuple(tuple(r) for r in grid))


def network_to_syt(network: SortingNetwork) -> StaircaseSYT:
    """Edelman-Greene recording tableau of the network's word read backwards."""
    n, N = network.n, network.size
    rows = np.empty(N + 1, dtype=np.int64)
    cols = np.empty(N + 1, dtype=np.int64)
    status = _kernels.eg_forward(n, np.asarray(network.swaps, dtype=np.int64), rows, cols)
    if status != 0:
        raise InvalidNetwork(Failure.NOT_REDUCED, str(network))
    return _tableau_from_cells(n, rows, cols)


def syt_to_network(tableau: StaircaseSYT) -> SortingNetwork:
    """Inverse of :func:`network_to_syt` by reverse Edelman-Greene insertion."""
    rows, cols = _cell_arrays(tableau)
    out = np.empty(tableau.size, dtype=np.int64)
    if _kernels.eg_reverse(tableau.n, rows, cols, out) != 0:
        raise ValueError("malformed staircase tableau")
    return SortingNetwork(tableau.n, tuple(out.tolist()))


# -- sampling -------------------------------------------------------------------

def _seed_from(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**63 - 1))


def sample_syt(n: int, rng: np.random.Generator) -> StaircaseSYT:
    """Uniform staircase SYT by iterated hook walks."""
    if n < 2:
        raise ValueError("n must be at least 2")
    N = n * (n - 1) // 2
    rows = np.empty(N + 1, dtype=np.int64)
    cols = np.empty(N + 1, dtype=np.int64)
    _kernels.seed_numba(_seed_from(rng))
    _kernels.hook_walk(n, rows, cols)
    return _tableau_from_cells(n, rows, cols)


def sample_uniform_network(n: int, rng: np.random.Generator) -> SortingNetwork:
    """A uniformly random ``n``-particle sorting network."""
    return SortingNetwork(n, tuple(sample_network_array(n, 1, rng)[0].tolist()))


def sample_network_array(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` independent uniform networks as a ``(count, C(n,2))`` int16 array.

    Rows are not re-validated; the tests check the sampler's output.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    out = np.empty((count, n * (n - 1) // 2), dtype=np.int16)
    _kernels.sample_networks(n, count, _seed_from(rng), out)
    return out
