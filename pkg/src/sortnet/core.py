"""Permutations, sorting networks, subnetworks and wiring diagrams.

Conventions: particles are labelled ``1..n`` and swap locations are
1-based.  A configuration is stored in one-line notation as a tuple
``sigma`` where ``sigma[i - 1]`` is the particle at location ``i``.
Applying the swap ``tau_s`` on the right exchanges the particles at
locations ``s`` and ``s + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence
from xml.sax.saxutils import escape

Permutation = tuple[int, ...]


class InvalidNetwork(ValueError):
    """Raised when a swap sequence is not a sorting network."""

    def __init__(self, reason: "Failure", detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason.value}: {detail}" if detail else reason.value)


class Failure(Enum):
    BAD_SIZE = "n must be at least 2"
    WRONG_LENGTH = "wrong length"
    OUT_OF_RANGE = "swap location out of range"
    NOT_REDUCED = "non-reduced prefix"
    WRONG_ENDPOINT = "does not end at the reverse permutation"


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def reverse(n: int) -> Permutation:
    return tuple(range(n, 0, -1))


def is_permutation(entries: Sequence[int]) -> bool:
    return sorted(entries) == list(range(1, len(entries) + 1))


def inverse(perm: Sequence[int]) -> Permutation:
    inv = [0] * len(perm)
    for loc, p in enumerate(perm, start=1):
        inv[p - 1] = loc
    return tuple(inv)


def inversions(perm: Sequence[int]) -> int:
    return sum(1 for a, b in combinations(perm, 2) if a > b)


def check_network(n: int, swaps: Sequence[int]) -> Failure | None:
    """Return the first reason ``swaps`` fails to be an ``n``-network, or None.

    The checks run in a fixed order: size, length, range, then a replay
    that requires every swap to create an inversion.  A reduced word of
    length ``C(n, 2)`` necessarily ends at the reverse permutation, so
    ``WRONG_ENDPOINT`` is only reachable through a mismatched length.
    """
    if n < 2:
        return Failure.BAD_SIZE
    if any(not 1 <= s <= n - 1 for s in swaps):
        return Failure.OUT_OF_RANGE
    if len(swaps) != n * (n - 1) // 2:
        return Failure.WRONG_LENGTH
    sigma = list(range(1, n + 1))
    for s in swaps:
        a, b = sigma[s - 1], sigma[s]
        if a > b:
            return Failure.NOT_REDUCED
        sigma[s - 1], sigma[s] = b, a
    if tuple(sigma) != reverse(n):
        return Failure.WRONG_ENDPOINT
    return None


def validate(n: int, swaps: Sequence[int]) -> bool:
    """True iff ``swaps`` is an ``n``-particle sorting network."""
    return check_network(n, swaps) is None


@dataclass(frozen=True)
class SortingNetwork:
    """An ``n``-particle sorting network ``(s_1, ..., s_N)``, ``N = C(n, 2)``."""

    n: int
    swaps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "swaps", tuple(int(s) for s in self.swaps))
        reason = check_network(self.n, self.swaps)
        if reason is not None:
            raise InvalidNetwork(reason, f"n={self.n}, swaps={format_swaps(self.swaps)}")

    def __len__(self) -> int:
        return len(self.swaps)

    def __str__(self) -> str:
        return format_network(self)

    @property
    def size(self) -> int:
        return len(self.swaps)

    def count(self, location: int) -> int:
        """Number of swaps at ``location``."""
        return self.swaps.count(location)

    def word(self) -> str:
        """Compact digit form, e.g. ``123212`` (only meaningful for n <= 10)."""
        return "".join(str(s) for s in self.swaps)

    def configurations(self) -> Iterator[Permutation]:
        return configurations(self)


def configurations(network: SortingNetwork) -> Iterator[Permutation]:
    """Stream ``sigma_0 = id, sigma_1, ..., sigma_N``."""
    sigma = list(range(1, network.n + 1))
    yield tuple(sigma)
    for s in network.swaps:
        sigma[s - 1], sigma[s] = sigma[s], sigma[s - 1]
        yield tuple(sigma)


def particle_locations(network: SortingNetwork) -> Iterator[Permutation]:
    """Stream the inverse configurations: entry ``i - 1`` is particle ``i``'s location."""
    for sigma in configurations(network):
        yield inverse(sigma)


def subnetwork(network: SortingNetwork, subset: Iterable[int]) -> SortingNetwork:
    """The network seen by the particles in ``subset`` alone.

    A swap contributes exactly when both exchanged particles are in the
    subset; its location is the number of subset particles at or left of
    the swap position just before it happens.
    """
    n = network.n
    members = _check_subset(n, subset)
    inside = [False] * (n + 1)
    for a in members:
        inside[a] = True
    sigma = list(range(1, n + 1))
    out = []
    for s in network.swaps:
        a, b = sigma[s - 1], sigma[s]
        if inside[a] and inside[b]:
            out.append(sum(inside[p] for p in sigma[:s]))
        sigma[s - 1], sigma[s] = b, a
    return SortingNetwork(len(members), tuple(out))


def subnetwork_by_configurations(network: SortingNetwork, subset: Iterable[int]) -> SortingNetwork:
    """Reference construction: restrict each configuration, relabel, deduplicate."""
    members = _check_subset(network.n, subset)
    relabel = {a: i for i, a in enumerate(members, start=1)}
    restricted: list[Permutation] = []
    for sigma in configurations(network):
        r = tuple(relabel[p] for p in sigma if p in relabel)
        if not restricted or restricted[-1] != r:
            restricted.append(r)
    swaps = []
    for before, after in zip(restricted, restricted[1:]):
        diff = [i for i in range(len(before)) if before[i] != after[i]]
        if len(diff) != 2 or diff[1] != diff[0] + 1:
            raise AssertionError("consecutive restricted configurations differ by more than a swap")
        swaps.append(diff[0] + 1)
    return SortingNetwork(len(members), tuple(swaps))


def _check_subset(n: int, subset: Iterable[int]) -> list[int]:
    members = sorted(set(int(a) for a in subset))
    if len(members) < 2:
        raise ValueError("subset must contain at least two particles")
    if members[0] < 1 or members[-1] > n:
        raise ValueError(f"subset {members} is not contained in 1..{n}")
    return members


def shift(network: SortingNetwork) -> SortingNetwork:
    """``(s_1, ..., s_N) -> (s_2, ..., s_N, n - s_1)``; a bijection on n-networks."""
    s = network.swaps
    return SortingNetwork(network.n, s[1:] + (network.n - s[0],))


# -- text format --------------------------------------------------------------

def format_swaps(swaps: Iterable[int]) -> str:
    return " ".join(str(s) for s in swaps)


def format_network(network: SortingNetwork) -> str:
    """``"n: s_1 s_2 ... s_N"``."""
    return f"{network.n}: {format_swaps(network.swaps)}"


def parse_network(line: str) -> SortingNetwork:
    head, sep, tail = line.partition(":")
    if not sep:
        raise ValueError(f"expected 'n: s_1 ... s_N', got {line!r}")
    return SortingNetwork(int(head), tuple(int(t) for t in tail.split()))


def read_networks(path: str | Path) -> list[SortingNetwork]:
    with open(path) as fh:
        return [parse_network(line) for line in fh if line.strip() and not line.lstrip().startswith("#")]


def write_networks(networks: Iterable[SortingNetwork], path: str | Path) -> None:
    with open(path, "w") as fh:
        for net in networks:
            fh.write(format_network(net) + "\n")


# -- wiring diagrams ----------------------------------------------------------

def wiring_diagram_svg(network: SortingNetwork, *, step: float = 40.0, gap: float = 30.0,
                       margin: float = 30.0) -> str:
    """Render a wiring diagram as an SVG document.

    Location 1 is the bottom wire.  Particles are labelled on the left in
    their starting locations and on the right in their final ones, so the
    left column reads 1..n upwards and the right column n..1 upwards.
    """
    n, N = network.n, network.size
    width = 2 * margin + step * (N + 1)
    height = 2 * margin + gap * (n - 1)

    def y(loc: float) -> float:
        return margin + gap * (n - loc)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}">',
        f"<title>{escape(format_network(network))}</title>",
        '<g stroke="black" stroke-width="1.5" fill="none">',
    ]
    sigma = list(range(1, n + 1))
    x_left = margin
    # a straight run before and after every crossing
    for t, s in enumerate(network.swaps):
        x0 = margin + step * t + step / 2
        x1 = x0 + step
        for loc in range(1, n + 1):
            if loc in (s, s + 1):
                continue
            parts.append(f'<line class="wire" x1="{x0:g}" y1="{y(loc):g}" x2="{x1:g}" y2="{y(loc):g}"/>')
        parts.append(f'<line class="crossing" x1="{x0:g}" y1="{y(s):g}" x2="{x1:g}" y2="{y(s + 1):g}"/>')
        parts.append(f'<line class="crossing" x1="{x0:g}" y1="{y(s + 1):g}" x2="{x1:g}" y2="{y(s):g}"/>')
        sigma[s - 1], sigma[s] = sigma[s], sigma[s - 1]
    x_right = margin + step * N + step / 2
    for loc in range(1, n + 1):
        parts.append(f'<line class="wire" x1="{x_left:g}" y1="{y(loc):g}" x2="{x_left + step / 2:g}" y2="{y(loc):g}"/>')
        parts.append(f'<line class="wire" x1="{x_right:g}" y1="{y(loc):g}" x2="{x_right + step / 2:g}" y2="{y(loc):g}"/>')
    parts.append("</g>")
    parts.append('<g font-family="sans-serif" font-size="14" dominant-baseline="middle">')
    for loc in range(1, n + 1):
        parts.append(f'<text class="label-left" x="{x_left - 15:g}" y="{y(loc):g}">{loc}</text>')
        parts.append(f'<text class="label-right" x="{x_right + step / 2 + 5:g}" y="{y(loc):g}">{sigma[loc - 1]}</text>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def wiring_diagram(network: SortingNetwork, path: str | Path, **kwargs) -> Path:
    """Write the SVG wiring diagram of ``network`` to ``path``."""
    path = Path(path)
    path.write_text(wiring_diagram_svg(network, **kwargs))
    return path
