from hypothesis import strategies as st

from sortnet.core import SortingNetwork


@st.composite
def networks(draw, min_n=2, max_n=7):
    """A random sorting network built by choosing among the available swaps at each step."""
    n = draw(st.integers(min_n, max_n))
    sigma = list(range(1, n + 1))
    word = []
    for _ in range(n * (n - 1) // 2):
        options = [s for s in range(1, n) if sigma[s - 1] < sigma[s]]
        s = draw(st.sampled_from(options))
        sigma[s - 1], sigma[s] = sigma[s], sigma[s - 1]
        word.append(s)
    return SortingNetwork(n, tuple(word))


@st.composite
def network_and_subset(draw, min_n=2, max_n=7):
    net = draw(networks(min_n, max_n))
    subset = draw(st.sets(st.integers(1, net.n), min_size=2))
    return net, sorted(subset)
