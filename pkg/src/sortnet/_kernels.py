"""Compiled inner loops for tableau sampling and network restriction.

All arrays are 0-based internally; swap locations stored in them stay
1-based.  Random kernels seed numba's own generator from an explicit
integer so a given seed always reproduces the same output.
"""

import numpy as np
from numba import njit

# Staircase cells are (row, col), 0-based; row r has n - 1 - r cells and the
# Edelman-Greene insertion tableau of the reverse permutation holds r + c + 1.


@njit(cache=True, nogil=True)
def seed_numba(seed):
    np.random.seed(seed)


@njit(cache=True, nogil=True)
def hook_walk(n, cell_row, cell_col):
    """Fill ``cell_row[v], cell_col[v]`` (v = 1..N) with a uniform staircase SYT.

    Each round picks a uniform cell of the remaining shape, walks to a
    uniform cell of its hook until it reaches a corner, and places the
    largest unplaced entry there.  Uses numba's global generator.
    """
    k = n - 1
    N = n * (n - 1) // 2
    row_len = np.empty(k, np.int64)
    col_len = np.empty(k, np.int64)
    for r in range(k):
        row_len[r] = k - r
        col_len[r] = k - r
    nrows = k
    for v in range(N, 0, -1):
        ncols = row_len[0]
        # uniform cell of the shape by rejection from its bounding box
        while True:
            u = np.random.randint(0, nrows * ncols)
            i = u // ncols
            j = u - i * ncols
            if j < row_len[i]:
                break
        while True:
            arm = row_len[i] - 1 - j
            leg = col_len[j] - 1 - i
            h = arm + leg
            if h == 0:
                break
            x = np.random.randint(0, h)
            if x < arm:
                j += x + 1
            else:
                i += x - arm + 1
        cell_row[v] = i
        cell_col[v] = j
        row_len[i] -= 1
        col_len[j] -= 1
        if row_len[i] == 0:
            nrows -= 1


@njit(cache=True, nogil=True)
def eg_reverse(n, cell_row, cell_col, out):
    """Reverse Edelman-Greene insertion from the recording tableau.

    ``cell_row/cell_col`` locate each entry v = 1..N.  Removing entries
    from N down to 1 ejects the inserted letters last-first; since the
    insertion word is the network read backwards, entry ``v`` yields
    ``s_{N + 1 - v}``.  Returns 0 on success, -1 if the recording tableau
    is not a valid staircase SYT.
    """
    k = n - 1
    N = n * (n - 1) // 2
    P = np.empty((k, k), np.int64)
    row_len = np.empty(k, np.int64)
    for r in range(k):
        row_len[r] = k - r
        for c in range(k - r):
            P[r, c] = r + c + 1
    for v in range(N, 0, -1):
        r = cell_row[v]
        c = cell_col[v]
        if r < 0 or r >= k or c != row_len[r] - 1:
            return -1
        if r + 1 < k and row_len[r + 1] > c:
            return -1
        y = P[r, c]
        row_len[r] -= 1
        p = c
        for rr in range(r - 1, -1, -1):
            # largest entry < y; bump paths drift right going up, so scan from the last column
            L = row_len[rr]
            if L == 0:
                return -1
            if p >= L:
                p = L - 1
            if P[rr, p] < y:
                while p + 1 < L and P[rr, p + 1] < y:
                    p += 1
            else:
                while p >= 0 and P[rr, p] >= y:
                    p -= 1
            if p < 0:
                return -1
            x = P[rr, p]
            if x == y - 1 and p + 1 < row_len[rr] and P[rr, p + 1] == y:
                y = x
            else:
                P[rr, p] = y
                y = x
        out[N - v] = y
    return 0


@njit(cache=True, nogil=True)
def eg_forward(n, swaps, cell_row, cell_col):
    """Edelman-Greene insertion of ``swaps`` read backwards; records cells.

    Returns 0 on success, -1 if the insertion tableau overflows the
    staircase (the word was not a sorting network).
    """
    k = n - 1
    N = n * (n - 1) // 2
    P = np.zeros((k + 1, k + 1), np.int64)
    row_len = np.zeros(k + 1, np.int64)
    for v in range(1, N + 1):
        x = swaps[N - v]
        r = 0
        while True:
            if r > k - 1:
                return -1
            L = row_len[r]
            # smallest entry > x
            lo = 0
            hi = L
            while lo < hi:
                mid = (lo + hi) // 2
                if P[r, mid] <= x:
                    lo = mid + 1
                else:
                    hi = mid
            p = lo
            if p == L:
                if L >= k - r:
                    return -1
                P[r, L] = x
                row_len[r] = L + 1
                cell_row[v] = r
                cell_col[v] = L
                break
            y = P[r, p]
            if y == x + 1 and p > 0 and P[r, p - 1] == x:
                x = y
            else:
                P[r, p] = x
                x = y
            r += 1
    return 0


@njit(cache=True, nogil=True)
def sample_networks(n, count, seed, out):
    """Fill ``out[0:count]`` with independent uniform ``n``-networks."""
    np.random.seed(seed)
    N = n * (n - 1) // 2
    cell_row = np.empty(N + 1, np.int64)
    cell_col = np.empty(N + 1, np.int64)
    buf = np.empty(N, np.int64)
    for s in range(count):
        hook_walk(n, cell_row, cell_col)
        eg_reverse(n, cell_row, cell_col, buf)
        for t in range(N):
            out[s, t] = buf[t]


@njit(cache=True, nogil=True)
def restrict_batch(n, nets, subsets, out):
    """Restrict ``nets[s]`` to the particle set ``subsets[s]`` (sorted labels) into ``out[s]``."""
    S = nets.shape[0]
    N = nets.shape[1]
    inside = np.zeros(n + 1, np.bool_)
    sigma = np.empty(n, np.int64)
    for s in range(S):
        for a in range(n + 1):
            inside[a] = False
        for a in subsets[s]:
            inside[a] = True
        for i in range(n):
            sigma[i] = i + 1
        w = 0
        for t in range(N):
            loc = nets[s, t]
            a = sigma[loc - 1]
            b = sigma[loc]
            if inside[a] and inside[b]:
                cnt = 0
                for i in range(loc):
                    if inside[sigma[i]]:
                        cnt += 1
                out[s, w] = cnt
                w += 1
            sigma[loc - 1] = b
            sigma[loc] = a


@njit(cache=True, nogil=True)
def random_subsets(n, m, count, seed, out):
    """Uniform ``m``-subsets of ``1..n`` by partial Fisher-Yates, sorted, into ``out``."""
    np.random.seed(seed)
    pool = np.arange(1, n + 1)
    for s in range(count):
        for i in range(m):
            r = np.random.randint(i, n)
            tmp = pool[i]
            pool[i] = pool[r]
            pool[r] = tmp
        out[s, :] = np.sort(pool[:m])
