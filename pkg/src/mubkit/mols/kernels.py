"""Backtracking kernels over small Latin squares.

Each ``*_py`` function is the reference implementation; the unsuffixed name
is the same function compiled by numba, or the reference itself when the
numba backend is disabled. Bit masks index columns/symbols (< 64) and, for
transversal masks, cells ``r * n + c`` (so n <= 7).
"""

import numpy as np

from mubkit._accel import jit


def transversals_py(grid):
    """All transversals as rows of column choices, lexicographic order."""
    n = grid.shape[0]
    cap = 16
    out = np.empty((cap, n), dtype=np.int64)
    count = 0
    choice = np.full(n, -1, dtype=np.int64)
    colmask = 0
    symmask = 0
    r = 0
    while r >= 0:
        c = choice[r]
        if c >= 0:
            colmask ^= 1 << c
            symmask ^= 1 << grid[r, c]
        c += 1
        while c < n and (((colmask >> c) & 1) != 0 or ((symmask >> grid[r, c]) & 1) != 0):
            c += 1
        if c == n:
            choice[r] = -1
            r -= 1
            continue
        choice[r] = c
        colmask |= 1 << c
        symmask |= 1 << grid[r, c]
        if r == n - 1:
            if count == cap:
                bigger = np.empty((2 * cap, n), dtype=np.int64)
                bigger[:cap] = out
                out = bigger
                cap *= 2
            out[count, :] = choice
            count += 1
        else:
            r += 1
    return out[:count].copy()


def transversal_masks_py(choices):
    """Cell bit masks for transversals given as column choices per row."""
    t, n = choices.shape
    masks = np.zeros(t, dtype=np.int64)
    for k in range(t):
        m = 0
        for r in range(n):
            m |= 1 << (r * n + choices[k, r])
        masks[k] = m
    return masks


def disjoint_transversals_py(masks, n):
    """Indices of n pairwise disjoint transversals, or an empty array.

    Exact cover of the n^2 cells; at each level the uncovered cell with the
    fewest compatible transversals is branched on (first such cell on ties).
    """
    t_count = masks.shape[0]
    cells = n * n
    covered = np.zeros(n + 1, dtype=np.int64)
    cell = np.zeros(n, dtype=np.int64)
    cursor = np.full(n, -1, dtype=np.int64)
    chosen = np.full(n, -1, dtype=np.int64)
    if t_count < n:
        return np.empty(0, dtype=np.int64)
    depth = 0
    while depth >= 0:
        if cursor[depth] == -1:
            cm = covered[depth]
            best = -1
            best_count = t_count + 1
            for c in range(cells):
                bit = 1 << c
                if (cm & bit) != 0:
                    continue
                cnt = 0
                for k in range(t_count):
                    if (masks[k] & bit) != 0 and (masks[k] & cm) == 0:
                        cnt += 1
                if cnt < best_count:
                    best_count = cnt
                    best = c
                    if cnt == 0:
                        break
            cell[depth] = best
        cm = covered[depth]
        bit = 1 << cell[depth]
        k = cursor[depth] + 1
        while k < t_count and not ((masks[k] & bit) != 0 and (masks[k] & cm) == 0):
            k += 1
        if k == t_count:
            cursor[depth] = -1
            depth -= 1
            continue
        cursor[depth] = k
        chosen[depth] = k
        if depth == n - 1:
            return chosen.copy()
        covered[depth + 1] = cm | masks[k]
        depth += 1
        cursor[depth] = -1
    return np.empty(0, dtype=np.int64)


def reduced_squares_py(n):
    """All reduced Latin squares of order n (first row and column natural)."""
    grid = np.zeros((n, n), dtype=np.int64)
    rowmask = np.zeros(n, dtype=np.int64)
    colmask = np.zeros(n, dtype=np.int64)
    for j in range(n):
        grid[0, j] = j
        rowmask[0] |= 1 << j
        colmask[j] |= 1 << j
    for i in range(1, n):
        grid[i, 0] = i
        rowmask[i] |= 1 << i
        colmask[0] |= 1 << i
    m = (n - 1) * (n - 1)
    ci = np.empty(m, dtype=np.int64)
    cj = np.empty(m, dtype=np.int64)
    idx = 0
    for i in range(1, n):
        for j in range(1, n):
            ci[idx] = i
            cj[idx] = j
            idx += 1
    cap = 64
    out = np.empty((cap, n, n), dtype=np.int64)
    count = 0
    val = np.full(m + 1, -1, dtype=np.int64)
    pos = 0
    while pos >= 0:
        if pos == m:
            if count == cap:
                bigger = np.empty((2 * cap, n, n), dtype=np.int64)
                bigger[:cap] = out
                out = bigger
                cap *= 2
            out[count] = grid
            count += 1
            pos -= 1
            continue
        i = ci[pos]
        j = cj[pos]
        v = val[pos]
        if v >= 0:
            rowmask[i] ^= 1 << v
            colmask[j] ^= 1 << v
        v += 1
        while v < n and (((rowmask[i] >> v) & 1) != 0 or ((colmask[j] >> v) & 1) != 0):
            v += 1
        if v == n:
            val[pos] = -1
            pos -= 1
            continue
        val[pos] = v
        grid[i, j] = v
        rowmask[i] |= 1 << v
        colmask[j] |= 1 << v
        pos += 1
    return out[:count].copy()


transversals = jit(transversals_py)
transversal_masks = jit(transversal_masks_py)
disjoint_transversals = jit(disjoint_transversals_py)
reduced_squares = jit(reduced_squares_py)
