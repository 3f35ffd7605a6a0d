"""
Compiled inner loops for mass enumeration scans.

Everything here mirrors a pure-Python routine in :mod:`inv3412.perms` or
:mod:`inv3412.kernels`; the test suite cross-checks the two routes on every
involution of size up to 8.  Batches are int8 arrays of shape (rows, n)
holding one-line notation, which keeps a 2.4M-row size-14 scan in tens of
megabytes.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from .perms import DEFAULT_MAX_N, enumerate_involutions

# C(16, 4): occurrence buffer bound for the largest supported size.
_MAX_OCC = 1820


def iter_involution_batches(n: int, batch_size: int = 32768,
                            branch: int | None = None,
                            max_n: int = DEFAULT_MAX_N):
    """Yield the involutions of {1..n} as int8 arrays of shape (rows, n).

    The underlying buffer is reused between yields, so each batch must be
    consumed (or copied) before advancing the iterator.
    """
    buf = np.empty((batch_size, max(n, 1)), dtype=np.int8)
    fill = 0
    for tup in enumerate_involutions(n, branch=branch, max_n=max_n):
        buf[fill, :n] = tup
        fill += 1
        if fill == batch_size:
            yield buf[:, :n]
            fill = 0
    if fill:
        yield buf[:fill, :n]


@njit(cache=True, nogil=True)
def count_3412_capped(vals, cap):
    """Occurrences of 3412 in one row, stopping once the count reaches cap."""
    n = vals.shape[0]
    count = 0
    for i1 in range(n):
        v1 = vals[i1]
        for i2 in range(i1 + 1, n):
            v2 = vals[i2]
            if v2 <= v1:
                continue
            for i3 in range(i2 + 1, n):
                v3 = vals[i3]
                if v3 >= v1:
                    continue
                for i4 in range(i3 + 1, n):
                    v4 = vals[i4]
                    if v3 < v4 < v1:
                        count += 1
                        if count >= cap:
                            return count
    return count


@njit(cache=True, nogil=True)
def count_3412_batch(batch, cap, out):
    for row in range(batch.shape[0]):
        out[row] = count_3412_capped(batch[row], cap)


@njit(cache=True, nogil=True)
def parity_batch(batch, out):
    """Inversion count mod 2 per row."""
    rows, n = batch.shape
    for row in range(rows):
        inv = 0
        for i in range(n):
            vi = batch[row, i]
            for j in range(i + 1, n):
                if vi > batch[row, j]:
                    inv += 1
        out[row] = inv & 1


@njit(cache=True, nogil=True)
def kernel_scan(vals, shape_out):
    """Kernel size and capacity of one involution; shape goes to shape_out.

    The kernel is the set of entries reachable from the entry of value 1
    through shared occurrences of 3412.  Occurrences are collected into a
    buffer, positions are merged with union-find (an occurrence links its
    four positions), and the component of the value-1 position is reduced
    to its order-isomorphic pattern.  Capacity counts the occurrences lying
    entirely inside the component.
    """
    n = vals.shape[0]
    parent = np.empty(n, dtype=np.int64)
    for i in range(n):
        parent[i] = i
    occ = np.empty((_MAX_OCC, 4), dtype=np.int64)
    nocc = 0
    for i1 in range(n):
        v1 = vals[i1]
        for i2 in range(i1 + 1, n):
            v2 = vals[i2]
            if v2 <= v1:
                continue
            for i3 in range(i2 + 1, n):
                v3 = vals[i3]
                if v3 >= v1:
                    continue
                for i4 in range(i3 + 1, n):
                    v4 = vals[i4]
                    if v3 < v4 < v1:
                        occ[nocc, 0] = i1
                        occ[nocc, 1] = i2
                        occ[nocc, 2] = i3
                        occ[nocc, 3] = i4
                        nocc += 1
    for q in range(nocc):
        a = occ[q, 0]
        ra = a
        while parent[ra] != ra:
            parent[ra] = parent[parent[ra]]
            ra = parent[ra]
        for t in range(1, 4):
            b = occ[q, t]
            rb = b
            while parent[rb] != rb:
                parent[rb] = parent[parent[rb]]
                rb = parent[rb]
            if ra != rb:
                parent[rb] = ra
    pos1 = 0
    for i in range(n):
        if vals[i] == 1:
            pos1 = i
            break
    r1 = pos1
    while parent[r1] != r1:
        r1 = parent[r1]
    size = 0
    for i in range(n):
        ri = i
        while parent[ri] != ri:
            ri = parent[ri]
        if ri == r1:
            shape_out[size] = vals[i]
            size += 1
    capacity = 0
    for q in range(nocc):
        ri = occ[q, 0]
        while parent[ri] != ri:
            ri = parent[ri]
        if ri == r1:
            capacity += 1
    # Reduce the stored values to their pattern via a scratch copy.
    scratch = np.empty(size, dtype=np.int64)
    for a in range(size):
        scratch[a] = shape_out[a]
    for a in range(size):
        rank = 1
        for b in range(size):
            if scratch[b] < scratch[a]:
                rank += 1
        shape_out[a] = rank
    return size, capacity


@njit(cache=True, nogil=True)
def kernel_scan_batch(batch, sizes, caps, shapes):
    for row in range(batch.shape[0]):
        s, c = kernel_scan(batch[row], shapes[row])
        sizes[row] = s
        caps[row] = c


def warmup() -> None:
    """Force JIT compilation of all kernels (cached across processes)."""
    buf = np.array([[3, 4, 1, 2]], dtype=np.int8)
    out = np.empty(1, dtype=np.int64)
    count_3412_batch(buf, 2, out)
    parity_batch(buf, out)
    sizes = np.empty(1, dtype=np.int64)
    caps = np.empty(1, dtype=np.int64)
    shapes = np.empty((1, 4), dtype=np.int8)
    kernel_scan_batch(buf, sizes, caps, shapes)
