"""Vectorized GF(2) rank enumeration kernels.

Codewords of a binary code are generated in Gray-code order (one basis
matrix XORed per step) and ranked in numpy batches.  Rows of an m x n
binary matrix are packed into one unsigned integer each, so a batch is a
(B, m) array and elimination runs as m column sweeps over the whole batch.
"""

from __future__ import annotations

import numpy as np

_CHUNK_BITS = 18


def _dtype_for(ncols: int):
    if ncols <= 8:
        return np.uint8
    if ncols <= 16:
        return np.uint16
    if ncols <= 32:
        return np.uint32
    if ncols <= 64:
        return np.uint64
    raise ValueError("packed kernel supports at most 64 columns")


def pack_rows(rows, ncols: int) -> tuple[int, ...]:
    """Pack 0/1 row tuples into one int per row, bit j = column j."""
    out = []
    for r in rows:
        v = 0
        for j, e in enumerate(r):
            if e:
                v |= 1 << j
        out.append(v)
    return tuple(out)


def rank_batch(rows: np.ndarray) -> np.ndarray:
    """Ranks of a (B, m) batch of packed binary matrices (consumes `rows`)."""
    a = rows
    b, m = a.shape
    rank = np.zeros(b, dtype=np.uint8)
    for i in range(m):
        r = a[:, i]
        nz = r != 0
        rank += nz
        if i + 1 < m:
            low = r & (~r + np.asarray(1, dtype=a.dtype))
            rest = a[:, i + 1 :]
            hit = (rest & low[:, None]) != 0
            rest ^= np.where(hit, r[:, None], np.asarray(0, dtype=a.dtype))
    return rank


def _gray_flip_indices(start: int, stop: int) -> np.ndarray:
    """Index of the bit flipped at each Gray-code step t in [start, stop)."""
    t = np.arange(start, stop, dtype=np.int64)
    lows = t & -t
    return np.log2(lows.astype(np.float64)).astype(np.int64)


def min_rank_exhaustive(
    basis_rows,
    ncols: int,
    floor: int | None = None,
) -> int:
    """Exact minimum rank over all nonzero GF(2) combinations of the basis.

    `basis_rows` is a sequence of K packed-row tuples (each of length m).
    When `floor` is given, enumeration stops early once a codeword of rank
    below `floor` is found (the returned value is still a true rank of some
    nonzero codeword, just not necessarily the global minimum).
    """
    K = len(basis_rows)
    if K == 0:
        raise ValueError("zero-dimensional code has no nonzero codewords")
    m = len(basis_rows[0])
    dtype = _dtype_for(ncols)
    basis = np.array(basis_rows, dtype=dtype)

    low_bits = min(K, _CHUNK_BITS)
    n_low = 1 << low_bits
    flips = _gray_flip_indices(1, n_low)
    steps = basis[flips]
    low_table = np.zeros((n_low, m), dtype=dtype)
    np.bitwise_xor.accumulate(steps, axis=0, out=steps)
    low_table[1:] = steps

    best = m + 1
    high = K - low_bits
    for outer in range(1 << high):
        base = np.zeros(m, dtype=dtype)
        o = outer
        j = 0
        while o:
            if o & 1:
                base ^= basis[low_bits + j]
            o >>= 1
            j += 1
        block = low_table ^ base[None, :]
        ranks = rank_batch(block)
        if outer == 0:
            ranks[0] = m + 1  # the zero codeword does not count
        blockmin = int(ranks.min())
        if blockmin < best:
            best = blockmin
        if floor is not None and best < floor:
            return best
    return best


def min_rank_sampled(
    basis_rows,
    ncols: int,
    samples: int,
    seed: int,
) -> int:
    """Minimum rank over `samples` random nonzero GF(2) combinations."""
    K = len(basis_rows)
    m = len(basis_rows[0])
    dtype = _dtype_for(ncols)
    basis = np.array(basis_rows, dtype=dtype)
    rng = np.random.default_rng(seed)
    best = m + 1
    chunk = 1 << 14
    zero = np.asarray(0, dtype=dtype)
    done = 0
    while done < samples:
        b = min(chunk, samples - done)
        sel = rng.integers(0, 2, size=(b, K), dtype=np.uint8)
        sel[sel.sum(axis=1) == 0, 0] = 1  # nonzero message guarantee
        words = np.zeros((b, m), dtype=dtype)
        for i in range(K):
            words ^= np.where(sel[:, i : i + 1].astype(bool), basis[i][None, :], zero)
        best = min(best, int(rank_batch(words).min()))
        done += b
    return best
