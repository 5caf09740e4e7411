"""Independent reference computations used as test oracles."""

import itertools

import numpy as np


def error_patterns(n, t, b):
    """Every error vector of symbol weight <= t, as an (N, n) array."""
    values = range(1, 2**b)
    rows = [np.zeros(n, dtype=np.uint64)]
    for w in range(1, t + 1):
        for pos in itertools.combinations(range(n), w):
            for vals in itertools.product(values, repeat=w):
                e = np.zeros(n, dtype=np.uint64)
                e[list(pos)] = vals
                rows.append(e)
    return np.array(rows)


def scalar_syndrome(h_dense, v):
    r, n = len(h_dense), len(h_dense[0])
    out = []
    for j in range(r):
        acc = 0
        for i in range(n):
            if h_dense[j][i]:
                acc ^= int(v[i])
        out.append(acc)
    return out


def all_codewords(g_dense):
    """(2^k, n) array of all binary codewords with their (2^k, k) messages."""
    k = g_dense.shape[0]
    msgs = np.array(list(itertools.product([0, 1], repeat=k)), dtype=np.int64)
    return msgs, (msgs @ g_dense.astype(np.int64)) % 2


def nearest_codeword_message(msgs, words, received, radius):
    """Message of the unique codeword within Hamming distance ``radius``, else None."""
    dist = (words != received).sum(axis=1)
    hits = np.flatnonzero(dist <= radius)
    if hits.size != 1:
        return None
    return msgs[hits[0]]
