"""Exact matrix rank over GF(p) and over the rationals."""
from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 32003


def rank_mod_p(matrix, p: int = DEFAULT_PRIME) -> int:
    """Rank over GF(p) by dense Gaussian elimination in int64.

    Entries stay below p < 2**31, so products fit in int64.
    """
    A = np.array(matrix, dtype=np.int64) % p
    if A.ndim != 2 or 0 in A.shape:
        return 0
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        below = A[r + 1:, c].copy()
        rows = np.nonzero(below)[0] + r + 1
        if rows.size:
            A[rows] = (A[rows] - np.outer(A[rows, c], A[r])) % p
        r += 1
    return r


def rank_rational(matrix) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination on Python integers."""
    A = [[int(x) for x in row] for row in np.asarray(matrix, dtype=object).tolist()]
    if not A or not A[0]:
        return 0
    m, n = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pr = A[r]
        for i in range(r + 1, m):
            row = A[i]
            f = row[c]
            for j in range(c + 1, n):
                row[j] = (pr[c] * row[j] - f * pr[j]) // prev
            row[c] = 0
        prev = pr[c]
        r += 1
    return r


def rank(matrix, field_char: int = DEFAULT_PRIME) -> int:
    """Exact rank; ``field_char == 0`` selects the rationals."""
    if field_char == 0:
        return rank_rational(matrix)
    return rank_mod_p(matrix, field_char)
