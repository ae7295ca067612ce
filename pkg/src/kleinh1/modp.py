"""Linear algebra mod p on machine integers.

The dense elimination kernels are the hot path of every dimension
computation, so they are compiled with numba when it is importable.  A
pure-numpy implementation with identical semantics is kept alongside;
set KLEINH1_NO_NUMBA=1 to force it.  Primes must stay below 2^31 so
that products of two residues fit in int64.

Also provides GF(2) elimination on python-int bitsets and a sparse
row-dict elimination used for the large projective-line systems, where
matrix density is well under ten percent.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "HAS_NUMBA",
    "kernel_modp",
    "matmul_modp",
    "rank_gf2",
    "rank_modp",
    "rank_modp_sparse",
    "rref_modp",
]

_P_LIMIT = 1 << 31

try:
    if os.environ.get("KLEINH1_NO_NUMBA"):
        raise ImportError("numba disabled by KLEINH1_NO_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


@njit(cache=True)
def _elim_nb(a, p, full):
    rows, cols = a.shape
    piv = np.full(min(rows, cols), -1, np.int64)
    r = 0
    for c in range(cols):
        pr = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                pr = i
                break
        if pr == -1:
            continue
        if pr != r:
            for j in range(cols):
                t = a[r, j]
                a[r, j] = a[pr, j]
                a[pr, j] = t
        # scale pivot row to 1 (Fermat inverse)
        inv = np.int64(1)
        base = a[r, c]
        e = p - 2
        while e:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        if inv != 1:
            for j in range(c, cols):
                a[r, j] = a[r, j] * inv % p
        lo = 0 if full else r + 1
        for i in range(lo, rows):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                for j in range(c, cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        piv[r] = c
        r += 1
        if r == rows:
            break
    return r, piv


def _elim_np(a, p, full):
    rows, cols = a.shape
    piv = np.full(min(rows, cols), -1, np.int64)
    r = 0
    for c in range(cols):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r] = a[r] * inv % p
        if full:
            col = a[:, c]
            mask = col != 0
            mask[r] = False
        else:
            mask = np.zeros(rows, dtype=bool)
            below = a[r + 1 :, c] != 0
            mask[r + 1 :] = below
        if mask.any():
            a[mask] = (a[mask] - col_outer(a[mask, c], a[r])) % p
        piv[r] = c
        r += 1
        if r == rows:
            break
    return r, piv


def col_outer(f, row):
    return f[:, None] * row[None, :]


def _as_modp_array(m, p):
    if p <= 1 or p >= _P_LIMIT:
        raise ValueError("prime must satisfy 1 < p < 2^31")
    a = np.array(m, dtype=np.int64, copy=True)
    if a.ndim != 2:
        a = a.reshape(len(m), -1)
    a %= p
    return np.ascontiguousarray(a)


def rref_modp(m, p, full=True):
    """Row reduce mod p.  Returns (reduced array, rank, pivot columns)."""
    if hasattr(m, "__len__") and len(m) == 0:
        return np.zeros((0, 0), dtype=np.int64), 0, []
    a = _as_modp_array(m, p)
    if a.size == 0:
        return a, 0, []
    if HAS_NUMBA:
        r, piv = _elim_nb(a, p, full)
    else:
        r, piv = _elim_np(a, p, full)
    return a, int(r), [int(c) for c in piv[:r]]


def rank_modp(m, p) -> int:
    return rref_modp(m, p, full=False)[1]


def kernel_modp(m, p):
    """Echelon-normalized kernel basis mod p, one row per basis vector.

    Normalization matches linalg.kernel_basis: 1 in the own free column,
    0 in the other free columns.
    """
    a, r, pivots = rref_modp(m, p, full=True)
    cols = a.shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, c in enumerate(pivots):
            basis[k, c] = (-int(a[row, f])) % p
    return basis


def matmul_modp(a, b, p):
    """a @ b mod p with block accumulation that cannot overflow int64."""
    a = _as_modp_array(a, p)
    b = _as_modp_array(b, p)
    if a.shape[1] != b.shape[0]:
        raise ValueError("shape mismatch")
    step = max(1, (1 << 62) // (p * p))
    c = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, a.shape[1], step):
        c += a[:, s : s + step] @ b[s : s + step]
        c %= p
    return c


def rank_gf2(rows) -> int:
    """Rank over GF(2); each row is a python int bitmask of its columns."""
    pivots = {}
    rank = 0
    for row in rows:
        while row:
            c = row.bit_length() - 1
            other = pivots.get(c)
            if other is None:
                pivots[c] = row
                rank += 1
                break
            row ^= other
    return rank


def rank_modp_sparse(rows, p) -> int:
    """Rank of a sparse matrix mod p; rows are {col: value} dicts.

    First-column pivoting with immediate normalization; suited to the
    nearly-disjoint rows produced by the projective-line systems.
    """
    pivots = {}
    rank = 0
    for row in rows:
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                inv = pow(row[c], -1, p)
                if inv != 1:
                    row = {cc: vv * inv % p for cc, vv in row.items()}
                pivots[c] = row
                rank += 1
                break
            f = row[c]
            for cc, vv in prow.items():
                nv = (row.get(cc, 0) - f * vv) % p
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
        # empty row: linearly dependent, nothing to record
    return rank
