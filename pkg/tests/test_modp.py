from __future__ import annotations

import os
import random
import subprocess
import sys

import numpy as np
import pytest

from kleinh1.exact import Fp
from kleinh1.linalg import kernel_basis, rank
from kleinh1.modp import (
    HAS_NUMBA,
    _elim_np,
    kernel_modp,
    matmul_modp,
    rank_gf2,
    rank_modp,
    rank_modp_sparse,
    rref_modp,
)


def _random_int_matrix(rng, rows, cols, p):
    return [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]


def test_rank_agrees_with_generic_elimination():
    rng = random.Random(101)
    for p in (2, 5, 97):
        for _ in range(10):
            rows, cols = rng.randrange(1, 7), rng.randrange(1, 7)
            m = _random_int_matrix(rng, rows, cols, p)
            generic = rank([[Fp(p, v) for v in row] for row in m], Fp(p, 1))
            assert rank_modp(m, p) == generic


def test_kernel_matches_generic_normalization():
    """kernel_modp and linalg.kernel_basis pick identical bases."""
    rng = random.Random(103)
    p = 13
    for _ in range(10):
        rows, cols = rng.randrange(1, 6), rng.randrange(2, 7)
        m = _random_int_matrix(rng, rows, cols, p)
        fast = kernel_modp(m, p)
        generic = kernel_basis([[Fp(p, v) for v in row] for row in m], Fp(p, 1))
        assert len(fast) == len(generic)
        for fv, gv in zip(fast, generic):
            assert [int(x) for x in fv] == [e.v for e in gv]
        for v in fast:
            prod = np.array(m, dtype=np.int64) @ np.array(v, dtype=np.int64)
            assert not (prod % p).any()


def test_rref_pivots_and_idempotence():
    m = [[0, 2, 1], [0, 4, 2], [3, 0, 0]]
    a, r, pivots = rref_modp(m, 5)
    assert r == 2
    assert pivots == [0, 1]
    again, r2, pivots2 = rref_modp(a.tolist(), 5)
    assert r2 == 2 and pivots2 == pivots
    assert (a[:2] == again[:2]).all()


def test_empty_inputs():
    a, r, pivots = rref_modp([], 7)
    assert r == 0 and pivots == [] and a.size == 0
    assert rank_modp(np.zeros((3, 4), dtype=np.int64), 7) == 0


def test_numpy_fallback_matches_active_kernel():
    # _elim_np must be interchangeable with whatever rref_modp dispatched to.
    rng = random.Random(107)
    p = 101
    for full in (True, False):
        for _ in range(8):
            m = np.array(_random_int_matrix(rng, 6, 8, p), dtype=np.int64)
            a = m.copy()
            r, piv = _elim_np(a, p, full)
            b, r2, piv2 = rref_modp(m, p, full=full)
            assert r == r2
            assert [int(c) for c in piv[:r]] == piv2
            assert (a == b).all()


@pytest.mark.skipif(not HAS_NUMBA, reason="numba not active in this process")
def test_env_flag_disables_numba():
    env = dict(os.environ, KLEINH1_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from kleinh1.modp import HAS_NUMBA; print(HAS_NUMBA)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "False"


def test_matmul_modp_blocked_accumulation():
    rng = random.Random(109)
    for p in (5, 10**9 + 7):
        a = _random_int_matrix(rng, 3, 40, p)
        b = _random_int_matrix(rng, 40, 2, p)
        want = [
            [sum(x * y for x, y in zip(row, col)) % p for col in zip(*b)]
            for row in a
        ]
        assert matmul_modp(a, b, p).tolist() == want


def test_matmul_shape_mismatch():
    with pytest.raises(ValueError):
        matmul_modp([[1, 2]], [[1, 2]], 7)


def test_prime_size_guard():
    with pytest.raises(ValueError):
        rref_modp([[1]], 1 << 31)


def test_rank_gf2_matches_dense():
    rng = random.Random(113)
    for _ in range(12):
        rows, cols = rng.randrange(1, 9), rng.randrange(1, 9)
        m = _random_int_matrix(rng, rows, cols, 2)
        masks = [sum(v << c for c, v in enumerate(row)) for row in m]
        assert rank_gf2(masks) == rank_modp(m, 2)


def test_rank_sparse_matches_dense():
    rng = random.Random(127)
    p = 31
    for _ in range(12):
        rows, cols = rng.randrange(1, 10), rng.randrange(1, 10)
        dense = [[0] * cols for _ in range(rows)]
        sparse = []
        for row in dense:
            entry = {}
            for _ in range(rng.randrange(0, 4)):
                c = rng.randrange(cols)
                v = rng.randrange(1, p)
                row[c] = (row[c] + v) % p
                entry[c] = entry.get(c, 0) + v
            sparse.append(entry)
        assert rank_modp_sparse(sparse, p) == rank_modp(dense, p)
