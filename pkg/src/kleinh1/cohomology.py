"""First cohomology of matrix group presentations via Fox calculus."""

from __future__ import annotations

import math
import operator
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exact import ReductionMap, is_prime, reduction_maps
from .linalg import kernel_basis, mat_identity, mat_mul, rank, rref
from .modp import kernel_modp, matmul_modp, rank_modp, rref_modp
from .words import Presentation, fox_expand, mat2_inv

__all__ = [
    "ROW_CAP",
    "CohomologySpace",
    "ModuleAction",
    "build_action",
    "h1",
    "h1_dim",
    "h1_dim_upto",
    "ider_dim",
]

ROW_CAP = 4096  # relation rows buffered between elimination passes


# ---------------------------------------------------------------------------
# symmetric-power matrices


def _lin_pow(u, v, k, one, add, mul):
    """Coefficients of (u*x + v*y)**k, listed by y-degree."""
    cur = [one]
    for _ in range(k):
        nxt = [mul(u, cur[0])]
        for j in range(1, len(cur)):
            nxt.append(add(mul(u, cur[j]), mul(v, cur[j - 1])))
        nxt.append(mul(v, cur[-1]))
        cur = nxt
    return cur


def _conv(p1, p2, zero, add, mul):
    out = [zero] * (len(p1) + len(p2) - 1)
    for i, a in enumerate(p1):
        for j, b in enumerate(p2):
            out[i + j] = add(out[i + j], mul(a, b))
    return out


def _sym_matrix(mat, k, zero, one, add, mul):
    """Matrix of mat on degree-k binary forms, basis x^(k-i) y^i.

    Column i expands (a*x + c*y)^(k-i) (b*x + d*y)^i, so k = 1 returns
    mat itself and k = 0 the 1x1 identity.
    """
    (a, b), (c, d) = mat
    cols = []
    for i in range(k + 1):
        p1 = _lin_pow(a, c, k - i, one, add, mul)
        p2 = _lin_pow(b, d, i, one, add, mul)
        cols.append(_conv(p1, p2, zero, add, mul))
    return [[cols[i][r] for i in range(k + 1)] for r in range(k + 1)]


def _kron(a, b):
    db = len(b)
    d = len(a) * db
    return [
        [a[r // db][c // db] * b[r % db][c % db] for c in range(d)]
        for r in range(d)
    ]


# ---------------------------------------------------------------------------
# module actions


class ModuleAction:
    """Generator matrices on Sym^n tensor conj-Sym^m.

    Basis x^(n-i) y^i (x) xbar^(m-j) ybar^j, lexicographic in (i, j).
    With a reduction map the matrices are int64 arrays mod rmap.p; without
    one they are nested lists of ring elements.  zeros/identity/add/sub/
    matmul cover both representations, which is all fox_expand needs.
    """

    def __init__(
        self,
        pres: Presentation,
        n: int,
        m: int,
        rmap: ReductionMap | None = None,
    ):
        if n < 0 or m < 0:
            raise ValueError("weights must be non-negative")
        if pres.projective and (n + m) % 2:
            raise ValueError(
                "odd total weight does not factor through a projective group"
            )
        self.pres = pres
        self.n = n
        self.m = m
        self.dim = (n + 1) * (m + 1)
        self.rmap = rmap
        self.p = None if rmap is None else rmap.p
        if rmap is None:
            self._build_exact(pres, n, m)
        else:
            self._build_modp(pres, n, m, rmap)

    def _build_exact(self, pres, n, m):
        ring = pres.ring
        sym = lambda g, k: _sym_matrix(
            g, k, ring.zero, ring.one, operator.add, operator.mul
        )
        self.mats = []
        self.inv_mats = []
        for i in range(pres.ngens):
            cg = pres.conj_images[i]
            self.mats.append(_kron(sym(pres.images[i], n), sym(cg, m)))
            self.inv_mats.append(
                _kron(sym(pres.inv_images[i], n), sym(mat2_inv(cg), m))
            )

    def _build_modp(self, pres, n, m, rmap):
        p = rmap.p
        add = lambda u, v: (u + v) % p
        mul = lambda u, v: (u * v) % p

        def red(mat2, conj):
            f = rmap.apply_conj if conj else rmap.apply
            return tuple(tuple(f(e) for e in row) for row in mat2)

        def sym(mat2, k):
            return np.array(
                _sym_matrix(mat2, k, 0, 1, add, mul), dtype=np.int64
            )

        self.mats = []
        self.inv_mats = []
        for i in range(pres.ngens):
            self.mats.append(
                np.kron(sym(red(pres.images[i], False), n),
                        sym(red(pres.images[i], True), m)) % p
            )
            self.inv_mats.append(
                np.kron(sym(red(pres.inv_images[i], False), n),
                        sym(red(pres.inv_images[i], True), m)) % p
            )

    # fox_expand adapter

    def zeros(self):
        if self.p is not None:
            return np.zeros((self.dim, self.dim), dtype=np.int64)
        zero = self.pres.ring.zero
        return [[zero] * self.dim for _ in range(self.dim)]

    def identity(self):
        if self.p is not None:
            return np.eye(self.dim, dtype=np.int64)
        return mat_identity(self.dim, self.pres.ring.one)

    def add(self, a, b):
        if self.p is not None:
            return (a + b) % self.p
        return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

    def sub(self, a, b):
        if self.p is not None:
            return (a - b) % self.p
        return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

    def matmul(self, a, b):
        if self.p is not None:
            return matmul_modp(a, b, self.p)
        return mat_mul(a, b, self.pres.ring.one)


def build_action(
    pres: Presentation, n: int, m: int, rmap: ReductionMap | None = None
) -> ModuleAction:
    """Action of the generators on forms of bidegree (n, m)."""
    return ModuleAction(pres, n, m, rmap)


# ---------------------------------------------------------------------------
# the two maps: mu into cocycles, Lambda out of them


def _mu_matrix(act):
    """Stacked blocks g_i - 1; column b is the inner derivation of e_b."""
    if act.p is not None:
        eye = np.eye(act.dim, dtype=np.int64)
        return np.concatenate([(g - eye) % act.p for g in act.mats])
    eye = mat_identity(act.dim, act.pres.ring.one)
    rows = []
    for g in act.mats:
        for gr, er in zip(g, eye):
            rows.append([x - y for x, y in zip(gr, er)])
    return rows


def _lambda_blocks(pres, act):
    """Block rows of the relation map on M^s, one block per relator."""
    for rel in pres.relators:
        blocks = fox_expand(pres, rel, act)
        if act.p is not None:
            yield np.concatenate(blocks, axis=1)
        else:
            yield [
                [x for blk in blocks for x in blk[r]] for r in range(act.dim)
            ]


def ider_dim(act) -> int:
    """Rank of mu, the dimension of the inner derivations."""
    mu = _mu_matrix(act)
    if act.p is not None:
        return rank_modp(mu, act.p)
    return rank(mu, act.pres.ring.one, ncols=act.dim)


# ---------------------------------------------------------------------------
# dimensions and cocycle bases


@dataclass(frozen=True)
class CohomologySpace:
    """ker(Lambda)/Im(mu) with a chosen cocycle basis.

    Each basis vector lists the values of the cocycle on the generators,
    concatenated in the module basis of the action, reduced against the
    echelonized inner derivations and normalized to a leading 1.
    """

    act: ModuleAction
    dimension: int
    cocycle_basis: tuple

    @property
    def rmap(self):
        return self.act.rmap


def _complete_echelon_modp(mu_vecs, kernel, p):
    red, nmu, pivots = rref_modp(mu_vecs, p, full=True)
    rows = [red[i] for i in range(nmu)]
    pivots = list(pivots)
    basis = []
    for kv in kernel:
        w = kv.copy()
        for row, c in zip(rows, pivots):
            f = int(w[c])
            if f:
                w = (w - f * row) % p
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            continue
        j = int(nz[0])
        w = (w * pow(int(w[j]), -1, p)) % p
        rows.append(w)
        pivots.append(j)
        basis.append(tuple(int(x) for x in w))
    return basis


def _complete_echelon_exact(mu_vecs, kernel, one):
    zero = one - one
    red, pivots = rref(mu_vecs, one, ncols=len(kernel[0]) if kernel else None)
    rows = [list(r) for r in red]
    pivots = list(pivots)
    basis = []
    for kv in kernel:
        w = list(kv)
        for row, c in zip(rows, pivots):
            f = w[c]
            if f != zero:
                w = [a - f * b for a, b in zip(w, row)]
        j = next((i for i, x in enumerate(w) if x != zero), None)
        if j is None:
            continue
        inv = one / w[j]
        w = [x * inv for x in w]
        rows.append(w)
        pivots.append(j)
        basis.append(tuple(w))
    return basis


def h1(pres: Presentation, act: ModuleAction) -> CohomologySpace:
    """Cocycle space of the presentation modulo inner derivations.

    The basis completes an echelon basis of the inner derivations inside
    the cocycle kernel, so identical inputs give identical bases.
    """
    scols = pres.ngens * act.dim
    if act.p is not None:
        p = act.p
        blocks = list(_lambda_blocks(pres, act))
        lam = (
            np.concatenate(blocks)
            if blocks
            else np.zeros((1, scols), dtype=np.int64)
        )
        kernel = kernel_modp(lam, p)
        mu_vecs = _mu_matrix(act).T % p
        basis = _complete_echelon_modp(mu_vecs, kernel, p)
        inner = rank_modp(mu_vecs, p)
    else:
        one = pres.ring.one
        zero = pres.ring.zero
        lam = [row for blk in _lambda_blocks(pres, act) for row in blk]
        if not lam:
            lam = [[zero] * scols]
        kernel = kernel_basis(lam, one, ncols=scols)
        mu = _mu_matrix(act)
        mu_vecs = [[mu[r][b] for r in range(scols)] for b in range(act.dim)]
        basis = _complete_echelon_exact(mu_vecs, kernel, one)
        inner = rank(mu_vecs, one, ncols=scols)
    if len(basis) != len(kernel) - inner:
        raise ArithmeticError("inner derivations escape the cocycle kernel")
    return CohomologySpace(act=act, dimension=len(basis), cocycle_basis=tuple(basis))


def h1_dim(pres: Presentation, act: ModuleAction, row_cap: int = ROW_CAP) -> int:
    """dim H^1 for one action, without a cocycle basis.

    Mod p the relation map is eliminated block row by block row, keeping
    at most row_cap + one block of rows in memory at a time.
    """
    scols = pres.ngens * act.dim
    if act.p is not None:
        p = act.p
        reduced = np.zeros((0, scols), dtype=np.int64)
        pending = []
        npending = 0
        lam_rank = 0
        for block in _lambda_blocks(pres, act):
            pending.append(block)
            npending += block.shape[0]
            if lam_rank + npending > row_cap:
                arr, lam_rank, _ = rref_modp(
                    np.concatenate([reduced, *pending]), p, full=False
                )
                reduced = arr[:lam_rank].copy()
                pending = []
                npending = 0
        if pending:
            _, lam_rank, _ = rref_modp(
                np.concatenate([reduced, *pending]), p, full=False
            )
    else:
        lam = [row for blk in _lambda_blocks(pres, act) for row in blk]
        lam_rank = rank(lam, pres.ring.one, ncols=scols) if lam else 0
    return scols - lam_rank - ider_dim(act)


def _thread_count() -> int:
    env = os.environ.get("KLEINH1_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def h1_dim_upto(
    pres: Presentation,
    n: int,
    m: int | None = None,
    x: int = 1000,
    threads: int | None = None,
    row_cap: int = ROW_CAP,
):
    """Minimum F_p dimension over admissible reductions at primes <= x.

    Returns (dim, witnesses); the witnesses are the primes attaining the
    minimum.  Returns (math.inf, ()) when no prime <= x admits a
    reduction, so callers can tell "no data" from dimension 0.
    """
    if m is None:
        m = n
    if x < 2:
        raise ValueError("prime bound must be at least 2")
    primes = [p for p in range(2, x + 1) if is_prime(p)]

    def job(p):
        return [
            h1_dim(pres, build_action(pres, n, m, rmap), row_cap)
            for rmap in reduction_maps(pres.ring, p)
        ]

    nthreads = threads if threads else _thread_count()
    if nthreads > 1 and len(primes) > 1:
        with ThreadPoolExecutor(max_workers=nthreads) as ex:
            per_prime = list(ex.map(job, primes))
    else:
        per_prime = [job(p) for p in primes]
    best = math.inf
    witnesses = []
    for p, dims in zip(primes, per_prime):
        if not dims:
            continue
        d = min(dims)
        if d < best:
            best, witnesses = d, [p]
        elif d == best:
            witnesses.append(p)
    return best, tuple(witnesses)
