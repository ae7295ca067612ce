"""Hecke operators on the cohomology of Bianchi groups.

A prime element pi of the quadratic order O gives delta = diag(1, pi)
and the finite-index subgroup H = {gamma : pi | lower-left entry};
its delta-conjugate is H' = {gamma : pi | upper-right entry}.  Both
have index N(pi)+1, the cosets being the points of the projective
line over O/pi.  A Hecke operator is the composite of restriction to
H, the conjugation isomorphism from H- to H'-cohomology, and the
transfer back up to the full group, evaluated on explicit cocycles: a
cocycle is known by its values on the generators, and its value on
any group element follows the cocycle rule along a defining word.
The transfer produces elements known only as matrices; these are
turned back into generator words by norm-Euclidean division, which
confines operator computations to d in {-1, -2, -3, -7, -11}.

Characteristic polynomials and restricted operators have integer
entries.  By default they are assembled from reductions modulo large
machine primes and accepted only once the Chinese-remainder lift is
stable across extra primes; mode="exact" runs the same transfer in
exact arithmetic for small weights as an independent route.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cohomology import _kron, _lambda_blocks, _mu_matrix, _sym_matrix, build_action
from .exact import Fp, ReductionError, RingElement, is_prime, poly_roots_modp, reduction_maps
from .linalg import charpoly as charpoly_exact
from .linalg import kernel_basis, mat_mul, poly_divmod, poly_trim, real_root_count, rref
from .modp import kernel_modp, matmul_modp, rref_modp
from .words import Presentation, cat, evaluate_word, inv, mat2_inv, mat2_mul

__all__ = [
    "HeckeOperator",
    "HeckePair",
    "NLSubspace",
    "SubgroupCocycle",
    "all_roots_real",
    "conjugate",
    "corestrict",
    "hecke_matrix",
    "hecke_pair",
    "nl_restriction",
    "nl_subspace",
    "restrict",
    "subgroup_value",
]

_EUCLIDEAN_DS = (-1, -2, -3, -7, -11)


# ---------------------------------------------------------------------------
# quadratic-order bookkeeping


def _ring_d(ring) -> int:
    """The d with O = O_d, read off the level polynomial."""
    if ring.nlevels != 1 or ring.degrees[0] != 2:
        raise ValueError("Hecke operators need a single quadratic level")
    c0, c1 = ring.level_polys[0][0], ring.level_polys[0][1]
    if c1 == 0:
        d = -c0
    else:
        d = 1 - 4 * c0
    if d.denominator != 1 or d >= 0:
        raise ValueError("not an imaginary quadratic order")
    return int(d)


def _coords(e: RingElement) -> tuple[Fraction, Fraction]:
    """(x, y) with e = x + y*w in the quadratic level basis."""
    return e.v[0], e.v[1]


def _int_coords(e: RingElement) -> tuple[int, int]:
    x, y = _coords(e)
    if x.denominator != 1 or y.denominator != 1:
        raise ValueError(f"{e!r} is not integral")
    return x.numerator, y.numerator


def _norm_int(e: RingElement) -> int:
    n = e * e.conj()
    x, y = _coords(n)
    if y != 0 or x.denominator != 1:
        raise ArithmeticError("norm is not a rational integer")
    return x.numerator


def _elem_key(e: RingElement):
    return e.v


def _isqrt(n: int) -> int:
    r = int(n**0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


# ---------------------------------------------------------------------------
# the residue ring O/(pi) and projective-line keys


class _Residue:
    """Arithmetic of O/(pi) for a prime element pi.

    Degree-one primes give residues as ints mod N(pi); degree-two
    primes (rational p inert in O) give pairs (x, y) = x + y*w mod p.
    """

    def __init__(self, ring, pi: RingElement):
        self.ring = ring
        self.pi = pi
        self.d = _ring_d(ring)
        n = _norm_int(pi)
        if n <= 1:
            raise ValueError("pi must be a non-unit")
        x, y = _int_coords(pi)
        if (self.d - 1) % 4 == 0:
            self._s, self._t = 1, (self.d - 1) // 4
        else:
            self._s, self._t = 0, self.d
        if is_prime(n):
            self.degree = 1
            self.p = n
            self.size = n
            if y % n == 0:
                raise ValueError("pi is not a prime element")
            r = -x * pow(y, -1, n) % n
            if (r * r - self._s * r - self._t) % n != 0:
                raise ArithmeticError("residue root fails the level relation")
            self.root = r
            return
        p = _isqrt(n)
        if (
            p * p != n
            or not is_prime(p)
            or x % p
            or y % p
            or poly_roots_modp([-self._t, -self._s, 1], p)
        ):
            raise ValueError(f"{pi!r} is not a prime element of the order")
        self.degree = 2
        self.p = p
        self.size = n

    # residue arithmetic; ints (degree one) or (x, y) pairs (degree two)

    def red(self, e: RingElement):
        x, y = _coords(e)
        p = self.p
        xm = x.numerator % p * pow(x.denominator % p, -1, p) % p
        ym = y.numerator % p * pow(y.denominator % p, -1, p) % p
        if self.degree == 1:
            return (xm + ym * self.root) % p
        return (xm, ym)

    def mul(self, a, b):
        p = self.p
        if self.degree == 1:
            return a * b % p
        x1, y1 = a
        x2, y2 = b
        yy = y1 * y2
        return ((x1 * x2 + self._t * yy) % p, (x1 * y2 + x2 * y1 + self._s * yy) % p)

    def add(self, a, b):
        if self.degree == 1:
            return (a + b) % self.p
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def is_zero(self, a) -> bool:
        return a == 0 if self.degree == 1 else a == (0, 0)

    def inv(self, a):
        p = self.p
        if self.degree == 1:
            return pow(a, -1, p)
        x, y = a
        c = ((x + self._s * y) % p, -y % p)
        n0 = (x * c[0] + self._t * y * c[1]) % p
        n1 = (x * c[1] + c[0] * y + self._s * y * c[1]) % p
        if n1 != 0:
            raise ArithmeticError("conjugate norm is not rational")
        k = pow(n0, -1, p)
        return (c[0] * k % p, c[1] * k % p)

    def mat_red(self, m):
        return tuple(tuple(self.red(e) for e in row) for row in m)

    def mat_mul(self, a, b):
        out = []
        for i in (0, 1):
            row = []
            for j in (0, 1):
                row.append(
                    self.add(self.mul(a[i][0], b[0][j]), self.mul(a[i][1], b[1][j]))
                )
            out.append(tuple(row))
        return tuple(out)

    def proj_key(self, pair):
        """Canonical form of a projective point (u : v) over O/(pi)."""
        u, v = pair
        if self.is_zero(u):
            return ("z",)
        return ("n", self.mul(v, self.inv(u)))


# ---------------------------------------------------------------------------
# coset transversals over the projective line


def _transversal(pres: Presentation, res: _Residue, row: int):
    """Prefix-closed transversal words plus the full coset table.

    Right cosets of {pi | c} are separated by the bottom row (row=1)
    of a representative mod pi, those of {pi | b} by the top row
    (row=0); the table maps (generator, sign, coset) to the image
    coset under right multiplication.
    """
    gens = [res.mat_red(m) for m in pres.images]
    invs = [res.mat_red(m) for m in pres.inv_images]
    one, zero = pres.ring.one, pres.ring.zero
    ident = res.mat_red(((one, zero), (zero, one)))
    key = lambda m: res.proj_key(m[row])
    reps = [()]
    mats = [ident]
    seen = {key(ident): 0}
    table = {}
    k = 0
    while k < len(reps):
        for j in range(pres.ngens):
            for e in (1, -1):
                m = res.mat_mul(mats[k], gens[j] if e == 1 else invs[j])
                ky = key(m)
                nk = seen.get(ky)
                if nk is None:
                    nk = len(reps)
                    seen[ky] = nk
                    reps.append(reps[k] + ((j, e),))
                    mats.append(m)
                table[(j, e, k)] = nk
        k += 1
    if len(reps) != res.size + 1:
        raise ArithmeticError("transversal does not cover the projective line")
    return tuple(reps), table


class HeckePair:
    """delta = diag(1, pi) with both coset tables it acts through.

    cosets/table describe H = {pi | lower-left}; conj_cosets and
    conj_table describe the delta-conjugate H' = {pi | upper-right},
    through which the transfer runs.
    """

    def __init__(self, pres: Presentation, pi: RingElement):
        residue = _Residue(pres.ring, pi)
        self.pres = pres
        self.pi = pi
        self.norm = residue.size
        self.degree = residue.degree
        self.index = residue.size + 1
        self.residue = residue
        ring = pres.ring
        one, zero = ring.one, ring.zero
        self.delta = ((one, zero), (zero, pi))
        self.delta_inv = ((one, zero), (zero, one / pi))
        self.cosets, self.table = _transversal(pres, residue, 1)
        self.coset_mats = tuple(evaluate_word(pres, w) for w in self.cosets)
        self.conj_cosets, self.conj_table = _transversal(pres, residue, 0)
        self.conj_mats = tuple(evaluate_word(pres, w) for w in self.conj_cosets)

    def contains(self, mat) -> bool:
        """Membership in H: pi divides the lower-left entry."""
        return self.residue.is_zero(self.residue.red(mat[1][0]))

    def __repr__(self):
        return f"HeckePair(pi={self.pi!r}, norm={self.norm}, index={self.index})"


def hecke_pair(pres: Presentation, pi) -> HeckePair:
    """The coset data of delta = diag(1, pi) for a prime element pi."""
    if isinstance(pi, int):
        pi = pres.ring.from_rational(pi)
    return HeckePair(pres, pi)


# ---------------------------------------------------------------------------
# the word problem: norm-Euclidean division back to generator words


def _letters_of_translation(x: int, y: int):
    """Word for [[1, x + y*w], [0, 1]] over A = T_1 and U = T_w."""
    sx = 1 if x >= 0 else -1
    sy = 1 if y >= 0 else -1
    return ((0, sx),) * abs(x) + ((2, sy),) * abs(y)


def _check_standard_generators(pres: Presentation):
    ring = pres.ring
    one, zero, w = ring.one, ring.zero, ring.gen(0)
    expected = [
        ((one, one), (zero, one)),
        ((zero, one), (-one, zero)),
        ((one, w), (zero, one)),
    ]
    if pres.images[:3] != expected:
        raise ValueError("word recovery needs the A, B, U generator images")


def _pm_key(m):
    flat = tuple(e.v for row in m for e in row)
    neg = tuple((-e).v for row in m for e in row)
    return min(flat, neg)


def _unit_words(pres: Presentation) -> dict:
    """Words for diag(u, 1/u) over all units u besides +-1, by a
    bidirectional search through short generator words."""
    cached = getattr(pres, "_hecke_unit_words", None)
    if cached is not None:
        return cached
    ring = pres.ring
    units = []
    for x in (-1, 0, 1):
        for y in (-1, 0, 1):
            e = ring.from_rational(x) + ring.gen(0) * y
            if y != 0 and _norm_int(e) == 1:
                units.append(e)
    table = {}
    if units:
        letters = [(j, s) for j in (0, 1, 2) for s in (1, -1)]
        frontier = {}
        layer = [((), evaluate_word(pres, ()))]
        for _ in range(4):
            nxt = []
            for word, mat in layer:
                for j, s in letters:
                    if word and word[-1] == (j, -s):
                        continue
                    w2 = word + ((j, s),)
                    m2 = mat2_mul(mat, pres.images[j] if s == 1 else pres.inv_images[j])
                    k = _pm_key(m2)
                    if k not in frontier:
                        frontier[k] = (w2, m2)
                        nxt.append((w2, m2))
            layer = nxt
        frontier[_pm_key(((ring.one, ring.zero), (ring.zero, ring.one)))] = ((), None)
        for u in units:
            target = ((u, ring.zero), (ring.zero, ring.one / u))
            found = None
            for w2, m2 in frontier.values():
                if m2 is None:
                    m1 = target
                else:
                    m1 = mat2_mul(target, mat2_inv(m2))
                hit = frontier.get(_pm_key(m1))
                if hit is not None:
                    found = hit[0] + w2
                    break
            if found is None:
                raise ArithmeticError(f"no short word realises the unit {u!r}")
            val = evaluate_word(pres, found)
            if val != target and val != tuple(tuple(-e for e in r) for r in target):
                raise ArithmeticError("unit word does not evaluate to the unit matrix")
            table[_elem_key(u)] = found
    pres._hecke_unit_words = table
    return table


def _round_quotient(ring, z: RingElement, c: RingElement):
    """q in O minimising the norm of z - q*c, by scanning the integer
    translates around the exact quotient."""
    t = z / c
    tx, ty = _coords(t)
    fx, fy = tx.numerator // tx.denominator, ty.numerator // ty.denominator
    w = ring.gen(0)
    best = None
    for dx in (-1, 0, 1, 2):
        for dy in (0, 1):
            q = ring.from_rational(fx + dx) + w * (fy + dy)
            r = z - q * c
            n = _norm_int(r)
            if best is None or n < best[0]:
                best = (n, q)
    return best


def _euclid_letters(pres: Presentation, m) -> tuple:
    """A generator word (over A, B, U) evaluating to m up to sign.

    Repeated nearest-integer division drives the lower-left entry to
    zero; the upper-triangular remainder is a translation times a
    diagonal unit."""
    _check_standard_generators(pres)
    ring = pres.ring
    zero = ring.zero
    a, b = m[0]
    c, d = m[1]
    out = []
    while c != zero:
        n_c = _norm_int(c)
        nq, q = _round_quotient(ring, a, c)
        if nq >= n_c:
            raise ArithmeticError("Euclidean division failed to reduce the norm")
        qx, qy = _int_coords(q)
        out.extend(_letters_of_translation(qx, qy))
        out.append((1, 1))
        # m <- B^-1 T_-q m = [[c, d], [-(a - q c), -(b - q d)]]
        a, b, c, d = c, d, -(a - q * c), -(b - q * d)
    # m = [[u, b], [0, 1/u]] = T_{b u} diag(u, 1/u)
    u = a
    s = b * u
    sx, sy = _int_coords(s)
    out.extend(_letters_of_translation(sx, sy))
    if u == ring.one:
        pass
    elif u == -ring.one:
        out.extend(((1, 1), (1, 1)))
    else:
        unit = _unit_words(pres).get(_elem_key(u))
        if unit is None:
            raise ArithmeticError(f"no stored word for the unit {u!r}")
        out.extend(unit)
    word = tuple(out)
    val = evaluate_word(pres, word)
    if val != m and val != tuple(tuple(-e for e in r) for r in m):
        raise ArithmeticError("recovered word does not evaluate to the matrix")
    return word


# ---------------------------------------------------------------------------
# module actions of explicit GL(2) matrices, both arithmetics


def _act_matrix(act, m):
    """Action of an exact 2x2 matrix on act's module, matching act's
    arithmetic (mod p arrays or nested ring-element lists)."""
    n, mm = act.n, act.m
    if act.p is None:
        ring = act.pres.ring
        sym = lambda g, k: _sym_matrix(g, k, ring.zero, ring.one, operator.add, operator.mul)
        cm = tuple(tuple(ring.conj(e) for e in row) for row in m)
        return _kron(sym(m, n), sym(cm, mm))
    p = act.p
    rmap = act.rmap
    add = lambda u, v: (u + v) % p
    mul = lambda u, v: (u * v) % p
    main = tuple(tuple(rmap.apply(e) for e in row) for row in m)
    conj = tuple(tuple(rmap.apply_conj(e) for e in row) for row in m)
    sym = lambda g, k: np.array(_sym_matrix(g, k, 0, 1, add, mul), dtype=np.int64)
    return np.kron(sym(main, n), sym(conj, mm)) % p


def _mat_apply(act, mat, cols):
    if act.p is not None:
        return matmul_modp(mat, cols, act.p)
    return mat_mul(mat, cols, act.pres.ring.one)


def _cols_add(act, a, b):
    if act.p is not None:
        return (a + b) % act.p
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _cols_sub(act, a, b):
    if act.p is not None:
        return (a - b) % act.p
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _cols_zero(act, width):
    if act.p is not None:
        return np.zeros((act.dim, width), dtype=np.int64)
    zero = act.pres.ring.zero
    return [[zero] * width for _ in range(act.dim)]


def _fold_word(act, gen_cols, word, width):
    """Cocycle value on a generator word, from the per-generator value
    columns, via f(g u) = f(g) + g.f(u) processed right to left."""
    acc = _cols_zero(act, width)
    for j, e in reversed(word):
        if e == 1:
            acc = _cols_add(act, gen_cols[j], _mat_apply(act, act.mats[j], acc))
        else:
            acc = _mat_apply(act, act.inv_mats[j], _cols_sub(act, acc, gen_cols[j]))
    return acc


def _split_gen_cols(act, vec, width):
    """Concatenated generator values -> per-generator column blocks."""
    d = act.dim
    if act.p is not None:
        v = np.asarray(vec, dtype=np.int64) % act.p
        if v.ndim == 1:
            v = v[:, None]
        return [v[j * d : (j + 1) * d] for j in range(act.pres.ngens)]
    rows = [list(r) if isinstance(r, (list, tuple)) else [r] for r in vec]
    return [rows[j * d : (j + 1) * d] for j in range(act.pres.ngens)]


# ---------------------------------------------------------------------------
# subgroup cocycles: restriction, conjugation, transfer


@dataclass
class SubgroupCocycle:
    """A cocycle on H by its values on the Schreier generators.

    values maps (coset k, generator j) to the value column(s) on
    t_k g_j t_sigma^-1; a non-None conjugator delta means the object
    is the push of those values to delta^-1 H delta."""

    pair: HeckePair
    act: object
    values: dict
    width: int
    conjugator: tuple | None = None
    _gen_mats: dict | None = None
    _act_cache: dict | None = None

    def schreier_word(self, k: int, j: int):
        sigma = self.pair.table[(j, 1, k)]
        return cat(self.pair.cosets[k], ((j, 1),), inv(self.pair.cosets[sigma]))

    def gen_mat(self, k: int, j: int):
        """Exact matrix of the (k, j) Schreier generator (H side)."""
        if self._gen_mats is None:
            self._gen_mats = {}
        m = self._gen_mats.get((k, j))
        if m is None:
            sigma = self.pair.table[(j, 1, k)]
            m = mat2_mul(
                mat2_mul(self.pair.coset_mats[k], self.pair.pres.images[j]),
                mat2_inv(self.pair.coset_mats[sigma]),
            )
            self._gen_mats[(k, j)] = m
        return m

    def _gen_action(self, k: int, j: int, inverse: bool):
        if self._act_cache is None:
            self._act_cache = {}
        key = (k, j, inverse)
        mat = self._act_cache.get(key)
        if mat is None:
            m = self.gen_mat(k, j)
            if inverse:
                m = mat2_inv(m)
            mat = _act_matrix(self.act, m)
            self._act_cache[key] = mat
        return mat


def restrict(vec, pair: HeckePair, act) -> SubgroupCocycle:
    """Restriction of a cocycle (concatenated generator values) to H."""
    width = 1
    if act.p is not None:
        v = np.asarray(vec)
        width = 1 if v.ndim == 1 else v.shape[1]
    elif vec and isinstance(vec[0], (list, tuple)):
        width = len(vec[0])
    gen_cols = _split_gen_cols(act, vec, width)
    values = {}
    for k in range(pair.index):
        for j in range(pair.pres.ngens):
            word = cat(
                pair.cosets[k], ((j, 1),), inv(pair.cosets[pair.table[(j, 1, k)]])
            )
            values[(k, j)] = _fold_word(act, gen_cols, word, width)
    return SubgroupCocycle(pair=pair, act=act, values=values, width=width)


def _adjugate(m):
    return ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))


def conjugate(sc: SubgroupCocycle, delta) -> SubgroupCocycle:
    """Push a subgroup cocycle to the delta^-1 H delta side.

    Values are twisted by the action of the adjugate of delta, which
    for det 1 is the inverse and in general keeps them integral: on
    the weight-(n, n) module the adjugate acts as N(det)^n times the
    inverse."""
    twist = _act_matrix(sc.act, _adjugate(delta))
    values = {key: _mat_apply(sc.act, twist, v) for key, v in sc.values.items()}
    if sc.conjugator is not None:
        delta = mat2_mul(sc.conjugator, delta)
    return SubgroupCocycle(
        pair=sc.pair, act=sc.act, values=values, width=sc.width, conjugator=delta
    )


def subgroup_value(sc: SubgroupCocycle, word):
    """Value on an arbitrary word lying in H, by Schreier rewriting
    through the coset table."""
    if sc.conjugator is not None:
        raise ValueError("rewriting applies to cocycles on the pair's own subgroup")
    pair, act = sc.pair, sc.act
    total = _cols_zero(act, sc.width)
    prefix = None
    k = 0
    for j, e in word:
        if e == 1:
            key = (k, j)
            k2 = pair.table[(j, 1, k)]
            val = sc.values[key]
            step = sc._gen_action(*key, inverse=False)
        else:
            k2 = pair.table[(j, -1, k)]
            key = (k2, j)
            val = _cols_sub(
                act,
                _cols_zero(act, sc.width),
                _mat_apply(act, sc._gen_action(*key, inverse=True), sc.values[key]),
            )
            step = sc._gen_action(*key, inverse=True)
        if prefix is None:
            total = _cols_add(act, total, val)
            prefix = step
        else:
            total = _cols_add(act, total, _mat_apply(act, prefix, val))
            prefix = _mat_apply(act, prefix, step)
        k = k2
    if k != 0:
        raise ValueError("word does not lie in the subgroup")
    return total


def corestrict(sc: SubgroupCocycle, pair: HeckePair):
    """Transfer a subgroup cocycle back up to the full group.

    A plain cocycle on H transfers through H's own cosets.  A
    conjugated cocycle (living on H') transfers through the conjugate
    cosets; its values there come from the underlying H-cocycle via
    the Euclidean word recovery.
    """
    if sc.pair is not pair:
        raise ValueError("cocycle and pair do not match")
    act = sc.act
    pres = pair.pres
    if sc.conjugator is None:
        cosets, table, mats = pair.cosets, pair.table, pair.coset_mats
        base = sc
        twist_out = None
    else:
        cosets, table, mats = pair.conj_cosets, pair.conj_table, pair.conj_mats
        det = (
            sc.conjugator[0][0] * sc.conjugator[1][1]
            - sc.conjugator[0][1] * sc.conjugator[1][0]
        )
        dinv = (
            (sc.conjugator[1][1] / det, -sc.conjugator[0][1] / det),
            (-sc.conjugator[1][0] / det, sc.conjugator[0][0] / det),
        )
        twist_out = _act_matrix(act, _adjugate(sc.conjugator))
        # untwist back to values of the original H-cocycle
        fwd = _act_matrix(
            act, tuple(tuple(e / det for e in row) for row in sc.conjugator)
        )
        base = SubgroupCocycle(
            pair=pair,
            act=act,
            values={key: _mat_apply(act, fwd, v) for key, v in sc.values.items()},
            width=sc.width,
        )
    out = []
    for j in range(pres.ngens):
        acc = _cols_zero(act, sc.width)
        for k in range(len(cosets)):
            sigma = table[(j, 1, k)]
            if sc.conjugator is None:
                word = cat(cosets[k], ((j, 1),), inv(cosets[sigma]))
                val = subgroup_value(base, word)
            else:
                z = mat2_mul(mat2_mul(mats[k], pres.images[j]), mat2_inv(mats[sigma]))
                h = mat2_mul(mat2_mul(sc.conjugator, z), dinv)
                val = subgroup_value(base, _euclid_letters(pres, h))
                val = _mat_apply(act, twist_out, val)
            rep_inv = mat2_inv(mats[k])
            acc = _cols_add(act, acc, _mat_apply(act, _act_matrix(act, rep_inv), val))
        out.append(acc)
    if act.p is not None:
        stacked = np.concatenate(out)
        return stacked[:, 0] if sc.width == 1 else stacked
    rows = [row for block in out for row in block]
    return [row[0] for row in rows] if sc.width == 1 else rows


# ---------------------------------------------------------------------------
# cocycle bases with coordinates: the echelon completion kept explicit


class _SolverModp:
    """Kernel of the relation map modulo p with a coordinate sweep.

    Rows hold the echelonized inner derivations followed by the
    completed cocycle basis, so coords() can express any cocycle as
    basis coordinates modulo inner derivations."""

    def __init__(self, pres, act):
        p = act.p
        scols = pres.ngens * act.dim
        blocks = list(_lambda_blocks(pres, act))
        lam = np.concatenate(blocks) if blocks else np.zeros((1, scols), dtype=np.int64)
        kernel = kernel_modp(lam, p)
        mu_vecs = _mu_matrix(act).T % p
        red, nmu, pivots = rref_modp(mu_vecs, p, full=True)
        rows = [red[i] for i in range(nmu)]
        pivots = list(pivots)
        flags = [False] * nmu
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
            flags.append(True)
            basis.append(w)
        self.p = p
        self.scols = scols
        self.rows = rows
        self.pivots = pivots
        self.flags = flags
        self.basis = basis
        self.dim = len(basis)

    def coords(self, vec) -> np.ndarray:
        p = self.p
        w = np.asarray(vec, dtype=np.int64) % p
        out = []
        for row, c, flag in zip(self.rows, self.pivots, self.flags):
            f = int(w[c])
            if flag:
                out.append(f)
            if f:
                w = (w - f * row) % p
        if np.any(w):
            raise ArithmeticError("vector is not a cocycle modulo inner derivations")
        return np.array(out, dtype=np.int64)


class _SolverExact:
    def __init__(self, pres, act):
        ring = pres.ring
        one, zero = ring.one, ring.zero
        scols = pres.ngens * act.dim
        lam = [row for blk in _lambda_blocks(pres, act) for row in blk]
        if not lam:
            lam = [[zero] * scols]
        kernel = kernel_basis(lam, one, ncols=scols)
        mu = _mu_matrix(act)
        mu_vecs = [[mu[r][b] for r in range(scols)] for b in range(act.dim)]
        red, pivots = rref(mu_vecs, one, ncols=scols)
        rows = [list(r) for r in red]
        pivots = list(pivots)
        flags = [False] * len(rows)
        basis = []
        for kv in kernel:
            w = list(kv)
            for row, c in zip(rows, pivots):
                f = w[c]
                if f != zero:
                    w = [x - f * y for x, y in zip(w, row)]
            j = next((i for i, x in enumerate(w) if x != zero), None)
            if j is None:
                continue
            s = one / w[j]
            w = [x * s for x in w]
            rows.append(w)
            pivots.append(j)
            flags.append(True)
            basis.append(w)
        self.ring = ring
        self.scols = scols
        self.rows = rows
        self.pivots = pivots
        self.flags = flags
        self.basis = basis
        self.dim = len(basis)

    def coords(self, vec):
        zero = self.ring.zero
        w = list(vec)
        out = []
        for row, c, flag in zip(self.rows, self.pivots, self.flags):
            f = w[c]
            if flag:
                out.append(f)
            if f != zero:
                w = [x - f * y for x, y in zip(w, row)]
        if any(x != zero for x in w):
            raise ArithmeticError("vector is not a cocycle modulo inner derivations")
        return out


# ---------------------------------------------------------------------------
# fast batched cocycle evaluation along words, mod p


def _word_runs(word):
    runs = []
    for j, e in word:
        if runs and runs[-1][0] == j and runs[-1][1] == e:
            runs[-1][2] += 1
        else:
            runs.append([j, e, 1])
    return runs


class _Walker:
    """Evaluates basis cocycles along long generator words mod p.

    Power-of-two tables per signed generator turn a run g^c into
    O(log c) matrix applications: values use the geometric sums
    geo(2^(i+1)) = geo(2^i) + g^(2^i) geo(2^i)."""

    def __init__(self, act, gen_cols):
        self.act = act
        self.p = act.p
        self.base = {}
        self.mats = {}
        for j in range(act.pres.ngens):
            self.base[(j, 1)] = gen_cols[j] % self.p
            self.base[(j, -1)] = (-matmul_modp(act.inv_mats[j], gen_cols[j], self.p)) % self.p
            self.mats[(j, 1)] = act.mats[j]
            self.mats[(j, -1)] = act.inv_mats[j]
        self.pow = {}
        self.geo = {}

    def _tables(self, key, hi):
        pw = self.pow.setdefault(key, [self.mats[key]])
        ge = self.geo.setdefault(key, [self.base[key]])
        while len(pw) <= hi:
            ge.append((ge[-1] + matmul_modp(pw[-1], ge[-1], self.p)) % self.p)
            pw.append(matmul_modp(pw[-1], pw[-1], self.p))
        return pw, ge

    def eval(self, word, width):
        acc = None
        for j, e, c in reversed(_word_runs(word)):
            key = (j, e)
            bits = [i for i in range(c.bit_length()) if c >> i & 1]
            pw, ge = self._tables(key, bits[-1])
            val = ge[bits[-1]]
            for i in reversed(bits[:-1]):
                val = (ge[i] + matmul_modp(pw[i], val, self.p)) % self.p
            if acc is not None:
                for i in bits:
                    acc = matmul_modp(pw[i], acc, self.p)
                val = (val + acc) % self.p
            acc = val
        if acc is None:
            return np.zeros((self.act.dim, width), dtype=np.int64)
        return acc


# ---------------------------------------------------------------------------
# integer reconstruction from mod-p computations


class _SkipPrime(Exception):
    """Raised when one reduction prime cannot be used for a value."""


def _charpoly_modp(t: np.ndarray, p: int) -> tuple:
    one = Fp(p, 1)
    rows = [[Fp(p, int(x)) for x in row] for row in t]
    return tuple(c.v for c in charpoly_exact(rows, one))


def _signed(r: int, m: int) -> int:
    return r - m if 2 * r > m else r


def _crt_stable(ctx_iter, values_at, stable: int = 2, max_primes: int = 24):
    """CRT lift of an integer tuple from per-prime values, accepted
    once `stable` extra primes leave every entry unchanged."""
    res = None
    mod = None
    lifts = None
    streak = 0
    used = []
    tried = 0
    for ctx in ctx_iter:
        tried += 1
        if tried > max_primes:
            break
        try:
            vals = values_at(ctx)
        except _SkipPrime:
            continue
        p = ctx.p
        vals = tuple(int(v) % p for v in vals)
        if res is None:
            res, mod = list(vals), p
        else:
            if len(vals) != len(res):
                raise ArithmeticError("per-prime value shapes disagree")
            minv = pow(mod % p, -1, p)
            res = [
                (r + mod * ((v - r) * minv % p)) % (mod * p)
                for r, v in zip(res, vals)
            ]
            mod *= p
        used.append(p)
        new = tuple(_signed(r, mod) for r in res)
        if new == lifts:
            streak += 1
            if streak >= stable:
                return new, tuple(used)
        else:
            streak = 0
        lifts = new
    raise ArithmeticError("integer reconstruction did not stabilize")


def all_roots_real(coeffs) -> bool:
    """Whether every complex root of the integer polynomial is real,
    counted through the squarefree part."""
    f = poly_trim([Fraction(c) for c in coeffs])
    if len(f) <= 1:
        return True
    g, h = f, [c * i for i, c in enumerate(f)][1:]
    while h:
        _, r = poly_divmod(g, h)
        g, h = h, r
    sq_deg = len(f) - len(g)
    return real_root_count(coeffs) == sq_deg


# ---------------------------------------------------------------------------
# the operator engine: shared transversal words, per-prime contexts


_PRIME_FLOOR = (1 << 28) + 1


class _PrimeCtx:
    def __init__(self, engine, rmap):
        self.rmap = rmap
        self.p = rmap.p
        self.act = build_action(engine.pres, engine.n, engine.n, rmap)
        self.solver = _SolverModp(engine.pres, self.act)
        d = self.act.dim
        cols = []
        for j in range(engine.pres.ngens):
            block = np.stack(
                [b[j * d : (j + 1) * d] for b in self.solver.basis], axis=1
            ) if self.solver.basis else np.zeros((d, 0), dtype=np.int64)
            cols.append(block % self.p)
        self.gen_cols = cols
        self.walker = _Walker(self.act, cols) if self.solver.dim else None
        self.tmats = {}


class _Engine:
    """Everything shared between Hecke operators on one (group, n)."""

    def __init__(self, pres: Presentation, n: int):
        if n % 2:
            raise ValueError("the weight n must be even")
        if _ring_d(pres.ring) not in _EUCLIDEAN_DS:
            raise ValueError("operator transfer needs a norm-Euclidean order")
        self.pres = pres
        self.n = n
        self._pairs = {}
        self._tdata = {}
        self._rmaps = []
        self._pnext = _PRIME_FLOOR
        self._ctxs = {}
        self._ref_dim = None
        self._exact = None

    # ---- exact, prime-independent data

    def pair(self, pi: RingElement) -> HeckePair:
        key = _elem_key(pi)
        if key not in self._pairs:
            self._pairs[key] = HeckePair(self.pres, pi)
        return self._pairs[key]

    def tdata(self, pi: RingElement):
        """Transfer data: per (generator j, coset k) the Euclidean word
        of delta z delta^-1 and per coset the twist (delta s_k)^-1."""
        key = _elem_key(pi)
        data = self._tdata.get(key)
        if data is None:
            pair = self.pair(pi)
            pres = self.pres
            adj_delta = _adjugate(pair.delta)
            twists = tuple(
                mat2_mul(mat2_inv(m), adj_delta) for m in pair.conj_mats
            )
            items = []
            for j in range(pres.ngens):
                for k in range(pair.index):
                    sigma = pair.conj_table[(j, 1, k)]
                    z = mat2_mul(
                        mat2_mul(pair.conj_mats[k], pres.images[j]),
                        mat2_inv(pair.conj_mats[sigma]),
                    )
                    h = mat2_mul(mat2_mul(pair.delta, z), pair.delta_inv)
                    items.append((j, k, _euclid_letters(pres, h)))
            data = (pair, twists, tuple(items))
            self._tdata[key] = data
        return data

    # ---- prime discovery and per-prime contexts

    def _discover(self):
        p = self._pnext
        while True:
            p += 2 if p % 2 else 1
            if not is_prime(p):
                continue
            maps = reduction_maps(self.pres.ring, p)
            if maps:
                self._pnext = p
                self._rmaps.append(maps[0])
                return

    def _ctx(self, rmap):
        ctx = self._ctxs.get(rmap.p)
        if ctx is None:
            ctx = _PrimeCtx(self, rmap)
            self._ctxs[rmap.p] = ctx
        return ctx

    @property
    def ref_dim(self) -> int:
        if self._ref_dim is None:
            while len(self._rmaps) < 3:
                self._discover()
            dims = [self._ctx(r).solver.dim for r in self._rmaps[:3]]
            self._ref_dim = min(dims)
        return self._ref_dim

    def iter_ctxs(self, avoid=()):
        ref = self.ref_dim
        i = 0
        skipped = 0
        while True:
            while i >= len(self._rmaps):
                self._discover()
            rmap = self._rmaps[i]
            i += 1
            try:
                if any(rmap.apply(e) == 0 for e in avoid):
                    continue
            except ReductionError:
                continue
            ctx = self._ctx(rmap)
            if ctx.solver.dim != ref:
                skipped += 1
                if skipped > 64:
                    raise ArithmeticError("cocycle dimension is unstable across primes")
                continue
            skipped = 0
            yield ctx

    # ---- the operator matrix mod one prime

    def t_matrix(self, ctx: _PrimeCtx, pi: RingElement) -> np.ndarray:
        key = _elem_key(pi)
        t = ctx.tmats.get(key)
        if t is not None:
            return t
        pair, twists, items = self.tdata(pi)
        p = ctx.p
        nb = ctx.solver.dim
        d = ctx.act.dim
        try:
            tw = [_act_matrix(ctx.act, m) for m in twists]
        except ReductionError as exc:
            raise _SkipPrime(str(exc)) from exc
        out = [np.zeros((d, nb), dtype=np.int64) for _ in range(self.pres.ngens)]
        for j, k, word in items:
            val = ctx.walker.eval(word, nb)
            out[j] = (out[j] + matmul_modp(tw[k], val, p)) % p
        stacked = np.concatenate(out)
        t = np.zeros((nb, nb), dtype=np.int64)
        for b in range(nb):
            t[:, b] = ctx.solver.coords(stacked[:, b])
        for other in ctx.tmats.values():
            if np.any((matmul_modp(t, other, p) - matmul_modp(other, t, p)) % p):
                raise ArithmeticError("Hecke operators fail to commute mod p")
        ctx.tmats[key] = t
        return t

    # ---- exact route

    def exact_ctx(self):
        if self._exact is None:
            act = build_action(self.pres, self.n, self.n, None)
            self._exact = (act, _SolverExact(self.pres, act))
        return self._exact

    def t_matrix_exact(self, pi: RingElement):
        act, solver = self.exact_ctx()
        pair, twists, items = self.tdata(pi)
        ring = self.pres.ring
        nb = solver.dim
        gen_cols = []
        d = act.dim
        for j in range(self.pres.ngens):
            gen_cols.append([[b[j * d + r] for b in solver.basis] for r in range(d)])
        out = [_cols_zero(act, nb) for _ in range(self.pres.ngens)]
        tw = [_act_matrix(act, m) for m in twists]
        for j, k, word in items:
            val = _fold_word(act, gen_cols, word, nb)
            out[j] = _cols_add(act, out[j], _mat_apply(act, tw[k], val))
        stacked = [row for block in out for row in block]
        cols = [
            solver.coords([stacked[r][b] for r in range(len(stacked))])
            for b in range(nb)
        ]
        return [[cols[b][i] for b in range(nb)] for i in range(nb)]


# ---------------------------------------------------------------------------
# public drivers


@dataclass(frozen=True)
class HeckeOperator:
    """A Hecke operator with its integer characteristic polynomial.

    charpoly is monic with ascending integer coefficients.  matrix is
    the exact operator matrix in the cocycle basis when mode="exact";
    the modular route reconstructs only basis-independent data and
    leaves it None.  primes lists the reduction primes used."""

    pair: HeckePair
    n: int
    mode: str
    dimension: int
    charpoly: tuple
    matrix: tuple | None
    primes: tuple

    def __post_init__(self):
        if self.charpoly[-1] != 1:
            raise ArithmeticError("characteristic polynomial must be monic")
        if not all_roots_real(self.charpoly):
            raise ArithmeticError("characteristic polynomial has non-real roots")


def _coerce_pi(pres, pi) -> RingElement:
    if isinstance(pi, int):
        return pres.ring.from_rational(pi)
    return pi


def hecke_matrix(
    pres: Presentation,
    n: int,
    pi,
    mode: str = "modular",
    stable: int = 2,
    max_primes: int = 24,
    engine: _Engine | None = None,
) -> HeckeOperator:
    """The Hecke operator of diag(1, pi) on the weight-(n, n) module.

    mode="modular" reconstructs the characteristic polynomial from
    reductions mod large primes; mode="exact" computes the matrix in
    exact arithmetic (small n only) and takes its polynomial."""
    pi = _coerce_pi(pres, pi)
    eng = engine or _Engine(pres, n)
    if mode == "exact":
        t = eng.t_matrix_exact(pi)
        act, solver = eng.exact_ctx()
        ring = pres.ring
        poly = charpoly_exact(t, ring.one) if t else [ring.one]
        coeffs = []
        for c in poly:
            x, y = _coords(c)
            if y != 0 or x.denominator != 1:
                raise ArithmeticError("characteristic polynomial is not integral")
            coeffs.append(x.numerator)
        return HeckeOperator(
            pair=eng.pair(pi),
            n=n,
            mode="exact",
            dimension=solver.dim,
            charpoly=tuple(coeffs),
            matrix=tuple(tuple(row) for row in t),
            primes=(),
        )
    if mode != "modular":
        raise ValueError(f"unknown mode {mode!r}")
    coeffs, used = _crt_stable(
        eng.iter_ctxs(avoid=(pi,)),
        lambda ctx: _charpoly_modp(eng.t_matrix(ctx, pi), ctx.p),
        stable=stable,
        max_primes=max_primes,
    )
    return HeckeOperator(
        pair=eng.pair(pi),
        n=n,
        mode="modular",
        dimension=eng.ref_dim,
        charpoly=coeffs,
        matrix=None,
        primes=used,
    )


@dataclass
class NLSubspace:
    """ker q(T_pi): the Hecke-invariant plane cut out of the cocycle
    space, carried per reduction prime.

    frame_pi names the operator whose restriction provides the
    companion basis (v, L v) in which restrictions get integer
    matrices; frame_charpoly is its restricted characteristic
    polynomial (c0, c1, 1)."""

    engine: _Engine
    op: HeckeOperator
    pi: RingElement
    q: tuple
    frame_pi: RingElement
    frame_charpoly: tuple
    dimension: int = 2

    def _plane(self, ctx) -> tuple:
        """(v, w): kernel vector and its frame image mod ctx.p."""
        p = ctx.p
        t = self.engine.t_matrix(ctx, self.pi)
        q0, q1, _ = self.q
        m = (matmul_modp(t, t, p) + q1 * t + q0 * np.eye(len(t), dtype=np.int64)) % p
        ker = kernel_modp(m, p)
        if len(ker) != 2:
            raise _SkipPrime("defining polynomial kernel is not a plane")
        v = ker[0] % p
        tf = self.engine.t_matrix(ctx, self.frame_pi)
        w = matmul_modp(tf, v[:, None], p)[:, 0]
        return v, w


def _solve_plane(v, w, b, p):
    """(x, y) with x v + y w = b mod p, checked on every coordinate."""
    i1 = next((i for i in range(len(v)) if v[i] or w[i]), None)
    if i1 is None:
        raise _SkipPrime("degenerate plane basis")
    i2 = None
    for i in range(len(v)):
        if i != i1 and (v[i1] * w[i] - v[i] * w[i1]) % p:
            i2 = i
            break
    if i2 is None:
        raise _SkipPrime("plane basis vectors are parallel mod p")
    det = (v[i1] * w[i2] - v[i2] * w[i1]) % p
    dinv = pow(int(det), -1, p)
    x = (int(w[i2]) * int(b[i1]) - int(w[i1]) * int(b[i2])) * dinv % p
    y = (int(v[i1]) * int(b[i2]) - int(v[i2]) * int(b[i1])) * dinv % p
    if np.any((x * v + y * w - b) % p):
        raise ArithmeticError("restricted operator leaves the plane")
    return x, y


def nl_subspace(pres: Presentation, n: int, pi, q, frame=None) -> NLSubspace:
    """The plane ker q(T_pi), with restrictions expressed against the
    companion basis of the frame operator (default: T_pi itself).

    q is the monic quadratic (c0, c1, 1), ascending coefficients; it
    must divide the characteristic polynomial exactly once."""
    pi = _coerce_pi(pres, pi)
    q = tuple(int(c) for c in q)
    if len(q) != 3 or q[2] != 1:
        raise ValueError("q must be a monic quadratic, ascending coefficients")
    engine = _Engine(pres, n)
    op = hecke_matrix(pres, n, pi, engine=engine)
    frac = [Fraction(c) for c in op.charpoly]
    quot, rem = poly_divmod(frac, [Fraction(c) for c in q])
    if rem:
        raise ValueError("q does not divide the characteristic polynomial")
    _, rem2 = poly_divmod(quot, [Fraction(c) for c in q])
    if not rem2:
        raise ValueError("q divides the characteristic polynomial more than once")
    frame_pi = pi if frame is None else _coerce_pi(pres, frame)
    nl = NLSubspace(
        engine=engine,
        op=op,
        pi=pi,
        q=q,
        frame_pi=frame_pi,
        frame_charpoly=(0, 0, 1),
    )

    def frame_values(ctx):
        v, w = nl._plane(ctx)
        tf = engine.t_matrix(ctx, frame_pi)
        b = matmul_modp(tf, w[:, None], ctx.p)[:, 0]
        g, t = _solve_plane(v, w, b, ctx.p)
        return (-g % ctx.p, -t % ctx.p)

    (c0, c1), _ = _crt_stable(
        engine.iter_ctxs(avoid=(pi, frame_pi)), frame_values
    )
    nl.frame_charpoly = (c0, c1, 1)
    if frame is None and (c0, c1, 1) != q:
        raise ArithmeticError("frame polynomial disagrees with the defining one")
    return nl


def nl_restriction(nl: NLSubspace, pi2) -> tuple:
    """Restriction of T_pi2 to the plane, as an integer 2x2 matrix in
    the frame companion basis."""
    pi2 = _coerce_pi(nl.engine.pres, pi2)

    def values(ctx):
        v, w = nl._plane(ctx)
        t2 = nl.engine.t_matrix(ctx, pi2)
        b = matmul_modp(t2, v[:, None], ctx.p)[:, 0]
        return _solve_plane(v, w, b, ctx.p)

    (alpha, beta), _ = _crt_stable(
        nl.engine.iter_ctxs(avoid=(nl.pi, nl.frame_pi, pi2)), values
    )
    c0, c1, _ = nl.frame_charpoly
    return ((alpha, beta), (-beta * c0, alpha - beta * c1))
