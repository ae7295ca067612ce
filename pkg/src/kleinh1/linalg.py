"""Exact dense linear algebra over a generic field.

Matrices are lists of rows; entries are any field elements supporting
+, -, *, /, ==, bool (Fraction, exact.Fp, exact.RingElement all do).
Functions needing constants take an explicit `one`.  Everything uses
first-nonzero pivoting and a deterministic column order so that bases
are reproducible run to run.

Polynomials are lists of coefficients in ascending degree.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "charpoly",
    "kernel_basis",
    "mat_identity",
    "mat_mul",
    "poly_divmod",
    "poly_eval",
    "poly_mul",
    "rank",
    "real_root_count",
    "rref",
]


def rref(rows, one, ncols=None):
    """Reduced row echelon form.  Returns (rref_rows, pivot_cols)."""
    m = [list(r) for r in rows]
    if ncols is None:
        if not m:
            raise ValueError("empty matrix needs an explicit ncols")
        ncols = len(m[0])
    zero = one - one
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != zero:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != zero:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, one, ncols=None) -> int:
    return len(rref(rows, one, ncols)[1])


def kernel_basis(rows, one, ncols=None):
    """Echelon-normalized basis of {v : rows . v = 0}.

    Each basis vector carries a 1 in its own free column and 0 in every
    other free column, making the basis canonical for the fixed column
    order.
    """
    m = [list(r) for r in rows]
    if ncols is None:
        if not m:
            raise ValueError("empty matrix needs an explicit ncols")
        ncols = len(m[0])
    red, pivots = rref(m, one, ncols) if m else ([], [])
    zero = one - one
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, c in enumerate(pivots):
            v[c] = zero - red[r][f]
        basis.append(v)
    return basis


def mat_identity(n, one):
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a, b, one):
    zero = one - one
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            s = zero
            for t in range(k):
                if ai[t] != zero:
                    s = s + ai[t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def charpoly(rows, one):
    """Monic characteristic polynomial det(X*I - M), ascending coeffs.

    Hessenberg reduction by similarity transformations, then the standard
    leading-minor recurrence; O(n^3) field operations.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("charpoly needs a square matrix")
    zero = one - one
    if n == 0:
        return [one]
    h = [list(r) for r in rows]
    for j in range(n - 2):
        pivot = None
        for i in range(j + 1, n):
            if h[i][j] != zero:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != j + 1:
            h[j + 1], h[pivot] = h[pivot], h[j + 1]
            for row in h:
                row[j + 1], row[pivot] = row[pivot], row[j + 1]
        inv = one / h[j + 1][j]
        for i in range(j + 2, n):
            if h[i][j] != zero:
                t = h[i][j] * inv
                h[i] = [a - t * b for a, b in zip(h[i], h[j + 1])]
                for row in h:
                    row[j + 1] = row[j + 1] + t * row[i]
    # p_m = (x - h[m-1][m-1]) p_{m-1} - sum_i h[m-1-i][m-1] (prod subdiag) p_{m-1-i}
    polys = [[one]]
    for m in range(1, n + 1):
        d = h[m - 1][m - 1]
        prev = polys[m - 1]
        cur = [zero] + prev
        cur = [c - d * p for c, p in zip(cur, prev + [zero])]
        beta = one
        for i in range(1, m):
            beta = beta * h[m - i][m - i - 1]
            if beta == zero:
                break
            coeff = h[m - 1 - i][m - 1] * beta
            if coeff != zero:
                low = polys[m - 1 - i]
                cur = [c - coeff * (low[k] if k < len(low) else zero) for k, c in enumerate(cur)]
        polys.append(cur)
    return polys[n]


# ---------------------------------------------------------------------------
# polynomial helpers (ascending coefficients)


def poly_trim(f):
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return f


def poly_eval(f, x):
    acc = x - x
    for c in reversed(f):
        acc = acc * x + c
    return acc


def poly_mul(a, b):
    if not a or not b:
        return []
    zero = a[0] - a[0] if a else b[0] - b[0]
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai != zero:
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
    return out


def poly_divmod(a, b):
    a = poly_trim(a)
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    zero = b[-1] - b[-1]
    q = [zero] * max(1, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b):
        if not r[-1]:
            r.pop()
            continue
        c = r[-1] / b[-1]
        off = len(r) - len(b)
        q[off] = c
        for j in range(len(b)):
            r[off + j] = r[off + j] - c * b[j]
        r.pop()
    return poly_trim(q), poly_trim(r)


def _poly_deriv(f):
    return [c * i for i, c in enumerate(f)][1:]


def _sign_at_inf(f, plus: bool) -> int:
    lead = f[-1]
    s = 1 if lead > 0 else -1
    if not plus and (len(f) - 1) % 2 == 1:
        s = -s
    return s


def real_root_count(coeffs) -> int:
    """Number of distinct real roots, by a Sturm chain over Q."""
    f = poly_trim([Fraction(c) for c in coeffs])
    if not f:
        raise ValueError("zero polynomial")
    if len(f) == 1:
        return 0
    # square-free part
    g = f
    h = _poly_deriv(f)
    while h:
        _, r = poly_divmod(g, h)
        g, h = h, r
    # g is the gcd (up to scalar)
    sqfree, _ = poly_divmod(f, g) if len(g) > 1 else (f, None)
    chain = [sqfree, _poly_deriv(sqfree)]
    while len(chain[-1]) > 0:
        _, r = poly_divmod(chain[-2], chain[-1])
        r = [-c for c in r]
        if not r:
            break
        chain.append(r)
    vneg = vpos = 0
    sneg = spos = None
    for q in chain:
        if not q:
            continue
        s = _sign_at_inf(q, plus=False)
        if sneg is not None and s != sneg:
            vneg += 1
        sneg = s
        s = _sign_at_inf(q, plus=True)
        if spos is not None and s != spos:
            vpos += 1
        spos = s
    return vneg - vpos
