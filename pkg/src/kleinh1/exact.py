"""Exact arithmetic: rationals, prime fields, and number rings.

A number ring is presented as a triangular tower: level i adjoins a root
x_i of a monic polynomial whose coefficients lie in the subring generated
by the earlier levels.  Elements are nested coefficient tuples with
Fraction leaves, the classical representation for towers of simple
extensions (Cohen, A Course in Computational Algebraic Number Theory,
ch. 4).  Each ring carries an involution (complex conjugation) given by
the images of the level generators, and a set of declared denominators
that every reduction map must keep invertible.

Reduction maps are ring homomorphisms into a prime field F_p, specified
by a consistent choice of root for every level polynomial.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "Fp",
    "NumberRing",
    "RingElement",
    "ReductionError",
    "ReductionMap",
    "apply_reduction",
    "is_prime",
    "poly_roots_modp",
    "reduction_maps",
    "ring_define",
]


class ReductionError(ArithmeticError):
    """An element cannot be reduced mod p (a denominator vanishes)."""


# ---------------------------------------------------------------------------
# primality and polynomial factor extraction over F_p


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _poly_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mulmod(a, b, f, p):
    # a*b mod (f, p); f monic, ascending coefficients
    d = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for e in range(len(prod) - 1, d - 1, -1):
        c = prod[e]
        if c:
            prod[e] = 0
            for j in range(d):
                prod[e - d + j] = (prod[e - d + j] - c * f[j]) % p
    return _poly_trim(prod[:d])


def _poly_powmod(base, e, f, p):
    result = [1]
    b = _poly_trim(list(base))
    while e:
        if e & 1:
            result = _poly_mulmod(result, b, f, p)
        b = _poly_mulmod(b, b, f, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        bm = [c * inv % p for c in b]
        # a mod bm
        r = list(a)
        while len(r) >= len(bm) and r:
            c = r[-1]
            if c:
                off = len(r) - len(bm)
                for j in range(len(bm)):
                    r[off + j] = (r[off + j] - c * bm[j]) % p
            r.pop()
            _poly_trim(r)
        a, b = bm, r
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _sqrt_modp(a: int, p: int):
    """A square root of a mod p, or None.  Tonelli-Shanks."""
    a %= p
    if p == 2 or a == 0:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # find a quadratic non-residue deterministically
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    m, c = s, pow(z, q, p)
    t, r = pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def poly_roots_modp(coeffs, p: int) -> list[int]:
    """Distinct roots in F_p of the polynomial with ascending coeffs."""
    f = _poly_trim([c % p for c in coeffs])
    if not f:
        raise ValueError("zero polynomial has every residue as a root")
    d = len(f) - 1
    if d == 0:
        return []
    if d == 1:
        return [(-f[0] * pow(f[1], -1, p)) % p]
    if d == 2 and p != 2:
        a, b, c = f[2], f[1], f[0]
        disc = (b * b - 4 * a * c) % p
        s = _sqrt_modp(disc, p)
        if s is None:
            return []
        inv2a = pow(2 * a, -1, p)
        return sorted({(-b + s) * inv2a % p, (-b - s) * inv2a % p})
    if p < 4096:
        return [x for x in range(p) if _poly_eval_int(f, x, p) == 0]
    # split off the degree-one factors: gcd(x^p - x, f)
    inv = pow(f[-1], -1, p)
    fm = [c * inv % p for c in f]
    xp = _poly_powmod([0, 1], p, fm, p)
    xp_minus_x = list(xp)
    while len(xp_minus_x) < 2:
        xp_minus_x.append(0)
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    g = _poly_gcd(xp_minus_x, fm, p)
    return sorted(_split_linear(g, p))


def _poly_eval_int(f, x, p):
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _split_linear(g, p):
    """Roots of a product of distinct linear factors, by deterministic
    Cantor-Zassenhaus shifts."""
    d = len(g) - 1
    if d <= 0:
        return []
    if d == 1:
        return [(-g[0]) % p]
    shift = 0
    while True:
        # gcd((x + shift)^((p-1)/2) - 1, g) splits g for some shift
        h = _poly_powmod([shift, 1], (p - 1) // 2, g, p)
        h = list(h) if h else [0]
        h[0] = (h[0] - 1) % p
        w = _poly_gcd(h, g, p)
        if 0 < len(w) - 1 < d:
            rest = _poly_gcd_quotient(g, w, p)
            return _split_linear(w, p) + _split_linear(rest, p)
        shift += 1


def _poly_gcd_quotient(a, b, p):
    # exact quotient a / b, both monic
    r = list(a)
    q = [0] * (len(a) - len(b) + 1)
    while len(r) >= len(b) and r:
        c = r[-1]
        q[len(r) - len(b)] = c
        off = len(r) - len(b)
        for j in range(len(b)):
            r[off + j] = (r[off + j] - c * b[j]) % p
        r.pop()
        _poly_trim(r)
    return q


# ---------------------------------------------------------------------------
# prime-field elements (for the generic linear algebra path)


class Fp:
    """An element of F_p in canonical residue form."""

    __slots__ = ("p", "v")

    def __init__(self, p: int, v: int):
        self.p = p
        self.v = v % p

    def __add__(self, other):
        return Fp(self.p, self.v + other.v)

    def __sub__(self, other):
        return Fp(self.p, self.v - other.v)

    def __neg__(self):
        return Fp(self.p, -self.v)

    def __mul__(self, other):
        return Fp(self.p, self.v * other.v)

    def __truediv__(self, other):
        if other.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return Fp(self.p, self.v * pow(other.v, -1, self.p))

    def __eq__(self, other):
        return isinstance(other, Fp) and self.p == other.p and self.v == other.v

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Fp({self.p},{self.v})"


# ---------------------------------------------------------------------------
# tower elements


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} into the tower")


class RingElement:
    """An element of a NumberRing; nested coefficient tuples, fully reduced."""

    __slots__ = ("ring", "v")

    def __init__(self, ring: "NumberRing", v):
        self.ring = ring
        self.v = v

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise TypeError("elements of different rings")
            return other
        return RingElement(self.ring, self.ring._const(_as_fraction(other)))

    def __add__(self, other):
        o = self._coerce(other)
        return RingElement(self.ring, self.ring._add(self.ring.nlevels, self.v, o.v))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return RingElement(self.ring, self.ring._sub(self.ring.nlevels, self.v, o.v))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return RingElement(self.ring, self.ring._neg(self.ring.nlevels, self.v))

    def __mul__(self, other):
        o = self._coerce(other)
        return RingElement(self.ring, self.ring._mul(self.ring.nlevels, self.v, o.v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        inv = self.ring._inv(self.ring.nlevels, o.v)
        return RingElement(self.ring, self.ring._mul(self.ring.nlevels, self.v, inv))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return (self._coerce(1) / self) ** (-e)
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        return (
            isinstance(other, RingElement)
            and self.ring is other.ring
            and self.v == other.v
        )

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return not self.ring._is_zero(self.ring.nlevels, self.v)

    def conj(self) -> "RingElement":
        return self.ring.conj(self)

    def __repr__(self):
        return f"RingElement({self.v!r})"


class NumberRing:
    """Triangular tower of quotient rings over Q with an involution.

    Construct through ring_define(); the constructor takes pre-parsed
    nested data.
    """

    def __init__(self, level_polys, sigma_images, denominators):
        # level_polys[i]: list of nested data at depth i (coeffs ascending)
        self.nlevels = len(level_polys)
        self.degrees = [len(f) - 1 for f in level_polys]
        self.level_polys = level_polys
        self._pow_tables = []
        for i, f in enumerate(level_polys):
            self._pow_tables.append(self._build_pow_table(i, f))
        self.zero = RingElement(self, self._const(Fraction(0)))
        self.one = RingElement(self, self._const(Fraction(1)))
        # parsed later by ring_define (needs working arithmetic first)
        self.sigma_images = sigma_images
        self.denominators = denominators

    # -- nested data arithmetic; lvl counts how many tower levels the data
    #    spans (0 = Fraction leaf)

    def _const(self, q: Fraction, lvl: int | None = None):
        if lvl is None:
            lvl = self.nlevels
        if lvl == 0:
            return q
        zero = self._const(Fraction(0), lvl - 1)
        first = self._const(q, lvl - 1)
        return (first,) + (zero,) * (self.degrees[lvl - 1] - 1)

    def _promote(self, lvl_from: int, lvl_to: int, a):
        for lvl in range(lvl_from, lvl_to):
            zero = self._const(Fraction(0), lvl)
            a = (a,) + (zero,) * (self.degrees[lvl] - 1)
        return a

    def _add(self, lvl, a, b):
        if lvl == 0:
            return a + b
        return tuple(self._add(lvl - 1, x, y) for x, y in zip(a, b))

    def _sub(self, lvl, a, b):
        if lvl == 0:
            return a - b
        return tuple(self._sub(lvl - 1, x, y) for x, y in zip(a, b))

    def _neg(self, lvl, a):
        if lvl == 0:
            return -a
        return tuple(self._neg(lvl - 1, x) for x in a)

    def _is_zero(self, lvl, a):
        if lvl == 0:
            return a == 0
        return all(self._is_zero(lvl - 1, x) for x in a)

    def _build_pow_table(self, i, f):
        """x_i^d .. x_i^(2d-2) as coefficient vectors at depth i."""
        d = len(f) - 1
        neg_low = [self._neg(i, c) for c in f[:d]]
        table = [tuple(neg_low)]
        zero = self._const(Fraction(0), i)
        for _ in range(d - 2):
            prev = table[-1]
            shifted = [zero] + list(prev[: d - 1])
            top = prev[d - 1]
            row = [
                self._add(i, shifted[j], self._mul(i, top, neg_low[j]))
                for j in range(d)
            ]
            table.append(tuple(row))
        return table

    def _mul(self, lvl, a, b):
        if lvl == 0:
            return a * b
        d = self.degrees[lvl - 1]
        if d == 1:
            return (self._mul(lvl - 1, a[0], b[0]),)
        zero = self._const(Fraction(0), lvl - 1)
        prod = [zero] * (2 * d - 1)
        for i, ai in enumerate(a):
            if self._is_zero(lvl - 1, ai):
                continue
            for j, bj in enumerate(b):
                if not self._is_zero(lvl - 1, bj):
                    prod[i + j] = self._add(lvl - 1, prod[i + j], self._mul(lvl - 1, ai, bj))
        table = self._pow_tables[lvl - 1]
        for e in range(2 * d - 2, d - 1, -1):
            c = prod[e]
            if self._is_zero(lvl - 1, c):
                continue
            row = table[e - d]
            for j in range(d):
                if not self._is_zero(lvl - 1, row[j]):
                    prod[j] = self._add(lvl - 1, prod[j], self._mul(lvl - 1, c, row[j]))
        return tuple(prod[:d])

    def _inv(self, lvl, a):
        if lvl == 0:
            if a == 0:
                raise ZeroDivisionError("division by zero in the tower")
            return 1 / a
        if self._is_zero(lvl, a):
            raise ZeroDivisionError("division by zero in the tower")
        # extended Euclid in K[x] against the level polynomial
        d = self.degrees[lvl - 1]
        f = self.level_polys[lvl - 1]
        zero = self._const(Fraction(0), lvl - 1)
        one = self._const(Fraction(1), lvl - 1)
        r0, r1 = list(f), [c for c in a]
        s0, s1 = [zero], [one]

        def trim(g):
            while g and self._is_zero(lvl - 1, g[-1]):
                g.pop()
            return g

        trim(r1)
        while r1:
            lead_inv = self._inv(lvl - 1, r1[-1])
            q, r = self._pdivmod(lvl - 1, r0, r1, lead_inv)
            s_new = self._psub(lvl - 1, s0, self._pmul(lvl - 1, q, s1))
            r0, r1 = r1, trim(r)
            s0, s1 = s1, trim(s_new)
            if len(r0) == 1:
                break
        if len(r0) != 1:
            raise ZeroDivisionError("zero divisor in the tower")
        g_inv = self._inv(lvl - 1, r0[0])
        out = [self._mul(lvl - 1, c, g_inv) for c in s0]
        out += [zero] * (d - len(out))
        return tuple(out[:d])

    def _pmul(self, lvl, a, b):
        if not a or not b:
            return []
        zero = self._const(Fraction(0), lvl)
        prod = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if self._is_zero(lvl, ai):
                continue
            for j, bj in enumerate(b):
                prod[i + j] = self._add(lvl, prod[i + j], self._mul(lvl, ai, bj))
        return prod

    def _psub(self, lvl, a, b):
        n = max(len(a), len(b))
        zero = self._const(Fraction(0), lvl)
        a = list(a) + [zero] * (n - len(a))
        b = list(b) + [zero] * (n - len(b))
        return [self._sub(lvl, x, y) for x, y in zip(a, b)]

    def _pdivmod(self, lvl, a, b, b_lead_inv):
        r = list(a)
        q = [self._const(Fraction(0), lvl)] * max(1, len(a) - len(b) + 1)
        while len(r) >= len(b):
            if self._is_zero(lvl, r[-1]):
                r.pop()
                continue
            c = self._mul(lvl, r[-1], b_lead_inv)
            off = len(r) - len(b)
            q[off] = c
            for j in range(len(b)):
                r[off + j] = self._sub(lvl, r[off + j], self._mul(lvl, c, b[j]))
            r.pop()
        return q, r

    # -- public element constructors

    def from_rational(self, q) -> RingElement:
        return RingElement(self, self._const(_as_fraction(q)))

    def gen(self, i: int) -> RingElement:
        """The level-i generator x_i (0-based)."""
        if not 0 <= i < self.nlevels:
            raise IndexError("no such tower level")
        d = self.degrees[i]
        zero = self._const(Fraction(0), i)
        one = self._const(Fraction(1), i)
        if d == 1:
            # a linear level pins x_i = -c0; elements hold no x_i power
            data = (self._neg(i, self.level_polys[i][0]),)
        else:
            data = (zero, one) + (zero,) * (d - 2)
        return RingElement(self, self._promote(i + 1, self.nlevels, data))

    def subst(self, e: RingElement, images: list[RingElement]) -> RingElement:
        """Evaluate e with x_i replaced by images[i] (a ring endomorphism)."""
        return RingElement(self, self._subst(self.nlevels, e.v, [im.v for im in images]))

    def _subst(self, lvl, data, images):
        if lvl == 0:
            return self._const(data)
        xi = images[lvl - 1]
        acc = self._const(Fraction(0))
        for c in reversed(data):
            acc = self._add(self.nlevels, self._mul(self.nlevels, acc, xi), self._subst(lvl - 1, c, images))
        return acc

    def conj(self, e: RingElement) -> RingElement:
        return RingElement(self, self._subst(self.nlevels, e.v, [im.v for im in self.sigma_images]))

    def parse(self, expr) -> RingElement:
        """Parse an int/Fraction or nested coefficient list into an element.

        A list is a polynomial, ascending coefficients, in the highest
        generator available at its nesting depth: the outermost list is in
        x_{k-1}, a list one level in is in x_{k-2}, and so on.
        """
        return RingElement(self, self._parse(self.nlevels, expr))

    def _parse(self, lvl, expr):
        if isinstance(expr, (int, Fraction)):
            return self._const(_as_fraction(expr), lvl)
        if isinstance(expr, RingElement):
            if expr.ring is not self:
                raise TypeError("element of a different ring")
            return expr.v
        if not isinstance(expr, (list, tuple)):
            raise TypeError(f"cannot parse {expr!r}")
        if lvl == 0:
            raise ValueError("coefficient list nested deeper than the tower")
        # polynomial in x_{lvl-1}; coefficients parsed one level down
        coeff_data = [self._promote(lvl - 1, self.nlevels, self._parse(lvl - 1, c)) for c in expr]
        xi = self.gen(lvl - 1).v
        acc = self._const(Fraction(0))
        for c in reversed(coeff_data):
            acc = self._add(self.nlevels, self._mul(self.nlevels, acc, xi), c)
        # the parse runs at full depth; callers needing depth-lvl data trim
        return self._demote(lvl, acc)

    def _demote(self, lvl, data):
        """Inverse of _promote when the element actually lives at depth lvl."""
        for i in range(self.nlevels, lvl, -1):
            head, tail = data[0], data[1:]
            if any(not self._is_zero(i - 1, t) for t in tail):
                raise ValueError("expression does not live at the requested level")
            data = head
        return data


def ring_define(levels, involution, denominators=()) -> NumberRing:
    """Build and validate a NumberRing.

    levels: per level, ascending coefficient list; coefficients are ints,
    Fractions, or nested lists in the generators of the earlier levels.
    involution: per level, the image of that level's generator under
    complex conjugation, same expression syntax (full tower available).
    denominators: elements that reduction maps must keep invertible.
    """
    if not levels:
        raise ValueError("a ring needs at least one level")
    # bootstrap: parse level polynomials against a growing dummy ring
    parsed_levels = []
    for i, coeffs in enumerate(levels):
        if len(coeffs) < 2:
            raise ValueError("level polynomial must have degree >= 1")
        partial = NumberRing(parsed_levels, [], [])
        data = [partial._parse(i, c) for c in coeffs]
        if not partial._is_zero(i, partial._sub(i, data[-1], partial._const(Fraction(1), i))):
            raise ValueError("level polynomial must be monic")
        parsed_levels.append(data)

    ring = NumberRing(parsed_levels, [], [])
    if len(involution) != len(levels):
        raise ValueError("involution needs one image per level")
    sigma = [ring.parse(im) for im in involution]
    ring.sigma_images = sigma

    # order-2 check: sigma(sigma(x_i)) == x_i
    for i in range(ring.nlevels):
        twice = ring.subst(sigma[i], sigma)
        if twice != ring.gen(i):
            raise ValueError("involution does not square to the identity")
    # sigma must respect the level relations: sigma(P_i)(sigma(x_i)) == 0
    for i in range(ring.nlevels):
        acc = ring.zero
        for c in reversed(parsed_levels[i]):
            c_full = RingElement(ring, ring._promote(i, ring.nlevels, c))
            acc = acc * sigma[i] + ring.conj(c_full)
        if acc != ring.zero:
            raise ValueError("involution does not preserve the tower relations")

    dens = [ring.parse(d) for d in denominators]
    for d in list(dens):
        dc = ring.conj(d)
        if dc not in dens:
            dens.append(dc)
    for d in dens:
        if not d:
            raise ValueError("declared denominator is zero")
    ring.denominators = dens
    return ring


# ---------------------------------------------------------------------------
# reduction maps


class ReductionMap:
    """Ring homomorphism NumberRing -> F_p given by roots per level."""

    __slots__ = ("ring", "p", "roots", "conj_roots")

    def __init__(self, ring: NumberRing, p: int, roots, conj_roots):
        self.ring = ring
        self.p = p
        self.roots = tuple(roots)
        self.conj_roots = tuple(conj_roots)

    def apply(self, e: RingElement) -> int:
        return _eval_nested(self.ring, self.ring.nlevels, e.v, self.roots, self.p)

    def apply_conj(self, e: RingElement) -> int:
        """reduce(conj(e)), computed through the conjugate roots."""
        return _eval_nested(self.ring, self.ring.nlevels, e.v, self.conj_roots, self.p)

    def conjugate(self) -> "ReductionMap":
        return ReductionMap(self.ring, self.p, self.conj_roots, self.roots)

    def is_self_conjugate(self) -> bool:
        return self.roots == self.conj_roots

    def __eq__(self, other):
        return (
            isinstance(other, ReductionMap)
            and self.ring is other.ring
            and (self.p, self.roots, self.conj_roots) == (other.p, other.roots, other.conj_roots)
        )

    def __hash__(self):
        return hash((self.p, self.roots, self.conj_roots))

    def __repr__(self):
        return f"ReductionMap(p={self.p}, roots={self.roots})"


def _eval_nested(ring, lvl, data, roots, p):
    if lvl == 0:
        den = data.denominator % p
        if den == 0:
            raise ReductionError(f"denominator of {data} vanishes mod {p}")
        return data.numerator % p * pow(den, -1, p) % p
    x = roots[lvl - 1]
    acc = 0
    for c in reversed(data):
        acc = (acc * x + _eval_nested(ring, lvl - 1, c, roots, p)) % p
    return acc


def reduction_maps(ring: NumberRing, p: int) -> list[ReductionMap]:
    """All valid reduction maps of the ring into F_p (possibly empty)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    assignments = [()]
    for i in range(ring.nlevels):
        nxt = []
        for roots in assignments:
            try:
                f = [_eval_nested(ring, i, c, roots, p) for c in ring.level_polys[i]]
            except ReductionError:
                continue
            for r in poly_roots_modp(f, p):
                nxt.append(roots + (r,))
        assignments = nxt

    maps = []
    for roots in assignments:
        try:
            if any(
                _eval_nested(ring, ring.nlevels, d.v, roots, p) == 0
                for d in ring.denominators
            ):
                continue
            conj_roots = tuple(
                _eval_nested(ring, ring.nlevels, im.v, roots, p)
                for im in ring.sigma_images
            )
        except ReductionError:
            continue
        # the conjugate assignment must itself satisfy the level relations
        ok = True
        for i in range(ring.nlevels):
            f = [_eval_nested(ring, i, c, conj_roots, p) for c in ring.level_polys[i]]
            if _poly_eval_int([c % p for c in f], conj_roots[i], p) != 0:
                ok = False
                break
        if ok:
            maps.append(ReductionMap(ring, p, roots, conj_roots))
    return maps


def apply_reduction(rmap: ReductionMap, e: RingElement) -> int:
    return rmap.apply(e)
