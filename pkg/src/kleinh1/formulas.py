"""Closed-form dimension arithmetic for quadratic fields.

Everything here is elementary number theory: binary quadratic form
class numbers (definite and indefinite), genus counts, Kronecker
symbols, and the resulting closed formulas for the lifted part of the
first cohomology of SL(2) over imaginary quadratic integers, its
variant for non-maximal ideals, the CM contributions, and the
codimension of the cuspidal part.  All intermediate arithmetic is done
in Fraction; every dimension function asserts that the rational
bookkeeping collapses to a non-negative integer before returning it.

The Fuchsian counterpart (genus, cusps and elliptic orders determine
the cohomology of a lattice in SL(2,R) exactly) is included as
`fuchsian_h1` since it shares the same correction-term idiom.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "FuchsianData",
    "QuadField",
    "bc_dim",
    "bc_dim_ideal",
    "class_number",
    "cm_contribution",
    "cm_extra",
    "cusp_codim",
    "d_of",
    "eps_mu",
    "fuchsian_h1",
    "genus_number",
    "is_fundamental_discriminant",
    "kronecker",
    "lk_fields",
    "narrow_class_number",
    "nu",
]


# ---------------------------------------------------------------------------
# discriminants and fields


def _squarefree(m: int) -> bool:
    m = abs(m)
    if m == 0:
        return False
    d = 2
    while d * d <= m:
        if m % (d * d) == 0:
            return False
        d += 1
    return True


def is_fundamental_discriminant(D: int) -> bool:
    """True for discriminants of quadratic fields (D = 1 excluded)."""
    if D == 1 or D == 0:
        return False
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        q = D // 4
        return q % 4 in (2, 3) and _squarefree(q)
    return False


def _prime_factors(m: int) -> tuple[int, ...]:
    m = abs(m)
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return tuple(out)


@dataclass(frozen=True)
class QuadField:
    """Quadratic field Q(sqrt(d)), d squarefree, either sign."""

    d: int

    def __post_init__(self):
        if self.d in (0, 1) or not _squarefree(self.d):
            raise ValueError(f"d = {self.d} is not a valid radicand")

    @classmethod
    def from_discriminant(cls, D: int) -> "QuadField":
        if not is_fundamental_discriminant(D):
            raise ValueError(f"{D} is not a fundamental discriminant")
        return cls(D if D % 4 == 1 else D // 4)

    @property
    def discriminant(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def ramified(self) -> dict[int, int]:
        """Ramified primes with the exact power of p in the discriminant."""
        D = self.discriminant
        out = {}
        for p in _prime_factors(D):
            e = 0
            m = abs(D)
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
        return out

    @property
    def is_imaginary(self) -> bool:
        return self.d < 0

    def __repr__(self):
        return f"QuadField(d={self.d})"


# ---------------------------------------------------------------------------
# Kronecker symbol


def _jacobi(a: int, n: int) -> int:
    # n odd positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), the genus character convention."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            sign *= (-1) ** t
    return sign * _jacobi(a, n)


# ---------------------------------------------------------------------------
# class numbers via binary quadratic forms


@lru_cache(maxsize=None)
def class_number(D: int) -> int:
    """Form class number of a fundamental discriminant D < 0.

    Counts reduced positive definite forms (a,b,c) with b^2 - 4ac = D,
    |b| <= a <= c and b >= 0 whenever |b| = a or a = c.
    """
    if D >= 0:
        raise ValueError("class_number expects a negative discriminant")
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    count = 0
    b = D % 2
    while 3 * b * b <= -D:
        m = (b * b - D) // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                if math.gcd(math.gcd(a, b), c) == 1:
                    count += 1 if (b == 0 or b == a or a == c) else 2
            a += 1
        b += 2
    return count


def _reduced_indefinite(D: int):
    # all reduced forms (a,b,c) of discriminant D > 0 non-square:
    # 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b
    f = math.isqrt(D)
    forms = []
    for b in range(2 - (D % 2), f + 1, 2):
        m = b * b - D  # = 4ac < 0
        lo = (f - b) // 2 + 1
        hi = (f + b) // 2
        for aa in range(max(lo, 1), hi + 1):
            if m % (4 * aa) == 0:
                c = m // (4 * aa)
                if math.gcd(math.gcd(aa, b), abs(c)) == 1:
                    forms.append((aa, b, c))
                    forms.append((-aa, b, -c))
    return forms


def _rho(form, D, f):
    # neighbor form; f = isqrt(D).  b' is the unique residue of -b
    # mod 2|c| in the open interval (sqrt(D) - 2|c|, sqrt(D)).
    a, b, c = form
    m2 = 2 * abs(c)
    r = (-b) % m2
    b2 = f - ((f - r) % m2)
    c2 = (b2 * b2 - D) // (4 * c)
    return (c, b2, c2)


@lru_cache(maxsize=None)
def narrow_class_number(D: int) -> int:
    """Narrow form class number of a fundamental discriminant D > 0.

    Reduced indefinite forms fall into cycles under the neighbor map;
    the number of cycles is the narrow class number.
    """
    if D <= 0:
        raise ValueError("narrow_class_number expects a positive discriminant")
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    remaining = set(_reduced_indefinite(D))
    f = math.isqrt(D)
    cycles = 0
    while remaining:
        start = next(iter(remaining))
        form = start
        while True:
            remaining.discard(form)
            form = _rho(form, D, f)
            if form == start:
                break
        cycles += 1
    return cycles


def genus_number(D: int) -> int:
    """Number of genera: 2^(t-1) for t ramified primes."""
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    return 2 ** (len(_prime_factors(D)) - 1)


# ---------------------------------------------------------------------------
# bookkeeping functions for the dimension formulas


def eps_mu(n: int) -> tuple[Fraction, Fraction]:
    """Parity corrections (eps_n, mu_n) on residues mod 4 and mod 3."""
    eps = Fraction((-1) ** (n // 2), 4) if n % 2 == 0 else Fraction(0)
    r = n % 3
    mu = Fraction(0) if r == 1 else (Fraction(-1, 3) if r == 2 else Fraction(1, 3))
    return eps, mu


def nu(L: QuadField, n: int) -> int:
    """Indicator for the weight classes supporting lifts from L.

    The Gaussian field only contributes in odd weights, the
    Eisenstein field only in weights 2 mod 3, every other imaginary
    quadratic field in all weights.
    """
    if not L.is_imaginary:
        raise ValueError("nu is defined for imaginary quadratic fields")
    D = L.discriminant
    if D == -4:
        return n % 2
    if D == -3:
        return 1 if n % 3 == 2 else 0
    return 1


def d_of(n: int, r: int) -> Fraction:
    """Elliptic correction term; depends only on n mod 2r."""
    if r < 2:
        raise ValueError("elliptic order must be at least 2")
    mu = n % (2 * r)
    if mu % 2 == 0:
        return 1 - Fraction(mu + 1, r)
    if mu < r:
        return -Fraction(mu + 1, r)
    return 2 - Fraction(mu + 1, r)


# ---------------------------------------------------------------------------
# Fuchsian groups


@dataclass(frozen=True)
class FuchsianData:
    """Signature of a lattice in SL(2,R): genus, cusps, elliptic orders."""

    genus: int
    cusps: int
    orders: tuple[int, ...] = ()

    def __post_init__(self):
        if self.genus < 0 or self.cusps < 0:
            raise ValueError("genus and cusp count must be non-negative")
        if any(r < 2 for r in self.orders):
            raise ValueError("elliptic orders must be at least 2")


def fuchsian_h1(fd: FuchsianData, n: int) -> int:
    """dim H^1 of a Fuchsian lattice with coefficients in Sym^n.

    Valid for n > 0; when -1 lies in the group the caller must pass
    even n (the odd-weight spaces vanish).  A non-integral result
    means the signature data is not that of an actual lattice.
    """
    if n <= 0:
        raise ValueError("weight must be positive")
    area = 2 * fd.genus - 2 + fd.cusps + sum(1 - Fraction(1, r) for r in fd.orders)
    total = area * (n + 1) - sum(d_of(n, r) for r in fd.orders)
    if total.denominator != 1 or total < 0:
        raise ValueError(f"signature {fd} gives non-integral dimension {total}")
    return int(total)


# ---------------------------------------------------------------------------
# the base-change dimension formula


def lk_fields(K: QuadField) -> list[QuadField]:
    """Imaginary quadratic L != K such that LK/K is unramified.

    These are exactly the fields whose discriminant splits the
    discriminant of K into a product of two fundamental discriminants
    (the cofactor is then the discriminant of the real field inside LK).
    There are 2^(t-1) - 1 of them for t ramified primes.
    """
    if not K.is_imaginary:
        raise ValueError("lk_fields expects an imaginary quadratic field")
    D = K.discriminant
    out = []
    for m in range(3, abs(D)):
        if abs(D) % m == 0 and is_fundamental_discriminant(-m):
            if is_fundamental_discriminant(abs(D) // m):
                out.append(QuadField.from_discriminant(-m))
    return out


def _omega(K: QuadField, L: QuadField, a_norm: int) -> int:
    """Genus character of the splitting d_L * (D_K / d_L), evaluated on
    an ideal of the given norm.

    Multiplicative over primes; at a prime dividing d_L the symbol of
    the complementary factor takes over (the two factors are coprime,
    so at most one side vanishes).
    """
    d_l = L.discriminant
    d_r = K.discriminant // d_l
    val = 1
    for p in _prime_factors(a_norm):
        e = 0
        m = a_norm
        while m % p == 0:
            m //= p
            e += 1
        s = kronecker(d_l, p)
        if s == 0:
            s = kronecker(d_r, p)
        val *= s**e
    return val


def _c_constants(K: QuadField) -> tuple[Fraction, Fraction, Fraction]:
    # the three case-split constants; R is the ramified set
    ram = K.ramified
    t = len(ram)
    odd = [p for p in ram if p != 2]

    if all(p % 4 == 1 for p in odd):
        c2 = Fraction(2) ** (t - 4)
    else:
        c2 = Fraction(0)

    if all(p % 8 in (1, 3) for p in ram):
        c4 = Fraction(2) ** t
    elif 2 in ram and all(p % 8 in (1, 3) for p in odd):
        c4 = Fraction(2) ** (t - 1)
    else:
        c4 = Fraction(0)

    if all(pow(p, e, 3) == 1 for p, e in ram.items()):
        c3 = Fraction(2) ** (t - 1)
    elif 3 in ram and all(pow(p, e, 3) == 1 for p, e in ram.items() if p != 3):
        c3 = Fraction(2) ** (t - 2)
    else:
        c3 = Fraction(0)

    return c2, c3, c4


def _as_dim(total: Fraction, what: str) -> int:
    if total.denominator != 1 or total < 0:
        raise ArithmeticError(f"{what} evaluated to {total}, not a dimension")
    return int(total)


def bc_dim(K: QuadField, n: int) -> int:
    """Dimension of the lifted part of H^1(SL(2,O_K), E_n)."""
    if not K.is_imaginary:
        raise ValueError("bc_dim expects an imaginary quadratic field")
    if n < 0:
        raise ValueError("weight must be non-negative")
    ram = K.ramified
    t = len(ram)
    c2, c3, c4 = _c_constants(K)
    h = class_number(K.discriminant)
    eps2, mu2 = eps_mu(n + 2)

    lead = Fraction(math.prod(p**e + 1 for p, e in ram.items()), 24)
    total = (lead + c2 * (-1) ** (n + 1)) * (n + 1)
    total -= nu(K, n) * Fraction(h, 2)
    total -= Fraction(2) ** (t - 2)
    total += c4 * eps2 + c3 * mu2
    if n == 0:
        total += 1
    return _as_dim(total, f"bc_dim({K}, {n})")


def bc_dim_ideal(K: QuadField, a_norm: int, n: int) -> int:
    """Lifted dimension for SL(2, a), keyed by the norm of the ideal a.

    Classes supported on fields L cut out by a genus character that is
    -1 on the ideal norm disappear; each such L removes its share.
    """
    if a_norm <= 0:
        raise ValueError("ideal norm must be positive")
    total = Fraction(bc_dim(K, n))
    t = len(K.ramified)
    for L in lk_fields(K):
        if _omega(K, L, a_norm) == -1:
            tL = len(L.ramified)
            total -= nu(L, n) * Fraction(2) ** (t - tL - 1) * class_number(L.discriminant)
    return _as_dim(total, f"bc_dim_ideal({K}, {a_norm}, {n})")


def cusp_codim(K: QuadField, n: int) -> int:
    """Codimension of the cuspidal part inside H^1(SL(2,O_K), E_n)."""
    return nu(K, n) * class_number(K.discriminant)


# ---------------------------------------------------------------------------
# CM contributions


def _real_partner(K: QuadField, L: QuadField) -> int:
    # discriminant of the real quadratic subfield of LK
    return K.discriminant // L.discriminant


def cm_extra(K: QuadField) -> tuple[bool, tuple[int, ...]]:
    """Does K carry CM classes beyond the lifted ones?

    Returns the flag together with the discriminants of the real
    quadratic witnesses (narrow class number exceeding the genus
    count).
    """
    witnesses = []
    for L in lk_fields(K):
        Dp = _real_partner(K, L)
        if narrow_class_number(Dp) > genus_number(Dp):
            witnesses.append(Dp)
    return (bool(witnesses), tuple(sorted(witnesses)))


def cm_contribution(K: QuadField, a_norm: int, n: int) -> int:
    """Total dimension contributed by CM classes to H^1 of SL(2, a)."""
    if a_norm <= 0:
        raise ValueError("ideal norm must be positive")
    total = 0
    for L in lk_fields(K):
        if _omega(K, L, a_norm) == 1:
            Dp = _real_partner(K, L)
            total += nu(L, n) * narrow_class_number(Dp) * class_number(L.discriminant)
    return total
