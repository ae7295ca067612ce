from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from sympy.functions.combinatorial.numbers import jacobi_symbol

from kleinh1.formulas import (
    FuchsianData,
    QuadField,
    bc_dim,
    bc_dim_ideal,
    class_number,
    cm_contribution,
    cm_extra,
    cusp_codim,
    d_of,
    eps_mu,
    fuchsian_h1,
    genus_number,
    is_fundamental_discriminant,
    kronecker,
    lk_fields,
    narrow_class_number,
    nu,
)
from kleinh1.formulas import _omega

# ---------------------------------------------------------------------------
# oracles: independent routes to the same numbers


def _fundamental_discs(lo: int, hi: int):
    return [D for D in range(lo, hi + 1) if is_fundamental_discriminant(D)]


def _analytic_class_number(D: int) -> int:
    """Dirichlet's finite character sum for h(D), D < -4 fundamental."""
    w = 6 if D == -3 else 4 if D == -4 else 2
    s = sum(kronecker(D, a) * a for a in range(1, abs(D)))
    num = -w * s
    assert num % (2 * abs(D)) == 0, (D, s)
    return num // (2 * abs(D))


def _extgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _ideal_mul(i1, i2, D):
    """Product of primitive ideals [a, (w + sqrt(D))/2], returned primitive.

    Coordinates (u, v) stand for (u + v sqrt(D))/2; the product module is
    spanned by four such pairs and collapses to two by column reduction.
    """
    (a1, w1), (a2, w2) = i1, i2
    gens = [
        (2 * a1 * a2, 0),
        (a1 * w2, a1),
        (a2 * w1, a2),
        ((w1 * w2 + D) // 2, (w1 + w2) // 2),
    ]
    U, V = 0, 0
    for u, v in gens:
        g, x, y = _extgcd(V, v)
        U, V = x * U + y * u, g
    m = 0
    for u, v in gens:
        m = math.gcd(m, u - (v // V) * U)
    assert m % (2 * V) == 0 and U % V == 0
    a3 = m // (2 * V)
    assert a1 * a2 == V * V * a3  # content accounts for the full norm
    return (a3, (U // V) % (2 * a3))


def _reduce_pair(a, w, D):
    # canonical reduced form in the class of the ideal [a, (w + sqrt(D))/2]
    b = w
    while True:
        b = (b + a) % (2 * a) - a
        c = (b * b - D) // (4 * a)
        if c < a:
            a, b = c, -b
            continue
        if b < 0 and (a == c or b == -a):
            b = -b
        return (a, b)


def _composition_class_number(D: int) -> int:
    """Order of the group generated by the small split/ramified primes.

    Every ideal class contains an ideal of norm below the Minkowski
    bound (2/pi) sqrt(|D|), and such an ideal factors into primes of
    norm below the bound, so the closure is the whole class group.
    """
    gens = []
    p = 2
    while 9 * p * p <= 4 * abs(D):
        if kronecker(D, p) != -1:
            w = next(
                w for w in range(abs(D) % 2, 2 * p + 1, 2)
                if (w * w - D) % (4 * p) == 0
            )
            gens.append((p, w))
        p += 1
        while any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
            p += 1
    unit = _reduce_pair(1, D % 2, D)
    seen = {unit}
    frontier = [unit]
    while frontier:
        nxt = []
        for cls in frontier:
            for g in gens:
                r = _reduce_pair(*_ideal_mul(cls, g, D), D)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return len(seen)


def _cusp_form_dim(k: int) -> int:
    # dim of weight-k cusp forms for the modular group, k even >= 4
    return k // 12 - (1 if k % 12 == 2 else 0)


# ---------------------------------------------------------------------------
# oracle cross-checks


def test_kronecker_against_jacobi():
    rng = random.Random(202)
    for _ in range(300):
        a = rng.randrange(-60, 61)
        n = rng.randrange(1, 120, 2)
        assert kronecker(a, n) == jacobi_symbol(a, n), (a, n)


def test_kronecker_euler_criterion():
    for p in (3, 5, 7, 11, 13, 97):
        for a in range(1, p):
            want = pow(a, (p - 1) // 2, p)
            assert kronecker(a, p) % p == want, (a, p)


def test_kronecker_multiplicative_and_two():
    rng = random.Random(203)
    assert [kronecker(a, 2) for a in range(8)] == [0, 1, 0, -1, 0, -1, 0, 1]
    for _ in range(200):
        a = rng.randrange(-50, 51)
        m = rng.randrange(1, 40)
        n = rng.randrange(1, 40)
        assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_class_number_against_analytic_oracle():
    for D in _fundamental_discs(-200, -3):
        assert class_number(D) == _analytic_class_number(D), D


def test_class_number_against_composition_oracle():
    for D in _fundamental_discs(-200, -3):
        assert class_number(D) == _composition_class_number(D), D


def test_fuchsian_against_cusp_form_dimensions():
    modular = FuchsianData(genus=0, cusps=1, orders=(2, 3))
    for n in range(2, 41, 2):
        assert fuchsian_h1(modular, n) == 2 * _cusp_form_dim(n + 2) + 1, n


# ---------------------------------------------------------------------------
# discriminants, fields, class numbers


def test_fundamental_discriminant_table():
    good = {-3, -4, -7, -8, -11, -15, -19, -20, -84, 5, 8, 12, 13, 136, 229}
    bad = {0, 1, -1, -2, -9, -12, -16, -18, -25, 2, 3, 4, 9, 51, 63}
    for D in good:
        assert is_fundamental_discriminant(D), D
    for D in bad:
        assert not is_fundamental_discriminant(D), D


def test_quadfield_basics():
    assert QuadField(-1).discriminant == -4
    assert QuadField(-11).discriminant == -11
    assert QuadField.from_discriminant(-24).d == -6
    assert QuadField(-6).ramified == {2: 3, 3: 1}
    assert QuadField(-7).ramified == {7: 1}
    assert QuadField(-5).is_imaginary and not QuadField(5).is_imaginary
    with pytest.raises(ValueError):
        QuadField(12)
    with pytest.raises(ValueError):
        QuadField.from_discriminant(-7 * 4)


def test_class_number_known_values():
    known = {-3: 1, -4: 1, -8: 1, -11: 1, -20: 2, -23: 3, -24: 2,
             -40: 2, -47: 5, -56: 4, -84: 4, -163: 1}
    for D, h in known.items():
        assert class_number(D) == h, D
    with pytest.raises(ValueError):
        class_number(-12)


def test_narrow_class_number_known_values():
    known = {5: 1, 8: 1, 12: 2, 13: 1, 17: 1, 21: 2, 24: 2, 28: 2,
             33: 2, 40: 2, 60: 4, 65: 2, 85: 2,
             136: 4, 145: 4, 205: 4, 221: 4, 229: 3}
    for D, h in known.items():
        assert narrow_class_number(D) == h, D


def test_genus_number_divides_narrow():
    for D in _fundamental_discs(5, 300):
        g, h = genus_number(D), narrow_class_number(D)
        assert h % g == 0, D
        assert g == 2 ** (len(QuadField.from_discriminant(D).ramified) - 1)


def test_smallest_narrow_exceeding_discriminants():
    flagged = [D for D in _fundamental_discs(2, 229)
               if narrow_class_number(D) > genus_number(D)]
    assert flagged == [136, 145, 205, 221, 229]


# ---------------------------------------------------------------------------
# bookkeeping terms


def test_eps_mu_values():
    assert eps_mu(0) == (Fraction(1, 4), Fraction(1, 3))
    assert eps_mu(1) == (0, 0)
    assert eps_mu(2) == (Fraction(-1, 4), Fraction(-1, 3))
    assert eps_mu(3) == (0, Fraction(1, 3))
    assert eps_mu(14) == (Fraction(-1, 4), Fraction(-1, 3))


def test_nu_indicators():
    gauss, eisen, other = QuadField(-1), QuadField(-3), QuadField(-5)
    assert [nu(gauss, n) for n in range(6)] == [0, 1, 0, 1, 0, 1]
    assert [nu(eisen, n) for n in range(6)] == [0, 0, 1, 0, 0, 1]
    assert all(nu(other, n) == 1 for n in range(6))
    with pytest.raises(ValueError):
        nu(QuadField(5), 1)


def test_d_of_values_and_periodicity():
    assert d_of(10, 2) == Fraction(-1, 2)
    assert d_of(3, 2) == 0
    for r in (2, 3, 5, 7):
        assert d_of(0, r) == 1 - Fraction(1, r)
        for n in range(20):
            assert d_of(n, r) == d_of(n + 2 * r, r)
    with pytest.raises(ValueError):
        d_of(4, 1)


# ---------------------------------------------------------------------------
# Fuchsian lattices


def test_fuchsian_known_values():
    modular = FuchsianData(genus=0, cusps=1, orders=(2, 3))
    assert fuchsian_h1(modular, 10) == 3
    assert fuchsian_h1(modular, 2) == 1
    assert fuchsian_h1(FuchsianData(genus=2, cusps=0), 2) == 6
    with pytest.raises(ValueError):
        fuchsian_h1(modular, 0)
    with pytest.raises(ValueError):
        FuchsianData(genus=0, cusps=1, orders=(1,))


def test_fuchsian_integrality_random_signatures():
    rng = random.Random(404)
    produced = 0
    while produced < 60:
        fd = FuchsianData(
            genus=rng.randrange(0, 3),
            cusps=rng.randrange(0, 4),
            orders=tuple(rng.choice((2, 3, 4, 5, 6, 7))
                         for _ in range(rng.randrange(0, 4))),
        )
        area = 2 * fd.genus - 2 + fd.cusps + sum(1 - Fraction(1, r)
                                                 for r in fd.orders)
        if area <= 0:
            continue
        produced += 1
        for n in range(2, 20, 2):
            assert fuchsian_h1(fd, n) >= 0


# ---------------------------------------------------------------------------
# the unramified-companion fields and the genus character


def test_lk_fields_known_values():
    cases = {
        -1: [], -2: [], -3: [], -7: [], -11: [], -19: [],
        -5: [-4], -6: [-3], -10: [-8], -14: [-7],
        -102: [-3, -24, -51],
    }
    for d, want in cases.items():
        assert [L.discriminant for L in lk_fields(QuadField(d))] == want, d


def test_lk_fields_count_and_big_example():
    for D in _fundamental_discs(-500, -3):
        K = QuadField.from_discriminant(D)
        t = len(K.ramified)
        assert len(lk_fields(K)) == 2 ** (t - 1) - 1, D
    big = {L.discriminant for L in lk_fields(QuadField(-210))}
    assert big == {-3, -7, -8, -15, -35, -40, -168}


def test_omega_character_values():
    K5, K10, K102 = QuadField(-5), QuadField(-10), QuadField(-102)
    gauss = QuadField(-1)
    eight = QuadField.from_discriminant(-8)
    # norm 2 ramifies in K5, so the complementary side decides the sign
    assert _omega(K5, gauss, 2) == -1
    assert _omega(K5, gauss, 3) == -1
    assert _omega(K5, gauss, 1) == 1
    assert _omega(K10, eight, 2) == -1
    # multiplicative in the norm
    for N1 in (2, 3, 5, 7):
        for N2 in (2, 3, 5, 7):
            assert (_omega(K5, gauss, N1 * N2)
                    == _omega(K5, gauss, N1) * _omega(K5, gauss, N2))
    # the three companions of Q(sqrt(-102)) at norm 2 and 3
    l3, l24, l51 = lk_fields(K102)
    assert (_omega(K102, l3, 2), _omega(K102, l3, 3)) == (-1, 1)
    assert (_omega(K102, l24, 2), _omega(K102, l24, 3)) == (1, -1)
    assert (_omega(K102, l51, 2), _omega(K102, l51, 3)) == (-1, -1)


# ---------------------------------------------------------------------------
# the lifted-dimension formula


# closed forms for the three small class-number-one fields, valid n >= 1
_BC_SMALL = {
    -2: lambda n: (n - 1) // 2 if n % 2 else
        ((n - 2) // 4 if n % 4 == 2 else (n - 4) // 4),
    -7: lambda n: (n - 3) // 3 if n % 3 == 0 else
        ((n - 1) // 3 if n % 3 == 1 else (n - 2) // 3),
    -11: lambda n: (n - 1) // 2 if n % 2 else
        (n // 2 if n % 4 == 2 else (n - 2) // 2),
}

# dim H^1(SL(2,O_d), E_n) for 0 <= n <= 15, the five euclidean fields
_TABLE_SL2O = {
    -1: [0, 1, 0, 1, 0, 2, 0, 3, 0, 3, 1, 4, 0, 5, 1, 5],
    -2: [1, 1, 1, 2, 1, 3, 2, 4, 2, 5, 3, 6, 3, 7, 4, 8],
    -3: [0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 2, 2, 1, 2, 3, 2],
    -7: [1, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 6, 5, 5, 5],
    -11: [1, 1, 2, 2, 2, 3, 4, 4, 4, 5, 8, 6, 6, 7, 8, 8],
}

# the two cells where the cuspidal part exceeds the lifted classes
_EXTRA_CELLS = {(-7, 12), (-11, 10)}


def test_bc_dim_known_values():
    assert bc_dim(QuadField(-2), 5) == 2
    assert bc_dim(QuadField(-7), 9) == 2
    assert bc_dim(QuadField(-11), 10) == 5
    assert bc_dim(QuadField(-1), 1) == 0
    assert bc_dim(QuadField(-1), 0) == 0
    with pytest.raises(ValueError):
        bc_dim(QuadField(5), 1)
    with pytest.raises(ValueError):
        bc_dim(QuadField(-1), -1)


def test_bc_dim_closed_forms():
    for d, form in _BC_SMALL.items():
        K = QuadField(d)
        for n in range(1, 61):
            assert bc_dim(K, n) == form(n), (d, n)


def test_bc_plus_codim_matches_dimension_table():
    for d, row in _TABLE_SL2O.items():
        K = QuadField(d)
        for n, total in enumerate(row):
            expected = bc_dim(K, n) + cusp_codim(K, n)
            if (d, n) in _EXTRA_CELLS:
                assert total - expected == 2, (d, n)
            else:
                assert total == expected, (d, n)


def test_bc_dim_integrality_and_periodicity():
    fields = [QuadField(d) for d in
              (-1, -2, -3, -5, -6, -7, -10, -11, -14, -19)]
    for K in fields:
        dims = [bc_dim(K, n) for n in range(201)]
        assert all(v >= 0 for v in dims)
        # linear on each residue class mod 12: second differences vanish
        for r in range(1, 13):
            cls = dims[r::12]
            steps = {b - a for a, b in zip(cls, cls[1:])}
            assert len(steps) == 1, (K.d, r)


def test_bc_dim_ideal_values():
    K5, K6, K10, K14 = (QuadField(d) for d in (-5, -6, -10, -14))
    assert [bc_dim_ideal(K5, 2, n) for n in range(4)] == [0, 0, 1, 3]
    assert [bc_dim_ideal(K6, 2, n) for n in range(4)] == [0, 1, 2, 4]
    assert [bc_dim_ideal(K10, 2, n) for n in range(4)] == [0, 2, 3, 7]
    assert [bc_dim_ideal(K14, 3, n) for n in range(7)] == [0, 2, 5, 8, 11, 14, 17]
    # norm 1 is the full ring
    for K in (K5, K6, K10, K14):
        for n in range(8):
            assert bc_dim_ideal(K, 1, n) == bc_dim(K, n)
    with pytest.raises(ValueError):
        bc_dim_ideal(K5, 0, 1)


def test_cusp_codim_values():
    assert cusp_codim(QuadField(-1), 1) == 1
    assert cusp_codim(QuadField(-1), 2) == 0
    assert cusp_codim(QuadField(-5), 3) == 2
    assert cusp_codim(QuadField(-14), 0) == 4
    assert [cusp_codim(QuadField(-3), n) for n in range(6)] == [0, 0, 1, 0, 0, 1]


# ---------------------------------------------------------------------------
# CM contributions


def test_cm_extra_small_fields_have_none():
    for d in (-1, -2, -3, -5, -6, -7, -10, -11, -14, -19):
        flag, witnesses = cm_extra(QuadField(d))
        assert not flag and witnesses == (), d


def test_cm_extra_witnesses():
    cases = {-102: (136,), -435: (145,), -205: (205,),
             -221: (221,), -229: (229,)}
    for d, want in cases.items():
        flag, witnesses = cm_extra(QuadField(d))
        assert flag and witnesses == want, d


def test_cm_contribution_values():
    K5, K102 = QuadField(-5), QuadField(-102)
    # the single companion of Q(sqrt(-5)) is cut off at norm 2
    assert all(cm_contribution(K5, 2, n) == 0 for n in range(7))
    assert [cm_contribution(K5, 1, n) for n in range(4)] == [0, 1, 0, 1]
    # witness field: h+ = 4 enters through the companion with partner 136
    assert [cm_contribution(K102, 1, n) for n in range(5)] == [4, 4, 8, 4, 4]
    assert [cm_contribution(K102, N, 2) for N in (2, 3, 5)] == [2, 4, 4]
    with pytest.raises(ValueError):
        cm_contribution(K5, -1, 1)
