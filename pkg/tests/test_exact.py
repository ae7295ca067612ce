from __future__ import annotations

import random
from fractions import Fraction

import pytest

from kleinh1.exact import (
    Fp,
    ReductionError,
    apply_reduction,
    is_prime,
    poly_roots_modp,
    reduction_maps,
    ring_define,
)


def _gaussian():
    return ring_define([[1, 0, 1]], [[0, -1]])


def _o7():
    # x = (1 + sqrt(-7))/2 satisfies x^2 - x + 2, conjugate is 1 - x.
    return ring_define([[2, -1, 1]], [[1, -1]])


def _two_level():
    # Q(sqrt(3), i) with conjugation fixing sqrt(3) and negating i.
    return ring_define([[-3, 0, 1], [1, 0, 1]], [[[0, 1]], [0, -1]])


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1)
    assert not is_prime(561)  # Carmichael
    assert is_prime(2**31 - 1)


def test_poly_roots_modp():
    assert sorted(poly_roots_modp([1, 0, 1], 5)) == [2, 3]
    assert poly_roots_modp([1, 0, 1], 3) == []
    assert poly_roots_modp([1, 0, 1], 2) == [1]


def test_fp_field_ops():
    a = Fp(7, 3)
    b = Fp(7, 5)
    assert (a + b).v == 1
    assert (a - b).v == 5
    assert (a * b).v == 1
    assert (a / b).v == (3 * pow(5, -1, 7)) % 7
    assert bool(Fp(7, 0)) is False


def test_ring_define_rejects_non_monic():
    with pytest.raises(ValueError):
        ring_define([[1, 0, 2]], [[0, -1]])


def test_ring_define_rejects_broken_involution():
    # x -> x + 1 does not square to the identity.
    with pytest.raises(ValueError):
        ring_define([[1, 0, 1]], [[1, 1]])
    # x -> x is not a root of x^2 + 1 under itself... it is; but x -> 1
    # fails the defining polynomial check.
    with pytest.raises(ValueError):
        ring_define([[1, 0, 1]], [[1]])


def test_ring_define_rejects_zero_denominator():
    with pytest.raises(ValueError):
        ring_define([[1, 0, 1]], [[0, -1]], denominators=([0],))


def test_gaussian_split_prime():
    ring = _gaussian()
    maps = reduction_maps(ring, 5)
    assert len(maps) == 2
    x = ring.gen(0)
    values = sorted(r.apply(x) for r in maps)
    assert values == [2, 3]
    for r in maps:
        assert not r.is_self_conjugate()
        assert r.conjugate() in maps
        assert r.conjugate() != r


def test_gaussian_inert_prime():
    assert reduction_maps(_gaussian(), 3) == []


def test_gaussian_ramified_prime():
    maps = reduction_maps(_gaussian(), 2)
    assert len(maps) == 1
    assert maps[0].is_self_conjugate()
    assert maps[0].apply(_gaussian().gen(0)) == 1


def test_apply_reduction_substitutes():
    ring = _gaussian()
    x = ring.gen(0)
    r = next(m for m in reduction_maps(ring, 5) if m.apply(x) == 2)
    assert apply_reduction(r, ring.from_rational(1) + x) == 3
    assert apply_reduction(r, x * x) == 4
    assert apply_reduction(r, x * x) == (r.apply(x) ** 2) % 5
    # conjugating first lands on the other root: conj(1+x) = 1-x -> 4.
    assert apply_reduction(r, (ring.from_rational(1) + x).conj()) == 4


def test_reduce_then_conjugate_commutes():
    ring = _o7()
    x = ring.gen(0)
    e = x * x - 3 * x + ring.from_rational(Fraction(1, 2))
    for p in (11, 23, 29, 37):
        for r in reduction_maps(ring, p):
            assert r.apply(e.conj()) == r.conjugate().apply(e)
            assert r.apply_conj(e) == r.conjugate().apply(e)


def _random_element(ring, rng, span=9):
    e = ring.from_rational(rng.randrange(-span, span))
    x, y = ring.gen(0), ring.gen(1)
    for _ in range(4):
        e = e + rng.randrange(-span, span) * x**rng.randrange(3) * y**rng.randrange(2)
    return e


def test_reduction_is_ring_homomorphism():
    """r(a+b) = r(a)+r(b), r(ab) = r(a)r(b), r(1) = 1 on random elements."""
    ring = _two_level()
    rng = random.Random(20260817)
    for p in (13, 37, 61):  # p = 1 mod 12: both 3 and -1 are squares
        maps = reduction_maps(ring, p)
        assert maps, f"expected admissible maps for p={p}"
        for r in maps:
            assert r.apply(ring.from_rational(1)) == 1
            for _ in range(8):
                a = _random_element(ring, rng)
                b = _random_element(ring, rng)
                assert r.apply(a + b) == (r.apply(a) + r.apply(b)) % p
                assert r.apply(a * b) == (r.apply(a) * r.apply(b)) % p
                assert r.apply(a.conj()) == r.conjugate().apply(a)


def test_involution_squares_to_identity():
    for ring in (_gaussian(), _o7(), _two_level()):
        for i in range(ring.nlevels):
            g = ring.gen(i)
            assert g.conj().conj() == g


def test_declared_denominator_filters_roots():
    # x - 2 vanishes under the root x -> 2 mod 5.  The conjugate of the
    # surviving root 3 is exactly that bad root, and a map only counts
    # when its conjugate assignment is valid too, so p=5 drops the pair.
    ring = ring_define([[1, 0, 1]], [[0, -1]], denominators=([-2, 1],))
    assert reduction_maps(ring, 5) == []
    # p=13 (roots 5, 8) keeps both maps: neither 3 nor 6 vanishes.
    assert len(reduction_maps(ring, 13)) == 2


def test_exact_division_in_tower():
    ring = _o7()
    x = ring.gen(0)
    e = (x - 3) / (x + 2)
    assert e * (x + 2) == x - 3
    with pytest.raises(ZeroDivisionError):
        _ = x / (x - x)


def test_fraction_coefficients_survive_roundtrip():
    ring = _o7()
    e = ring.parse([Fraction(1, 2), Fraction(-2, 3)])
    assert e == ring.from_rational(Fraction(1, 2)) + Fraction(-2, 3) * ring.gen(0)
    # reduction clears the denominators through modular inverses
    r = reduction_maps(ring, 11)[0]
    half = pow(2, -1, 11)
    assert r.apply(ring.from_rational(Fraction(1, 2))) == half


def test_subst_matches_parse():
    ring = _two_level()
    x, y = ring.gen(0), ring.gen(1)
    e = ring.parse([[1, 2], [3, 4]])
    assert e == (1 + 2 * x) + (3 + 4 * x) * y
