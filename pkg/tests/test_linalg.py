from __future__ import annotations

import random
from fractions import Fraction

import pytest

from kleinh1.exact import Fp
from kleinh1.linalg import (
    charpoly,
    kernel_basis,
    mat_identity,
    mat_mul,
    poly_eval,
    poly_mul,
    rank,
    real_root_count,
    rref,
)

ONE = Fraction(1)


def _f5(v):
    return Fp(5, v)


def test_kernel_of_zero_matrix():
    basis = kernel_basis([[ONE * 0] * 3, [ONE * 0] * 3], ONE)
    assert len(basis) == 3


def test_kernel_of_identity_is_empty():
    assert kernel_basis(mat_identity(4, ONE), ONE) == []


def test_kernel_mod5_dependent_rows():
    basis = kernel_basis([[_f5(1), _f5(2)], [_f5(2), _f5(4)]], _f5(1))
    assert len(basis) == 1
    (v,) = basis
    # echelon normalization: free column carries the 1
    assert v[1] == _f5(1)
    assert v[0] + _f5(2) * v[1] == _f5(0)


def test_rank_examples():
    assert rank(mat_identity(5, ONE), ONE) == 5
    assert rank([[ONE * 0, ONE * 0]], ONE) == 0
    one2 = Fp(2, 1)
    assert rank([[one2, one2], [one2, one2]], one2) == 1


def _random_matrix(rng, rows, cols, one):
    return [[one * rng.randrange(-6, 7) for _ in range(cols)] for _ in range(rows)]


def test_kernel_vectors_annihilate():
    """Every kernel vector satisfies m v = 0; count + rank = cols."""
    rng = random.Random(7)
    for _ in range(12):
        rows, cols = rng.randrange(1, 6), rng.randrange(1, 6)
        m = _random_matrix(rng, rows, cols, ONE)
        basis = kernel_basis(m, ONE)
        assert len(basis) + rank(m, ONE) == cols
        for v in basis:
            for row in m:
                assert sum(a * b for a, b in zip(row, v)) == 0


def test_rref_is_idempotent():
    rng = random.Random(11)
    m = _random_matrix(rng, 4, 6, ONE)
    reduced, pivots = rref(m, ONE)
    again, pivots2 = rref(reduced, ONE)
    assert (reduced, pivots) == (again, pivots2)


def test_charpoly_companion_of_printed_hecke_factor():
    m = [[ONE * 0, ONE], [ONE * -40671, ONE * -700]]
    assert charpoly(m, ONE) == [ONE * 40671, ONE * 700, ONE]


def test_charpoly_second_companion():
    m = [[ONE * 0, ONE], [ONE * 14432, ONE * -50]]
    assert charpoly(m, ONE) == [ONE * -14432, ONE * 50, ONE]


def test_charpoly_identity():
    # (X - 1)^3
    assert charpoly(mat_identity(3, ONE), ONE) == [-ONE, ONE * 3, ONE * -3, ONE]


def test_charpoly_rejects_non_square():
    with pytest.raises(ValueError):
        charpoly([[ONE, ONE]], ONE)


def _random_invertible(rng, n, one):
    # unit upper times unit lower keeps the determinant at 1
    up = mat_identity(n, one)
    lo = mat_identity(n, one)
    for i in range(n):
        for j in range(i + 1, n):
            up[i][j] = one * rng.randrange(-3, 4)
            lo[j][i] = one * rng.randrange(-3, 4)
    return mat_mul(up, lo, one)


def _inverse(m, one):
    n = len(m)
    aug = [list(row) + list(ident) for row, ident in zip(m, mat_identity(n, one))]
    reduced, pivots = rref(aug, one)
    assert pivots == list(range(n))
    return [row[n:] for row in reduced]


def test_charpoly_similarity_invariance():
    rng = random.Random(13)
    for n in (2, 3, 4):
        m = _random_matrix(rng, n, n, ONE)
        p = _random_invertible(rng, n, ONE)
        pinv = _inverse(p, ONE)
        conj = mat_mul(p, mat_mul(m, pinv, ONE), ONE)
        assert charpoly(conj, ONE) == charpoly(m, ONE)


def test_cayley_hamilton():
    rng = random.Random(17)
    for n in (2, 3, 5, 8):
        m = _random_matrix(rng, n, n, ONE)
        coeffs = charpoly(m, ONE)
        acc = [[ONE * 0] * n for _ in range(n)]
        power = mat_identity(n, ONE)
        for c in coeffs:
            for i in range(n):
                for j in range(n):
                    acc[i][j] += c * power[i][j]
            power = mat_mul(power, m, ONE)
        assert all(entry == 0 for row in acc for entry in row)


def test_charpoly_over_prime_field():
    one = Fp(101, 1)
    m = [[Fp(101, 3), Fp(101, 1)], [Fp(101, 0), Fp(101, 7)]]
    # (X-3)(X-7) = X^2 - 10X + 21
    assert charpoly(m, one) == [Fp(101, 21), Fp(101, -10 % 101), one]


def test_real_root_count():
    assert real_root_count([1, 0, 1]) == 0
    assert real_root_count([-2, 0, 1]) == 2
    assert real_root_count([40671, 700, 1]) == 2
    # triple root counts once (distinct roots)
    assert real_root_count(poly_mul(poly_mul([-1, 1], [-1, 1]), [-1, 1])) == 1
    mixed = poly_mul([1, 0, 1], [-2, 0, 1])
    assert real_root_count(mixed) == 2


def test_poly_eval_horner():
    f = [Fraction(1), Fraction(-3), Fraction(2)]
    assert poly_eval(f, Fraction(2)) == 1 - 6 + 8
