"""Built-in presentations of the supported matrix groups.

Families:

* ``bianchi-sl2O``: PSL(2, O_d) for the ten supported discriminants,
  over the one-level ring Q[w]/(minpoly of w).
* ``bianchi-sl2a``: the ideal subgroups available for d in
  {-5, -6, -10, -14}; entries may have small rational denominators.
* ``helling``: the two-parabolic-generator groups attached to a root z
  of the trace polynomial f_m; one presentation per irreducible factor
  of f_m, with the canonical factor singled out by the analytic root
  condition.
* ``klimenko-333`` / ``klimenko-332``: the one-cusped and cocompact
  two-generator families, parametrized by an even k >= 8, over the
  cyclotomic tower extended by two square roots.
* ``tetrahedral``: the cocompact group with relators a^3, b^2, c^5,
  (ac^-1)^2, (bc^-1)^3, (ab)^4 over Q(t)[c2], t a primitive 10th root
  of unity.

Rings that need a numeric step (locating the conjugate of a tower
generator) identify the candidate with PSLQ and then hand it to
ring_define, which re-verifies every involution axiom exactly; a wrong
identification fails the build instead of corrupting results.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import NamedTuple

import mpmath as mp
import sympy

from .exact import ring_define
from .words import Presentation, cat, evaluate_word, pw, word

__all__ = [
    "CatalogKey",
    "catalog_get",
    "helling_factors",
    "helling_polynomial",
    "CATALOG_FAMILIES",
]

CATALOG_FAMILIES = (
    "bianchi-sl2O",
    "bianchi-sl2a",
    "helling",
    "klimenko-333",
    "klimenko-332",
    "tetrahedral",
)

_ALIASES = {"bianchi": "bianchi-sl2O", "bianchi-a": "bianchi-sl2a"}


class CatalogKey(NamedTuple):
    family: str
    parameter: int | None = None


# ---------------------------------------------------------------------------
# Bianchi groups

_BIANCHI_FULL_DS = (-1, -2, -3, -5, -6, -7, -10, -11, -14, -19)
_BIANCHI_IDEAL_DS = (-5, -6, -10, -14)

# extra generators beyond A = [[1,1],[0,1]], B = [[0,1],[-1,0]],
# U = [[1,w],[0,1]]; entries are parse expressions ([a, b] = a + b*w)
_BIANCHI_EXTRA = {
    -19: {"C": [[[1, -1], 2], [2, [0, 1]]]},
    -5: {
        "C": [[[-4, -1], [0, -2]], [[0, 2], [-4, 1]]],
        "D": [[[0, -1], 2], [2, [0, 1]]],
    },
    -6: {
        "C": [[5, [0, -2]], [[0, 2], 5]],
        "D": [[[-1, -1], [2, -1]], [2, [1, 1]]],
    },
    -10: {
        "C": [[[0, -1], 3], [3, [0, 1]]],
        "D": [[[-1, 1], -4], [3, [1, 1]]],
        "E": [[[0, 1], 3], [3, [0, -1]]],
        "F": [[11, [0, 5]], [[0, 2], -9]],
    },
    -14: {
        "C": [[[0, 1], -5], [3, [0, 1]]],
        "D": [[4, [1, 1]], [[1, -1], 4]],
        "E": [[[-5, 4], -23], [[4, -1], [7, 1]]],
        "F": [[13, [0, 6]], [[0, -2], 13]],
    },
}

_BIANCHI_RELATORS = {
    -1: ["B B", "(A B)3", "(B U B U-)3", "A U A- U-", "(B U U B U-)2",
         "(A U B A U- B)2"],
    -2: ["B B", "(A B)3", "A U A- U-", "(B U- B U)2"],
    -3: ["B B", "(A B)3", "A U A- U-", "(U B A A U- U- B)2",
         "(U B A U- B)3", "A U B A U- B A- U B A- U B A U- B"],
    -7: ["B B", "(B A)3", "A U A- U-", "(B A U- B U)2"],
    -11: ["B B", "(B A)3", "A U A- U-", "(B A U- B U)3"],
    -19: ["B B", "(A B)3", "A U A- U-", "C C C", "(C A-)3", "(B C)2",
          "(B A- U C U-)2"],
    -5: ["B B", "(A B)3", "A U A- U-", "D D", "(B D)2", "(B U D U-)2",
         "A C- A- B C B", "A C- A- U D U- C D"],
    -6: ["B B", "(A B)3", "A U A- U-", "D D", "B C B C-", "(B A U D U-)3",
         "A- C A U D U- C- D-", "(B A D)3"],
    -10: ["B B", "(A B)3", "A U A- U-", "C C", "E E", "(B C)2", "(B E)2",
          "C- A D- B E B A D", "U- E- U F C F-",
          "D- E- B- D U- D B C D- U", "D- B- A D C- U- E D A- B D- U",
          "U- D A- B- D- U F D- B A D F-"],
    -14: ["B B", "(A B)3", "(A- C- B D B A D- C)2", "A U A- U-",
          "(A- C D- A B D B C-)2", "D- C E- A-3 D C- A3 E",
          "C B- C- F C- B C F-"],
}

# relators whose source text wraps across a line with a trailing hyphen;
# candidate readings are tried in order and the first that evaluates to
# +-I is kept
_BIANCHI_AMBIGUOUS = {
    -14: [
        ["C- D A- B- D- B- C A E- A-2 C B D- B A- D C- A3 E",
         "C- D A- B- D- B- C A- E- A-2 C B D- B A- D C- A3 E"],
        ["A C B- D- B- A- D C- A F A- C- B D B A D- C A- F-",
         "A C B- D- B- A- D C- A- F A- C- B D B A D- C A- F-"],
    ],
}

_IDEAL_DATA = {
    -5: {
        "names": "A V C D",
        "extra": {
            "V": [[1, [Fraction(1, 2), Fraction(1, 2)]], [0, 1]],
            "C": [[1, 0], [2, 1]],
            "D": [[1, 0], [[1, -1], 1]],
        },
        "relators": ["A V A- V-", "C D C- D-", "(A C-)2", "(D V-)3",
                     "(C D- V A-)3"],
        "denominators": (2,),
    },
    -6: {
        "names": "A V C D E",
        "extra": {
            "V": [[1, [0, Fraction(1, 2)]], [0, 1]],
            "C": [[1, 0], [2, 1]],
            "D": [[1, 0], [[0, -1], 1]],
            "E": [[-2, [-1, Fraction(-1, 2)]], [[2, -1], 2]],
        },
        "relators": ["E E", "(C A-)2", "(D V-)3", "(D E V-)2", "(C E A-)2",
                     "C D C- D-", "A V A- V-", "(C D E V- A-)2"],
        "denominators": (2,),
    },
    -10: {
        "names": "A V C D E F",
        "extra": {
            "V": [[1, [0, Fraction(1, 2)]], [0, 1]],
            "C": [[1, 0], [2, 1]],
            "D": [[1, 0], [[0, -1], 1]],
            "E": [[-2, [0, Fraction(-1, 2)]], [[0, -1], 2]],
            "F": [[-3, [-1, Fraction(-1, 2)]], [[2, -1], 2]],
        },
        "relators": ["E E", "(C A-)2", "(F E)2", "(D E V-)2", "(D F- V-)3",
                     "C D C- D-", "A V A- V-", "(F C- E A)2", "F F F",
                     "(C F- A-)3", "(C D F- A- V-)3"],
        "denominators": (2,),
    },
    -14: {
        "names": "A U C D E F G",
        "extra": {
            "U": [[1, [Fraction(1, 3), Fraction(-1, 3)]], [0, 1]],
            "C": [[1, 0], [3, 1]],
            "D": [[1, 0], [[1, 1], 1]],
            "E": [[[-3, -1], -4], [6, [3, -1]]],
            "F": [[[-3, 1], -3], [[2, 2], [-3, 1]]],
            "G": [[-2, [Fraction(-1, 3), Fraction(1, 3)]], [[1, 1], 2]],
        },
        "relators": ["G G", "C D C- D-", "A U A- U-", "(C A-)3", "(D G U-)2",
                     "F- A E- A- U F E U-", "(C G E- A- U G U- A E A-)3",
                     "(A E U- D G E- A- U G D-)2"],
        "ambiguous": [
            ["D C- G U- A E G D- U E- F- C G E- A- U G U- A E A- F",
             "D C- G U- A E G D- U E- F- C- G E- A- U G U- A E A- F"],
        ],
        "denominators": (3,),
    },
}


def _parse_relator_spec(spec: str, names) -> tuple:
    """Relator grammar: plain word, or "(word)k" for a k-th power."""
    if spec.startswith("("):
        body, _, exp = spec.rpartition(")")
        return pw(word(body[1:], names), int(exp))
    return word(spec, names)


def _bianchi_ring(d: int):
    if (d - 1) % 4 == 0:
        return ring_define([[(1 - d) // 4, -1, 1]], [[1, -1]])
    return ring_define([[-d, 0, 1]], [[0, -1]])


def _resolve_ambiguous(pres_args, candidates_per_relator):
    """Append, per ambiguous relator, the first candidate reading whose
    word evaluates to +-identity; error out if none does."""
    names, relators, ring, images = pres_args
    probe = Presentation(names, [], ring, images, projective=True)
    one, zero = ring.one, ring.zero
    ident = ((one, zero), (zero, one))
    neg = ((-one, zero), (zero, -one))
    from .words import evaluate_word

    for candidates in candidates_per_relator:
        for text in candidates:
            w = word(text, names)
            if evaluate_word(probe, w) in (ident, neg):
                relators.append(w)
                break
        else:
            raise ValueError(f"no reading of {candidates[0]!r} is a relation")


def _build_bianchi_full(d: int) -> Presentation:
    ring = _bianchi_ring(d)
    w = ring.gen(0)
    one, zero = ring.one, ring.zero
    names = ["A", "B", "U"] + sorted(_BIANCHI_EXTRA.get(d, {}))
    images = [
        ((one, one), (zero, one)),
        ((zero, one), (-one, zero)),
        ((one, w), (zero, one)),
    ]
    for name in names[3:]:
        m = _BIANCHI_EXTRA[d][name]
        images.append(tuple(tuple(ring.parse(e) for e in row) for row in m))
    relators = [_parse_relator_spec(s, names) for s in _BIANCHI_RELATORS[d]]
    if d in _BIANCHI_AMBIGUOUS:
        _resolve_ambiguous((names, relators, ring, images), _BIANCHI_AMBIGUOUS[d])
    return Presentation(
        names, relators, ring, images, projective=True, tag=f"bianchi-sl2O:{d}"
    ).validate()


def _build_bianchi_ideal(d: int) -> Presentation:
    data = _IDEAL_DATA[d]
    ring = ring_define(
        *(
            ([[(1 - d) // 4, -1, 1]], [[1, -1]])
            if (d - 1) % 4 == 0
            else ([[-d, 0, 1]], [[0, -1]])
        ),
        denominators=data["denominators"],
    )
    one, zero = ring.one, ring.zero
    names = data["names"].split()
    images = []
    for name in names:
        if name == "A":
            images.append(((one, one), (zero, one)))
        else:
            m = data["extra"][name]
            images.append(tuple(tuple(ring.parse(e) for e in row) for row in m))
    relators = [_parse_relator_spec(s, names) for s in data["relators"]]
    if "ambiguous" in data:
        _resolve_ambiguous((names, relators, ring, images), data["ambiguous"])
    return Presentation(
        names, relators, ring, images, projective=True, tag=f"bianchi-sl2a:{d}"
    ).validate()


# ---------------------------------------------------------------------------
# Helling groups


def _poly_mul_z(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _ptilde(m: int) -> list[int]:
    """2T_k(x/2) for m = 2k, U_k(x/2) - U_{k-1}(x/2) for m = 2k+1,
    via the shared recurrence q_{k+1} = x q_k - q_{k-1} (ascending ints)."""

    def chebyshev_like(first, second, k):
        a, b = first, second
        for _ in range(k):
            a, b = b, [x - y for x, y in zip([0] + b, a + [0, 0])][: len(b) + 1]
        return a

    k, rem = divmod(m, 2)
    if rem == 0:
        return chebyshev_like([2], [0, 1], k)
    if k == 0:
        return [1]
    uk = chebyshev_like([1], [0, 1], k)
    ukm1 = chebyshev_like([1], [0, 1], k - 1)
    return [a - b for a, b in zip(uk, ukm1 + [0] * (len(uk) - len(ukm1)))]


def helling_polynomial(m: int) -> list[int]:
    """Trace polynomial f_m, ascending integer coefficients."""
    if m < 1:
        raise ValueError("m must be >= 1")
    p2 = _ptilde(m + 2)
    sq = _poly_mul_z(p2, p2)
    if m % 2 == 0:
        lower = [4, 0, -1]
    else:
        lower = [2, -1]
    out = list(sq)
    for i, c in enumerate(lower):
        out[i] += c
    return out


def _poly_eval_ring(coeffs, x, ring):
    acc = ring.zero
    for c in reversed(coeffs):
        acc = acc * x + ring.from_rational(c)
    return acc


def _rational_factors(coeffs) -> list[list[Fraction]]:
    """Monic irreducible factors over Q, ascending, deterministic order."""
    x = sympy.Symbol("x")
    poly = sum(sympy.Rational(c) * x**i for i, c in enumerate(coeffs))
    _, factors = sympy.factor_list(poly)
    out = []
    for f, mult in factors:
        p = sympy.Poly(f, x)
        lead = p.all_coeffs()[0]
        asc = [Fraction(int(sympy.Rational(c / lead).p), int(sympy.Rational(c / lead).q))
               for c in reversed(p.all_coeffs())]
        out.extend([asc] * mult)
    out.sort(key=lambda g: (len(g), g))
    return out


def _roots_of(coeffs, dps=60):
    with mp.workdps(dps):
        return mp.polyroots([mp.mpf(str(c)) for c in reversed(coeffs)],
                            maxsteps=200, extraprec=200)


def _helling_in_region(m: int, r) -> bool:
    if m <= 2:
        return True
    if m % 2:
        return mp.fabs(r - 2) < 4 * mp.sin(mp.pi / (2 * m)) ** 2
    return r.real > 0 and mp.fabs(r * r - 4) < 4 * mp.sin(mp.pi / m) ** 2


def _conjugate_level(g: list[Fraction], z0, dps):
    """Minimal polynomial of conj(z0) over Q(z0), for z0 a root of g.

    g(y) is factored exactly over the abstract field Q[x]/(g); numerics
    enter only to select the factor vanishing at (x, y) = (z0, conj(z0)).
    Returns ascending coefficients, each a rational vector in ascending
    powers of the field generator.  A linear result means the conjugate
    already lies in Q(z0).
    """
    xs, ys = sympy.symbols("x y")
    gx = sympy.Poly([sympy.Rational(c) for c in reversed(g)], xs)
    field = sympy.QQ.algebraic_field(sympy.rootof(gx.as_expr(), 0))
    gy = sympy.Poly([sympy.Rational(c) for c in reversed(g)], ys, domain=field)
    packed = []
    for fac, _ in gy.factor_list()[1]:
        vecs = []
        for anp in reversed(fac.rep.to_list()):
            qs = anp.to_list()
            vecs.append([Fraction(int(q.numerator), int(q.denominator))
                         for q in reversed(qs)] or [Fraction(0)])
        packed.append(vecs)
    with mp.workdps(dps):
        zbar = mp.conj(z0)
        hits = []
        for idx, vecs in enumerate(packed):
            val = mp.mpf(0)
            for vec in reversed(vecs):
                val = val * zbar + mp.polyval([mp.mpf(str(c)) for c in reversed(vec)], z0)
            if mp.fabs(val) < mp.mpf(10) ** (-dps // 2):
                hits.append(idx)
    if len(hits) != 1:
        raise ValueError("conjugate root does not separate the factors")
    return packed[hits[0]]


def _helling_tower(g: list[Fraction], z0, denominators, dps):
    """Ring for Q(z, zbar), z the chosen root of the irreducible g.

    The conjugate's minimal polynomial over Q(z) comes from an exact
    factorisation; when it is linear the conjugate already lies in Q(z)
    and the tower keeps one level.  ring_define re-checks the involution
    exactly either way.
    """
    level = _conjugate_level(g, z0, dps)
    if len(level) == 2:
        sigma = [-c for c in level[0]]
        return ring_define([list(g)], [sigma], denominators)
    levels = [list(g), level]
    involution = [[0, 1], [[0, 1]]]
    dens = [[list(e)] if isinstance(e, list) else e for e in denominators]
    return ring_define(levels, involution, dens)


def _build_helling(m: int, g: list[Fraction], canonical: bool, index: int) -> Presentation:
    ring = None
    for dps in (60, 140, 300):
        roots = _roots_of(g, dps)
        with mp.workdps(dps):
            pool = [r for r in roots if canonical and _helling_in_region(m, r)] or list(roots)
            z0 = max(pool, key=lambda r: (r.imag, r.real))
        try:
            ring = _helling_tower(g, z0, [list(map(Fraction, _ptilde(m + 2)))], dps)
            break
        except ValueError:
            continue
    if ring is None:
        raise ValueError(f"conjugate-root identification failed for m={m}")
    p_m = _ptilde(m)
    p_m2 = _ptilde(m + 2)
    z = ring.gen(0)
    ratio = _poly_eval_ring(p_m, z, ring) / _poly_eval_ring(p_m2, z, ring)
    one, zero = ring.one, ring.zero
    names = ["A", "B", "C"]
    images = [
        ((zero, one), (-one, z)),
        ((one, zero), (ratio, one)),
        ((one, ratio), (zero, one)),
    ]
    relators = [word("A C A- B", names), word(f"C B C- B- A-{m}", names)]
    tag = f"helling:{m}" if canonical else f"helling:{m}/{index}"
    return Presentation(names, relators, ring, images, projective=True, tag=tag).validate()


def _helling_canonical_factor(m: int) -> list[Fraction]:
    factors = _rational_factors(helling_polynomial(m))
    hits = []
    for g in factors:
        if any(_helling_in_region(m, r) for r in _roots_of(g)):
            if g not in hits:
                hits.append(g)
    if len(hits) != 1:
        raise ValueError(f"expected one factor with a root in the region, got {len(hits)}")
    return hits[0]


def helling_factors(m: int) -> list[Presentation]:
    """One presentation per irreducible factor of the trace polynomial."""
    if m < 1:
        raise KeyError("helling parameter must be >= 1")
    factors = []
    for g in _rational_factors(helling_polynomial(m)):
        if g not in factors:
            factors.append(g)
    canonical = _helling_canonical_factor(m)
    out = []
    for i, g in enumerate(factors):
        if g == canonical:
            out.append(catalog_get(f"helling:{m}"))
        else:
            out.append(_build_helling(m, g, canonical=False, index=i))
    return out


# ---------------------------------------------------------------------------
# Klimenko groups


def _build_klimenko(family: str, k: int) -> Presentation:
    if k < 8 or k % 2:
        raise KeyError("klimenko parameter must be an even integer >= 8")
    x = sympy.Symbol("x")
    phi = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(2 * k, x), x).all_coeffs())]
    assert phi[0] == 1
    u_inv = [-c for c in phi[1:]]

    base = ring_define([phi], [u_inv])
    u = base.gen(0)
    t = u * u + base.conj(u) * base.conj(u) + base.from_rational(2)
    three = base.from_rational(3)
    four = base.from_rational(4)
    if family == "klimenko-333":
        rad1 = three * (t - three)
        rad2 = t * (t - three) * (four - t)
    else:
        two = base.from_rational(2)
        rad1 = two * (t - three)
        rad2 = two * (t - two) * (t - three) * (four - t)

    levels = [phi, [list((-rad1).v), 0, 1], [[list((-rad2).v)], 0, 1]]
    involution = [[[u_inv]], [[0, 1]], [0, 1]]
    denominators = [2, [[list((t - three).v)]], [[list((four - t).v)]]]
    ring = ring_define(levels, involution, denominators)

    uf = ring.gen(0)
    tf = uf * uf + ring.conj(uf) * ring.conj(uf) + ring.from_rational(2)
    y, zr = ring.gen(1), ring.gen(2)
    t3 = tf - ring.from_rational(3)
    t4 = ring.from_rational(4) - tf
    s_prime = y / t3
    s = zr / (t3 * t4)
    two = ring.from_rational(2)
    one, zero = ring.one, ring.zero
    images = [
        ((uf, zero), (zero, ring.conj(uf))),
        (((s + s_prime) / two, one), (t3 / t4, (s - s_prime) / two)),
    ]
    names = ["f", "g"]
    zw = word("f g f g- f", names)
    j = 3 if family == "klimenko-333" else 2
    half = pw(word("f", names), k // 2)
    relators = [
        pw(word("f", names), k),
        pw(cat(word("g", names), half, zw, half, word("g-", names), zw), j),
        cat(zw, zw),
        cat(word("f", names), zw, word("g f- g-", names), zw),
    ]
    return Presentation(
        names, relators, ring, images, projective=True, tag=f"{family}:{k}"
    ).validate()


# ---------------------------------------------------------------------------
# the tetrahedral group


def _build_tetrahedral() -> Presentation:
    F = Fraction
    quartic = [
        [F(2, 25), 0, F(-3, 25), F(3, 25)],
        [F(2, 25), 0, F(4, 25), F(-4, 25)],
        [F(-3, 5), 0, F(1, 5), F(-1, 5)],
        [F(8, 5), 0, F(6, 5), F(-6, 5)],
        1,
    ]
    t_inv = [1, -1, 1, -1]
    sigma_c2 = [
        [F(-8, 5), 0, F(-6, 5), F(6, 5)],
        [5, 0, 2, -2],
        [-22, 0, -14, 14],
        [-10, 0, -5, 5],
    ]
    ring = ring_define(
        [[1, -1, 1, -1, 1], quartic],
        [[t_inv], sigma_c2],
        denominators=(5,),
    )
    a = [
        [[[F(2, 5), F(1, 5), F(1, 5), F(2, 5)]], 1],
        [[[F(-2, 5), 0, F(1, 5), F(-1, 5)]], [[F(3, 5), F(-1, 5), F(-1, 5), F(-2, 5)]]],
    ]
    b = [
        [
            [[F(2, 5), F(-4, 5), F(1, 5), F(-3, 5)]],
            [[6, 0, 4, -4], [-17, 0, -9, 9], [80, 0, 50, -50], [35, 0, 20, -20]],
        ],
        [[0, 1], [[F(-2, 5), F(4, 5), F(-1, 5), F(3, 5)]]],
    ]
    c = [[[t_inv], 0], [0, [[0, 1]]]]
    images = [
        tuple(tuple(ring.parse(e) for e in row) for row in m) for m in (a, b, c)
    ]
    names = ["a", "b", "c"]
    relators = [
        word("a a a", names),
        word("b b", names),
        word("c c c c c", names),
        pw(word("a c-", names), 2),
        pw(word("b c-", names), 3),
        pw(word("a b", names), 4),
    ]
    return Presentation(
        names, relators, ring, images, projective=True, tag="tetrahedral"
    ).validate()


# ---------------------------------------------------------------------------
# lookup


@functools.lru_cache(maxsize=None)
def _get(family: str, parameter: int | None) -> Presentation:
    if family == "bianchi-sl2O":
        if parameter not in _BIANCHI_FULL_DS:
            raise KeyError(f"no sl2O presentation for d={parameter}")
        return _build_bianchi_full(parameter)
    if family == "bianchi-sl2a":
        if parameter not in _BIANCHI_IDEAL_DS:
            raise KeyError(f"no sl2a presentation for d={parameter}")
        return _build_bianchi_ideal(parameter)
    if family == "helling":
        if parameter is None or parameter < 1:
            raise KeyError("helling parameter must be >= 1")
        return _build_helling(
            parameter, _helling_canonical_factor(parameter), canonical=True, index=0
        )
    if family in ("klimenko-333", "klimenko-332"):
        if parameter is None:
            raise KeyError("klimenko families need the even parameter k >= 8")
        return _build_klimenko(family, parameter)
    if family == "tetrahedral":
        if parameter is not None:
            raise KeyError("tetrahedral takes no parameter")
        return _build_tetrahedral()
    raise KeyError(f"unknown family {family!r}")


def catalog_get(key, parameter: int | None = None) -> Presentation:
    """Fetch a validated presentation.

    Accepts a CatalogKey, a (family, parameter) pair, or a string like
    "bianchi:-1", "helling:5", "tetrahedral".
    """
    if isinstance(key, CatalogKey):
        family, parameter = key.family, key.parameter
    elif isinstance(key, tuple):
        family, parameter = key
    elif isinstance(key, str) and parameter is None and ":" in key:
        family, _, raw = key.partition(":")
        try:
            parameter = int(raw)
        except ValueError:
            raise KeyError(f"bad catalog parameter {raw!r}") from None
    else:
        family = key
    family = _ALIASES.get(family, family)
    return _get(family, parameter)
