"""Words in finitely presented matrix groups.

A word is a tuple of letters (generator_index, exponent) with exponent
+1 or -1.  A Presentation couples generator names and relator words
with 2x2 matrix images over a NumberRing (plus their complex-conjugate
images), and knows whether it presents a projective group, in which
case relators need only evaluate to +/-identity.

fox_expand computes, for a relator w, the coefficient matrices of the
free derivative: walking w left to right with the prefix action P,
a letter g_i contributes +P to the i-th block and an inverse letter
contributes -P' with P' the prefix action including the inverse (the
rules f(uv) = rho(u) f(v) + f(u) and f(g^-1) = -rho(g^-1) f(g)).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exact import NumberRing, ReductionMap, RingElement, ring_define

__all__ = [
    "Presentation",
    "cat",
    "evaluate_word",
    "fox_expand",
    "inv",
    "mat2_inv",
    "mat2_mul",
    "presentation_from_text",
    "presentation_to_text",
    "pw",
    "word",
]

Word = tuple  # of (generator index, +1 | -1)


def word(tokens: str, names) -> Word:
    """Parse a compact word: space-separated letters, each a generator
    name optionally followed by - (inverse) or an integer exponent.

    "B U2 B U-1" with names A,B,U -> B U U B U^-1.
    """
    out = []
    index = {n: i for i, n in enumerate(names)}
    by_length = sorted(index, key=len, reverse=True)
    for tok in tokens.split():
        name = next((n for n in by_length if tok.startswith(n)), None)
        if name is None:
            raise ValueError(f"unknown generator in token {tok!r}")
        rest = tok[len(name):]
        i = index[name]
        if rest in ("", "1"):
            out.append((i, 1))
        elif rest == "-":
            out.append((i, -1))
        else:
            e = int(rest)
            out.extend([(i, 1 if e > 0 else -1)] * abs(e))
    return tuple(out)


def inv(w: Word) -> Word:
    return tuple((i, -e) for i, e in reversed(w))


def pw(w: Word, k: int) -> Word:
    if k < 0:
        return pw(inv(w), -k)
    return w * k


def cat(*ws: Word) -> Word:
    out = []
    for w in ws:
        out.extend(w)
    return tuple(out)


def mat2_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def mat2_inv(a):
    """Inverse of a determinant-one 2x2 matrix."""
    return ((a[1][1], -a[0][1]), (-a[1][0], a[0][0]))


class Presentation:
    """Finitely presented group with 2x2 matrix images of its generators."""

    def __init__(self, names, relators, ring: NumberRing, images, projective: bool, tag=""):
        self.names = list(names)
        self.relators = [tuple(r) for r in relators]
        self.ring = ring
        self.images = [tuple(map(tuple, m)) for m in images]
        self.conj_images = [
            tuple(tuple(ring.conj(e) for e in row) for row in m) for m in self.images
        ]
        self.inv_images = [mat2_inv(m) for m in self.images]
        self.projective = bool(projective)
        self.tag = tag

    @property
    def ngens(self) -> int:
        return len(self.names)

    def validate(self):
        """Check determinants, relator consistency, and conj coherence."""
        ring = self.ring
        one, zero = ring.one, ring.zero
        for name, m in zip(self.names, self.images):
            det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
            if det != one:
                raise ValueError(f"generator {name} has determinant != 1")
        ident = ((one, zero), (zero, one))
        neg = ((-one, zero), (zero, -one))
        for w in self.relators:
            val = evaluate_word(self, w)
            if val == ident:
                continue
            if self.projective and val == neg:
                continue
            raise ValueError(f"relator {w} does not evaluate to the identity")
        for m, cm in zip(self.images, self.conj_images):
            for i in (0, 1):
                for j in (0, 1):
                    if ring.conj(m[i][j]) != cm[i][j]:
                        raise ValueError("conjugate images out of sync")
        return self


def evaluate_word(pres: Presentation, w: Word, rmap: ReductionMap | None = None):
    """Product of generator images along w, exactly or through rmap."""
    if rmap is None:
        one, zero = pres.ring.one, pres.ring.zero
        acc = ((one, zero), (zero, one))
        for i, e in w:
            m = pres.images[i] if e == 1 else pres.inv_images[i]
            acc = mat2_mul(acc, m)
        return acc
    p = rmap.p
    acc = ((1, 0), (0, 1))
    mats = [
        tuple(tuple(rmap.apply(e) for e in row) for row in m) for m in pres.images
    ]
    for i, e in w:
        m = mats[i]
        if e == -1:
            m = ((m[1][1], -m[0][1] % p), (-m[1][0] % p, m[0][0]))
        acc = (
            (
                (acc[0][0] * m[0][0] + acc[0][1] * m[1][0]) % p,
                (acc[0][0] * m[0][1] + acc[0][1] * m[1][1]) % p,
            ),
            (
                (acc[1][0] * m[0][0] + acc[1][1] * m[1][0]) % p,
                (acc[1][0] * m[0][1] + acc[1][1] * m[1][1]) % p,
            ),
        )
    return acc


def fox_expand(pres: Presentation, relator: Word, act):
    """Coefficient matrices of f(g_i) in the expansion of f(relator).

    act is a ModuleAction built from pres (cohomology.build_action); the
    return value is a list of act-sized matrices, one per generator.
    """
    coeffs = [act.zeros() for _ in range(pres.ngens)]
    prefix = act.identity()
    for i, e in relator:
        if e == 1:
            coeffs[i] = act.add(coeffs[i], prefix)
            prefix = act.matmul(prefix, act.mats[i])
        else:
            prefix = act.matmul(prefix, act.inv_mats[i])
            coeffs[i] = act.sub(coeffs[i], prefix)
    return coeffs


# ---------------------------------------------------------------------------
# plain-text serialization (external groups)


def _expr_to_json(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, tuple):
        return [_expr_to_json(c) for c in v]
    return v


def _expr_from_json(v):
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, list):
        return [_expr_from_json(c) for c in v]
    return v


def presentation_to_text(pres: Presentation) -> str:
    """Serialize to a line-based plain-text form.

    Keys: ring.levels / ring.involution / ring.denominators (JSON, tower
    expressions with fractions as "p/q" strings), generators, projective,
    one relator line per relator, one matrix line per generator.
    """
    ring = pres.ring
    lines = []
    lines.append("ring.levels: " + json.dumps([
        [_expr_to_json(c) for c in poly] for poly in ring.level_polys
    ]))
    lines.append("ring.involution: " + json.dumps([
        _expr_to_json(im.v) for im in ring.sigma_images
    ]))
    lines.append("ring.denominators: " + json.dumps([
        _expr_to_json(d.v) for d in ring.denominators
    ]))
    lines.append("generators: " + " ".join(pres.names))
    lines.append("projective: " + ("true" if pres.projective else "false"))
    for w in pres.relators:
        lines.append("relator: " + " ".join(
            pres.names[i] + ("" if e == 1 else "-") for i, e in w
        ))
    for name, m in zip(pres.names, pres.images):
        entries = [[_expr_to_json(m[i][j].v) for j in (0, 1)] for i in (0, 1)]
        lines.append(f"matrix {name}: " + json.dumps(entries))
    return "\n".join(lines) + "\n"


def presentation_from_text(text: str) -> Presentation:
    levels = involution = denominators = None
    names = []
    projective = False
    relator_lines = []
    matrix_lines = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, val = line.partition(":")
        key = key.strip()
        val = val.strip()
        if key == "ring.levels":
            levels = [[_expr_from_json(c) for c in poly] for poly in json.loads(val)]
        elif key == "ring.involution":
            involution = [_expr_from_json(v) for v in json.loads(val)]
        elif key == "ring.denominators":
            denominators = [_expr_from_json(v) for v in json.loads(val)]
        elif key == "generators":
            names = val.split()
        elif key == "projective":
            projective = val.lower() == "true"
        elif key == "relator":
            relator_lines.append(val)
        elif key.startswith("matrix "):
            matrix_lines[key.split(None, 1)[1]] = val
        else:
            raise ValueError(f"unknown key {key!r} in presentation file")
    if levels is None or involution is None or not names:
        raise ValueError("incomplete presentation file")
    ring = ring_define(levels, involution, denominators or ())
    relators = [word(line, names) for line in relator_lines]
    images = []
    for name in names:
        entries = json.loads(matrix_lines[name])
        images.append([
            [ring.parse(_expr_from_json(entries[i][j])) for j in (0, 1)] for i in (0, 1)
        ])
    return Presentation(names, relators, ring, images, projective).validate()
