"""Shared test oracles and generators.

The frame matrices here are transcribed independently of the package's
built-in data, so transcription slips in either place surface as test
failures.  The matrix-commutator oracle gives bracket values for linear
fields through plain matrix algebra: for X = Ay and Y = By,
[X, Y] = (BA - AB) y.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from srpd import Poly, QPoly, VectorField, linear_field, radial_field, reduce
from srpd.vfield import dot

S3_MATRICES = {
    1: [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]],
    2: [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    3: [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
}


def _m8(entries) -> list[list[int]]:
    m = [[0] * 8 for _ in range(8)]
    for i, j, s in entries:
        m[i][j] = s
    return m


S7_MATRICES = {
    1: _m8([(0, 2, -1), (1, 3, 1), (2, 0, 1), (3, 1, -1),
            (4, 6, -1), (5, 7, 1), (6, 4, 1), (7, 5, -1)]),
    2: _m8([(0, 3, -1), (1, 2, -1), (2, 1, 1), (3, 0, 1),
            (4, 7, 1), (5, 6, 1), (6, 5, -1), (7, 4, -1)]),
    3: _m8([(0, 4, -1), (1, 5, 1), (2, 6, 1), (3, 7, -1),
            (4, 0, 1), (5, 1, -1), (6, 2, -1), (7, 3, 1)]),
    4: _m8([(0, 5, -1), (1, 4, -1), (2, 7, -1), (3, 6, -1),
            (4, 1, 1), (5, 0, 1), (6, 3, 1), (7, 2, 1)]),
    5: _m8([(0, 6, -1), (1, 7, 1), (2, 4, -1), (3, 5, 1),
            (4, 2, 1), (5, 3, -1), (6, 0, 1), (7, 1, -1)]),
    6: _m8([(0, 7, -1), (1, 6, -1), (2, 5, 1), (3, 4, 1),
            (4, 3, -1), (5, 2, -1), (6, 1, 1), (7, 0, 1)]),
    7: _m8([(0, 1, -1), (1, 0, 1), (2, 3, -1), (3, 2, 1),
            (4, 5, -1), (5, 4, 1), (6, 7, -1), (7, 6, 1)]),
}


def matmul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def matsub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def commutator_oracle(mat_a, mat_b) -> VectorField:
    """[Ay, By] = (BA - AB) y, computed by matrix algebra only."""
    return linear_field(matsub(matmul(mat_b, mat_a), matmul(mat_a, mat_b)))


def s3_field(i: int) -> VectorField:
    return linear_field(S3_MATRICES[i])


def s7_field(i: int) -> VectorField:
    return linear_field(S7_MATRICES[i])


def random_poly(rng: Random, n: int, degree: int = 2, terms: int = 3) -> Poly:
    acc = Poly.zero(n)
    for _ in range(rng.randint(1, terms)):
        exps = [0] * n
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(n)] += 1
        acc = acc + Poly.monomial(exps, Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
    return acc


def random_qpoly(rng: Random, n: int, degree: int = 2, terms: int = 3) -> QPoly:
    return reduce(random_poly(rng, n, degree, terms))


def random_tangent_field(rng: Random, n: int, degree: int = 1) -> VectorField:
    raw = VectorField(tuple(random_qpoly(rng, n, degree) for _ in range(n)))
    radial = radial_field(n)
    return raw - dot(raw, radial) * radial
