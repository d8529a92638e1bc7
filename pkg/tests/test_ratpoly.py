from fractions import Fraction
from random import Random

import pytest

from srpd import (
    DimensionMismatch,
    Poly,
    PointNotOnSphere,
    QPoly,
    random_sphere_point,
    reduce,
    sphere_relation,
)
from helpers import random_poly


def y(i, n=4):
    return Poly.variable(i, n)


class TestReduce:
    def test_sphere_relation_reduces_to_one(self):
        p = y(0) ** 2 + y(1) ** 2 + y(2) ** 2 + y(3) ** 2
        assert reduce(p) == QPoly.const(1, 4)

    def test_normal_monomial_unchanged(self):
        p = y(1) * y(2)
        assert reduce(p).inner == p

    def test_single_substitution(self):
        p = y(0) ** 2 * y(1)
        expected = y(1) - y(1) ** 3 - y(1) * y(2) ** 2 - y(1) * y(3) ** 2
        assert reduce(p) == reduce(expected)
        assert reduce(p).inner == expected

    def test_idempotent(self):
        rng = Random(1)
        for _ in range(25):
            p = random_poly(rng, 4, degree=4)
            once = reduce(p)
            assert reduce(once.inner) == once

    def test_no_y0_squared_in_normal_form(self):
        rng = Random(2)
        for _ in range(25):
            q = reduce(random_poly(rng, 4, degree=5))
            assert all(exps[0] < 2 for exps in q.terms)


class TestRingOps:
    def test_y0_squared(self):
        q = QPoly.variable(0, 4) * QPoly.variable(0, 4)
        assert q == reduce(Poly.const(1, 4) - y(1) ** 2 - y(2) ** 2 - y(3) ** 2)

    def test_additive_identity(self):
        rng = Random(3)
        p = reduce(random_poly(rng, 4))
        assert p + QPoly.zero(4) == p

    def test_inverse_scalars(self):
        rng = Random(4)
        p = reduce(random_poly(rng, 4))
        assert (p * Fraction(1, 2)) * 2 == p

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            QPoly.variable(0, 4) + QPoly.variable(0, 5)


class TestPartial:
    def test_product(self):
        q = reduce(y(0) * y(2))
        assert q.partial(0) == QPoly.variable(2, 4)

    def test_constant(self):
        assert QPoly.const(7, 4).partial(1).is_zero()

    def test_power(self):
        q = reduce(y(2) ** 3)
        assert q.partial(2) == reduce(3 * y(2) ** 2)

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            QPoly.variable(0, 4).partial(4)


class TestEval:
    def test_coordinate(self):
        p = QPoly.variable(0, 4)
        assert p.eval((1, 0, 0, 0)) == 1

    def test_sphere_relation_vanishes(self):
        q = reduce(sphere_relation(4))
        rng = Random(5)
        for _ in range(10):
            assert q.eval(random_sphere_point(rng, 4)) == 0

    def test_product_point(self):
        p = reduce(y(0) * y(1))
        assert p.eval((Fraction(3, 5), Fraction(4, 5), 0, 0)) == Fraction(12, 25)

    def test_off_sphere_rejected(self):
        with pytest.raises(PointNotOnSphere):
            QPoly.variable(0, 4).eval((1, 1, 0, 0))


class TestInvariants:
    def test_reduce_is_ring_homomorphism(self):
        rng = Random(6)
        for _ in range(30):
            p = random_poly(rng, 4, degree=3)
            q = random_poly(rng, 4, degree=3)
            assert reduce(p * q) == reduce(p) * reduce(q)
            assert reduce(p + q) == reduce(p) + reduce(q)

    def test_multiples_of_relation_vanish_at_sphere_points(self):
        rng = Random(7)
        rel = sphere_relation(4)
        for _ in range(20):
            p = random_poly(rng, 4, degree=2)
            q = reduce(p * rel)
            point = random_sphere_point(rng, 4)
            assert q.eval(point) == 0
        # and the reduction itself is exactly zero
        assert reduce(random_poly(rng, 4) * rel).is_zero()

    def test_leibniz_for_ambient_polynomials(self):
        # The coordinate partial is a derivation of the ambient polynomial
        # ring; it does NOT descend to the quotient (see the counterexample
        # below), so the law is stated for Polys with equality after
        # reduction.  Tangential derivatives are the ones that descend --
        # covered by the directional-derivative product rule in the field
        # layer.
        rng = Random(8)
        for _ in range(20):
            p = random_poly(rng, 4, degree=2)
            q = random_poly(rng, 4, degree=2)
            for i in range(4):
                lhs = reduce((p * q).partial(i))
                rhs = reduce(p.partial(i) * q + p * q.partial(i))
                assert lhs == rhs

    def test_normal_form_partial_is_not_a_ring_derivation(self):
        # representative-level partials differ from any would-be quotient
        # derivation by multiples of the relation's derivative
        p = reduce(Poly.const(Fraction(2, 3), 4) - 2 * y(0))
        q = reduce(4 * y(0) * y(3))
        lhs = (p * q).partial(0)
        rhs = p.partial(0) * q + p * q.partial(0)
        assert lhs != rhs

    def test_equal_normal_forms_agree_on_sphere(self):
        rng = Random(9)
        rel = sphere_relation(4)
        for _ in range(10):
            p = random_poly(rng, 4, degree=2)
            # same sphere function, different representative
            q = p + random_poly(rng, 4, degree=1) * rel
            assert reduce(p) == reduce(q)
            for _ in range(20):
                point = random_sphere_point(rng, 4)
                assert p.eval(point) == q.eval(point)

    def test_distinct_normal_forms_have_witness_point(self):
        rng = Random(10)
        found_pairs = 0
        while found_pairs < 10:
            p = reduce(random_poly(rng, 4, degree=2))
            q = reduce(random_poly(rng, 4, degree=2))
            if p == q:
                continue
            found_pairs += 1
            diff = p - q
            witness = None
            for _ in range(200):
                point = random_sphere_point(rng, 4)
                if diff.eval(point) != 0:
                    witness = point
                    break
            assert witness is not None


class TestPrinting:
    def test_zero(self):
        assert str(Poly.zero(4)) == "0"

    def test_signs_and_fractions(self):
        p = Poly.const(Fraction(1, 2), 4) * y(0) ** 2 - y(1) * y(3)
        assert str(p) == "1/2*y0^2 - y1*y3"

    def test_leading_minus(self):
        assert str(-y(2)) == "-y2"
