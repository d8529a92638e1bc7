from itertools import combinations
from random import Random

import pytest

from srpd import (
    DimensionMismatch,
    QPoly,
    SymTensor2,
    VectorField,
    direct_deriv,
    dot,
    flat,
    lie_bracket,
    pair,
    radial_field,
    reduce,
    tensor_apply,
)
from srpd.ratpoly import Poly
from helpers import (
    S3_MATRICES,
    S7_MATRICES,
    commutator_oracle,
    random_qpoly,
    random_tangent_field,
    s3_field,
    s7_field,
)


class TestLieBracket:
    def test_self_bracket_vanishes(self):
        x = s3_field(1)
        assert lie_bracket(x, x).is_zero()

    def test_s3_bracket_13(self):
        # oracle: matrix commutator gives [X1, X3] = 2 X2
        oracle = commutator_oracle(S3_MATRICES[1], S3_MATRICES[3])
        assert oracle == 2 * s3_field(2)
        assert lie_bracket(s3_field(1), s3_field(3)) == oracle

    def test_s3_bracket_12(self):
        # oracle value is -2 X3 (the published remark states the opposite sign)
        oracle = commutator_oracle(S3_MATRICES[1], S3_MATRICES[2])
        assert oracle == -2 * s3_field(3)
        assert lie_bracket(s3_field(1), s3_field(2)) == oracle

    @pytest.mark.parametrize("mats,field", [(S3_MATRICES, s3_field), (S7_MATRICES, s7_field)])
    def test_all_builtin_pairs_match_matrix_oracle(self, mats, field):
        for i, j in combinations(sorted(mats), 2):
            assert lie_bracket(field(i), field(j)) == commutator_oracle(mats[i], mats[j])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            lie_bracket(s3_field(1), s7_field(1))


class TestDirectDeriv:
    def test_constant(self):
        assert direct_deriv(s3_field(1), QPoly.const(5, 4)).is_zero()

    def test_reads_component(self):
        # X1 . y2 equals component 2 of X1, which is y0
        assert direct_deriv(s3_field(1), QPoly.variable(2, 4)) == QPoly.variable(0, 4)

    def test_tangent_field_kills_radius(self):
        from srpd import sphere_relation

        rng = Random(0)
        x = random_tangent_field(rng, 4, degree=1)
        assert direct_deriv(x, reduce(sphere_relation(4))).is_zero()

    def test_derivation_product_rule(self):
        rng = Random(1)
        for _ in range(15):
            x = random_tangent_field(rng, 4, degree=1)
            f = random_qpoly(rng, 4)
            g = random_qpoly(rng, 4)
            assert direct_deriv(x, f * g) == direct_deriv(x, f) * g + f * direct_deriv(x, g)


class TestPairings:
    def test_duality_on_s3(self, s3_pd):
        omega1, omega2 = s3_pd.dual_forms
        assert pair(omega1, s3_pd.frame[0]) == 1
        assert pair(omega1, s3_pd.frame[1]).is_zero()
        assert pair(omega2, s3_pd.frame[1]) == 1

    def test_metric_orthogonality(self, s3_pd):
        g = s3_pd.sr_metric()
        assert tensor_apply(g, s3_pd.frame[0], s3_pd.frame[1]).is_zero()
        assert tensor_apply(g, s3_pd.frame[0], s3_pd.frame[0]) == 1

    def test_tensor_apply_matches_form_sums(self, s3_pd):
        rng = Random(2)
        g = s3_pd.sr_metric()
        for _ in range(5):
            a = random_tangent_field(rng, 4)
            b = random_tangent_field(rng, 4)
            assert tensor_apply(g, a, b) == s3_pd.g(a, b)


class TestTangency:
    def test_builtin_tangent(self):
        assert s3_field(1).is_tangent()

    def test_radial_not_tangent(self):
        assert not radial_field(4).is_tangent()

    def test_zero_tangent(self):
        assert VectorField.zero(4).is_tangent()

    def test_bracket_of_tangents_is_tangent(self):
        rng = Random(3)
        for _ in range(10):
            x = random_tangent_field(rng, 4, degree=1)
            y = random_tangent_field(rng, 4, degree=1)
            assert lie_bracket(x, y).is_tangent()


class TestAlgebraicLaws:
    def test_antisymmetry(self):
        rng = Random(4)
        for _ in range(10):
            x = random_tangent_field(rng, 4, degree=1)
            y = random_tangent_field(rng, 4, degree=1)
            assert (lie_bracket(x, y) + lie_bracket(y, x)).is_zero()

    def test_jacobi(self):
        rng = Random(5)
        for _ in range(5):
            x = random_tangent_field(rng, 4, degree=1)
            y = random_tangent_field(rng, 4, degree=1)
            z = random_tangent_field(rng, 4, degree=1)
            total = (
                lie_bracket(lie_bracket(x, y), z)
                + lie_bracket(lie_bracket(y, z), x)
                + lie_bracket(lie_bracket(z, x), y)
            )
            assert total.is_zero()

    def test_bracket_module_law(self):
        rng = Random(6)
        for _ in range(8):
            x = random_tangent_field(rng, 4, degree=1)
            y = random_tangent_field(rng, 4, degree=1)
            f = random_qpoly(rng, 4)
            lhs = lie_bracket(x, f * y)
            rhs = direct_deriv(x, f) * y + f * lie_bracket(x, y)
            assert lhs == rhs


class TestSymTensor:
    def test_symmetry_enforced(self):
        n = 4
        entries = [[QPoly.zero(n) for _ in range(n)] for _ in range(n)]
        entries[0][1] = QPoly.const(1, n)
        with pytest.raises(ValueError):
            SymTensor2(tuple(tuple(r) for r in entries))

    def test_flat_pairing_is_euclidean_dot(self):
        rng = Random(7)
        a = random_tangent_field(rng, 4)
        b = random_tangent_field(rng, 4)
        assert pair(flat(a), b) == dot(a, b)
