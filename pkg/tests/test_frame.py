from fractions import Fraction
from itertools import combinations
from random import Random

import pytest

from srpd import (
    DependentFrame,
    GramSingular,
    InvalidVerticalFrame,
    NonConstantGram,
    NotTangent,
    QPoly,
    VectorField,
    build,
    dual_forms,
    generic_rank,
    pair,
    pointwise_rank_certify,
    radial_field,
    random_sphere_point,
    reduce,
    tensor_apply,
)
from srpd.frame import random_horizontal, random_tangent
from srpd.ratpoly import Poly
from srpd.specio import parse_qpoly
from helpers import random_qpoly, random_tangent_field, s3_field, s7_field


class TestBuild:
    def test_s3_gram_identity(self, s3_pd):
        for i in range(2):
            for j in range(2):
                assert s3_pd.gram[i][j] == (1 if i == j else 0)

    def test_s7_gram_identity(self, s7_pd):
        for i in range(6):
            for j in range(6):
                assert s7_pd.gram[i][j] == (1 if i == j else 0)

    def test_dependent_frame_rejected(self):
        with pytest.raises(DependentFrame):
            build([s3_field(1), 2 * s3_field(1)])

    def test_non_tangent_rejected(self):
        with pytest.raises(NotTangent):
            build([radial_field(4)])

    def test_oversized_frame_rejected(self):
        with pytest.raises(ValueError):
            build([s3_field(1), s3_field(2), s3_field(3), radial_field(4)])

    def test_non_constant_gram_rejected(self):
        mixed = s3_field(1) + QPoly.variable(0, 4) * s3_field(2)
        with pytest.raises(NonConstantGram):
            build([s3_field(1), mixed])

    def test_vertical_frame_validation(self):
        with pytest.raises(InvalidVerticalFrame):
            build([s3_field(1), s3_field(2)], vertical=[s3_field(1)])
        with pytest.raises(InvalidVerticalFrame):
            build([s3_field(1), s3_field(2)], vertical=[])
        pd = build([s3_field(1), s3_field(2)], vertical=[s3_field(3)])
        assert pd.vertical_frame == (s3_field(3),)


class TestDualForms:
    def test_s3_form_displays(self, s3_pd):
        omega1, omega2 = s3_pd.dual_forms
        assert [str(c) for c in omega1.components] == ["-y2", "y3", "y0", "-y1"]
        assert [str(c) for c in omega2.components] == ["-y3", "-y2", "y1", "y0"]

    def test_duality_everywhere(self, s3_pd, s7_pd):
        for pd in (s3_pd, s7_pd):
            for i, omega in enumerate(pd.dual_forms):
                for j, x in enumerate(pd.frame):
                    assert pair(omega, x) == (1 if i == j else 0)

    def test_forms_annihilate_complement(self, s3_pd):
        for omega in s3_pd.dual_forms:
            assert pair(omega, s3_pd.vertical_frame[0]).is_zero()

    def test_orthonormal_frames_give_musical_duals(self, s3_pd, s7_pd):
        from srpd.vfield import flat

        for pd in (s3_pd, s7_pd):
            for omega, x in zip(pd.dual_forms, pd.frame):
                assert omega == flat(x)

    def test_constant_rescaled_frame(self):
        # non-identity but constant Gram: dual forms stay polynomial
        fields = [2 * s3_field(1), s3_field(2) + s3_field(1)]
        forms = dual_forms(fields)
        for i, omega in enumerate(forms):
            for j, x in enumerate(fields):
                assert pair(omega, x) == (1 if i == j else 0)

    def test_singular_gram(self):
        with pytest.raises(GramSingular):
            dual_forms([s3_field(1), 2 * s3_field(1)])


class TestMetric:
    def test_s3_display_diagonal(self, s3_pd):
        g = s3_pd.metric.entries
        assert g[0][0] == parse_qpoly("y2^2 + y3^2", 4)
        assert g[1][1] == parse_qpoly("y2^2 + y3^2", 4)
        assert g[2][2] == parse_qpoly("y0^2 + y1^2", 4)

    def test_s7_display_diagonal(self, s7_pd):
        g = s7_pd.metric.entries
        assert g[0][0] == parse_qpoly("1 - y0^2 - y1^2", 8)
        assert g[2][2] == parse_qpoly("1 - y2^2 - y3^2", 8)

    def test_frame_orthonormal_under_metric(self, s3_pd, s7_pd):
        for pd in (s3_pd, s7_pd):
            g = pd.metric
            for i, a in enumerate(pd.frame):
                for j, b in enumerate(pd.frame):
                    assert tensor_apply(g, a, b) == (1 if i == j else 0)

    def test_metric_pairs_horizontal_with_forms(self, s3_pd):
        rng = Random(0)
        for _ in range(6):
            ysec = random_horizontal(s3_pd, rng, degree=1)
            for omega, x in zip(s3_pd.dual_forms, s3_pd.frame):
                assert tensor_apply(s3_pd.metric, x, ysec) == pair(omega, ysec)

    def test_positive_semidefinite_rank_k_at_points(self, s3_pd):
        rng = Random(1)
        from srpd.linalg import rational_rank

        n = s3_pd.ambient_dim
        for _ in range(5):
            point = random_sphere_point(rng, n)
            g_at = [
                [e.inner.eval(point) for e in row] for row in s3_pd.metric.entries
            ]
            assert rational_rank(g_at) == s3_pd.rank
            assert _is_psd(g_at)


def _is_psd(matrix):
    """All principal minors nonnegative (exact)."""
    n = len(matrix)
    for size in range(1, n + 1):
        for rows in combinations(range(n), size):
            sub = [[matrix[i][j] for j in rows] for i in rows]
            if _det(sub) < 0:
                return False
    return True


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = Fraction(0)
    for j in range(n):
        if m[0][j]:
            minor = [[m[i][k] for k in range(n) if k != j] for i in range(1, n)]
            term = m[0][j] * _det(minor)
            total += term if j % 2 == 0 else -term
    return total


class TestProjectors:
    def test_frame_fixed(self, s3_pd):
        assert s3_pd.h_project(s3_pd.frame[0]) == s3_pd.frame[0]

    def test_vertical_annihilated(self, s3_pd):
        x3 = s3_pd.vertical_frame[0]
        assert s3_pd.h_project(x3).is_zero()
        assert s3_pd.v_project(x3) == x3

    def test_bracket_is_vertical(self, s3_pd):
        # oracle: [X1, X2] = -2 X3, which is vertical
        from srpd import lie_bracket

        br = lie_bracket(s3_pd.frame[0], s3_pd.frame[1])
        assert s3_pd.h_project(br).is_zero()

    def test_projector_algebra(self, s3_pd):
        rng = Random(2)
        for _ in range(20):
            ysec = random_tangent_field(rng, 4, degree=1)
            h = s3_pd.h_project(ysec)
            v = s3_pd.v_project(ysec)
            assert h + v == ysec
            assert s3_pd.h_project(h) == h
            assert s3_pd.v_project(v) == v
            assert s3_pd.h_project(v).is_zero()
            assert s3_pd.v_project(h).is_zero()

    def test_requires_tangent(self, s3_pd):
        with pytest.raises(NotTangent):
            s3_pd.h_project(radial_field(4))


class TestRank:
    def test_s7_full_rank(self, s7_fields):
        assert generic_rank(s7_fields) == 7

    def test_linear_dependence(self):
        fields = [s3_field(1), s3_field(1) + s3_field(2), s3_field(2)]
        assert generic_rank(fields) == 2

    def test_zero_field(self):
        assert generic_rank([VectorField.zero(4)]) == 0

    def test_pointwise_certificate(self, s3_pd):
        cert = pointwise_rank_certify(s3_pd.frame, count=20, seed=0)
        assert cert.generic_rank == 2
        assert cert.ok
        assert cert.constant_gram_certificate

    def test_pointwise_reports_drops(self):
        # rank drops where y0 = 0: fields {X1, y0*X2}
        fields = [s3_field(1), QPoly.variable(0, 4) * s3_field(2)]
        assert generic_rank(fields) == 2
        cert = pointwise_rank_certify(fields, count=30, seed=0)
        assert not cert.constant_gram_certificate


class TestRandomGenerators:
    def test_random_tangent_is_tangent(self):
        rng = Random(3)
        for _ in range(10):
            assert random_tangent(rng, 4, degree=2).is_tangent()

    def test_random_horizontal_reconstructs(self, s3_pd):
        rng = Random(4)
        for _ in range(10):
            h = random_horizontal(s3_pd, rng, degree=1)
            assert s3_pd.is_horizontal(h)

    def test_sphere_points_exact(self):
        rng = Random(5)
        for n in (2, 4, 8):
            for _ in range(10):
                point = random_sphere_point(rng, n)
                assert sum(Fraction(p) ** 2 for p in point) == 1
