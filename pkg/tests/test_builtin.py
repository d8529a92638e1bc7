import json

import pytest

from srpd import QPoly, build, dot, lie_bracket
from srpd import builtin
from helpers import s3_field, s7_field


class TestFrames:
    def test_s3_first_field_transcription(self):
        assert [str(c) for c in builtin.s3()[0].components] == ["-y2", "y3", "y0", "-y1"]

    def test_s7_last_field_transcription(self):
        assert [str(c) for c in builtin.s7()[6].components] == [
            "-y1", "y0", "-y3", "y2", "-y5", "y4", "-y7", "y6",
        ]

    def test_matches_independent_transcription(self):
        for i, f in enumerate(builtin.s3(), start=1):
            assert f == s3_field(i)
        for i, f in enumerate(builtin.s7(), start=1):
            assert f == s7_field(i)

    @pytest.mark.parametrize("example", ["s3", "s7"])
    def test_all_tangent(self, example):
        assert all(f.is_tangent() for f in builtin.fields(example))

    @pytest.mark.parametrize("example", ["s3", "s7"])
    def test_full_frame_orthonormal(self, example):
        fields = builtin.fields(example)
        for i, a in enumerate(fields):
            for j, b in enumerate(fields):
                assert dot(a, b) == (1 if i == j else 0)

    def test_unknown_example(self):
        with pytest.raises(KeyError):
            builtin.fields("s15")


class TestDistributionHelper:
    def test_default_reference(self):
        pd = builtin.distribution("s3")
        assert pd.rank == 2
        assert pd.vertical_frame == (builtin.s3()[2],)

    def test_horizontal_selection(self):
        pd = builtin.distribution("s3", horizontal=(1, 3))
        assert pd.frame == (builtin.s3()[0], builtin.s3()[2])
        assert pd.vertical_frame == (builtin.s3()[1],)

    def test_bad_indices(self):
        with pytest.raises(ValueError):
            builtin.distribution("s3", horizontal=(1, 1))
        with pytest.raises(ValueError):
            builtin.distribution("s3", horizontal=(0, 1))

    def test_closure_under_projectors(self, s3_pd, s7_pd):
        for pd in (s3_pd, s7_pd):
            for x in pd.frame:
                assert pd.h_project(x) == x
            for v in pd.vertical_frame:
                assert pd.h_project(v).is_zero()


class TestFixtures:
    @pytest.mark.parametrize("example", ["s3", "s7"])
    def test_keys_unique_and_trust_tagged(self, example):
        fx = builtin.fixtures(example)
        keys = fx.keys()
        assert len(keys) == len(set(keys))
        assert {f.trust for f in fx.items} == {builtin.THEOREM, builtin.TABLE}

    @pytest.mark.parametrize("example", ["s3", "s7"])
    def test_json_export(self, example):
        payload = json.dumps(builtin.fixtures(example).to_json())
        assert example in payload

    def test_s3_metric_corrections_localized(self, s3_pd):
        # the published display differs from the duality-consistent metric in
        # exactly the four cross pairs (and their mirrors)
        fx = builtin.fixtures("s3")
        corrected = fx.get("metric").value
        published = fx.get("metric:published").value
        differing = {
            (i, j)
            for i in range(4)
            for j in range(4)
            if corrected[i][j] != published[i][j]
        }
        assert differing == {(0, 2), (2, 0), (0, 3), (3, 0), (1, 2), (2, 1), (1, 3), (3, 1)}
        assert s3_pd.metric.entries == corrected

    def test_s7_metric_corrections_localized(self, s7_pd):
        fx = builtin.fixtures("s7")
        corrected = fx.get("metric").value
        published = fx.get("metric:published").value
        differing = {
            (i, j)
            for i in range(8)
            for j in range(8)
            if corrected[i][j] != published[i][j]
        }
        expected = {(0, 2), (2, 0), (3, 7), (7, 3), (1, 5), (5, 1), (3, 5), (5, 3)}
        assert differing == expected
        assert s7_pd.metric.entries == corrected

    def test_s3_torsion_fixtures_match_engine(self, s3_pd):
        from srpd import torsion, weitzenbock

        fx = builtin.fixtures("s3")
        wb = weitzenbock(s3_pd)
        x1, x2 = s3_pd.frame
        x3 = s3_pd.vertical_frame[0]
        assert torsion(wb, x1, x2) == fx.get("torsion:(X1,X2)").value
        assert torsion(wb, x1, x3) == fx.get("torsion:(X1,X3)").value
        assert torsion(wb, x2, x3) == fx.get("torsion:(X2,X3)").value

    def test_s7_torsion_fixtures_match_engine(self, s7_pd):
        from srpd import torsion, weitzenbock

        fx = builtin.fixtures("s7")
        wb = weitzenbock(s7_pd)
        x7 = s7_pd.vertical_frame[0]
        assert torsion(wb, s7_pd.frame[0], x7) == fx.get("torsion:(X1,X7)").value
        assert torsion(wb, s7_pd.frame[5], x7) == fx.get("torsion:(X6,X7)").value

    def test_published_sr_values_differ_from_engine(self, s3_pd):
        from srpd import sr_connection

        fx = builtin.fixtures("s3")
        sr = sr_connection(s3_pd)
        computed = sr.apply(s3_pd.vertical_frame[0], s3_pd.frame[0])
        published = fx.get("sr_connection:(X3,X1):published").value
        assert computed != published
        assert published == -3 * s3_pd.frame[1]
        assert computed == -2 * s3_pd.frame[1]
