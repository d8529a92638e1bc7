from random import Random

import pytest

from srpd import QPoly, build, classify_subframes, flag, is_involutive, step
from srpd.bracketgen import DependentFullFrame
from helpers import s3_field, s7_field


class TestFlag:
    def test_s3_reference(self, s3_pd):
        report = flag(s3_pd)
        assert report.ranks == [2, 3]
        assert report.verdict.finite and report.verdict.step == 2
        assert all(level.pointwise_ok for level in report.levels)

    def test_s7_reference(self, s7_pd):
        report = flag(s7_pd)
        assert report.ranks == [6, 7]
        assert report.verdict.finite and report.verdict.step == 2

    def test_s7_two_fields_stabilizes(self):
        pd = build([s7_field(1), s7_field(2)])
        report = flag(pd)
        assert report.ranks == [2, 3, 3]
        assert not report.verdict.finite
        assert report.verdict.stabilized_rank == 3

    def test_ranks_nondecreasing_and_bounded(self, s7_pd):
        for fields in ([s7_field(1), s7_field(2)], [s7_field(1), s7_field(2), s7_field(3)]):
            report = flag(build(fields))
            ranks = report.ranks
            assert all(a <= b for a, b in zip(ranks, ranks[1:]))
            assert all(r <= report.target_rank for r in ranks)

    def test_full_frame_step_one(self):
        pd = build([s3_field(1), s3_field(2), s3_field(3)], vertical=())
        report = flag(pd)
        assert report.verdict.finite and report.verdict.step == 1
        assert report.ranks == [3]


class TestStep:
    def test_s3_alternative_pair(self):
        pd = build([s3_field(1), s3_field(3)])
        verdict = step(pd)
        assert verdict.finite and verdict.step == 2

    def test_s7_three_fields_infinite(self):
        pd = build([s7_field(1), s7_field(2), s7_field(3)])
        verdict = step(pd)
        assert not verdict.finite
        assert verdict.stabilized_rank == 6

    def test_single_field_infinite(self):
        pd = build([s3_field(1)])
        verdict = step(pd)
        assert not verdict.finite
        assert verdict.stabilized_rank == 1

    def test_invariant_under_reordering(self):
        a = step(build([s3_field(1), s3_field(2)]))
        b = step(build([s3_field(2), s3_field(1)]))
        assert a == b

    def test_invariant_under_constant_rescaling(self):
        a = step(build([s3_field(1), s3_field(2)]))
        b = step(build([2 * s3_field(1), -3 * s3_field(2)]))
        assert a == b


class TestInvolutive:
    def test_s3_pair_not_involutive(self, s3_pd):
        assert not is_involutive(s3_pd)

    def test_single_field_involutive(self):
        assert is_involutive(build([s3_field(1)]))

    def test_s7_reference_not_involutive(self, s7_pd):
        assert not is_involutive(s7_pd)

    def test_full_frame_involutive(self):
        pd = build([s3_field(1), s3_field(2), s3_field(3)], vertical=())
        assert is_involutive(pd)

    def test_involutive_proper_subframe_has_infinite_step(self):
        # Frobenius direction: involutive and rank below the manifold
        # dimension forces a constant flag
        pd = build([s3_field(1)])
        assert is_involutive(pd)
        assert not step(pd).finite


class TestClassify:
    def test_s3_rank_two(self, s3_fields):
        table = classify_subframes(s3_fields, ranks=[2])
        rows = table.rows_of_rank(2)
        assert len(rows) == 3
        assert all(r.verdict.finite and r.verdict.step == 2 for r in rows)

    def test_lexicographic_order(self, s3_fields):
        table = classify_subframes(s3_fields, ranks=[1, 2])
        indices = [r.indices for r in table.rows]
        assert indices == [(1, 2), (1, 3), (2, 3), (1,), (2,), (3,)]

    def test_s7_rank6_reference_row(self, s7_fields):
        table = classify_subframes(s7_fields, ranks=[6])
        assert len(table.rows) == 7
        row = next(r for r in table.rows if r.indices == (1, 2, 3, 4, 5, 6))
        assert row.verdict.step == 2
        assert len(row.independent_commutators) == 15
        assert row.completions is not None and row.completions.count == 15

    def test_parallel_matches_serial(self, s3_fields):
        serial = classify_subframes(s3_fields, ranks=[2])
        parallel = classify_subframes(s3_fields, ranks=[2], jobs=2)
        assert serial.to_json() == parallel.to_json()

    def test_dependent_full_frame_rejected(self, s3_fields):
        with pytest.raises(DependentFullFrame):
            classify_subframes([s3_field(1), 2 * s3_field(1)], ranks=[1])

    def test_text_rendering(self, s3_fields):
        table = classify_subframes(s3_fields, ranks=[2])
        text = table.render_text()
        assert "X1,X2" in text
        assert "step" in text

    def test_json_shape(self, s3_fields):
        table = classify_subframes(s3_fields, ranks=[2])
        data = table.to_json()
        assert {"ambient_dim", "full_frame_size", "rows"} <= set(data)
        row = data["rows"][0]
        assert {"spanned_by", "rank", "bracket_generating", "step",
                "involutive", "independent_commutators", "flag_ranks"} <= set(row)
