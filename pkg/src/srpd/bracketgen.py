"""Bracket-generating analysis: flags, step, involutivity, classification.

The flag of a distribution is the filtration D^1 subset D^2 subset ... where
each level adds brackets of frame fields against the previous level's
spanning set.  The step is the first level whose generic rank reaches the
manifold dimension; if two consecutive levels have equal rank below that, the
flag has stabilized and the step is infinite.

Generic ranks are exact (fraction-free elimination over the sphere's
coordinate ring); each level is additionally certified at sample points.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .frame import PDistribution, build, generic_rank
from .linalg import SpanTracker, rational_rank
from .ratpoly import random_sphere_point
from .vfield import VectorField, lie_bracket
from random import Random


@dataclass(frozen=True)
class StepVerdict:
    """Outcome of the flag: finite step r, or stabilization below full rank."""

    finite: bool
    step: int | None = None
    stabilized_rank: int | None = None

    def __str__(self) -> str:
        if self.finite:
            return f"finite step {self.step}"
        return f"infinite (rank stabilizes at {self.stabilized_rank})"

    def to_json(self) -> dict:
        if self.finite:
            return {"kind": "finite", "step": self.step}
        return {"kind": "infinite", "stabilized_rank": self.stabilized_rank}


@dataclass(frozen=True)
class FlagLevel:
    level: int
    spanning_labels: tuple[str, ...]
    spanning_fields: tuple[VectorField, ...]
    generic_rank: int
    pointwise_ok: bool


@dataclass(frozen=True)
class FlagReport:
    levels: tuple[FlagLevel, ...]
    verdict: StepVerdict
    target_rank: int
    samples: int
    seed: int

    @property
    def ranks(self) -> list[int]:
        return [lv.generic_rank for lv in self.levels]

    def to_json(self) -> dict:
        return {
            "target_rank": self.target_rank,
            "ranks": self.ranks,
            "verdict": self.verdict.to_json(),
            "levels": [
                {
                    "level": lv.level,
                    "generic_rank": lv.generic_rank,
                    "spanning": list(lv.spanning_labels),
                    "pointwise_ok": lv.pointwise_ok,
                }
                for lv in self.levels
            ],
        }


def _pointwise_ok(
    fields: Sequence[VectorField], rank: int, points: Sequence[tuple]
) -> bool:
    for point in points:
        rows = [[c.inner.eval(point) for c in f.components] for f in fields]
        if rational_rank(rows) != rank:
            return False
    return True


def flag(pd: PDistribution, samples: int = 20, seed: int = 0) -> FlagReport:
    """Compute the bracket flag of a distribution.

    Level 1 is the frame itself; level s+1 adds every bracket of a frame
    field against a level-s spanning field, pruning candidates that do not
    enlarge the row space (earliest-generated fields are kept).  Iteration
    stops at full rank or at stabilization.
    """
    n = pd.ambient_dim
    target = pd.manifold_dim
    rng = Random(seed)
    points = [random_sphere_point(rng, n) for _ in range(samples)]

    echelon = SpanTracker(n, seed=seed)
    spanning: list[tuple[str, VectorField]] = []
    for label, x in zip(pd.frame_labels(), pd.frame):
        if echelon.add(list(x.components)):
            spanning.append((label, x))
    levels = [
        FlagLevel(
            level=1,
            spanning_labels=tuple(lbl for lbl, _ in spanning),
            spanning_fields=tuple(f for _, f in spanning),
            generic_rank=echelon.rank,
            pointwise_ok=_pointwise_ok([f for _, f in spanning], echelon.rank, points),
        )
    ]
    verdict: StepVerdict | None = None
    if echelon.rank == target:
        verdict = StepVerdict(finite=True, step=1)

    level = 1
    while verdict is None:
        level += 1
        previous_rank = echelon.rank
        new_fields: list[tuple[str, VectorField]] = []
        current = list(spanning)
        for frame_label, frame_field in zip(pd.frame_labels(), pd.frame):
            if echelon.rank == target:
                break  # remaining brackets cannot enlarge the span
            for span_label, span_field in current:
                candidate = lie_bracket(frame_field, span_field)
                if candidate.is_zero():
                    continue
                if echelon.add(list(candidate.components)):
                    new_fields.append((f"[{frame_label},{span_label}]", candidate))
                    if echelon.rank == target:
                        break
        spanning.extend(new_fields)
        rank = echelon.rank
        levels.append(
            FlagLevel(
                level=level,
                spanning_labels=tuple(lbl for lbl, _ in spanning),
                spanning_fields=tuple(f for _, f in spanning),
                generic_rank=rank,
                pointwise_ok=_pointwise_ok([f for _, f in spanning], rank, points),
            )
        )
        if rank == target:
            verdict = StepVerdict(finite=True, step=level)
        elif rank == previous_rank:
            verdict = StepVerdict(finite=False, stabilized_rank=rank)

    return FlagReport(
        levels=tuple(levels),
        verdict=verdict,
        target_rank=target,
        samples=samples,
        seed=seed,
    )


def step(pd: PDistribution, samples: int = 20, seed: int = 0) -> StepVerdict:
    """Step of the distribution (the flag's verdict only)."""
    return flag(pd, samples=samples, seed=seed).verdict


def is_involutive(pd: PDistribution) -> bool:
    """True when every pairwise frame bracket lies in the distribution,
    i.e. its vertical projection vanishes identically."""
    k = len(pd.frame)
    for i in range(k):
        for j in range(i + 1, k):
            br = lie_bracket(pd.frame[i], pd.frame[j])
            if not pd._v(br).is_zero():
                return False
    return True


# -- classification of sub-frames ---------------------------------------------


@dataclass(frozen=True)
class CompletionInfo:
    """Minimal bracket completions of a step-2 subset to full tangent rank.

    ``anchor`` holds the greedy lexicographic prefix (each element raised the
    rank by one); ``completing`` lists every final commutator that finishes
    the job.  For corank 1 the anchor is empty and ``completing`` is simply
    the independent-commutator list.
    """

    anchor: tuple[str, ...]
    completing: tuple[str, ...]

    @property
    def count(self) -> int:
        return len(self.completing)


@dataclass(frozen=True)
class SubframeRow:
    indices: tuple[int, ...]  # 1-based indices into the full frame
    rank: int
    verdict: StepVerdict
    involutive: bool
    flag_ranks: tuple[int, ...]
    independent_commutators: tuple[str, ...]
    completions: CompletionInfo | None

    def spanned_by(self) -> str:
        return ",".join(f"X{i}" for i in self.indices)

    def to_json(self) -> dict:
        data = {
            "spanned_by": [f"X{i}" for i in self.indices],
            "rank": self.rank,
            "flag_ranks": list(self.flag_ranks),
            "bracket_generating": self.verdict.finite,
            "step": self.verdict.step if self.verdict.finite else "infinite",
            "involutive": self.involutive,
            "independent_commutators": list(self.independent_commutators),
        }
        if self.completions is not None:
            data["completions"] = {
                "anchor": list(self.completions.anchor),
                "completing": list(self.completions.completing),
                "count": self.completions.count,
            }
        return data


@dataclass(frozen=True)
class ClassificationTable:
    ambient_dim: int
    full_frame_size: int
    rows: tuple[SubframeRow, ...]

    def rows_of_rank(self, rank: int) -> list[SubframeRow]:
        return [r for r in self.rows if r.rank == rank]

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "full_frame_size": self.full_frame_size,
            "rows": [r.to_json() for r in self.rows],
        }

    def render_text(self) -> str:
        headers = ["spanned by", "rank", "independent commutators", "BG?", "step"]
        table = []
        for r in self.rows:
            if r.completions is not None and r.completions.anchor:
                commutators = (
                    "(" + ",".join(r.completions.anchor) + ",*) * in: "
                    + " ".join(r.completions.completing)
                )
            else:
                commutators = " ".join(r.independent_commutators)
            table.append(
                [
                    r.spanned_by(),
                    str(r.rank),
                    commutators,
                    "Yes" if r.verdict.finite else "No",
                    str(r.verdict.step) if r.verdict.finite else "infinite",
                ]
            )
        widths = [max(len(h), *(len(row[i]) for row in table)) if table else len(h)
                  for i, h in enumerate(headers)]
        lines = [
            "  ".join(h.ljust(w) for h, w in zip(headers, widths)),
            "  ".join("-" * w for w in widths),
        ]
        for row in table:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))
        return "\n".join(lines)


def _commutator_label(i: int, j: int) -> str:
    return f"X{i}{j}" if i < 10 and j < 10 else f"X{i}.{j}"


def _classify_subset(
    full_frame: tuple[VectorField, ...],
    indices: tuple[int, ...],
    samples: int,
    seed: int,
) -> SubframeRow:
    fields = tuple(full_frame[i - 1] for i in indices)
    pd = build(fields, name="subset " + ",".join(map(str, indices)))
    report = flag(pd, samples=samples, seed=seed)
    involutive = is_involutive(pd)
    n = pd.ambient_dim
    target = pd.manifold_dim
    k = len(fields)

    pair_indices = list(itertools.combinations(indices, 2))
    by_pair = {}
    for a, b in pair_indices:
        by_pair[(a, b)] = lie_bracket(full_frame[a - 1], full_frame[b - 1])

    base = SpanTracker(n, seed=seed)
    for f in fields:
        base.add(list(f.components))

    independent = []
    for a, b in pair_indices:
        probe = base.clone()
        if probe.add(list(by_pair[(a, b)].components)):
            independent.append(_commutator_label(a, b))

    completions = None
    if report.verdict.finite and report.verdict.step == 2:
        corank = target - k
        anchor_echelon = base.clone()
        anchor: list[str] = []
        anchor_pairs: set[tuple[int, int]] = set()
        for a, b in pair_indices:
            if len(anchor) == corank - 1:
                break
            if anchor_echelon.add(list(by_pair[(a, b)].components)):
                anchor.append(_commutator_label(a, b))
                anchor_pairs.add((a, b))
        completing = []
        for a, b in pair_indices:
            if (a, b) in anchor_pairs:
                continue
            probe = anchor_echelon.clone()
            if probe.add(list(by_pair[(a, b)].components)) and probe.rank == target:
                completing.append(_commutator_label(a, b))
        completions = CompletionInfo(anchor=tuple(anchor), completing=tuple(completing))

    return SubframeRow(
        indices=indices,
        rank=k,
        verdict=report.verdict,
        involutive=involutive,
        flag_ranks=tuple(report.ranks),
        independent_commutators=tuple(independent),
        completions=completions,
    )


def classify_subframes(
    full_frame: Sequence[VectorField],
    ranks: Sequence[int],
    samples: int = 20,
    seed: int = 0,
    jobs: int | None = None,
) -> ClassificationTable:
    """Classify every subset of the full frame with the requested ranks.

    Subsets are enumerated in lexicographic order; each row records the step
    verdict, involutivity, the commutators independent of the subset, and
    (for step-2 rows) the minimal completions to full rank.  Per-subset work
    is pure, so it optionally fans out across processes; assembly order is
    deterministic either way.
    """
    full_frame = tuple(full_frame)
    if generic_rank(full_frame) != len(full_frame):
        raise DependentFullFrame("full frame must be generically independent")
    tasks = []
    for rank in ranks:
        if not 1 <= rank <= len(full_frame):
            raise ValueError(f"rank {rank} out of range for frame of {len(full_frame)}")
        tasks.extend(itertools.combinations(range(1, len(full_frame) + 1), rank))

    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(
                pool.map(
                    _classify_subset_star,
                    [(full_frame, idx, samples, seed) for idx in tasks],
                )
            )
    else:
        rows = [_classify_subset(full_frame, idx, samples, seed) for idx in tasks]

    rows.sort(key=lambda r: (-r.rank, r.indices))
    return ClassificationTable(
        ambient_dim=full_frame[0].ambient_dim,
        full_frame_size=len(full_frame),
        rows=tuple(rows),
    )


def _classify_subset_star(args) -> SubframeRow:
    return _classify_subset(*args)


class DependentFullFrame(ValueError):
    """classify_subframes requires a generically independent full frame."""
