"""Command-line interface.

Exit codes: 0 success, 1 input error (bad files, bad flags, malformed
expressions, invalid frames), 2 verification failure (a checked property or
theorem-consistent fixture does not hold).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import builtin
from .bracketgen import classify_subframes, flag, is_involutive
from .connection import (
    CoefficientTable,
    curvature,
    killing_check,
    metric_compat_check,
    sr_connection,
    torsion,
    weitzenbock,
)
from .frame import (
    DependentFrame,
    GramSingular,
    InvalidVerticalFrame,
    NonConstantGram,
    NotTangent,
    pointwise_rank_certify,
)
from .ratpoly import DimensionMismatch
from .report import make_report, render_kv, render_table, to_json_text
from .specio import (
    ExprSyntaxError,
    NegativeExponent,
    SpecFileError,
    UnknownVariable,
    load_spec,
)
from .vfield import pair
from .verify import verify_example

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2

_INPUT_ERRORS = (
    SpecFileError,
    ExprSyntaxError,
    UnknownVariable,
    NegativeExponent,
    NotTangent,
    DependentFrame,
    GramSingular,
    NonConstantGram,
    InvalidVerticalFrame,
    DimensionMismatch,
    FileNotFoundError,
    ValueError,
    KeyError,
)


def _add_common(parser: argparse.ArgumentParser, spec_source: bool = True) -> None:
    if spec_source:
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument("--spec", help="distribution spec file")
        group.add_argument("--example", choices=builtin.EXAMPLES, help="built-in example")
        parser.add_argument(
            "--horizontal",
            help="comma-separated 1-based field indices for --example "
            "(default: all but the last; remaining fields become vertical)",
        )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--output", help="write the report to a file instead of stdout")
    parser.add_argument("--samples", type=int, default=20, help="pointwise sample count")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled checks")


def _load_fields(args) -> tuple:
    """Parsed (horizontal fields, vertical fields or None, inputs dict)."""
    if args.spec:
        spec = load_spec(args.spec)
        from .specio import parse_field

        horizontal = tuple(
            parse_field(list(e), spec.ambient_dim) for e in spec.horizontal
        )
        vertical = None
        if spec.vertical is not None:
            vertical = tuple(
                parse_field(list(e), spec.ambient_dim) for e in spec.vertical
            )
        inputs = {
            "spec": args.spec,
            "name": spec.name,
            "ambient_dim": spec.ambient_dim,
            "horizontal": [list(f) for f in spec.horizontal],
        }
        if spec.vertical is not None:
            inputs["vertical"] = [list(f) for f in spec.vertical]
        return horizontal, vertical, inputs
    indices = None
    if args.horizontal:
        indices = tuple(int(t) for t in args.horizontal.split(","))
    all_fields = builtin.fields(args.example)
    if indices is None:
        indices = builtin.default_horizontal(args.example)
    if len(set(indices)) != len(indices):
        raise ValueError("horizontal indices must be distinct")
    for i in indices:
        if not 1 <= i <= len(all_fields):
            raise ValueError(f"field index {i} out of range 1..{len(all_fields)}")
    horizontal = tuple(all_fields[i - 1] for i in indices)
    vertical = tuple(
        all_fields[i] for i in range(len(all_fields)) if i + 1 not in indices
    )
    inputs = {"example": args.example, "horizontal": list(indices)}
    return horizontal, vertical, inputs


def _load(args) -> tuple:
    horizontal, vertical, inputs = _load_fields(args)
    from .frame import build

    pd = build(horizontal, vertical=vertical, name=str(inputs.get("name", "") or ""))
    return pd, inputs


def _emit(args, report: dict, text_renderer) -> None:
    if args.format == "json":
        payload = to_json_text(report)
    else:
        payload = text_renderer(report)
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(payload + "\n")
    else:
        print(payload)


def _fields_text(report: dict) -> str:
    lines = [report["name"]]
    for key, value in report["results"].items():
        lines.append(f"{key}: {json.dumps(value) if not isinstance(value, str) else value}")
    if report["discrepancies"]:
        lines.append("discrepancies:")
        for d in report["discrepancies"]:
            lines.append(
                f"  {d['fixture']} [{d['trust']}] reference={d['reference_value']} "
                f"computed={d['computed_value']}"
            )
    return "\n".join(lines)


def cmd_check(args) -> int:
    """Diagnose a frame without requiring it to be valid: tangency per
    field, independence with pointwise certification, and (when the frame
    builds) orthonormality, duality, and involutivity."""
    horizontal, vertical, inputs = _load_fields(args)
    from .frame import build
    from .vfield import dot

    tangent_flags = [f.is_tangent() for f in horizontal]
    certificate = pointwise_rank_certify(horizontal, count=args.samples, seed=args.seed)
    independent = certificate.generic_rank == len(horizontal)
    results = {
        "tangent": all(tangent_flags),
        "tangent_fields": tangent_flags,
        "rank": len(horizontal),
        "generic_rank": certificate.generic_rank,
        "independent": independent,
        "pointwise_rank_ok": certificate.ok,
        "constant_gram_certificate": certificate.constant_gram_certificate,
    }
    orthonormal = all(
        dot(a, b) == (1 if i == j else 0)
        for i, a in enumerate(horizontal)
        for j, b in enumerate(horizontal)
    )
    results["orthonormal"] = orthonormal
    buildable = all(tangent_flags) and independent
    if buildable:
        try:
            pd = build(horizontal, vertical=vertical)
        except (NonConstantGram, GramSingular, InvalidVerticalFrame, NotTangent) as exc:
            results["build_error"] = str(exc)
            buildable = False
        else:
            results["duality"] = all(
                pair(omega, x) == (1 if i == j else 0)
                for i, omega in enumerate(pd.dual_forms)
                for j, x in enumerate(pd.frame)
            )
            results["involutive"] = is_involutive(pd)
    results["passed"] = bool(
        buildable and certificate.ok and results.get("duality", False)
    )
    report = make_report("check", inputs, results)
    _emit(args, report, _fields_text)
    return EXIT_OK if results["passed"] else EXIT_VERIFY


def cmd_step(args) -> int:
    pd, inputs = _load(args)
    fr = flag(pd, samples=args.samples, seed=args.seed)
    results = {
        "step": fr.verdict.step if fr.verdict.finite else "infinite",
        "ranks": fr.ranks,
    }
    if not fr.verdict.finite:
        results["stabilized_rank"] = fr.verdict.stabilized_rank
    report = make_report("step", inputs, results)
    _emit(args, report, _fields_text)
    return EXIT_OK


def cmd_flag(args) -> int:
    pd, inputs = _load(args)
    fr = flag(pd, samples=args.samples, seed=args.seed)
    report = make_report("flag", inputs, fr.to_json())

    def renderer(rep: dict) -> str:
        rows = [
            [str(lv["level"]), str(lv["generic_rank"]),
             "yes" if lv["pointwise_ok"] else "NO", " ".join(lv["spanning"])]
            for lv in rep["results"]["levels"]
        ]
        table = render_table(["level", "rank", "pointwise", "spanning fields"], rows)
        return f"{rep['name']}\nverdict: {fr.verdict}\n{table}"

    _emit(args, report, renderer)
    return EXIT_OK


def cmd_metric(args) -> int:
    pd, inputs = _load(args)
    entries = pd.metric.entries
    results = {
        "ambient_dim": pd.ambient_dim,
        "entries": {f"{i},{j}": str(entries[i][j])
                    for i in range(pd.ambient_dim) for j in range(pd.ambient_dim)},
    }
    report = make_report("metric", inputs, results)

    def renderer(rep: dict) -> str:
        n = pd.ambient_dim
        rows = [[f"g{i}{j}" if i <= j else "", str(entries[i][j]) if i <= j else ""]
                for i in range(n) for j in range(i, n)]
        rows = [r for r in rows if r[0]]
        return rep["name"] + "\n" + render_table(["entry", "value"], rows)

    _emit(args, report, renderer)
    return EXIT_OK


def _connection_for(kind: str, pd):
    return weitzenbock(pd) if kind == "weitzenbock" else sr_connection(pd)


def cmd_connection(args) -> int:
    pd, inputs = _load(args)
    inputs["kind"] = args.kind
    conn = _connection_for(args.kind, pd)
    table = CoefficientTable.from_connection(conn)
    report = make_report("connection", inputs, table.to_json())

    def renderer(rep: dict) -> str:
        labels = pd.adapted_labels()
        frame_labels = pd.frame_labels()
        rows = []
        for a, dir_label in enumerate(labels):
            for j, sec_label in enumerate(frame_labels):
                out = table.reconstruct(a, j)
                rows.append([f"({dir_label},{sec_label})", str(out)])
        return (f"{rep['name']} kind={args.kind}\n"
                + render_table(["(direction,section)", "value"], rows))

    _emit(args, report, renderer)
    return EXIT_OK


def cmd_torsion(args) -> int:
    pd, inputs = _load(args)
    inputs["kind"] = args.kind
    conn = _connection_for(args.kind, pd)
    basis = pd.adapted_basis
    labels = pd.adapted_labels()
    entries = {}
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            value = torsion(conn, basis[i], basis[j])
            entries[f"({labels[i]},{labels[j]})"] = str(value)
    report = make_report("torsion", inputs, {"kind": args.kind, "entries": entries})

    def renderer(rep: dict) -> str:
        rows = [[k, v] for k, v in entries.items()]
        return f"{rep['name']} kind={args.kind}\n" + render_table(["pair", "T"], rows)

    _emit(args, report, renderer)
    return EXIT_OK


def cmd_curvature(args) -> int:
    pd, inputs = _load(args)
    inputs["kind"] = args.kind
    conn = _connection_for(args.kind, pd)
    basis = pd.adapted_basis
    labels = pd.adapted_labels()
    entries = {}
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            for k, x in enumerate(pd.frame):
                value = curvature(conn, basis[i], basis[j], x)
                if not value.is_zero():
                    entries[f"({labels[i]},{labels[j]})X{k + 1}"] = str(value)
    results = {
        "kind": args.kind,
        "nonzero_entries": entries,
        "vanishes": not entries,
    }
    report = make_report("curvature", inputs, results)

    def renderer(rep: dict) -> str:
        if not entries:
            return f"{rep['name']} kind={args.kind}\ncurvature vanishes on the basis"
        rows = [[k, v] for k, v in entries.items()]
        return f"{rep['name']} kind={args.kind}\n" + render_table(["triple", "R"], rows)

    _emit(args, report, renderer)
    return EXIT_OK


def cmd_killing(args) -> int:
    pd, inputs = _load(args)
    results = {"fields": {}}
    for label, x in zip(pd.adapted_labels(), pd.adapted_basis):
        results["fields"][label] = killing_check(pd, x)
    results["all_killing"] = all(results["fields"].values())
    report = make_report("killing", inputs, results)
    _emit(args, report, _fields_text)
    return EXIT_OK


def cmd_classify(args) -> int:
    pd, inputs = _load(args)
    full_frame = pd.adapted_basis
    if args.rank:
        ranks = [int(t) for t in args.rank.split(",")]
    else:
        ranks = list(range(1, len(full_frame)))
    inputs["ranks"] = ranks
    table = classify_subframes(
        full_frame, ranks=ranks, samples=args.samples, seed=args.seed, jobs=args.jobs
    )
    report = make_report("classify", inputs, table.to_json())
    _emit(args, report, lambda rep: f"{rep['name']}\n" + table.render_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    report, ok = verify_example(args.example, samples=args.samples, seed=args.seed)

    def renderer(rep: dict) -> str:
        results = rep["results"]
        lines = [rep["name"], f"passed: {results['passed']}"]
        pairs = [(c["name"], "pass" if c["passed"] else "FAIL") for c in results["checks"]]
        lines.append(render_kv(pairs))
        fixture_rows = [
            [f["fixture"], f["trust"], "ok" if f["passed"] else "differs"]
            for f in results["fixture_checks"]
        ]
        lines.append(render_table(["fixture", "trust", "status"], fixture_rows))
        if rep["discrepancies"]:
            lines.append("discrepancies (computed values are authoritative):")
            for d in rep["discrepancies"]:
                lines.append(f"  {d['fixture']}: reference {d['reference_value']} "
                             f"vs computed {d['computed_value']}")
                if d.get("note"):
                    lines.append(f"    note: {d['note']}")
        return "\n".join(lines)

    _emit(args, report, renderer)
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srpd",
        description="Exact sub-Riemannian geometry of parallelizable "
        "distributions on unit spheres",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="tangency, independence, orthonormality")
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("step", help="bracket-generating step")
    _add_common(p)
    p.set_defaults(func=cmd_step)

    p = sub.add_parser("flag", help="full bracket flag report")
    _add_common(p)
    p.set_defaults(func=cmd_flag)

    p = sub.add_parser("metric", help="induced metric tensor entries")
    _add_common(p)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("connection", help="connection coefficient table")
    _add_common(p)
    p.add_argument("--kind", choices=("weitzenbock", "sr"), default="weitzenbock")
    p.set_defaults(func=cmd_connection)

    p = sub.add_parser("torsion", help="torsion table over the adapted basis")
    _add_common(p)
    p.add_argument("--kind", choices=("weitzenbock", "sr"), default="weitzenbock")
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("curvature", help="curvature table over the adapted basis")
    _add_common(p)
    p.add_argument("--kind", choices=("weitzenbock", "sr"), default="weitzenbock")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("killing", help="Killing check for each basis field")
    _add_common(p)
    p.set_defaults(func=cmd_killing)

    p = sub.add_parser("classify", help="classify sub-frames by rank")
    _add_common(p)
    p.add_argument("--rank", help="comma-separated ranks (default: all proper ranks)")
    p.add_argument("--jobs", type=int, default=None, help="parallel workers")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="compare a built-in example against fixtures")
    _add_common(p, spec_source=False)
    p.add_argument("--example", choices=builtin.EXAMPLES, required=True)
    p.set_defaults(func=cmd_verify, samples=6)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
