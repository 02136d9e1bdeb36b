"""Command-line front end.

    tricover verify FILE [--json] [--expect CASE] [--chart V0|V1] [--spair-budget N]
    tricover repro NAME [--json]
    tricover h0 A B
    tricover basis A B

Exit status: 0 success, 1 mismatch or unclassified, 2 unreadable input,
3 solver budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence, TextIO

from . import __version__
from .cover import (
    ClassificationReport,
    CoverSpec,
    branch_discriminant,
    classify_cover,
    fiber_genus,
    invariants_pushforward,
)
from .f3geom import DivisorClass, basis_polys, h0
from .idealsolver import DEFAULT_SPAIR_BUDGET, ResourceCapExceeded
from .repro import (
    DATASETS,
    CoverFile,
    CoverFileError,
    dataset_hash,
    dataset_text,
    parse_cover_file,
    pinned_hashes,
    replay_sessions,
)

SCHEMA = 1
EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
CASES = ("M1", "M2", "M3", "M4_PinZ", "M4_PnotinZ", "N", "Unclassified")


@dataclass
class Report:
    """A classification report with the provenance needed to reproduce it."""

    classification: ClassificationReport
    source: str
    sha256: str
    spair_budget: int
    cover: dict[str, Any]
    invariants: dict[str, int]
    expect: str | None = None
    chart: dict[str, Any] | None = None
    version: str = __version__
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def outcome(self) -> str:
        label = self.classification.case_label
        if label == "Unclassified":
            return "unclassified"
        if self.expect is not None and label != self.expect:
            return "mismatch"
        return "ok"

    def to_dict(self) -> dict:
        out = {
            "schema": SCHEMA,
            "provenance": {
                "source": self.source,
                "sha256": self.sha256,
                "version": self.version,
                "spair_budget": self.spair_budget,
            },
            "cover": self.cover,
            "invariants": self.invariants,
            "classification": self.classification.to_dict(),
            "expect": self.expect,
            "outcome": self.outcome,
        }
        if self.chart is not None:
            out["chart"] = self.chart
        out.update(self.extra)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        prov = d["provenance"]
        known = {"schema", "provenance", "cover", "invariants", "classification", "expect", "outcome", "chart"}
        return cls(
            classification=ClassificationReport.from_dict(d["classification"]),
            source=prov["source"],
            sha256=prov["sha256"],
            spair_budget=prov["spair_budget"],
            cover=d["cover"],
            invariants=d["invariants"],
            expect=d["expect"],
            chart=d.get("chart"),
            version=prov["version"],
            extra={k: v for k, v in d.items() if k not in known},
        )

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))


def _cover_summary(cf: CoverFile, spec: CoverSpec) -> dict:
    form = spec.form
    return {
        "name": cf.name,
        "preset": cf.preset,
        "form": cf.form,
        "galois": cf.galois,
        "sections": {k: str(getattr(form, k).poly) for k in cf.sections},
    }


def _chart_block(cf: CoverFile, spec: CoverSpec, chart: str) -> dict:
    return {
        "name": chart,
        "sections": {k: str(getattr(spec.form, k).on_chart(chart)) for k in cf.sections},
        "branch_polynomial": str(branch_discriminant(spec, chart)),
    }


def build_report(
    cf: CoverFile,
    raw: bytes,
    source: str,
    spair_budget: int = DEFAULT_SPAIR_BUDGET,
    expect: str | None = None,
    chart: str | None = None,
) -> Report:
    spec = cf.to_spec()
    rep = classify_cover(spec, spair_budget)
    pg, chi = invariants_pushforward(spec.preset)
    return Report(
        classification=rep,
        source=source,
        sha256=hashlib.sha256(raw).hexdigest(),
        spair_budget=spair_budget,
        cover=_cover_summary(cf, spec),
        invariants={"pg_X": pg, "chi_X": chi, "fiber_genus": fiber_genus(spec.preset)},
        expect=expect,
        chart=_chart_block(cf, spec, chart) if chart else None,
    )


def exit_status(report: Report) -> int:
    return EXIT_OK if report.outcome == "ok" else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# human-readable output

def render_report(report: Report, out: TextIO) -> None:
    c = report.classification
    cov = report.cover
    w = out.write
    w(f"cover      {cov['name'] or report.source}  ({cov['preset']}, {cov['form']}{', galois' if cov['galois'] else ''})\n")
    w(f"case       {c.case_label}\n")
    w(f"K^2, p_g   {c.K2}, {c.pg}\n")
    inv = report.invariants
    w(f"cover X    p_g = {inv['pg_X']}, chi = {inv['chi_X']}, fibre genus = {inv['fiber_genus']}\n")
    w(f"boundary   {'smooth' if c.smooth_over_infinity else 'singular'}\n")
    if c.singular_points:
        w("singular points over V0:\n")
        for sp in c.singular_points:
            pt = ", ".join(f"{k}={v}" for k, v in sp.point.items())
            w(f"  ({pt})  branch {sp.branch_type.label()}  totally ramified: {sp.totally_ramified}\n")
    else:
        w("singular points over V0: none\n")
    if report.chart:
        ch = report.chart
        w(f"chart {ch['name']}:\n")
        for k, v in ch["sections"].items():
            w(f"  {k} = {v}\n")
        w(f"  branch = {ch['branch_polynomial']}\n")
    for d in c.diagnostics:
        w(f"note       {d}\n")
    if report.expect is not None:
        w(f"expected   {report.expect}: {'match' if report.outcome == 'ok' else 'MISMATCH'}\n")


# ---------------------------------------------------------------------------
# commands

def cmd_verify(args, out: TextIO, err: TextIO) -> int:
    path = Path(args.file)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    try:
        cf = parse_cover_file(raw.decode(), str(path))
        budget = args.spair_budget if args.spair_budget is not None else cf.options.get("spair_budget", DEFAULT_SPAIR_BUDGET)
        chart = args.chart or cf.options.get("chart")
        if chart not in (None, "V0", "V1"):
            raise CoverFileError(f"unknown chart {chart!r}", cf.lines.get("chart"), str(path))
        report = build_report(cf, raw, str(path), budget, args.expect, chart)
    except (CoverFileError, UnicodeDecodeError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ResourceCapExceeded as exc:
        err.write(f"error: {exc}; raise --spair-budget\n")
        return EXIT_BUDGET
    if args.json:
        out.write(report.to_json())
    else:
        render_report(report, out)
    return exit_status(report)


def _repro_dataset(name: str, as_json: bool, out: TextIO, err: TextIO) -> int:
    text = dataset_text(name)
    current, pinned = dataset_hash(name), pinned_hashes().get(name)
    drift = current != pinned
    cf = parse_cover_file(text, f"{name}.cover")
    try:
        report = build_report(cf, text.encode(), f"builtin:{name}", DEFAULT_SPAIR_BUDGET, cf.expect)
    except ResourceCapExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXIT_BUDGET
    report.extra["dataset"] = {"sha256": current, "pinned": pinned, "drift": drift}
    if as_json:
        out.write(report.to_json())
    else:
        render_report(report, out)
        if drift:
            out.write(f"dataset    hash {current} differs from pinned {pinned}\n")
    return EXIT_MISMATCH if drift else exit_status(report)


def _repro_sessions(as_json: bool, out: TextIO) -> int:
    sessions = replay_sessions()
    ok = all(s.ok for s in sessions)
    if as_json:
        doc = {
            "schema": SCHEMA,
            "sessions": [
                {
                    "name": s.name,
                    "steps": [{"label": a, "value": b} for a, b in s.steps],
                    "checks": [c.to_dict() for c in s.checks],
                    "ok": s.ok,
                }
                for s in sessions
            ],
            "ok": ok,
        }
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return EXIT_OK if ok else EXIT_MISMATCH
    for s in sessions:
        out.write(f"== session {s.name}\n")
        for label, text in s.steps:
            out.write(f"{label:22s} {text}\n")
        for c in s.checks:
            line = f"[{c.status}] {c.key}"
            if c.note:
                line += f"  ({c.note})"
            out.write(line + "\n")
            if c.status == "mismatch":
                out.write(f"    expected {c.expected}\n    computed {c.computed}\n")
    out.write("sessions: " + ("clean apart from recorded errata\n" if ok else "MISMATCH\n"))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_repro(args, out: TextIO, err: TextIO) -> int:
    if args.name == "sessions":
        return _repro_sessions(args.json, out)
    return _repro_dataset(args.name, args.json, out, err)


def cmd_h0(args, out: TextIO, err: TextIO) -> int:
    out.write(f"{h0(DivisorClass(args.a, args.b))}\n")
    return EXIT_OK


def cmd_basis(args, out: TextIO, err: TextIO) -> int:
    d = DivisorClass(args.a, args.b)
    if d.a < 0:
        out.write("0\n")
        return EXIT_OK
    polys = basis_polys(d)
    out.write(f"{len(polys)}\n")
    for p in polys:
        out.write(f"{p}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tricover", description="Triple covers of the Hirzebruch surface F_3.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="classify the cover described in a file")
    v.add_argument("file")
    v.add_argument("--json", action="store_true", help="emit the JSON report")
    v.add_argument("--expect", choices=CASES, help="fail unless this case label is obtained")
    v.add_argument("--chart", choices=("V0", "V1"), help="also show the data on this chart")
    v.add_argument("--spair-budget", type=int, default=None, help=f"S-pair cap (default {DEFAULT_SPAIR_BUDGET})")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("repro", help="replay a built-in dataset or the recorded sessions")
    r.add_argument("name", choices=DATASETS + ("sessions",))
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_repro)

    for name, func, text in (("h0", cmd_h0, "dimension of H^0(a*sigma_inf + b*R)"), ("basis", cmd_basis, "monomial basis")):
        p = sub.add_parser(name, help=text)
        p.add_argument("a", type=int)
        p.add_argument("b", type=int)
        p.set_defaults(func=func)
    return ap


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args, out, err)


if __name__ == "__main__":
    raise SystemExit(main())
