"""Text and JSON renderings of a verdict report."""

from __future__ import annotations

import json
from importlib import resources

from .config import Config
from .criterion import VerdictReport

REPORT_VERSION = "1.0"


def report_to_dict(report: VerdictReport, config: Config, text: str | None = None) -> dict:
    D = report.input
    return {
        "version": REPORT_VERSION,
        "input": {"text": text if text is not None else str(D), "canonical": str(D)},
        "verdict": report.overall,
        "normalized": None if report.normalized is None else str(report.normalized),
        "components": [c.to_dict() for c in report.components],
        "witnesses": [{"i": i, "j": j, **w.to_dict()} for i, j, w in report.witnesses],
        "shears": [s.to_dict() for s in report.shears],
        "flags": list(report.flags),
        "error": report.error,
        "config": config.to_dict(),
        "timings": {k: round(v, 6) for k, v in report.timings.items()},
    }


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def schema() -> dict:
    return json.loads(resources.files("twinprop").joinpath("data/report.schema.json").read_text(encoding="utf-8"))


def format_text(report: VerdictReport) -> str:
    lines = [f"derivation: {report.input}", f"verdict:    {report.overall}"]
    if report.error:
        lines.append(f"reason:     {report.error}")
    if report.shears:
        lines.append("shears:     " + ", ".join(_shear_text(s) for s in report.shears))
    if report.normalized is not None and report.shears:
        lines.append(f"normalized: {report.normalized}")
    for c in report.components:
        line = f"  component ({c.i},{c.j}): {c.status}"
        if c.witness is not None:
            w = c.witness
            if w.values:
                line += "  bad regular values t = " + ", ".join(str(v) for v in w.values)
            if w.eliminant is not None:
                line += f"  (eliminant {w.eliminant})"
        lines.append(line)
    for f in report.flags:
        lines.append(f"note: {f}")
    return "\n".join(lines)


def _shear_text(s) -> str:
    if s.kind == "swap-into-z1":
        return "z1 <- z1 + z2"
    return f"z2 <- {s.lam}*z2 + {s.mu}*z1"
