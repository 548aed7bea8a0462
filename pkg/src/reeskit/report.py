"""Report serialization: JSON, delimited summary, and a rendered figure.

A verification run produces a list of :class:`reeskit.verifier.Report`
values.  ``write_report_files`` persists them three ways side by side:
the structured JSON document (the machine contract), a CSV summary with
one row per check, and a PNG bar chart of elapsed time per check coloured
by verdict.  Timing fields are informative and are the only
non-deterministic bytes in the outputs.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Optional, Sequence

VERDICT_COLORS = {"pass": "#2e7d32", "fail": "#c62828", "aborted": "#ef6c00"}


def reports_to_json(reports: Sequence, meta: Optional[dict] = None) -> dict:
    counts = {"pass": 0, "fail": 0, "aborted": 0}
    for r in reports:
        counts[r.verdict] = counts.get(r.verdict, 0) + 1
    return {
        "tool": "reeskit",
        "meta": meta or {},
        "summary": counts,
        "reports": [r.to_json() for r in reports],
    }


def write_json(reports: Sequence, path: Path, meta: Optional[dict] = None) -> None:
    path.write_text(
        json.dumps(reports_to_json(reports, meta), indent=2, sort_keys=False) + "\n",
        encoding="utf-8",
    )


def write_csv(reports: Sequence, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kind", "verdict", "elapsed_ms", "instance", "detail"])
        for r in reports:
            detail = r.evidence.get("reason") or r.evidence.get("error") or ""
            writer.writerow(
                [
                    r.kind,
                    r.verdict,
                    f"{r.elapsed_ms:.1f}",
                    json.dumps(r.instance, sort_keys=True),
                    detail,
                ]
            )


def render_figure(reports: Sequence, path: Path) -> None:
    """Horizontal bar chart of per-check wall time, coloured by verdict."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = []
    seen: dict = {}
    for r in reports:
        seen[r.kind] = seen.get(r.kind, 0) + 1
        suffix = f" #{seen[r.kind]}" if seen[r.kind] > 1 else ""
        labels.append(r.kind + suffix)
    times = [max(r.elapsed_ms, 0.1) for r in reports]
    colors = [VERDICT_COLORS.get(r.verdict, "#455a64") for r in reports]

    height = max(2.0, 0.4 * len(reports) + 1.2)
    fig, ax = plt.subplots(figsize=(8, height))
    ypos = range(len(reports))
    ax.barh(list(ypos), times, color=colors)
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(labels, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("elapsed [ms]")
    ax.set_title("verification checks")
    handles = [
        plt.Rectangle((0, 0), 1, 1, color=c) for c in VERDICT_COLORS.values()
    ]
    ax.legend(handles, list(VERDICT_COLORS.keys()), fontsize=8, loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report_files(
    reports: Sequence, outdir: Path, stem: str = "report", meta: Optional[dict] = None
) -> dict:
    """Write report.json, report.csv and report.png into ``outdir``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = {
        "json": outdir / f"{stem}.json",
        "csv": outdir / f"{stem}.csv",
        "png": outdir / f"{stem}.png",
    }
    write_json(reports, paths["json"], meta)
    write_csv(reports, paths["csv"])
    render_figure(reports, paths["png"])
    return paths


def text_summary(reports: Sequence) -> str:
    lines = []
    for r in reports:
        lines.append(f"{r.verdict.upper():7s} {r.kind} ({r.elapsed_ms:.0f} ms)")
        if r.verdict != "pass":
            reason = r.evidence.get("reason") or r.evidence.get("error")
            if reason:
                lines.append(f"        {reason}")
    counts = {"pass": 0, "fail": 0, "aborted": 0}
    for r in reports:
        counts[r.verdict] = counts.get(r.verdict, 0) + 1
    lines.append(
        f"total: {len(reports)} checks, {counts['pass']} pass, "
        f"{counts['fail']} fail, {counts['aborted']} aborted"
    )
    return "\n".join(lines)
