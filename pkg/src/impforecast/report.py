"""Render a study report as aligned text tables, CSV, or JSON."""

from __future__ import annotations

from dataclasses import dataclass

from .domain import KIND_LONG_NAMES
from .errors import UnsupportedFormatError
from .pipeline import StudyReport, report_to_json

FORMATS = ("text", "csv", "json")


@dataclass(frozen=True)
class RenderOptions:
    format: str = "text"
    decimals_rmse: int = 6
    decimals_pct: int = 2

    def __post_init__(self):
        if not 0 <= self.decimals_rmse <= 10 or not 0 <= self.decimals_pct <= 10:
            raise ValueError("decimals must be in [0, 10]")


def _channel_label(channel: int) -> str:
    return f"EI_1M_{channel}"


def _kind_cell(kind) -> str:
    return f"{KIND_LONG_NAMES[kind]} ({kind.value})"


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = [" | ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


def render_selection_table(report: StudyReport, opts: RenderOptions = RenderOptions()) -> str:
    """One row per channel: winning algorithm, feature group, holdout RMSE."""
    rows = [["Label", "Best Algorithm", "Features Group", "RMSE"]]
    for e in sorted(report.entries, key=lambda e: e.channel):
        rows.append(
            [
                _channel_label(e.channel),
                _kind_cell(e.kind),
                str(e.group.number),
                f"{e.rmse:.{opts.decimals_rmse}f}",
            ]
        )
    return _table(rows)


def render_band_table(report: StudyReport, opts: RenderOptions = RenderOptions()) -> str:
    """Per-channel error percentages by band, plus the >=3 overflow column."""
    header = ["Label", "0-1", "1-2", "2-3", "0-2", "0-3", ">=3"]
    rows = [header]
    for e in sorted(report.entries, key=lambda e: e.channel):
        b = e.bands
        pct = lambda v: f"{v:.{opts.decimals_pct}f}"
        rows.append(
            [
                _channel_label(e.channel),
                pct(b.pct[0]),
                pct(b.pct[1]),
                pct(b.pct[2]),
                pct(b.cum_0_2),
                pct(b.cum_0_3),
                pct(b.pct[3]),
            ]
        )
    return _table(rows)


def _csv_rows(report: StudyReport, opts: RenderOptions) -> str:
    header = (
        "label,kind,group,rmse,n_test,pct_0_1,pct_1_2,pct_2_3,pct_ge_3,cum_0_2,cum_0_3"
    )
    lines = [header]
    for e in sorted(report.entries, key=lambda e: e.channel):
        b = e.bands
        pct = lambda v: f"{v:.{opts.decimals_pct}f}"
        lines.append(
            ",".join(
                [
                    _channel_label(e.channel),
                    e.kind.value,
                    str(e.group.number),
                    f"{e.rmse:.{opts.decimals_rmse}f}",
                    str(b.n_test),
                    pct(b.pct[0]),
                    pct(b.pct[1]),
                    pct(b.pct[2]),
                    pct(b.pct[3]),
                    pct(b.cum_0_2),
                    pct(b.cum_0_3),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def export_study(report: StudyReport, opts: RenderOptions = RenderOptions()) -> bytes:
    """Byte-stable export of a study report in the requested format."""
    if opts.format == "json":
        return report_to_json(report).encode("utf-8")
    if opts.format == "csv":
        return _csv_rows(report, opts).encode("utf-8")
    if opts.format == "text":
        text = render_selection_table(report, opts) + "\n" + render_band_table(report, opts)
        return text.encode("utf-8")
    raise UnsupportedFormatError(f"unsupported format {opts.format!r}; expected one of {FORMATS}")
