"""Ranked-list reports: CSV and a self-contained sortable HTML page.

Both formats share one row builder so their numeric values are identical
at every verbosity: scores carry two decimals, raw measures four
significant digits (records keep full precision).
"""

import csv
import html
from datetime import datetime
from pathlib import Path
from typing import Optional, Sequence

from gitrank.errors import NoMeasuredRepos
from gitrank.scoring import MEASURE_ORDER

# Reported label for the style column records the SLoC denominator.
MEASURE_LABELS = {measure: measure for measure in MEASURE_ORDER}
MEASURE_LABELS["style_density"] = "style_errors_per_sloc"


def fmt_score(value: float) -> str:
    return f"{value:.2f}"


def fmt_measure(value: float) -> str:
    return f"{value:.4g}"


def table_columns(verbosity: int) -> list[str]:
    columns = ["rank", "name", "overall"]
    if verbosity >= 1:
        columns += ["quality", "maintainability", "popularity"]
    if verbosity >= 2:
        columns += [MEASURE_LABELS[m] for m in MEASURE_ORDER]
    return columns


def table_rows(ranked, verbosity: int) -> list[list[str]]:
    rows = []
    for position, (card, measures) in enumerate(ranked, start=1):
        row = [str(position), card.name, fmt_score(card.overall)]
        if verbosity >= 1:
            row += [
                fmt_score(card.quality),
                fmt_score(card.maintainability),
                fmt_score(card.popularity),
            ]
        if verbosity >= 2:
            values = measures.as_dict()
            row += [fmt_measure(values[m]) for m in MEASURE_ORDER]
        rows.append(row)
    return rows


def emit_csv(ranked, verbosity: int, out: Path) -> Path:
    """RFC-4180 CSV with a header row."""
    if not ranked:
        raise NoMeasuredRepos("cannot emit a report for an empty ranking")
    out = Path(out)
    with open(out, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(table_columns(verbosity))
        writer.writerows(table_rows(ranked, verbosity))
    return out


_HTML_PAGE = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>{title}</title>
<style>
body {{ font-family: sans-serif; margin: 2em; color: #222; }}
table {{ border-collapse: collapse; margin-top: 1em; }}
th, td {{ border: 1px solid #bbb; padding: 0.35em 0.7em; text-align: right; }}
th {{ background: #f0f0f0; cursor: pointer; user-select: none; }}
td.name {{ text-align: left; font-family: monospace; }}
tr:nth-child(even) {{ background: #fafafa; }}
.meta {{ color: #555; }}
.dropped {{ margin-top: 2em; }}
.dropped td {{ text-align: left; }}
</style>
</head>
<body>
<h1>{title}</h1>
<p class="meta">evaluated_at: {evaluated_at} &middot; ranked: {ranked_count} &middot; dropped: {dropped_count}</p>
<table id="ranking">
<thead><tr>{header}</tr></thead>
<tbody>
{body}
</tbody>
</table>
{dropped_section}
<script>
document.querySelectorAll("#ranking th").forEach(function (th, col) {{
  th.addEventListener("click", function () {{
    var tbody = th.closest("table").querySelector("tbody");
    var rows = Array.from(tbody.querySelectorAll("tr"));
    var asc = th.dataset.asc !== "true";
    th.dataset.asc = asc;
    rows.sort(function (a, b) {{
      var x = a.children[col].textContent, y = b.children[col].textContent;
      var nx = parseFloat(x), ny = parseFloat(y);
      var cmp = (!isNaN(nx) && !isNaN(ny)) ? nx - ny : x.localeCompare(y);
      return asc ? cmp : -cmp;
    }});
    rows.forEach(function (r) {{ tbody.appendChild(r); }});
  }});
}});
</script>
</body>
</html>
"""

_DROPPED_SECTION = """<div class="dropped">
<h2>Dropped repositories</h2>
<table>
<thead><tr><th>name</th><th>reason</th></tr></thead>
<tbody>
{rows}
</tbody>
</table>
</div>"""


def emit_html(
    ranked,
    verbosity: int,
    out: Path,
    evaluated_at: Optional[str] = None,
    dropped: Sequence = (),
    title: str = "Repository ranking",
) -> Path:
    """Single self-contained document; no external resources."""
    if not ranked:
        raise NoMeasuredRepos("cannot emit a report for an empty ranking")
    out = Path(out)
    columns = table_columns(verbosity)
    header = "".join(f"<th>{html.escape(c)}</th>" for c in columns)
    body_rows = []
    for row in table_rows(ranked, verbosity):
        cells = []
        for column, value in zip(columns, row):
            css = ' class="name"' if column == "name" else ""
            cells.append(f"<td{css}>{html.escape(value)}</td>")
        body_rows.append("<tr>" + "".join(cells) + "</tr>")

    if dropped:
        dropped_rows = "\n".join(
            "<tr><td>{}</td><td>{}</td></tr>".format(
                html.escape(r.name), html.escape(r.reason or "")
            )
            for r in dropped
        )
        dropped_section = _DROPPED_SECTION.format(rows=dropped_rows)
    else:
        dropped_section = ""

    page = _HTML_PAGE.format(
        title=html.escape(title),
        evaluated_at=html.escape(evaluated_at or datetime.now().isoformat()),
        ranked_count=len(ranked),
        dropped_count=len(dropped),
        header=header,
        body="\n".join(body_rows),
        dropped_section=dropped_section,
    )
    out.write_text(page)
    return out
