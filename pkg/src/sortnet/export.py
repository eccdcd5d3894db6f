"""Shared CSV/JSON layouts for exact rationals, estimates and point sets.

Exact rows carry their parameters first, then ``numerator``,
``denominator`` and ``decimal`` (12 significant digits).  Column order
and JSON key names are fixed.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable, Sequence

ExactRow = tuple[dict, Fraction]


def fmt_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_decimal(x) -> str:
    return f"{float(x):.12g}"


def exact_csv(rows: Sequence[ExactRow]) -> str:
    params = list(rows[0][0]) if rows else []
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(params + ["numerator", "denominator", "decimal"])
    for p, x in rows:
        x = Fraction(x)
        w.writerow([p[k] for k in params] + [x.numerator, x.denominator, fmt_decimal(x)])
    return buf.getvalue()


def exact_json(rows: Sequence[ExactRow]) -> str:
    out = []
    for p, x in rows:
        x = Fraction(x)
        out.append({"parameters": p, "numerator": x.numerator, "denominator": x.denominator,
                    "value": fmt_rational(x), "decimal": float(x)})
    return json.dumps(out, indent=2)


def exact_text(rows: Sequence[ExactRow]) -> str:
    lines = []
    for p, x in rows:
        label = " ".join(f"{k}={v}" for k, v in p.items())
        lines.append(f"{label}  {fmt_rational(x)}  ({fmt_decimal(x)})".lstrip())
    return "\n".join(lines) + "\n"


def render_exact(rows: Sequence[ExactRow], fmt: str = "text") -> str:
    return {"text": exact_text, "csv": exact_csv, "json": exact_json}[fmt](rows)


def points_csv(points: Iterable[tuple[float, float]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y"])
    for x, y in points:
        w.writerow([repr(float(x)), repr(float(y))])
    return buf.getvalue()


def read_points_csv(path) -> list[tuple[float, float]]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if rows and rows[0] and rows[0][0].strip().lower() == "x":
        rows = rows[1:]
    return [(float(r[0]), float(r[1])) for r in rows if r]


def path_csv(paths) -> str:
    """Coupled urn paths as ``path,n,s`` rows (``s`` is the coupled first swap at size ``n``)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["path", "n", "s"])
    for p, row in enumerate(paths):
        for n, s in enumerate(row, start=2):
            w.writerow([p, n, int(s)])
    return buf.getvalue()
