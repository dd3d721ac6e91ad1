"""JSON and CSV renderings shared by the command line tools."""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .conic import Cell
from .exact import Constraint, format_rational

__all__ = [
    "class_key",
    "constraint_to_json",
    "cell_to_json",
    "signature_rows",
    "signatures_to_csv",
    "classes_to_csv",
]


def class_key(klass: Sequence[int]) -> str:
    """``"1,0"`` style rendering of a class vector (empty for rank 0)."""
    return ",".join(str(v) for v in klass)


def constraint_to_json(c: Constraint) -> dict:
    return {
        "coefficients": [format_rational(v) for v in c.coefficients],
        "sense": c.sense,
        "bound": format_rational(c.bound),
    }


def cell_to_json(cell: Cell) -> dict:
    return {"dim": cell.dim, "constraints": [constraint_to_json(c) for c in cell.constraints]}


def signature_rows(table: Mapping[tuple[int, ...], Fraction]) -> list[dict]:
    return [
        {"class": list(k), "volume": format_rational(v), "approx": float(v)}
        for k, v in table.items()
    ]


def signatures_to_csv(table: Mapping[tuple[int, ...], Fraction]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["class", "volume", "approx"])
    for k, v in table.items():
        w.writerow([class_key(k), format_rational(v), repr(float(v))])
    return buf.getvalue()


def classes_to_csv(classes: Iterable[Sequence[int]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["class"])
    for k in classes:
        w.writerow([class_key(k)])
    return buf.getvalue()
