"""Rectangular numeric tables with named columns and their CSV form."""

from __future__ import annotations

import io
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ValidationError

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_.]*$")


def format_value(v: float) -> str:
    """12 significant digits; ``inf`` for the infinite flag, ``nan`` for undefined."""
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if v == 0.0:
        return "0"
    return format(v, ".12g")


@dataclass(frozen=True, eq=False)
class SweepTable:
    columns: tuple
    rows: np.ndarray

    def __post_init__(self):
        cols = tuple(self.columns)
        for c in cols:
            if not _IDENT.match(c):
                raise ValidationError(f"column name {c!r} is not an identifier")
        rows = np.array(self.rows, dtype=float)
        if rows.size == 0:
            rows = rows.reshape(0, len(cols))
        if rows.ndim != 2 or rows.shape[1] != len(cols):
            raise ValidationError(f"rows must have exactly {len(cols)} columns")
        rows.setflags(write=False)
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "rows", rows)

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]

    def __len__(self):
        return self.rows.shape[0]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        for r in self.rows:
            buf.write(",".join(format_value(v) for v in r) + "\n")
        return buf.getvalue()

    def write(self, path) -> None:
        Path(path).write_text(self.to_csv(), newline="\n")

    @classmethod
    def from_csv(cls, text: str) -> "SweepTable":
        lines = [ln for ln in text.splitlines() if ln]
        cols = tuple(lines[0].split(","))
        rows = [[float(t) for t in ln.split(",")] for ln in lines[1:]]
        return cls(cols, np.array(rows, dtype=float).reshape(len(rows), len(cols)))
