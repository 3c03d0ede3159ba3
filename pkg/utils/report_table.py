import json
import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

import numpy as np
import pandas as pd

FORMATS = ("plain", "delimited", "structured")


def format_cell(value, precision=2):
    """Exact rationals as p/q, floats rounded half away from zero."""
    if value is None:
        return ""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        quantum = Decimal(1).scaleb(-precision)
        rounded = Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP)
        if rounded == 0:
            rounded = abs(rounded)
        return f"{rounded:f}"
    return str(value)


@dataclass
class ReportTable:
    """A captioned table of typed cells backed by a DataFrame."""

    frame: pd.DataFrame
    caption: str = ""
    notes: list = field(default_factory=list)
    precision: int = None
    column_precision: dict = field(default_factory=dict)

    @property
    def columns(self):
        return [str(column) for column in self.frame.columns]

    def formatted(self, precision=None, default_precision=2):
        """Cells as text; an explicit precision overrides the per-column ones."""
        table_precision = self.precision if self.precision is not None else default_precision
        text = self.frame.copy()
        for column in text.columns:
            digits = precision if precision is not None else self.column_precision.get(column, table_precision)
            text[column] = [format_cell(value, digits) for value in self.frame[column]]
        return text.astype(str)

    def render(self, fmt="plain", precision=None, default_precision=2):
        text = self.formatted(precision, default_precision)
        if fmt == "delimited":
            return text.to_csv(index=False, lineterminator="\n")
        if fmt == "structured":
            document = {
                "caption": self.caption,
                "columns": self.columns,
                "rows": text.values.tolist(),
                "notes": list(self.notes),
            }
            return json.dumps(document, indent=2, ensure_ascii=False) + "\n"
        if fmt != "plain":
            raise ValueError(f"unknown output format {fmt!r}, expected one of {', '.join(FORMATS)}")

        lines = []
        if self.caption:
            lines.append(self.caption)
        if text.empty:
            lines.append("(no rows)")
        else:
            lines.append(text.to_string(index=False))
        lines.extend(self.notes)
        return "\n".join(lines) + "\n"
