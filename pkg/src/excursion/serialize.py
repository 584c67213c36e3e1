"""CSV serialization helpers shared by every emitter.

Floats are written with 17 significant digits: that is enough to
round-trip any double exactly, which is what makes output files
byte-reproducible across runs and re-feedable as input.
"""

from __future__ import annotations

__all__ = ["format_float", "format_value", "csv_line"]


def format_float(x: float) -> str:
    return "%.17g" % float(x)


def format_value(v) -> str:
    """One CSV cell: floats at full precision, None as an empty field."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_float(v)
    return str(v)


def csv_line(values) -> str:
    return ",".join(format_value(v) for v in values)
