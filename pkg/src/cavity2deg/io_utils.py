"""Small shared I/O helpers: repeatable-to-the-byte CSV emission."""

from __future__ import annotations

import io
from pathlib import Path
from typing import Iterable, Sequence

__all__ = ["format_float", "write_csv"]

FLOAT_DIGITS = 17   # round-trips IEEE doubles exactly


def format_float(x: float, digits: int = FLOAT_DIGITS) -> str:
    """Fixed significant-digit rendering; integers stay integral-looking."""
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    return repr(float(x)) if digits >= FLOAT_DIGITS else f"{float(x):.{digits}g}"


def write_csv(target, columns: Sequence[str], rows: Iterable[Sequence],
              digits: int = FLOAT_DIGITS) -> None:
    """Write rows as CSV to a path or text stream.

    Floats are rendered with repr (17 significant digits) by default so a
    written table reloads bit-exactly; no quoting is ever needed for numeric
    tables so the writer stays trivially deterministic.
    """
    own = isinstance(target, (str, Path))
    fh = open(target, "w", encoding="utf-8", newline="") if own else target
    try:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(
                format_float(v, digits) if isinstance(v, float) else str(v)
                for v in row) + "\n")
    finally:
        if own:
            fh.close()


def read_csv(source) -> tuple[list[str], list[list[float]]]:
    """Inverse of write_csv for purely numeric tables."""
    own = isinstance(source, (str, Path))
    fh = open(source, "r", encoding="utf-8") if own else source
    try:
        text = fh.read()
    finally:
        if own:
            fh.close()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = lines[0].split(",")
    rows = [[float(tok) for tok in ln.split(",")] for ln in lines[1:]]
    return header, rows
