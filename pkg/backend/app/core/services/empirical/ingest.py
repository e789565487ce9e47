"""
Reading and writing intraday price CSV files.

Format: header ``t_min,price``, one record per line, t_min in decimal minutes from
session start, price in dollars.
"""

import io
import math
import re
from typing import BinaryIO

import pandas as pd
from loguru import logger
from pydantic import ValidationError

from app.core.exceptions import InputDataError
from app.models.empirical import PricePath, PricePoint

HEADER = ["t_min", "price"]

_PARSER_LINE = re.compile(r"line (\d+)")


def _missing(field) -> bool:
    return not isinstance(field, str) or not field.strip()


def _parse_number(raw, column: str, name: str, line: int) -> float:
    if _missing(raw):
        raise InputDataError(f"{column} is missing", path=name, line=line)
    try:
        value = float(raw.strip())
    except ValueError:
        raise InputDataError(f"{column} {raw!r} is not a number", path=name, line=line) from None
    if not math.isfinite(value):
        raise InputDataError(f"{column} must be finite", path=name, line=line)
    return value


def _read_table(text: str, name: str) -> pd.DataFrame:
    """Every line as raw strings; row i of the frame is line i + 1 of the file."""
    try:
        return pd.read_csv(
            io.StringIO(text),
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
        )
    except pd.errors.ParserError as e:
        match = _PARSER_LINE.search(str(e))
        line = int(match.group(1)) if match else None
        detail = str(e).strip().rsplit("C error: ", 1)[-1]
        raise InputDataError(detail, path=name, line=line) from None


def ingest_csv(source: BinaryIO | bytes, name: str = "<stream>") -> PricePath:
    """
    Parse and validate a price CSV.

    Args:
        source: Binary stream or bytes holding UTF-8 text
        name: Label used in error messages (usually the file path)

    Returns:
        Validated PricePath with source "ingested"

    Raises:
        InputDataError: empty input, bad header, malformed row or non-increasing time
    """
    data = source if isinstance(source, bytes) else source.read()
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise InputDataError(f"not UTF-8 text ({e.reason})", path=name) from None
    if not text.strip():
        raise InputDataError("empty file", path=name)

    table = _read_table(text, name)
    header = [h.strip() if isinstance(h, str) else "" for h in table.iloc[0]]
    if header != HEADER:
        raise InputDataError(f"expected header {','.join(HEADER)!r}", path=name, line=1)

    points: list[PricePoint] = []
    for index, row in table.iloc[1:].iterrows():
        line = int(index) + 1
        fields = list(row)
        if all(_missing(field) for field in fields):
            continue
        t = _parse_number(fields[0], "t_min", name, line)
        price = _parse_number(fields[1], "price", name, line)
        if price <= 0:
            raise InputDataError("price must be positive", path=name, line=line)
        if points and t <= points[-1].time:
            raise InputDataError(
                f"time {t!r} does not increase on {points[-1].time!r}", path=name, line=line
            )
        points.append(PricePoint(time=t, price=price))

    try:
        path = PricePath(points=points, source="ingested")
    except ValidationError:
        raise InputDataError(f"need at least 2 records, got {len(points)}", path=name) from None
    logger.debug(f"Ingested {len(points)} price points from {name}")
    return path


def emit_csv(path: PricePath) -> str:
    """Write a path in the input CSV format with round-trip float precision."""
    frame = pd.DataFrame({"t_min": path.times, "price": path.prices}, columns=HEADER)
    return frame.to_csv(index=False, lineterminator="\n")
