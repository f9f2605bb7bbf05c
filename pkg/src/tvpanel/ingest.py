"""Long-format CSV parsing, per-variable transforms and the dataset manifest.

The input schema is a single long format: header ``country,year,variable,value``,
UTF-8, LF or CRLF line endings, ``.`` decimal separator, no thousands
separators. Wide exports from the usual statistical offices must be melted
to this shape first.

The manifest is a TOML file declaring the regression variables in column
order, each variable's transform, the target-source code and the base year::

    base_year = 1995
    target = "X1"

    [[variables]]
    code = "X1"
    label = "GDP per capita, PPS volume index"
    unit = "index points"

    [[variables]]
    code = "X3"
    label = "FDI net inflows, accumulated"
    unit = "% of GDP"
    transform = "cumulative"

``transform`` defaults to ``level``; the order of ``[[variables]]`` tables
defines the regressor column order.
"""

from __future__ import annotations

import csv
import io
import re
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np

from .errors import DuplicateObservation, GapInSeries, MalformedRow, ManifestError
from .panel import Row, Transform, VariableSpec, validate_specs

HEADER = ("country", "year", "variable", "value")

_YEAR_RE = re.compile(r"[+-]?\d+\Z")
_VALUE_RE = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\Z")


@dataclass(frozen=True)
class RawSeries:
    """One (country, variable) series of raw yearly observations."""

    country: str
    code: str
    points: tuple[tuple[int, float], ...]

    @property
    def years(self) -> tuple[int, ...]:
        return tuple(y for y, _ in self.points)


def parse_long_csv(stream: Iterable[str] | str) -> list[RawSeries]:
    """Parse a long-format CSV into per-(country, variable) series.

    Accepts a string or any iterable of lines. Whitespace around fields is
    trimmed; years must be integers and values plain decimals (scientific
    notation allowed, ``.`` decimal point). Series are returned in first
    appearance order with points sorted by year.

    Raises
    ------
    MalformedRow
        with the 1-based line number and a reason.
    DuplicateObservation
        if the same (country, variable, year) occurs twice.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.reader(stream)

    try:
        header = next(reader)
    except StopIteration:
        raise MalformedRow(1, "empty input, expected header country,year,variable,value") from None
    if tuple(h.strip().lower() for h in header) != HEADER:
        raise MalformedRow(1, f"expected header country,year,variable,value, got {','.join(header)!r}")

    grouped: dict[tuple[str, str], dict[int, float]] = {}
    for line_no, fields in enumerate(reader, start=2):
        if not fields or (len(fields) == 1 and not fields[0].strip()):
            continue  # blank line
        if len(fields) != 4:
            raise MalformedRow(line_no, f"expected 4 fields, got {len(fields)}")
        country, year_s, code, value_s = (f.strip() for f in fields)
        if not country:
            raise MalformedRow(line_no, "empty country code")
        if not code:
            raise MalformedRow(line_no, "empty variable code")
        if not _YEAR_RE.match(year_s):
            raise MalformedRow(line_no, f"year {year_s!r} is not an integer")
        if not _VALUE_RE.match(value_s):
            raise MalformedRow(line_no, f"value {value_s!r} is not a decimal number")
        year, value = int(year_s), float(value_s)

        points = grouped.setdefault((country, code), {})
        if year in points:
            raise DuplicateObservation(country, code, year, line_no)
        points[year] = value

    return [
        RawSeries(country, code, tuple(sorted(points.items())))
        for (country, code), points in grouped.items()
    ]


def apply_transform(series: RawSeries, transform: Transform) -> RawSeries:
    """Apply a variable transform to one raw series.

    LEVEL returns the series unchanged. CUMULATIVE requires consecutive
    years and replaces each value with the running sum of values from the
    first observation through that year (the first observation's own value
    starts the sum).
    """
    if transform is Transform.LEVEL:
        return series
    years = series.years
    for a, b in zip(years, years[1:]):
        if b - a != 1:
            raise GapInSeries(series.country, series.code, a)
    values = np.cumsum([v for _, v in series.points])
    return RawSeries(series.country, series.code, tuple(zip(years, (float(v) for v in values))))


def series_to_rows(series: Iterable[RawSeries]) -> list[Row]:
    """Flatten raw series into (country, year, code, value) rows."""
    return [(s.country, y, s.code, v) for s in series for y, v in s.points]


@dataclass(frozen=True)
class Manifest:
    """Parsed dataset manifest: variable order, transforms, target, base year."""

    base_year: int
    specs: tuple[VariableSpec, ...]

    @property
    def target_code(self) -> str:
        return next(s.code for s in self.specs if s.is_target)

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(s.code for s in self.specs)


def _manifest_str(table: dict, key: str, where: str) -> str:
    value = table.get(key)
    if not isinstance(value, str) or not value:
        raise ManifestError(f"{where}: {key!r} must be a non-empty string")
    return value


def load_manifest(path: str | Path) -> Manifest:
    """Read and validate a TOML dataset manifest."""
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except FileNotFoundError:
        raise ManifestError(f"manifest {path} does not exist") from None
    except tomllib.TOMLDecodeError as exc:
        raise ManifestError(f"manifest {path} is not valid TOML: {exc}") from None

    base_year = doc.get("base_year")
    if not isinstance(base_year, int) or isinstance(base_year, bool):
        raise ManifestError("manifest: base_year must be an integer")
    target = _manifest_str(doc, "target", "manifest")

    entries = doc.get("variables")
    if not isinstance(entries, list) or not entries:
        raise ManifestError("manifest: at least one [[variables]] table is required")

    specs = []
    for k, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise ManifestError(f"variables[{k}] must be a table")
        code = _manifest_str(entry, "code", f"variables[{k}]")
        transform_s = entry.get("transform", "level")
        try:
            transform = Transform(transform_s)
        except ValueError:
            raise ManifestError(
                f"variables[{k}] ({code}): transform must be 'level' or 'cumulative', got {transform_s!r}"
            ) from None
        specs.append(
            VariableSpec(
                code=code,
                label=str(entry.get("label", "")),
                transform=transform,
                unit=str(entry.get("unit", "")),
                is_target=(code == target),
            )
        )
    if target not in {s.code for s in specs}:
        raise ManifestError(f"manifest: target {target!r} is not among the declared variables")
    try:
        return Manifest(base_year=base_year, specs=validate_specs(specs))
    except Exception as exc:
        raise ManifestError(f"manifest: {exc}") from None
