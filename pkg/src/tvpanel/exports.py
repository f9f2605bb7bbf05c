"""Deterministic CSV and JSON writers for every pipeline artifact.

All files are UTF-8 with LF line endings and floats formatted to 6
significant digits, so repeated runs on identical inputs are byte-identical.
Plot rendering is out of scope: these files are the data behind the usual
figures (scatter + trend, rank bump chart, level series, component paths,
relative contribution).
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .decomposition import ContributionTable, DecompositionResult
from .estimator import CoefficientPath, FitDiagnostics
from .panel import PanelDataset, RankTable, Transform
from .reconstruction import ReconstructionSet


def fmt(value: float) -> str:
    """Render a float with 6 significant digits (empty string for NaN gaps)."""
    value = float(value)
    if math.isnan(value):
        return ""
    return format(value, ".6g")


def _writer(path: Path):
    fh = open(path, "w", encoding="utf-8", newline="")
    return fh, csv.writer(fh, lineterminator="\n")


def write_panel_csv(panel: PanelDataset, path: str | Path) -> Path:
    """Long-format dump of the (transformed) cube; re-parseable by ingest."""
    path = Path(path)
    fh, out = _writer(path)
    with fh:
        out.writerow(["country", "year", "variable", "value"])
        for country, year, code, value in panel.to_rows():
            out.writerow([country, year, code, fmt(value)])
    return path


def write_manifest(panel: PanelDataset, path: str | Path) -> Path:
    """TOML manifest matching a panel dump.

    The cube already holds post-transform levels, so every variable is
    declared ``level`` here; feeding the dump plus this manifest back
    through ingest reproduces the panel.
    """
    path = Path(path)
    lines = [f"base_year = {panel.base_year}", f'target = "{panel.target_code}"', ""]
    for spec in panel.specs:
        lines.append("[[variables]]")
        lines.append(f'code = "{spec.code}"')
        lines.append(f'label = "{spec.label}"')
        lines.append(f'transform = "{Transform.LEVEL.value}"')
        lines.append(f'unit = "{spec.unit}"')
        lines.append("")
    path.write_text("\n".join(lines), encoding="utf-8", newline="\n")
    return path


def write_coefficients(
    path_obj: CoefficientPath, diagnostics: FitDiagnostics, path: str | Path
) -> Path:
    path = Path(path)
    fh, out = _writer(path)
    with fh:
        out.writerow(
            ["interval_start", "interval_end", "alpha"]
            + [f"beta_{code}" for code in path_obj.codes]
            + ["r_squared", "condition"]
        )
        for k, (y0, y1) in enumerate(path_obj.intervals):
            out.writerow(
                [y0, y1, fmt(path_obj.alpha[k])]
                + [fmt(b) for b in path_obj.beta[k]]
                + [fmt(diagnostics.r_squared[k]), fmt(diagnostics.condition[k])]
            )
    return path


def write_residuals(
    countries, intervals, diagnostics: FitDiagnostics, path: str | Path
) -> Path:
    path = Path(path)
    fh, out = _writer(path)
    with fh:
        out.writerow(["country", "interval_start", "interval_end", "residual"])
        for i, country in enumerate(countries):
            for k, (y0, y1) in enumerate(intervals):
                out.writerow([country, y0, y1, fmt(diagnostics.residuals[i, k])])
    return path


def write_kappa(result: DecompositionResult, path: str | Path) -> Path:
    path = Path(path)
    fh, out = _writer(path)
    with fh:
        out.writerow(["country", "year", "component", "kappa"])
        for i, country in enumerate(result.countries):
            for s, year in enumerate(result.years):
                for j, code in enumerate(result.codes):
                    out.writerow([country, year, code, fmt(result.kappa[i, s, j])])
    return path


def write_gamma(countries, years, gamma: np.ndarray, path: str | Path) -> Path:
    """Relative-contribution series; undefined country-years stay empty."""
    path = Path(path)
    fh, out = _writer(path)
    with fh:
        out.writerow(["country", "year", "gamma"])
        for i, country in enumerate(countries):
            for s, year in enumerate(years):
                out.writerow([country, year, fmt(gamma[i, s])])
    return path


def write_series(recon: ReconstructionSet, path: str | Path) -> Path:
    path = Path(path)
    fh, out = _writer(path)
    with fh:
        out.writerow(["country", "year", "gdp_data", "gdp_regr", "gdp_regr_full", "error_acc"])
        for i, country in enumerate(recon.countries):
            for s, year in enumerate(recon.years):
                out.writerow(
                    [
                        country,
                        year,
                        fmt(recon.gdp_data[i, s]),
                        fmt(recon.gdp_regr[i, s]),
                        fmt(recon.gdp_regr_full[i, s]),
                        fmt(recon.error_acc[i, s]),
                    ]
                )
    return path


def write_table_csv(table: ContributionTable, path: str | Path) -> Path:
    path = Path(path)
    fh, out = _writer(path)
    with fh:
        out.writerow(["country"] + list(table.columns))
        for i, country in enumerate(table.countries):
            out.writerow([country] + [fmt(v) for v in table.cells[i]])
    return path


def write_table_json(table: ContributionTable, path: str | Path) -> Path:
    """JSON mirror of the contribution-table CSV (same rounding)."""
    path = Path(path)
    doc = {
        "year": table.year,
        "columns": ["country"] + list(table.columns),
        "rows": [
            [country] + [None if math.isnan(float(v)) else float(fmt(v)) for v in table.cells[i]]
            for i, country in enumerate(table.countries)
        ],
    }
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    return path


def write_ranks(ranks: RankTable, path: str | Path) -> Path:
    path = Path(path)
    fh, out = _writer(path)
    with fh:
        out.writerow(["country", "year", "rank"])
        for i, country in enumerate(ranks.countries):
            for k, year in enumerate(ranks.years):
                out.writerow([country, year, int(ranks.ranks[i, k])])
    return path


def write_scatter(rows: list[tuple[str, int, float, float, float]], path: str | Path) -> Path:
    """Cross-sectional scatter points with the fitted trend value per country."""
    path = Path(path)
    fh, out = _writer(path)
    with fh:
        out.writerow(["country", "year", "gdp", "price", "trend"])
        for country, year, gdp, price, trend in rows:
            out.writerow([country, year, fmt(gdp), fmt(price), fmt(trend)])
    return path


def write_true_coefficients(path_obj: CoefficientPath, path: str | Path) -> Path:
    """Generating coefficients of a synthetic panel, for recovery comparisons."""
    path = Path(path)
    fh, out = _writer(path)
    with fh:
        out.writerow(
            ["interval_start", "interval_end", "alpha"] + [f"beta_{c}" for c in path_obj.codes]
        )
        for k, (y0, y1) in enumerate(path_obj.intervals):
            out.writerow([y0, y1, fmt(path_obj.alpha[k])] + [fmt(b) for b in path_obj.beta[k]])
    return path
