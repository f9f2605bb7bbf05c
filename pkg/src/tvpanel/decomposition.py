"""Split fitted growth into per-variable contributions and cumulative paths.

Each variable's contribution to a country's fitted one-year change is its
slope times its lagged level plus an equal 1/d share of the interval
intercept; summed over variables this reproduces the fitted change. The
cumulative path of one variable starts at an equal 1/d share of the
country's base-year level and accumulates that variable's contributions,
so all component paths of a country start at the same point and their sum
tracks the regression-implied level.

The equal intercept split makes individual component levels depend on the
number of variables d; comparisons across datasets with different variable
counts are not meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, MismatchedYears
from .estimator import CoefficientPath, FitDiagnostics
from .panel import PanelDataset, _readonly


@dataclass(frozen=True, eq=False)
class DecompositionResult:
    """Contribution cube, cumulative component paths and base levels.

    ``component_deltas[i, t, j]`` is variable j's contribution to country
    i's fitted change over interval ``years[t] -> years[t+1]``;
    ``kappa[i, s, j]`` is the cumulative component path at year
    ``years[s]``, seeded at ``base_value[i] / d``.
    """

    countries: tuple[str, ...]
    years: tuple[int, ...]
    codes: tuple[str, ...]
    component_deltas: np.ndarray  # (N, T-1, d)
    kappa: np.ndarray  # (N, T, d)
    base_value: np.ndarray  # (N,)

    def __post_init__(self):
        object.__setattr__(self, "countries", tuple(self.countries))
        object.__setattr__(self, "years", tuple(int(y) for y in self.years))
        object.__setattr__(self, "codes", tuple(self.codes))
        object.__setattr__(self, "component_deltas", _readonly(self.component_deltas))
        object.__setattr__(self, "kappa", _readonly(self.kappa))
        object.__setattr__(self, "base_value", _readonly(self.base_value))

    @property
    def regressed_levels(self) -> np.ndarray:
        """Sum of component paths per country-year, (N, T).

        This is the regression-implied level series; summing the kappa cube
        over variables is the canonical reduction shared with the
        reconstruction module, so totals agree bit-for-bit everywhere.
        """
        return np.sum(self.kappa, axis=-1)


def _check_cover(path: CoefficientPath, panel: PanelDataset) -> None:
    expected = tuple(zip(panel.years[:-1], panel.years[1:]))
    if path.intervals != expected:
        raise DimensionMismatch("coefficient path does not cover the panel intervals")
    if path.codes != panel.codes:
        raise DimensionMismatch(
            f"coefficient path columns {path.codes} do not match panel variables {panel.codes}"
        )


def component_deltas(path: CoefficientPath, panel: PanelDataset) -> np.ndarray:
    """Per-variable contributions to every fitted one-year change.

    Returns an (N, T-1, d) cube whose entry (i, t, j) is
    ``alpha[t] / d + beta[t, j] * x[i, t, j]``; summing over j reproduces
    the fitted change of interval t up to float rounding.
    """
    _check_cover(path, panel)
    d = panel.n_vars
    lagged = panel.values[:, :-1, :]
    return path.alpha[None, :, None] / d + path.beta[None, :, :] * lagged


def component_paths(deltas: np.ndarray, base_value: np.ndarray) -> np.ndarray:
    """Cumulate contributions into per-variable level paths.

    ``kappa[i, s, j] = base_value[i] / d + sum of deltas[i, :s, j]``; the
    base-year entry is exactly ``base_value / d`` in every component.
    """
    deltas = np.asarray(deltas, dtype=float)
    base_value = np.asarray(base_value, dtype=float)
    n, m, d = deltas.shape
    if base_value.shape != (n,):
        raise DimensionMismatch(f"base values have shape {base_value.shape}, expected ({n},)")
    seed = base_value[:, None] / d
    kappa = np.empty((n, m + 1, d))
    kappa[:, 0, :] = seed
    kappa[:, 1:, :] = seed[:, None, :] + np.cumsum(deltas, axis=1)
    return kappa


def decompose(path: CoefficientPath, panel: PanelDataset) -> DecompositionResult:
    """Contribution cube plus cumulative paths for a fitted panel."""
    deltas = component_deltas(path, panel)
    kappa = component_paths(deltas, panel.base_values)
    return DecompositionResult(
        countries=panel.countries,
        years=panel.years,
        codes=panel.codes,
        component_deltas=deltas,
        kappa=kappa,
        base_value=panel.base_values,
    )


def relative_contribution(kappa: np.ndarray, component: int) -> np.ndarray:
    """Signed squared share of one component in the sum of squared components.

    ``gamma[i, s] = sign(kappa[i, s, j]) * kappa[i, s, j]**2 / sum_k kappa[i, s, k]**2``
    lies in [-1, 1] and hits +/-1 exactly when the chosen component is the
    only nonzero one. Country-years where every component is zero have no
    defined value and are reported as NaN gaps, never as 0.
    """
    kappa = np.asarray(kappa, dtype=float)
    n, t, d = kappa.shape
    if not 0 <= component < d:
        raise DimensionMismatch(f"component index {component} outside 0..{d - 1}")
    sq = kappa**2
    denom = np.sum(sq, axis=-1)
    target = kappa[:, :, component]
    with np.errstate(invalid="ignore", divide="ignore"):
        gamma = np.where(denom > 0.0, np.sign(target) * sq[:, :, component] / denom, np.nan)
    return gamma


@dataclass(frozen=True, eq=False)
class ContributionTable:
    """Final-year contribution report: one row per country.

    ``columns`` holds the per-variable codes plus ``Total`` ordered by each
    column's cross-country average (descending), with the accumulated error
    column ``error_acc`` pinned last; ``cells[i, k]`` is the value of column
    k for country i.
    """

    year: int
    countries: tuple[str, ...]
    columns: tuple[str, ...]
    cells: np.ndarray  # (N, len(columns))

    def __post_init__(self):
        object.__setattr__(self, "countries", tuple(self.countries))
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "cells", _readonly(self.cells))

    def column(self, name: str) -> np.ndarray:
        return self.cells[:, self.columns.index(name)]


def contribution_table(
    result: DecompositionResult, diagnostics: FitDiagnostics, year: int
) -> ContributionTable:
    """Per-country component contributions at one year, plus Total and error.

    Total is the sum of the component paths (the same reduction used by the
    reconstruction module, so the identity Total = regressed level holds
    bit-for-bit). The accumulated error is the regression-minus-data gap,
    i.e. the negated running sum of interval residuals through ``year``.
    """
    if year not in result.years:
        raise MismatchedYears(f"year {year} is not covered by the panel ({result.years[0]}..{result.years[-1]})")
    s = result.years.index(year)

    kappa_y = result.kappa[:, s, :]
    total = np.sum(kappa_y, axis=-1)
    error_acc = -np.sum(diagnostics.residuals[:, :s], axis=1)

    named = [(code, kappa_y[:, j]) for j, code in enumerate(result.codes)]
    named.append(("Total", total))
    named.sort(key=lambda item: (-float(item[1].mean()), item[0]))
    named.append(("error_acc", error_acc))

    columns = tuple(name for name, _ in named)
    cells = np.column_stack([values for _, values in named])
    return ContributionTable(year=year, countries=result.countries, columns=columns, cells=cells)
