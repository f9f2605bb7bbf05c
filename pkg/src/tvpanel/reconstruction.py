"""Three level-series reconstructions of the target variable plus error.

* data series: the observed levels (cumulating the empirical changes from
  the base year telescopes back to the raw series, so it is taken directly
  from the panel and matches it exactly);
* regressed series: base level plus cumulated fitted changes, with the
  lagged regressors kept empirical throughout;
* fully regressed series: a forward simulation in which the lagged target
  level is replaced by the simulation's own accumulated level while every
  other regressor stays empirical (only the target feeds back; cumulative
  flow regressors are deliberately not made endogenous);
* accumulated error: regressed minus data, pointwise.

Per-country series are cumulated chronologically so the error identity is
exact rather than approximate; countries never couple, so country-parallel
evaluation would be safe, while within a country the feedback makes the
dynamic run strictly sequential.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decomposition import component_deltas, component_paths
from .errors import DimensionMismatch
from .estimator import CoefficientPath
from .panel import GrowthSeries, PanelDataset, _readonly, empirical_growth


@dataclass(frozen=True, eq=False)
class ReconstructionSet:
    """The three reconstructed level series and the accumulated error."""

    countries: tuple[str, ...]
    years: tuple[int, ...]
    gdp_data: np.ndarray  # (N, T)
    gdp_regr: np.ndarray  # (N, T)
    gdp_regr_full: np.ndarray  # (N, T)
    error_acc: np.ndarray  # (N, T)

    def __post_init__(self):
        object.__setattr__(self, "countries", tuple(self.countries))
        object.__setattr__(self, "years", tuple(int(y) for y in self.years))
        for name in ("gdp_data", "gdp_regr", "gdp_regr_full", "error_acc"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))
        base = self.gdp_data[:, 0]
        if not (
            np.array_equal(self.gdp_regr[:, 0], base)
            and np.array_equal(self.gdp_regr_full[:, 0], base)
            and np.array_equal(self.error_acc[:, 0], np.zeros_like(base))
        ):
            raise DimensionMismatch("reconstructed series must agree at the base year")
        if not np.array_equal(self.error_acc, self.gdp_regr - self.gdp_data):
            raise DimensionMismatch("error series must equal gdp_regr - gdp_data pointwise")


def _check_growth(panel: PanelDataset, growth: GrowthSeries) -> None:
    if growth.countries != panel.countries or growth.years != panel.years:
        raise DimensionMismatch("growth series does not describe the same panel")
    empirical = empirical_growth(panel)
    if not np.array_equal(growth.deltas, empirical.deltas):
        raise DimensionMismatch("growth series does not match the panel's target changes")


def reconstruct_static(
    panel: PanelDataset, growth: GrowthSeries, path: CoefficientPath
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Observed and regression-implied level series plus their gap.

    Returns ``(gdp_data, gdp_regr, error_acc)``. The regressed series
    cumulates the fitted changes via the component paths; its value at any
    year therefore equals the component-path total bit-for-bit. The data
    series is the observed target level itself (exact telescoping), and
    the error is their pointwise difference.
    """
    _check_growth(panel, growth)
    gdp_data = panel.values[:, :, panel.target_index].copy()

    deltas = component_deltas(path, panel)
    kappa = component_paths(deltas, panel.base_values)
    gdp_regr = np.empty_like(gdp_data)
    gdp_regr[:, 0] = panel.base_values
    gdp_regr[:, 1:] = np.sum(kappa[:, 1:, :], axis=-1)

    return gdp_data, gdp_regr, gdp_regr - gdp_data


def reconstruct_dynamic(panel: PanelDataset, path: CoefficientPath) -> np.ndarray:
    """Forward simulation feeding the fitted level back into the lagged target.

    Starting from the base-year level, each interval's change is evaluated
    with the regressor vector whose target entry is the simulation's own
    accumulated level; all other regressors stay empirical. Deterministic:
    repeated runs produce identical series.
    """
    if path.intervals != tuple(zip(panel.years[:-1], panel.years[1:])) or path.codes != panel.codes:
        raise DimensionMismatch("coefficient path does not cover the panel intervals")
    n, t, _ = panel.values.shape
    j_target = panel.target_index

    full = np.empty((n, t))
    full[:, 0] = panel.base_values
    for k in range(t - 1):
        x = panel.values[:, k, :].copy()
        x[:, j_target] = full[:, k]
        full[:, k + 1] = full[:, k] + path.alpha[k] + x @ path.beta[k]
    return full


def reconstruct(
    panel: PanelDataset, growth: GrowthSeries, path: CoefficientPath
) -> ReconstructionSet:
    """All three reconstructions bundled with the accumulated error."""
    gdp_data, gdp_regr, error_acc = reconstruct_static(panel, growth, path)
    gdp_regr_full = reconstruct_dynamic(panel, path)
    return ReconstructionSet(
        countries=panel.countries,
        years=panel.years,
        gdp_data=gdp_data,
        gdp_regr=gdp_regr,
        gdp_regr_full=gdp_regr_full,
        error_acc=error_acc,
    )
