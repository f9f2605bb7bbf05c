"""Per-interval cross-sectional least squares with a fully free coefficient path.

Every year-to-year interval gets its own intercept and slope vector, so the
pooled panel problem decomposes exactly into T-1 independent cross-sectional
regressions of the one-year target changes on the lagged levels of all
variables. Each interval is solved through a column-pivoted orthogonal
decomposition of the augmented design (intercept column prepended), not
through normal equations: the small cross-sections with correlated macro
regressors can be ill-conditioned, and the pivoted factorization both
stabilizes the solve and identifies the offending column when the design is
numerically rank deficient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, InsufficientObservations, RankDeficient
from .panel import GrowthSeries, PanelDataset, _readonly

CONDITION_LIMIT = 1e12


@dataclass(frozen=True, eq=False)
class CoefficientPath:
    """Intercept and slope vector for every year-to-year interval.

    ``alpha[t]`` and ``beta[t, :]`` belong to the interval
    ``intervals[t] = (start_year, end_year)``: the slopes multiply the
    regressor levels observed at ``start_year`` and the intercept is common
    to all countries. ``codes`` labels the slope columns.
    """

    intervals: tuple[tuple[int, int], ...]
    alpha: np.ndarray  # (T-1,)
    beta: np.ndarray  # (T-1, d)
    codes: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple((int(a), int(b)) for a, b in self.intervals))
        object.__setattr__(self, "alpha", _readonly(self.alpha))
        object.__setattr__(self, "beta", _readonly(self.beta))
        object.__setattr__(self, "codes", tuple(self.codes))
        m = len(self.intervals)
        if self.alpha.shape != (m,) or self.beta.shape != (m, len(self.codes)):
            raise DimensionMismatch(
                f"coefficient path shapes alpha{self.alpha.shape}, beta{self.beta.shape} "
                f"do not match {m} intervals x {len(self.codes)} variables"
            )

    @property
    def n_intervals(self) -> int:
        return len(self.intervals)

    @property
    def n_vars(self) -> int:
        return len(self.codes)


@dataclass(frozen=True, eq=False)
class FitDiagnostics:
    """Per-interval fit quality: residuals, R-squared, conditioning, dof."""

    residuals: np.ndarray  # (N, T-1)
    r_squared: np.ndarray  # (T-1,)
    condition: np.ndarray  # (T-1,)
    dof: np.ndarray  # (T-1,) int

    def __post_init__(self):
        object.__setattr__(self, "residuals", _readonly(self.residuals))
        object.__setattr__(self, "r_squared", _readonly(self.r_squared))
        object.__setattr__(self, "condition", _readonly(self.condition))
        dof = np.array(self.dof, dtype=int, copy=True)
        dof.setflags(write=False)
        object.__setattr__(self, "dof", dof)


def fit_interval(
    x_prev: np.ndarray, dy: np.ndarray
) -> tuple[float, np.ndarray, np.ndarray, float]:
    """Least-squares fit of one cross-section: dy on [1 | x_prev].

    Parameters
    ----------
    x_prev : (N, d) lagged regressor levels.
    dy : (N,) one-year target changes.

    Returns
    -------
    (alpha, beta, residuals, condition) where residuals are exactly
    ``dy - alpha - x_prev @ beta`` and condition is the 2-norm condition
    number of the augmented design.

    Raises
    ------
    InsufficientObservations
        if N < d + 2 (no residual degree of freedom).
    RankDeficient
        if a pivoted diagonal falls below N * eps * (largest column norm)
        or the condition number exceeds 1e12; the offending column index
        is reported (0 = intercept).
    """
    x_prev = np.asarray(x_prev, dtype=float)
    if x_prev.ndim == 1:
        x_prev = x_prev[:, None]
    dy = np.asarray(dy, dtype=float)
    n, d = x_prev.shape
    if dy.shape != (n,):
        raise DimensionMismatch(f"dy has shape {dy.shape}, expected ({n},)")
    if n < d + 2:
        raise InsufficientObservations(n, d)

    design = np.column_stack([np.ones(n), x_prev])
    col_norms = np.linalg.norm(design, axis=0)
    tol = n * np.finfo(float).eps * col_norms.max()

    q, r, pivot = scipy.linalg.qr(design, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    condition = float(np.linalg.cond(design))
    small = np.flatnonzero(diag <= tol)
    if small.size:
        raise RankDeficient(int(pivot[small[0]]), condition=condition)
    if not np.isfinite(condition) or condition > CONDITION_LIMIT:
        raise RankDeficient(int(pivot[-1]), condition=condition)

    z = scipy.linalg.solve_triangular(r, q.T @ dy)
    coef = np.empty(d + 1)
    coef[pivot] = z
    residuals = dy - design @ coef
    return float(coef[0]), coef[1:], residuals, condition


def fit_path(panel: PanelDataset, growth: GrowthSeries) -> tuple[CoefficientPath, FitDiagnostics]:
    """Fit every interval of the panel independently.

    Interval t regresses ``growth.deltas[:, t]`` on the levels observed at
    ``years[t]``; coefficients are unrestricted across intervals (no
    smoothing). A rank-deficient interval aborts the whole fit, tagged with
    the interval years, because downstream decompositions need a complete
    coefficient path.
    """
    if growth.countries != panel.countries or growth.years != panel.years:
        raise DimensionMismatch("growth series does not describe the same panel")

    n, t, d = panel.values.shape
    m = t - 1
    alpha = np.empty(m)
    beta = np.empty((m, d))
    residuals = np.empty((n, m))
    r_squared = np.empty(m)
    condition = np.empty(m)
    intervals = tuple(zip(panel.years[:-1], panel.years[1:]))

    for k, (y0, y1) in enumerate(intervals):
        dy = growth.deltas[:, k]
        try:
            a, b, resid, cond = fit_interval(panel.values[:, k, :], dy)
        except RankDeficient as exc:
            label = "intercept" if exc.column == 0 else panel.codes[exc.column - 1]
            raise RankDeficient(
                exc.column, condition=exc.condition, label=label, interval=(y0, y1)
            ) from exc
        alpha[k] = a
        beta[k] = b
        residuals[:, k] = resid
        condition[k] = cond
        sst = float(np.sum((dy - dy.mean()) ** 2))
        ssr = float(np.sum(resid**2))
        # A constant target is fit exactly by the intercept; call that R^2 = 1.
        r_squared[k] = 1.0 - ssr / sst if sst > 0.0 else 1.0

    path = CoefficientPath(intervals, alpha, beta, panel.codes)
    diags = FitDiagnostics(residuals, r_squared, condition, np.full(m, n - d - 1))
    return path, diags
