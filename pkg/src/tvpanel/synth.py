"""Synthetic panels generated from a known coefficient path.

The generator draws all non-target regressors as bounded uniforms with
scales mimicking real macro data (index levels around 50-250, ratio
variables 0-200), evolves the target level from the supplied coefficient
path plus optional noise, and returns both the panel and the generating
path. With zero noise the panel satisfies the regression identity to float
rounding, which makes the generator the recovery oracle for the estimator
and the reconstruction modules.

Regressor and noise draws come from independent streams spawned from the
seed, and the noise stream is consumed identically whatever the noise
scale, so panels with the same seed share their regressors across noise
levels. Identical seed means bit-identical panels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDesign, InvalidPanel
from .estimator import CoefficientPath
from .panel import PanelDataset, Transform, VariableSpec

TARGET_RANGE = (50.0, 250.0)
RATIO_RANGE = (0.0, 200.0)
CORRELATION_LIMIT = 0.9


def default_path(n_years: int, n_vars: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Draw a bounded coefficient path: intercepts in [0.5, 3], slope
    magnitudes in [0.002, 0.01] with random signs.

    Magnitudes are bounded away from zero so relative recovery errors are
    well defined, and small enough that the simulated target level stays
    in a realistic range over a few decades.
    """
    rng = np.random.default_rng(np.random.SeedSequence(seed).spawn(1)[0])
    m = n_years - 1
    alpha = rng.uniform(0.5, 3.0, size=m)
    beta = rng.uniform(0.002, 0.01, size=(m, n_vars)) * rng.choice([-1.0, 1.0], size=(m, n_vars))
    return alpha, beta


@dataclass(frozen=True)
class SynthSpec:
    """Dimensions, generating coefficients, seed and noise level."""

    n_countries: int
    n_years: int
    n_vars: int
    alpha: np.ndarray  # (n_years - 1,)
    beta: np.ndarray  # (n_years - 1, n_vars)
    seed: int
    noise_scale: float = 0.0
    start_year: int = 1995

    def __post_init__(self):
        object.__setattr__(self, "alpha", np.asarray(self.alpha, dtype=float))
        object.__setattr__(self, "beta", np.asarray(self.beta, dtype=float))
        if self.n_years < 2:
            raise InvalidPanel("need at least two years")
        if not self.n_vars < self.n_countries - 1:
            raise InvalidPanel(
                f"need n_vars < n_countries - 1 for a residual degree of freedom "
                f"(got d={self.n_vars}, N={self.n_countries})"
            )
        m = self.n_years - 1
        if self.alpha.shape != (m,) or self.beta.shape != (m, self.n_vars):
            raise InvalidPanel(
                f"coefficient arrays must have shapes ({m},) and ({m}, {self.n_vars})"
            )
        if self.noise_scale < 0:
            raise InvalidPanel("noise_scale must be >= 0")


def from_seed(
    n_countries: int, n_years: int, n_vars: int, seed: int, noise_scale: float = 0.0,
    start_year: int = 1995,
) -> SynthSpec:
    """Spec with a seed-derived bounded coefficient path."""
    alpha, beta = default_path(n_years, n_vars, seed)
    return SynthSpec(n_countries, n_years, n_vars, alpha, beta, seed, noise_scale, start_year)


def _draw_block(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    return rng.uniform(RATIO_RANGE[0], RATIO_RANGE[1], size=(n, k))


def _too_correlated(columns: np.ndarray) -> bool:
    if columns.shape[1] < 2:
        return False
    with np.errstate(invalid="ignore", divide="ignore"):
        corr = np.corrcoef(columns, rowvar=False)
    off = corr[~np.eye(corr.shape[0], dtype=bool)]
    return bool(np.any(~np.isfinite(off)) or np.any(np.abs(off) >= CORRELATION_LIMIT))


def generate(spec: SynthSpec, max_tries: int = 100) -> tuple[PanelDataset, CoefficientPath]:
    """Generate a panel evolving the target by the spec's coefficient path.

    Non-target regressors are uniform draws rejected until every pairwise
    column correlation stays below 0.9 (the target's starting level is
    included in the first-year check); the target column then evolves as
    intercept plus slopes times the lagged levels, plus ``noise_scale``
    times a seeded standard normal.

    Raises
    ------
    DegenerateDesign
        if a year's draw cannot satisfy the correlation bound within
        ``max_tries`` attempts.
    """
    n, t, d = spec.n_countries, spec.n_years, spec.n_vars
    stream_x, stream_eps = np.random.SeedSequence(spec.seed).spawn(2)
    rng_x = np.random.default_rng(stream_x)
    rng_eps = np.random.default_rng(stream_eps)
    noise = rng_eps.standard_normal((n, t - 1))

    values = np.empty((n, t, d))
    values[:, 0, 0] = rng_x.uniform(TARGET_RANGE[0], TARGET_RANGE[1], size=n)

    for k in range(t):
        if d > 1:
            for attempt in range(max_tries):
                block = _draw_block(rng_x, n, d - 1)
                checked = block if k > 0 else np.column_stack([values[:, 0, 0], block])
                if not _too_correlated(checked):
                    break
            else:
                raise DegenerateDesign(
                    f"could not draw year {spec.start_year + k} regressors with pairwise "
                    f"correlation below {CORRELATION_LIMIT} in {max_tries} tries"
                )
            values[:, k, 1:] = block
        if k < t - 1:
            values[:, k + 1, 0] = (
                values[:, k, 0]
                + spec.alpha[k]
                + values[:, k, :] @ spec.beta[k]
                + spec.noise_scale * noise[:, k]
            )

    countries = tuple(f"C{i:02d}" for i in range(n))
    years = tuple(range(spec.start_year, spec.start_year + t))
    specs = tuple(
        VariableSpec(
            code=f"X{j + 1}",
            label="synthetic target index" if j == 0 else f"synthetic regressor {j + 1}",
            transform=Transform.LEVEL,
            unit="index points" if j == 0 else "ratio",
            is_target=(j == 0),
        )
        for j in range(d)
    )
    panel = PanelDataset(countries, years, values, specs)
    path = CoefficientPath(
        tuple(zip(years[:-1], years[1:])), spec.alpha, spec.beta, panel.codes
    )
    return panel, path
