"""Core panel types: variable metadata, the balanced value cube, growth series.

A :class:`PanelDataset` is a balanced N-country x T-year x d-variable cube of
levels. Exactly one variable is the target source (the per-capita GDP index
whose one-year changes are regressed); it also appears as a regressor column
like any other. All types are immutable after construction and all
operations are pure, so everything here is safe to evaluate concurrently.
"""

from __future__ import annotations

import enum
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DuplicateCell,
    EmptyIntersection,
    InvalidPanel,
    MismatchedYears,
    UnbalancedPanel,
    UnknownVariable,
)

Row = tuple[str, int, str, float]


class Transform(enum.Enum):
    """Per-variable ingestion transform.

    LEVEL leaves observations untouched. CUMULATIVE replaces each flow
    observation with the running sum of flows from the first panel year up
    to and including that year (used for flow variables reported per year,
    e.g. FDI inflows or capital formation as % of GDP).
    """

    LEVEL = "level"
    CUMULATIVE = "cumulative"


@dataclass(frozen=True)
class VariableSpec:
    """Metadata binding a variable code to its semantics.

    Parameters
    ----------
    code : short identifier such as ``X1``; unique within a dataset.
    label : human-readable description; defaults to the code.
    transform : ingestion transform, see :class:`Transform`.
    unit : display unit (e.g. ``index points`` or ``% of GDP``).
    is_target : whether this variable is the target source, i.e. the
        series whose year-over-year changes are the regressand. Exactly
        one variable per dataset carries this flag.
    """

    code: str
    label: str = ""
    transform: Transform = Transform.LEVEL
    unit: str = ""
    is_target: bool = False

    def __post_init__(self):
        if not self.code:
            raise InvalidPanel("variable code must be non-empty")
        if not self.label:
            object.__setattr__(self, "label", self.code)


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float, copy=True)
    out.setflags(write=False)
    return out


def validate_specs(specs: Sequence[VariableSpec]) -> tuple[VariableSpec, ...]:
    """Check uniqueness of codes and the single-target rule."""
    specs = tuple(specs)
    if not specs:
        raise InvalidPanel("at least one variable spec is required")
    codes = [s.code for s in specs]
    if len(set(codes)) != len(codes):
        dupes = sorted({c for c in codes if codes.count(c) > 1})
        raise InvalidPanel(f"duplicate variable codes: {', '.join(dupes)}")
    n_targets = sum(s.is_target for s in specs)
    if n_targets != 1:
        raise InvalidPanel(f"exactly one variable must be the target source, found {n_targets}")
    return specs


@dataclass(frozen=True, eq=False)
class PanelDataset:
    """Balanced country-year-variable cube of levels plus variable metadata.

    Invariants enforced at construction: the cube has no missing cell,
    years are strictly consecutive, there are at least two years, and the
    number of variables is smaller than the number of countries (the
    per-interval cross-sectional estimator is infeasible otherwise).
    """

    countries: tuple[str, ...]
    years: tuple[int, ...]
    values: np.ndarray  # (N, T, d), read-only
    specs: tuple[VariableSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "countries", tuple(self.countries))
        object.__setattr__(self, "years", tuple(int(y) for y in self.years))
        object.__setattr__(self, "specs", validate_specs(self.specs))
        values = _readonly(self.values)
        object.__setattr__(self, "values", values)

        n, t, d = len(self.countries), len(self.years), len(self.specs)
        if len(set(self.countries)) != n:
            raise InvalidPanel("country codes must be unique")
        if values.shape != (n, t, d):
            raise InvalidPanel(f"value cube shape {values.shape} does not match ({n}, {t}, {d})")
        if t < 2:
            raise InvalidPanel("a panel needs at least two years")
        if any(b - a != 1 for a, b in zip(self.years, self.years[1:])):
            raise InvalidPanel(f"years must be strictly consecutive, got {self.years}")
        if not d < n:
            raise InvalidPanel(f"estimability requires fewer variables than countries (d={d}, N={n})")
        if not np.all(np.isfinite(values)):
            raise InvalidPanel("panel values must be finite")

    @property
    def n_countries(self) -> int:
        return len(self.countries)

    @property
    def n_years(self) -> int:
        return len(self.years)

    @property
    def n_vars(self) -> int:
        return len(self.specs)

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(s.code for s in self.specs)

    @property
    def target_index(self) -> int:
        return next(j for j, s in enumerate(self.specs) if s.is_target)

    @property
    def target_code(self) -> str:
        return self.specs[self.target_index].code

    @property
    def base_year(self) -> int:
        return self.years[0]

    @property
    def base_values(self) -> np.ndarray:
        """Target-variable level of every country at the first panel year."""
        return self.values[:, 0, self.target_index]

    def to_rows(self) -> list[Row]:
        """Serialize the cube to long-format rows (country, year, code, value).

        Re-building with :func:`build_panel` from these rows and level
        transforms reproduces the panel exactly: the cube already holds
        post-transform levels.
        """
        return [
            (c, y, s.code, float(self.values[i, k, j]))
            for i, c in enumerate(self.countries)
            for k, y in enumerate(self.years)
            for j, s in enumerate(self.specs)
        ]


@dataclass(frozen=True, eq=False)
class GrowthSeries:
    """One-year changes of the target variable.

    ``deltas[i, t]`` is the change of country ``i`` over the interval
    ``years[t] -> years[t + 1]``; the matrix has one column fewer than the
    panel has years.
    """

    countries: tuple[str, ...]
    years: tuple[int, ...]
    deltas: np.ndarray  # (N, T-1), read-only

    def __post_init__(self):
        object.__setattr__(self, "countries", tuple(self.countries))
        object.__setattr__(self, "years", tuple(int(y) for y in self.years))
        object.__setattr__(self, "deltas", _readonly(self.deltas))
        n, t = len(self.countries), len(self.years)
        if self.deltas.shape != (n, t - 1):
            raise InvalidPanel(f"growth matrix shape {self.deltas.shape} does not match ({n}, {t - 1})")

    @property
    def intervals(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.years[:-1], self.years[1:]))


def build_panel(rows: Sequence[Row], specs: Sequence[VariableSpec]) -> PanelDataset:
    """Assemble a balanced panel from long-format rows.

    The panel covers the intersection of years available for every
    (country, variable) pair; each spec's transform is applied over that
    window before assembly, so cumulative variables accumulate from the
    first covered year (that year's own flow included).

    Raises
    ------
    DuplicateCell
        if the same (country, year, variable) appears twice.
    UnknownVariable
        if a row references an undeclared code.
    EmptyIntersection
        if no year is shared by every series.
    UnbalancedPanel
        listing every missing cell when the shared span has holes.
    """
    specs = validate_specs(specs)
    declared = {s.code for s in specs}

    series: dict[tuple[str, str], dict[int, float]] = {}
    for country, year, code, value in rows:
        if code not in declared:
            raise UnknownVariable(code)
        points = series.setdefault((country, code), {})
        if year in points:
            raise DuplicateCell(country, year, code)
        points[year] = float(value)

    countries = sorted({c for c, _ in series})
    if not countries:
        raise EmptyIntersection("no input rows")

    year_sets = [set(points) for points in series.values()]
    # A (country, variable) pair with no rows at all contributes an empty set
    # through the balance check below, not here.
    for country in countries:
        for spec in specs:
            if (country, spec.code) not in series:
                series[(country, spec.code)] = {}
    common = set.intersection(*year_sets) if year_sets else set()
    if not common:
        raise EmptyIntersection("no year is covered by every (country, variable) series")

    years = list(range(min(common), max(common) + 1))
    missing = [
        (country, year, spec.code)
        for country in countries
        for spec in specs
        for year in years
        if year not in series[(country, spec.code)]
    ]
    if missing:
        raise UnbalancedPanel(missing)

    cube = np.empty((len(countries), len(years), len(specs)))
    for i, country in enumerate(countries):
        for j, spec in enumerate(specs):
            vals = np.array([series[(country, spec.code)][y] for y in years])
            if spec.transform is Transform.CUMULATIVE:
                vals = np.cumsum(vals)
            cube[i, :, j] = vals
    return PanelDataset(tuple(countries), tuple(years), cube, specs)


def empirical_growth(panel: PanelDataset) -> GrowthSeries:
    """Year-over-year changes of the target variable, one column per interval."""
    x1 = panel.values[:, :, panel.target_index]
    return GrowthSeries(panel.countries, panel.years, x1[:, 1:] - x1[:, :-1])


@dataclass(frozen=True, eq=False)
class RankTable:
    """Per-year rank assignment (1 = highest value), bump-chart ready."""

    countries: tuple[str, ...]
    years: tuple[int, ...]
    ranks: np.ndarray  # (N, n_years) int

    def __post_init__(self):
        object.__setattr__(self, "countries", tuple(self.countries))
        object.__setattr__(self, "years", tuple(int(y) for y in self.years))
        ranks = np.array(self.ranks, dtype=int, copy=True)
        ranks.setflags(write=False)
        object.__setattr__(self, "ranks", ranks)


def rank_table(series: Mapping[str, Mapping[int, float]]) -> RankTable:
    """Rank countries per year, 1 = highest value.

    Every country must cover the same year set. Ties are broken by
    lexicographic country code, so the output is deterministic.
    """
    if not series:
        raise MismatchedYears("no series supplied")
    countries = sorted(series)
    year_set = set(series[countries[0]])
    for country in countries[1:]:
        if set(series[country]) != year_set:
            raise MismatchedYears(f"country {country!r} does not cover the same years as {countries[0]!r}")
    if not year_set:
        raise MismatchedYears("series contain no years")

    years = sorted(year_set)
    ranks = np.empty((len(countries), len(years)), dtype=int)
    for k, year in enumerate(years):
        ordered = sorted(countries, key=lambda c: (-float(series[c][year]), c))
        for rank, country in enumerate(ordered, start=1):
            ranks[countries.index(country), k] = rank
    return RankTable(tuple(countries), tuple(years), ranks)
