"""Exception hierarchy for the growth-panel pipeline.

Callers care about two families: :class:`DataError` (malformed, duplicated
or incomplete input and configuration) and :class:`NumericalError`
(estimation cannot proceed). The CLI maps the first to exit code 2 and the
second to exit code 3.
"""

from __future__ import annotations


class GrowthPanelError(Exception):
    """Base class for every error raised by this package."""


class DataError(GrowthPanelError):
    """Input data or configuration is malformed, inconsistent or incomplete."""


class NumericalError(GrowthPanelError):
    """Estimation failed for numerical reasons (rank, degrees of freedom)."""


class MalformedRow(DataError):
    """A CSV row could not be parsed."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DuplicateObservation(DataError):
    """The same (country, variable, year) appears more than once in a CSV."""

    def __init__(self, country: str, code: str, year: int, line: int | None = None):
        self.country = country
        self.code = code
        self.year = year
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"duplicate observation ({country}, {year}, {code}){where}")


class DuplicateCell(DataError):
    """The same (country, year, variable) cell was supplied twice to the panel builder."""

    def __init__(self, country: str, year: int, code: str):
        self.country = country
        self.year = year
        self.code = code
        super().__init__(f"duplicate cell ({country}, {year}, {code})")


class UnknownVariable(DataError):
    """A row references a variable code that is not declared."""

    def __init__(self, code: str):
        self.code = code
        super().__init__(f"variable code {code!r} is not declared in the manifest")


class UnbalancedPanel(DataError):
    """The input does not cover every (country, year, variable) cell.

    ``missing`` lists every absent cell as (country, year, code) tuples.
    """

    def __init__(self, missing: list[tuple[str, int, str]]):
        self.missing = sorted(missing)
        shown = ", ".join(f"({c}, {y}, {v})" for c, y, v in self.missing[:8])
        more = "" if len(self.missing) <= 8 else f", ... ({len(self.missing)} cells total)"
        super().__init__(f"panel is unbalanced; missing cells: {shown}{more}")


class EmptyIntersection(DataError):
    """No year is covered by every (country, variable) series."""


class GapInSeries(DataError):
    """A per-country series has non-consecutive years."""

    def __init__(self, country: str, code: str, after_year: int):
        self.country = country
        self.code = code
        self.after_year = after_year
        super().__init__(f"series ({country}, {code}) has a gap after year {after_year}")


class MismatchedYears(DataError):
    """Per-country series do not share the same year set, or a requested year is uncovered."""


class InvalidPanel(DataError):
    """A panel-level invariant is violated (shape, year gaps, estimability)."""


class ManifestError(DataError):
    """The dataset manifest is missing, unreadable or inconsistent."""


class DimensionMismatch(DataError):
    """Two pipeline artifacts do not describe the same panel."""


class InsufficientObservations(NumericalError):
    """Too few cross-sectional observations for the number of regressors."""

    def __init__(self, n_obs: int, n_vars: int):
        self.n_obs = n_obs
        self.n_vars = n_vars
        super().__init__(
            f"{n_obs} observations cannot support {n_vars} regressors plus an "
            f"intercept with at least one residual degree of freedom"
        )


class RankDeficient(NumericalError):
    """The cross-sectional design matrix is numerically rank deficient.

    ``column`` indexes the offending column of the augmented design
    (0 = intercept, j >= 1 = the j-th regressor). ``label`` and
    ``interval`` are filled in when the failure is tagged by the path fit.
    """

    def __init__(
        self,
        column: int,
        condition: float | None = None,
        label: str | None = None,
        interval: tuple[int, int] | None = None,
    ):
        self.column = column
        self.condition = condition
        self.label = label
        self.interval = interval
        name = label if label is not None else ("intercept" if column == 0 else str(column))
        msg = f"design matrix is rank deficient: column {name} is collinear with the others"
        if condition is not None:
            msg += f" (condition estimate {condition:.3e})"
        if interval is not None:
            msg += f" [interval {interval[0]} -> {interval[1]}]"
        super().__init__(msg)


class DegenerateDesign(NumericalError):
    """The synthetic regressor sampler exhausted its rejection budget."""
