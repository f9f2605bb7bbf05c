import math

import numpy as np
import pytest

from tvpanel import (
    EmptyIntersection,
    DuplicateCell,
    GrowthSeries,
    InvalidPanel,
    MismatchedYears,
    PanelDataset,
    Transform,
    UnbalancedPanel,
    UnknownVariable,
    VariableSpec,
    build_panel,
    empirical_growth,
    rank_table,
)


def specs_1var():
    return [VariableSpec("X1", is_target=True)]


def specs_2var():
    return [VariableSpec("X1", is_target=True), VariableSpec("X2")]


def rows_for(countries, years, codes, value=1.0):
    return [(c, y, v, value) for c in countries for y in years for v in codes]


class TestBuildPanel:
    def test_minimal_complete_cube(self):
        rows = [
            ("AA", 2000, "X1", 1.0),
            ("AA", 2001, "X1", 2.0),
            ("AA", 2002, "X1", 3.0),
            ("BB", 2000, "X1", 4.0),
            ("BB", 2001, "X1", 5.0),
            ("BB", 2002, "X1", 6.0),
        ]
        panel = build_panel(rows, specs_1var())
        assert panel.n_countries == 2
        assert panel.n_years == 3
        assert panel.n_vars == 1
        assert panel.years == (2000, 2001, 2002)
        assert panel.countries == ("AA", "BB")
        np.testing.assert_array_equal(panel.values[:, :, 0], [[1, 2, 3], [4, 5, 6]])

    def test_single_missing_cell_is_named(self):
        rows = [
            ("AA", 2000, "X1", 1.0),
            ("AA", 2001, "X1", 2.0),
            ("AA", 2002, "X1", 3.0),
            ("BB", 2000, "X1", 4.0),
            ("BB", 2002, "X1", 6.0),
        ]
        with pytest.raises(UnbalancedPanel) as exc:
            build_panel(rows, specs_1var())
        assert exc.value.missing == [("BB", 2001, "X1")]
        assert "BB" in str(exc.value) and "2001" in str(exc.value)

    def test_reference_shape(self):
        countries = [f"C{i:02d}" for i in range(11)]
        years = range(1995, 2025)
        codes = [f"X{j}" for j in range(1, 8)]
        specs = [VariableSpec(c, is_target=(c == "X1")) for c in codes]
        panel = build_panel(rows_for(countries, years, codes), specs)
        assert (panel.n_countries, panel.n_years, panel.n_vars) == (11, 30, 7)

    def test_duplicate_cell(self):
        rows = [("AA", 2000, "X1", 1.0), ("AA", 2000, "X1", 1.5)]
        with pytest.raises(DuplicateCell):
            build_panel(rows, specs_1var())

    def test_unknown_code(self):
        with pytest.raises(UnknownVariable):
            build_panel([("AA", 2000, "X9", 1.0)], specs_1var())

    def test_empty_rows(self):
        with pytest.raises(EmptyIntersection):
            build_panel([], specs_1var())

    def test_no_common_year(self):
        rows = [("AA", 2000, "X1", 1.0), ("BB", 2001, "X1", 2.0)]
        with pytest.raises(EmptyIntersection):
            build_panel(rows, specs_1var())

    def test_intersection_of_years(self):
        # AA covers 2000-2003, BB covers 2001-2004: the panel is 2001-2003.
        rows = [("AA", y, "X1", float(y)) for y in range(2000, 2004)]
        rows += [("BB", y, "X1", float(y)) for y in range(2001, 2005)]
        panel = build_panel(rows, specs_1var())
        assert panel.years == (2001, 2002, 2003)

    def test_gap_year_shared_by_all_series_reported(self):
        rows = [("AA", y, "X1", 1.0) for y in (2000, 2001, 2003)]
        rows += [("BB", y, "X1", 1.0) for y in (2000, 2001, 2003)]
        with pytest.raises(UnbalancedPanel) as exc:
            build_panel(rows, specs_1var())
        assert ("AA", 2002, "X1") in exc.value.missing
        assert ("BB", 2002, "X1") in exc.value.missing

    def test_country_missing_whole_variable(self):
        rows = rows_for(["AA", "BB", "CC"], [2000, 2001], ["X1"])
        rows += [("AA", y, "X2", 1.0) for y in (2000, 2001)]
        rows += [("BB", y, "X2", 1.0) for y in (2000, 2001)]
        with pytest.raises(UnbalancedPanel) as exc:
            build_panel(rows, specs_2var())
        assert ("CC", 2000, "X2") in exc.value.missing
        assert ("CC", 2001, "X2") in exc.value.missing

    def test_cumulative_transform_applied_over_panel_window(self):
        specs = [VariableSpec("X1", is_target=True), VariableSpec("X2", transform=Transform.CUMULATIVE)]
        rows = [(c, y, "X1", 10.0 + y - 2000) for c in ("AA", "BB", "CC") for y in (2000, 2001, 2002)]
        rows += [("AA", 2000, "X2", 2.0), ("AA", 2001, "X2", 3.0), ("AA", 2002, "X2", 5.0)]
        rows += [(c, y, "X2", 1.0) for c in ("BB", "CC") for y in (2000, 2001, 2002)]
        panel = build_panel(rows, specs)
        np.testing.assert_allclose(panel.values[0, :, 1], [2.0, 5.0, 10.0])
        np.testing.assert_allclose(panel.values[1, :, 1], [1.0, 2.0, 3.0])

    def test_roundtrip_identity(self):
        rng = np.random.default_rng(7)
        countries = ["AA", "BB", "CC"]
        years = (2010, 2011, 2012, 2013)
        specs = specs_2var()
        values = rng.uniform(10.0, 100.0, size=(3, 4, 2))
        panel = PanelDataset(countries, years, values, specs)
        rebuilt = build_panel(panel.to_rows(), panel.specs)
        assert rebuilt.countries == panel.countries
        assert rebuilt.years == panel.years
        assert rebuilt.specs == panel.specs
        np.testing.assert_array_equal(rebuilt.values, panel.values)


class TestPanelInvariants:
    def test_needs_two_years(self):
        with pytest.raises(InvalidPanel):
            PanelDataset(["AA", "BB"], [2000], np.ones((2, 1, 1)), specs_1var())

    def test_years_must_be_consecutive(self):
        with pytest.raises(InvalidPanel):
            PanelDataset(["AA", "BB"], [2000, 2002], np.ones((2, 2, 1)), specs_1var())

    def test_estimability_d_lt_n(self):
        with pytest.raises(InvalidPanel):
            PanelDataset(["AA", "BB"], [2000, 2001], np.ones((2, 2, 2)), specs_2var())

    def test_exactly_one_target(self):
        with pytest.raises(InvalidPanel):
            PanelDataset(
                ["AA", "BB", "CC"],
                [2000, 2001],
                np.ones((3, 2, 2)),
                [VariableSpec("X1"), VariableSpec("X2")],
            )

    def test_duplicate_codes(self):
        with pytest.raises(InvalidPanel):
            PanelDataset(
                ["AA", "BB", "CC"],
                [2000, 2001],
                np.ones((3, 2, 2)),
                [VariableSpec("X1", is_target=True), VariableSpec("X1")],
            )

    def test_values_read_only(self):
        panel = PanelDataset(["AA", "BB"], [2000, 2001], np.ones((2, 2, 1)), specs_1var())
        with pytest.raises(ValueError):
            panel.values[0, 0, 0] = 5.0


class TestEmpiricalGrowth:
    def build(self, x1_paths):
        x1_paths = np.asarray(x1_paths, dtype=float)
        n, t = x1_paths.shape
        countries = [f"C{i}" for i in range(n)]
        return PanelDataset(countries, range(2000, 2000 + t), x1_paths[:, :, None], specs_1var())

    def test_linear_path(self):
        growth = empirical_growth(self.build([[50.0, 55.0, 60.0], [9.0, 9.0, 9.0]]))
        np.testing.assert_array_equal(growth.deltas[0], [5.0, 5.0])

    def test_constant_path(self):
        growth = empirical_growth(self.build([[70.0, 70.0, 70.0], [1.0, 2.0, 3.0]]))
        np.testing.assert_array_equal(growth.deltas[0], [0.0, 0.0])

    def test_sign_change(self):
        # direct subtraction oracle
        x = [40.0, 44.0, 43.0]
        expected = [x[1] - x[0], x[2] - x[1]]
        growth = empirical_growth(self.build([x, [1.0, 2.0, 3.0]]))
        np.testing.assert_array_equal(growth.deltas[0], expected)
        assert expected == [4.0, -1.0]

    def test_telescoping_exact(self):
        # Index-like levels move by at most +-15% a year, so every annual
        # change is an exact float difference; the exactly-rounded sum of
        # changes then reproduces the end-to-end change bit for bit.
        rng = np.random.default_rng(123)
        for _ in range(50):
            t = int(rng.integers(2, 40))
            steps = rng.uniform(0.85, 1.15, size=(3, t))
            steps[:, 0] = 1.0
            levels = rng.uniform(30.0, 260.0, size=(3, 1)) * np.cumprod(steps, axis=1)
            growth = empirical_growth(self.build(levels))
            for i in range(3):
                assert math.fsum(growth.deltas[i]) == levels[i, -1] - levels[i, 0]

    def test_intervals_property(self):
        growth = empirical_growth(self.build([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]))
        assert growth.intervals == ((2000, 2001), (2001, 2002))


class TestRankTable:
    def test_singleton(self):
        table = rank_table({"AA": {2000: 5.0, 2001: 6.0}})
        np.testing.assert_array_equal(table.ranks, [[1, 1]])

    def test_two_countries(self):
        table = rank_table({"A": {2000: 10.0}, "B": {2000: 20.0}})
        assert table.countries == ("A", "B")
        np.testing.assert_array_equal(table.ranks, [[2], [1]])

    def test_each_rank_once_per_year(self):
        rng = np.random.default_rng(5)
        names = [f"C{i:02d}" for i in range(9)]
        series = {c: {y: float(rng.uniform()) for y in range(2000, 2010)} for c in names}
        table = rank_table(series)
        for k in range(table.ranks.shape[1]):
            assert sorted(table.ranks[:, k]) == list(range(1, 10))

    def test_tie_breaks_lexicographic(self):
        table = rank_table({"ZZ": {2000: 1.0}, "AA": {2000: 1.0}, "MM": {2000: 2.0}})
        # MM wins on value; AA beats ZZ lexicographically on the tie.
        assert table.countries == ("AA", "MM", "ZZ")
        np.testing.assert_array_equal(table.ranks[:, 0], [2, 1, 3])

    def test_mismatched_years(self):
        with pytest.raises(MismatchedYears):
            rank_table({"A": {2000: 1.0}, "B": {2001: 1.0}})

    def test_empty(self):
        with pytest.raises(MismatchedYears):
            rank_table({})


def test_growth_series_shape_validated():
    with pytest.raises(InvalidPanel):
        GrowthSeries(("AA",), (2000, 2001, 2002), np.zeros((1, 1)))
