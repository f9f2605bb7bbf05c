import numpy as np
import pytest

from tvpanel import (
    DuplicateObservation,
    GapInSeries,
    MalformedRow,
    ManifestError,
    RawSeries,
    Transform,
    apply_transform,
    load_manifest,
    parse_long_csv,
    series_to_rows,
)

HEADER = "country,year,variable,value\n"


class TestParseLongCsv:
    def test_single_row(self):
        series = parse_long_csv(HEADER + "LT,1995,X1,30.0\n")
        assert len(series) == 1
        assert series[0].country == "LT"
        assert series[0].code == "X1"
        assert series[0].points == ((1995, 30.0),)

    def test_duplicate_observation(self):
        text = HEADER + "LT,1995,X1,30.0\nLT,1995,X1,31.0\n"
        with pytest.raises(DuplicateObservation) as exc:
            parse_long_csv(text)
        assert exc.value.line == 3

    def test_counting_oracle_full_grid(self):
        lines = [HEADER.strip()]
        for i in range(11):
            for year in range(1995, 2025):
                for j in range(1, 8):
                    lines.append(f"C{i:02d},{year},X{j},{float(i + year + j)}")
        series = parse_long_csv("\n".join(lines) + "\n")
        assert len(series) == 77
        assert all(len(s.points) == 30 for s in series)
        # total rows in == total points out
        assert sum(len(s.points) for s in series) == 11 * 30 * 7

    def test_whitespace_trimmed_and_crlf(self):
        text = "country,year,variable,value\r\n LT , 1995 , X1 , 30.5 \r\n"
        series = parse_long_csv(text)
        assert series[0].points == ((1995, 30.5),)

    def test_points_sorted_by_year(self):
        text = HEADER + "LT,1997,X1,3\nLT,1995,X1,1\nLT,1996,X1,2\n"
        assert parse_long_csv(text)[0].years == (1995, 1996, 1997)

    def test_blank_lines_skipped(self):
        text = HEADER + "LT,1995,X1,30.0\n\nLT,1996,X1,31.0\n"
        assert len(parse_long_csv(text)[0].points) == 2

    @pytest.mark.parametrize(
        "row,fragment",
        [
            ("LT,1995,X1", "4 fields"),
            ("LT,1995.0,X1,30", "not an integer"),
            ("LT,1995,X1,30,0", "4 fields"),
            ("LT,1995,X1,3O", "not a decimal"),
            ("LT,1995,X1,1_0", "not a decimal"),
            ("LT,1995,X1,nan", "not a decimal"),
            ("LT,1995,X1,", "not a decimal"),
            (",1995,X1,30", "empty country"),
            ("LT,1995,,30", "empty variable"),
        ],
    )
    def test_malformed_rows(self, row, fragment):
        with pytest.raises(MalformedRow) as exc:
            parse_long_csv(HEADER + row + "\n")
        assert exc.value.line == 2
        assert fragment in exc.value.reason

    def test_scientific_notation_accepted(self):
        series = parse_long_csv(HEADER + "LT,1995,X1,1.5e-3\n")
        assert series[0].points == ((1995, 0.0015),)

    def test_bad_header(self):
        with pytest.raises(MalformedRow) as exc:
            parse_long_csv("country,year,value\nLT,1995,1\n")
        assert exc.value.line == 1

    def test_empty_input(self):
        with pytest.raises(MalformedRow):
            parse_long_csv("")


class TestApplyTransform:
    def test_cumulative_prefix_sums(self):
        series = RawSeries("LT", "X3", ((1995, 2.0), (1996, 3.0), (1997, 5.0)))
        out = apply_transform(series, Transform.CUMULATIVE)
        assert out.points == ((1995, 2.0), (1996, 5.0), (1997, 10.0))

    def test_level_identity(self):
        series = RawSeries("LT", "X4", ((1995, 2.0), (1996, 3.0), (1997, 5.0)))
        assert apply_transform(series, Transform.LEVEL) is series

    def test_all_zero_flows(self):
        series = RawSeries("LT", "X3", ((1995, 0.0), (1996, 0.0)))
        out = apply_transform(series, Transform.CUMULATIVE)
        assert out.points == ((1995, 0.0), (1996, 0.0))

    def test_gap_rejected(self):
        series = RawSeries("LT", "X3", ((1995, 1.0), (1997, 2.0)))
        with pytest.raises(GapInSeries) as exc:
            apply_transform(series, Transform.CUMULATIVE)
        assert exc.value.after_year == 1995

    def test_monotone_iff_nonnegative(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            n = int(rng.integers(1, 12))
            vals = rng.uniform(-5.0, 5.0, size=n)
            if rng.uniform() < 0.5:
                vals = np.abs(vals)
            series = RawSeries("AA", "X3", tuple((1990 + k, float(v)) for k, v in enumerate(vals)))
            out = np.array([v for _, v in apply_transform(series, Transform.CUMULATIVE).points])
            non_decreasing = bool(np.all(np.diff(out) >= 0)) if n > 1 else True
            assert non_decreasing == bool(np.all(vals[1:] >= 0) if n > 1 else True)

    def test_last_value_is_running_total(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            n = int(rng.integers(1, 20))
            vals = [float(v) for v in rng.uniform(-10.0, 10.0, size=n)]
            series = RawSeries("AA", "X3", tuple((2000 + k, v) for k, v in enumerate(vals)))
            out = apply_transform(series, Transform.CUMULATIVE)
            total = 0.0
            for v in vals:
                total += v
            assert out.points[-1][1] == total


def test_series_to_rows_counts():
    series = [
        RawSeries("LT", "X1", ((1995, 1.0), (1996, 2.0))),
        RawSeries("EE", "X1", ((1995, 3.0),)),
    ]
    rows = series_to_rows(series)
    assert len(rows) == 3
    assert ("EE", 1995, "X1", 3.0) in rows


MANIFEST_OK = """\
base_year = 1995
target = "X1"

[[variables]]
code = "X1"
label = "GDP per capita, PPS volume index"
unit = "index points"

[[variables]]
code = "X3"
transform = "cumulative"
unit = "% of GDP"
"""


class TestManifest:
    def write(self, tmp_path, text):
        path = tmp_path / "manifest.toml"
        path.write_text(text, encoding="utf-8")
        return path

    def test_happy_path(self, tmp_path):
        manifest = load_manifest(self.write(tmp_path, MANIFEST_OK))
        assert manifest.base_year == 1995
        assert manifest.codes == ("X1", "X3")
        assert manifest.target_code == "X1"
        assert manifest.specs[0].is_target
        assert manifest.specs[0].label == "GDP per capita, PPS volume index"
        assert manifest.specs[1].transform is Transform.CUMULATIVE
        assert manifest.specs[1].label == "X3"

    def test_missing_file(self, tmp_path):
        with pytest.raises(ManifestError):
            load_manifest(tmp_path / "absent.toml")

    @pytest.mark.parametrize(
        "text",
        [
            "target = 'X1'\n[[variables]]\ncode = 'X1'\n",  # no base_year
            "base_year = 1995\n[[variables]]\ncode = 'X1'\n",  # no target
            "base_year = 1995\ntarget = 'X9'\n[[variables]]\ncode = 'X1'\n",  # bad target
            "base_year = 1995\ntarget = 'X1'\n",  # no variables
            "base_year = 1995\ntarget = 'X1'\n[[variables]]\ncode = 'X1'\ntransform = 'log'\n",
            "base_year = 1995\ntarget = 'X1'\n[[variables]]\ncode = 'X1'\n[[variables]]\ncode = 'X1'\n",
            "base_year = '1995'\ntarget = 'X1'\n[[variables]]\ncode = 'X1'\n",
            "this is not toml [",
        ],
    )
    def test_invalid_manifests(self, tmp_path, text):
        with pytest.raises(ManifestError):
            load_manifest(self.write(tmp_path, text))
