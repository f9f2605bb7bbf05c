"""Command-line front end: ingest -> fit -> decompose -> reconstruct -> report.

Exit codes: 0 success, 2 data/configuration error, 3 numerical error. All
outputs land in the --out directory as UTF-8 CSV (plus a JSON mirror of the
contribution table) and are byte-identical across repeated runs on the same
inputs.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import exports
from .decomposition import contribution_table, decompose, relative_contribution
from .errors import DataError, MismatchedYears, NumericalError
from .estimator import fit_interval, fit_path
from .ingest import Manifest, load_manifest, parse_long_csv
from .panel import PanelDataset, build_panel, empirical_growth, rank_table
from .reconstruction import reconstruct
from .synth import from_seed, generate


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation parameters shared by the analysis commands."""

    manifest: Path
    inputs: tuple[Path, ...]
    out: Path
    base_year: int | None = None
    report_year: int | None = None
    gamma_component: str | None = None
    rank_input: Path | None = None
    rank_variable: str | None = None


def load_panel(config: RunConfig) -> tuple[PanelDataset, Manifest]:
    """Parse inputs, drop pre-base-year rows, build the balanced panel."""
    manifest = load_manifest(config.manifest)
    base_year = config.base_year if config.base_year is not None else manifest.base_year

    series: dict[tuple[str, str], dict[int, float]] = {}
    for input_path in config.inputs:
        try:
            text = Path(input_path).read_text(encoding="utf-8-sig")
        except OSError as exc:
            raise DataError(f"cannot read input {input_path}: {exc}") from None
        try:
            parsed = parse_long_csv(text)
        except DataError as exc:
            raise DataError(f"{input_path}: {exc}") from exc
        for raw in parsed:
            points = series.setdefault((raw.country, raw.code), {})
            for year, value in raw.points:
                if year in points:
                    raise DataError(
                        f"duplicate observation ({raw.country}, {year}, {raw.code}) across inputs"
                    )
                points[year] = value

    rows = [
        (country, year, code, value)
        for (country, code), points in series.items()
        for year, value in points.items()
        if year >= base_year
    ]
    panel = build_panel(rows, manifest.specs)
    if panel.base_year != base_year:
        raise DataError(
            f"panel starts at {panel.base_year}, but the base year is {base_year}; "
            f"supply data covering the base year for every country and variable"
        )
    return panel, manifest


def resolve_report_year(config: RunConfig, panel: PanelDataset) -> int:
    year = config.report_year if config.report_year is not None else panel.years[-1]
    if year not in panel.years:
        raise MismatchedYears(
            f"report year {year} is outside the panel ({panel.years[0]}..{panel.years[-1]})"
        )
    return year


def resolve_gamma_component(config: RunConfig, panel: PanelDataset) -> int:
    code = config.gamma_component if config.gamma_component is not None else panel.codes[-1]
    if code not in panel.codes:
        raise DataError(f"gamma component {code!r} is not a declared variable")
    return panel.codes.index(code)


def _emit(paths: list[Path]) -> None:
    for path in paths:
        print(path)


def cmd_ingest(config: RunConfig) -> None:
    panel, _ = load_panel(config)
    config.out.mkdir(parents=True, exist_ok=True)
    _emit(
        [
            exports.write_panel_csv(panel, config.out / "panel.csv"),
            exports.write_manifest(panel, config.out / "panel_manifest.toml"),
        ]
    )


def cmd_fit(config: RunConfig) -> None:
    panel, _ = load_panel(config)
    path, diags = fit_path(panel, empirical_growth(panel))
    config.out.mkdir(parents=True, exist_ok=True)
    _emit(
        [
            exports.write_coefficients(path, diags, config.out / "coefficients.csv"),
            exports.write_residuals(
                panel.countries, path.intervals, diags, config.out / "residuals.csv"
            ),
        ]
    )


def cmd_decompose(config: RunConfig) -> None:
    panel, _ = load_panel(config)
    path, _diags = fit_path(panel, empirical_growth(panel))
    result = decompose(path, panel)
    gamma = relative_contribution(result.kappa, resolve_gamma_component(config, panel))
    config.out.mkdir(parents=True, exist_ok=True)
    _emit(
        [
            exports.write_kappa(result, config.out / "kappa.csv"),
            exports.write_gamma(panel.countries, panel.years, gamma, config.out / "gamma.csv"),
        ]
    )


def cmd_reconstruct(config: RunConfig) -> None:
    panel, _ = load_panel(config)
    growth = empirical_growth(panel)
    path, _diags = fit_path(panel, growth)
    recon = reconstruct(panel, growth, path)
    config.out.mkdir(parents=True, exist_ok=True)
    _emit([exports.write_series(recon, config.out / "series.csv")])


def _rank_series(config: RunConfig, panel: PanelDataset) -> dict[str, dict[int, float]]:
    if config.rank_input is None:
        x1 = panel.values[:, :, panel.target_index]
        return {
            country: {year: float(x1[i, s]) for s, year in enumerate(panel.years)}
            for i, country in enumerate(panel.countries)
        }
    code = config.rank_variable if config.rank_variable is not None else panel.target_code
    text = Path(config.rank_input).read_text(encoding="utf-8-sig")
    series = {
        raw.country: dict(raw.points) for raw in parse_long_csv(text) if raw.code == code
    }
    if not series:
        raise DataError(f"rank input {config.rank_input} has no rows for variable {code!r}")
    return series


def _scatter_rows(panel: PanelDataset, years: list[int]) -> list[tuple[str, int, float, float, float]]:
    """Target level vs second variable with the cross-sectional trend per year."""
    j_gdp = panel.target_index
    j_price = next(j for j in range(panel.n_vars) if j != j_gdp)
    rows = []
    for year in years:
        s = panel.years.index(year)
        gdp = panel.values[:, s, j_gdp]
        price = panel.values[:, s, j_price]
        alpha, beta, _resid, _cond = fit_interval(gdp[:, None], price)
        trend = alpha + beta[0] * gdp
        rows.extend(
            (country, year, float(gdp[i]), float(price[i]), float(trend[i]))
            for i, country in enumerate(panel.countries)
        )
    return rows


def cmd_report(config: RunConfig) -> None:
    panel, _ = load_panel(config)
    growth = empirical_growth(panel)
    path, diags = fit_path(panel, growth)
    result = decompose(path, panel)
    recon = reconstruct(panel, growth, path)
    year = resolve_report_year(config, panel)
    table = contribution_table(result, diags, year)
    gamma = relative_contribution(result.kappa, resolve_gamma_component(config, panel))
    ranks = rank_table(_rank_series(config, panel))

    config.out.mkdir(parents=True, exist_ok=True)
    written = [
        exports.write_table_csv(table, config.out / "contribution_table.csv"),
        exports.write_table_json(table, config.out / "contribution_table.json"),
        exports.write_kappa(result, config.out / "kappa.csv"),
        exports.write_gamma(panel.countries, panel.years, gamma, config.out / "gamma.csv"),
        exports.write_series(recon, config.out / "series.csv"),
        exports.write_ranks(ranks, config.out / "ranks.csv"),
    ]
    if panel.n_vars >= 2:
        scatter_years = sorted({panel.base_year, year})
        written.append(
            exports.write_scatter(_scatter_rows(panel, scatter_years), config.out / "scatter.csv")
        )
    _emit(written)


def cmd_synth(args: argparse.Namespace) -> None:
    spec = from_seed(
        n_countries=args.countries,
        n_years=args.years,
        n_vars=args.vars,
        seed=args.seed,
        noise_scale=args.noise,
        start_year=args.start_year,
    )
    panel, true_path = generate(spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _emit(
        [
            exports.write_panel_csv(panel, out / "panel.csv"),
            exports.write_manifest(panel, out / "manifest.toml"),
            exports.write_true_coefficients(true_path, out / "true_coefficients.csv"),
        ]
    )


def _add_common(parser: argparse.ArgumentParser, report_flags: bool = False) -> None:
    parser.add_argument("--manifest", required=True, type=Path, help="dataset manifest (TOML)")
    parser.add_argument(
        "--input",
        required=True,
        action="append",
        type=Path,
        help="long-format CSV (repeatable; sources are merged)",
    )
    parser.add_argument("--out", required=True, type=Path, help="output directory")
    parser.add_argument(
        "--base-year", type=int, default=None, help="override the manifest base year"
    )
    if report_flags:
        parser.add_argument(
            "--report-year", type=int, default=None, help="report year (default: last panel year)"
        )
        parser.add_argument(
            "--gamma-component",
            default=None,
            help="variable code for the relative-contribution series (default: last variable)",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tvpanel",
        description="Time-varying-coefficient panel least squares for growth decomposition.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate inputs and dump the balanced panel")
    _add_common(p)

    p = sub.add_parser("fit", help="fit the per-interval coefficient path")
    _add_common(p)

    p = sub.add_parser("decompose", help="component paths and relative contributions")
    _add_common(p, report_flags=True)

    p = sub.add_parser("reconstruct", help="observed/regressed/simulated level series")
    _add_common(p)

    p = sub.add_parser("report", help="contribution table and all plot-data files")
    _add_common(p, report_flags=True)
    p.add_argument(
        "--rank-input",
        type=Path,
        default=None,
        help="long-format CSV ranked instead of the panel target (e.g. projections)",
    )
    p.add_argument(
        "--rank-variable",
        default=None,
        help="variable code to rank from --rank-input (default: target code)",
    )

    p = sub.add_parser("synth", help="generate a synthetic panel with known coefficients")
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--countries", type=int, default=11)
    p.add_argument("--years", type=int, default=30)
    p.add_argument("--vars", type=int, default=7)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--start-year", type=int, default=1995)
    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        manifest=args.manifest,
        inputs=tuple(args.input),
        out=args.out,
        base_year=args.base_year,
        report_year=getattr(args, "report_year", None),
        gamma_component=getattr(args, "gamma_component", None),
        rank_input=getattr(args, "rank_input", None),
        rank_variable=getattr(args, "rank_variable", None),
    )


_COMMANDS = {
    "ingest": cmd_ingest,
    "fit": cmd_fit,
    "decompose": cmd_decompose,
    "reconstruct": cmd_reconstruct,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "synth":
            cmd_synth(args)
        else:
            _COMMANDS[args.command](_config_from(args))
    except DataError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
