"""Command-line entry point.

Subcommands
-----------
assess   residue availability and pellet energy per country
msp      plant costs and the break-even pellet selling price per country
recop    fuel replacement plans (ranking, allocation, savings) per country
sweep    fossil-price x pellet-price sensitivity grid of global savings
report   full pipeline: countries.csv, global.json, errors.txt, plot CSVs
yoy      year-on-year growth statistics for an annual production series

The data directory defaults to $AGRIPELLET_DATA, then the current directory.
Exit code is 0 only when every country evaluated cleanly.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import replace as dc_replace
from pathlib import Path

from . import reporting, sensitivity
from .dataio import DataError, load_dataset
from .pipeline import STAGE_ASSESS, STAGE_MSP, STAGE_PLAN, run_pipeline, yoy_growth

DATA_DIR_ENV = "AGRIPELLET_DATA"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agripellet",
        description="Country-level techno-economic model for agricultural residue pellets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data", default=None,
                        help=f"input data directory (default: ${DATA_DIR_ENV} or '.')")
    common.add_argument("--config", default=None, help="path to a config JSON file")
    common.add_argument("--scenario", choices=["A", "B", "C"], default=None,
                        help="replacement ranking objective (overrides config)")
    common.add_argument("--carbon-tax", type=float, default=None, metavar="USD_PER_TCO2E",
                        help="carbon tax for scenario C (overrides config)")
    common.add_argument("--out", default="out", help="output directory (default: ./out)")
    common.add_argument("--format", choices=["csv", "json"], default="csv",
                        help="output format for tabular subcommands")
    common.add_argument("--country", action="append", default=None, metavar="NAME",
                        help="restrict to the named country (repeatable)")
    common.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="parallel country evaluations")

    for name, text in (
        ("assess", "residue availability and pellet energy"),
        ("msp", "plant costs and break-even pellet price"),
        ("recop", "fuel replacement plans and savings"),
        ("sweep", "sensitivity grid of global savings"),
        ("report", "full pipeline report"),
    ):
        sub.add_parser(name, parents=[common], help=text)

    yoy = sub.add_parser("yoy", parents=[common], help="year-on-year growth statistics")
    yoy.add_argument("series", help="CSV with columns country,year,value (country optional)")
    return parser


def _load(args):
    data_dir = args.data or os.environ.get(DATA_DIR_ENV) or "."
    dataset = load_dataset(data_dir, config=args.config)
    cfg = dataset.config
    if args.scenario is not None:
        cfg = dc_replace(cfg, scenario=args.scenario)
    if args.carbon_tax is not None:
        cfg = dc_replace(cfg, carbon_tax=args.carbon_tax)
    if cfg is not dataset.config:
        dataset = dc_replace(dataset, config=cfg)
    return dataset


def _finish(result, out_dir: Path, args) -> int:
    if result.errors:
        reporting.write_errors_txt(out_dir / "errors.txt", result)
        print(f"{len(result.errors)} of "
              f"{len(result.errors) + len(result.reports)} countries failed "
              f"(see {out_dir / 'errors.txt'})", file=sys.stderr)
        return 1
    return 0


def _run_stage(args, stage: str, rows_fn, payload_key: str, stem: str) -> int:
    dataset = _load(args)
    result = run_pipeline(dataset, through=stage, countries=args.country, jobs=args.jobs)
    out_dir = Path(args.out)
    if args.format == "json":
        payload = {payload_key: [reporting.country_payload(r) for r in result.reports],
                   "errors": [{"country": n, "message": m} for n, m in result.errors]}
        reporting.write_json(out_dir / f"{stem}.json", payload)
    else:
        reporting.write_csv(out_dir / f"{stem}.csv", rows_fn(result))
    print(f"wrote {out_dir / (stem + '.' + args.format)} "
          f"({len(result.reports)} countries)")
    return _finish(result, out_dir, args)


def cmd_assess(args) -> int:
    return _run_stage(args, STAGE_ASSESS, reporting.assess_rows, "countries", "assess")


def cmd_msp(args) -> int:
    return _run_stage(args, STAGE_MSP, reporting.msp_rows, "countries", "msp")


def cmd_recop(args) -> int:
    return _run_stage(args, STAGE_PLAN, reporting.recop_rows, "countries", "recop")


def cmd_sweep(args) -> int:
    dataset = _load(args)
    grid = sensitivity.sweep(dataset)
    out_dir = Path(args.out)
    if args.format == "json":
        reporting.write_json(out_dir / "sensitivity.json",
                             reporting.sensitivity_payload(grid))
        print(f"wrote {out_dir / 'sensitivity.json'}")
    else:
        reporting.write_sensitivity_files(out_dir, grid)
        print(f"wrote {out_dir / 'sensitivity.csv'} and {out_dir / 'sensitivity_long.csv'}")
    return 0


def cmd_report(args) -> int:
    dataset = _load(args)
    result = run_pipeline(dataset, through=STAGE_PLAN, countries=args.country, jobs=args.jobs)
    out_dir = Path(args.out)
    reporting.write_report_files(out_dir, result)
    print(f"wrote report for {len(result.reports)} countries to {out_dir}")
    return _finish(result, out_dir, args)


def _read_series(path: Path) -> dict:
    if not path.exists():
        raise DataError(f"missing file: {path}")
    with path.open(newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None:
            raise DataError(f"{path.name}: empty file, header row required")
        header = [h.strip() for h in header]
        if header == ["country", "year", "value"]:
            with_country = True
        elif header == ["year", "value"]:
            with_country = False
        else:
            raise DataError(
                f"{path.name}: header must be country,year,value or year,value"
            )
        series = {}
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                if with_country:
                    name, year, value = row[0].strip(), int(row[1]), float(row[2])
                else:
                    name, year, value = "all", int(row[0]), float(row[1])
            except (IndexError, ValueError) as exc:
                raise DataError(f"{path.name} line {lineno}: {exc}") from None
            series.setdefault(name, []).append((year, value))
    return series


def cmd_yoy(args) -> int:
    series = _read_series(Path(args.series))
    out_dir = Path(args.out)
    results = {}
    failures = []
    for name in sorted(series):
        try:
            results[name] = yoy_growth(series[name])
        except DataError as exc:
            failures.append((name, str(exc)))
    if args.format == "json":
        payload = {
            "series": {name: reporting.growth_payload(res) for name, res in results.items()},
            "errors": [{"series": n, "message": m} for n, m in failures],
        }
        reporting.write_json(out_dir / "yoy.json", payload)
        print(f"wrote {out_dir / 'yoy.json'}")
    else:
        rows = [["country", "year_from", "year_to", "growth"]]
        for name, res in results.items():
            for p in res.pairs:
                rows.append([name, str(p.year_from), str(p.year_to),
                             "" if p.growth is None else repr(p.growth)])
            rows.append([name, "average", "", repr(res.average)])
        reporting.write_csv(out_dir / "yoy.csv", rows)
        print(f"wrote {out_dir / 'yoy.csv'}")
    for name, message in failures:
        print(f"{name}: {message}", file=sys.stderr)
    return 1 if failures else 0


COMMANDS = {
    "assess": cmd_assess,
    "msp": cmd_msp,
    "recop": cmd_recop,
    "sweep": cmd_sweep,
    "report": cmd_report,
    "yoy": cmd_yoy,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except DataError as exc:
        for problem in exc.problems:
            print(f"error: {problem}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
