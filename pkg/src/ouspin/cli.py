"""Command-line front end: ``ouspin sweep | verify | figure``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .discord import OptimizerConfig
from .sweep import FIGURE_PANELS, MEASURES, SweepSpec, figure_spec, gnuplot_script, rows_to_csv, rows_to_json, run_sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _measures(text: str) -> tuple[str, ...]:
    items = tuple(m.strip() for m in text.split(",") if m.strip())
    bad = [m for m in items if m not in MEASURES]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"measures must be drawn from {','.join(MEASURES)}")
    return items


def _add_output(p):
    p.add_argument("--out", type=Path, help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_discord_budget(p):
    p.add_argument("--multistart", type=int, default=4, help="refined grid cells per discord evaluation")
    p.add_argument("--refine-iters", type=int, default=400)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ouspin", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sw = sub.add_parser("sweep", help="time sweep of tau3 and discord")
    sw.add_argument("--scenario", choices=("ghz", "w"), default="ghz")
    sw.add_argument("--regime", choices=("exact", "markov", "nonmarkov"), default="markov")
    sw.add_argument("--gamma-big", type=float, default=1.0, help="coupling Gamma")
    sw.add_argument("--gamma-small", type=float, default=0.01, help="bandwidth gamma")
    sw.add_argument("--t-max", type=float, default=10.0)
    sw.add_argument("--points", type=int, default=101)
    sw.add_argument("--measures", type=_measures, default=MEASURES)
    norm = sw.add_mutually_exclusive_group()
    norm.add_argument("--normalized", dest="normalized", action="store_true", default=True)
    norm.add_argument("--raw", dest="normalized", action="store_false")
    sw.add_argument("--seed", type=int, default=0)
    _add_discord_budget(sw)
    _add_output(sw)

    vf = sub.add_parser("verify", help="run the numerical self-checks")
    vf.add_argument("--level", choices=("fast", "full"), default="fast")
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--out", type=Path, help="also write the report here")

    fg = sub.add_parser("figure", help="curve data and a gnuplot script for one figure panel")
    fg.add_argument("which", choices=sorted(FIGURE_PANELS))
    fg.add_argument("--t-max", type=float, default=6.0)
    fg.add_argument("--points", type=int, default=61)
    _add_discord_budget(fg)
    fg.add_argument("--out", type=Path, help="CSV path (default: <panel>.csv); the script goes next to it")
    fg.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _write(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, newline="\n")


def _serialize(rows, fmt: str) -> str:
    return rows_to_json(rows) if fmt == "json" else rows_to_csv(rows)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            from .verify import report, run_checks

            checks = run_checks(args.level, seed=args.seed)
            text = report(checks)
            sys.stdout.write(text)
            if args.out:
                args.out.write_text(text, newline="\n")
            return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL

        cfg = OptimizerConfig(multistart=args.multistart, refine_iters=args.refine_iters)
        if args.command == "sweep":
            spec = SweepSpec(
                scenario=args.scenario, regime=args.regime, Gamma=args.gamma_big,
                gamma=args.gamma_small, t_max=args.t_max, points=args.points,
                measures=args.measures, discord_config=cfg, normalized=args.normalized,
                seed=args.seed,
            )
            _write(_serialize(run_sweep(spec), args.format), args.out)
            return EXIT_OK

        spec = figure_spec(args.which, t_max=args.t_max, points=args.points, discord_config=cfg)
        out = args.out or Path(f"{args.which}.{args.format}")
        _write(_serialize(run_sweep(spec), args.format), out)
        script = out.with_suffix(".gp")
        title = f"{args.which}: {spec.scenario.value.upper()}, {spec.regime.value}, Gamma=1"
        if args.format == "csv":
            script.write_text(gnuplot_script(out.name, title), newline="\n")
        sys.stderr.write(f"wrote {out}" + (f" and {script}" if args.format == "csv" else "") + "\n")
        return EXIT_OK
    except ValueError as exc:
        sys.stderr.write(f"ouspin: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
