"""CLI entrypoint: run scenarios, compare against the averaged system, and sweep gains."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from src.config import (
    EXIT_IO,
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    SWEEP_PARAMETERS,
    get_settings,
)
from src.analysis.verification import CHANNEL_SETS, ClosenessRun
from src.errors import ConfigurationError, StateCorruptionError
from src.experiment import Experiment
from src.export import (
    write_closeness_csv,
    write_summary_json,
    write_sweep_csv,
    write_trajectory_csv,
)
from src.models import ClosenessReport, RunReport, SweepRow
from src.scenarios import available_presets, load_scenario, preset_path

console = Console()
logger = logging.getLogger("src")


def setup_logging(level: str) -> None:
    if any(isinstance(h, RichHandler) for h in logger.handlers):
        logger.setLevel(level.upper())
        return
    handler = RichHandler(console=Console(stderr=True), show_path=False, markup=False)
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(level.upper())


def _output_dir(args: argparse.Namespace) -> Path:
    return Path(args.out) if getattr(args, "out", None) else Path(get_settings().output_dir)


def _parse_floats(text: str, parser: argparse.ArgumentParser, flag: str) -> list[float]:
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        parser.error(f"{flag} needs at least one value")
    try:
        return [float(s) for s in items]
    except ValueError:
        parser.error(f"{flag} expects comma-separated numbers, got '{text}'")


def print_run_report(report: RunReport) -> None:
    table = Table(title=f"Run: {report.name} ({report.application})", show_lines=False)
    table.add_column("Metric", style="cyan")
    table.add_column("Value", justify="right")
    table.add_row("J(0)", f"{report.j_initial:.4e}")
    table.add_row("final-window mean J", f"{report.final_window_mean_j:.4e}")
    table.add_row("max |u_hat|", f"{report.max_abs_u_hat:.4e}")
    for label, value in report.final_window_kinematics.items():
        table.add_row(f"final-window mean {label}", f"{value:+.4f}")
    table.add_row("omega [rad/s]", f"{report.omega:g}")
    table.add_row("dt [s]", f"{report.dt:.3e}")
    table.add_row("steps", str(report.step_count))
    table.add_row("final time [s]", f"{report.final_time:.3f}")
    table.add_row("wall clock [s]", f"{report.wall_clock_s:.2f}")
    console.print(table)
    for w in report.warnings:
        console.print(f"  [yellow]warning:[/yellow] {escape(w)}")


def print_closeness(report: ClosenessReport) -> None:
    table = Table(title=f"Closeness to averaged system ({report.channels} channels, t_final={report.t_final:g} s)")
    table.add_column("omega", justify="right", style="cyan")
    table.add_column("sup |x - x_bar|", justify="right")
    table.add_column("ratio", justify="right")
    for i, (omega, err) in enumerate(zip(report.omegas, report.sup_errors)):
        ratio = "" if i == 0 else f"{report.decay_ratios[i - 1]:.3f}"
        table.add_row(f"{omega:g}", f"{err:.4e}", ratio)
    console.print(table)


def print_sweep(rows: list[SweepRow]) -> None:
    table = Table(title=f"Sweep over {rows[0].parameter}", show_lines=False)
    table.add_column("Value", justify="right", style="cyan")
    table.add_column("Status", justify="center")
    table.add_column("final-window J", justify="right")
    table.add_column("max |u_hat|", justify="right")
    table.add_column("Steps", justify="right")
    for r in rows:
        if r.status == "ok":
            table.add_row(f"{r.value:g}", "[green]ok[/green]", f"{r.final_window_mean_j:.4e}",
                          f"{r.max_abs_u_hat:.3e}", str(r.step_count))
        else:
            table.add_row(f"{r.value:g}", "[red]failed[/red]", "-", "-", "-")
    console.print(table)
    for r in rows:
        if r.error:
            console.print(f"  [red]{r.value:g}:[/red] {escape(r.error)}")


def cmd_run(args: argparse.Namespace) -> RunReport:
    """Simulate a scenario and write its trajectory and summary."""
    scenario = load_scenario(args.scenario)
    experiment = Experiment(scenario)
    console.print(f"\n[bold]Running {scenario.name}...[/bold]\n")
    traj, report = experiment.run(dt=args.dt, t_final=args.t_final, decimate=args.decimate)

    out = _output_dir(args)
    csv_path = write_trajectory_csv(traj, out / f"{scenario.name}_trajectory.csv")
    json_path = write_summary_json(report, out / f"{scenario.name}_summary.json")

    print_run_report(report)
    console.print(f"\n[bold green]Wrote[/bold green] {csv_path} and {json_path}\n")
    return report


def cmd_compare_averaged(args: argparse.Namespace) -> ClosenessReport:
    """Sup-norm distance between the oscillatory loop and its averaged system at increasing omega."""
    scenario = load_scenario(args.scenario)
    experiment = Experiment(scenario)
    omegas = args.omegas
    runs: list[ClosenessRun] = []
    console.print(f"\n[bold]Comparing {scenario.name} against its averaged system...[/bold]\n")
    report = experiment.compare_averaged(omegas=omegas, t_final=args.t_final, channels=args.channels, runs=runs)

    out = _output_dir(args)
    for run in runs:
        tag = f"{scenario.name}_omega{run.omega:g}"
        write_trajectory_csv(run.full, out / f"{tag}_full.csv")
        write_trajectory_csv(run.averaged, out / f"{tag}_averaged.csv")
    write_closeness_csv(report, out / f"{scenario.name}_closeness.csv")
    write_summary_json(report, out / f"{scenario.name}_closeness.json")

    print_closeness(report)
    console.print(f"\n[bold green]Wrote[/bold green] paired trajectories and closeness table to {out}\n")
    return report


def cmd_sweep(args: argparse.Namespace) -> list[SweepRow]:
    """One run per parameter value; failed rows are reported, not fatal."""
    scenario = load_scenario(args.scenario)
    experiment = Experiment(scenario)
    console.print(f"\n[bold]Sweeping {args.param} over {len(args.values)} value(s) on {scenario.name}...[/bold]\n")
    rows = experiment.sweep(args.param, args.values, t_final=args.t_final)

    out = _output_dir(args)
    path = write_sweep_csv(rows, out / f"{scenario.name}_sweep_{args.param}.csv")
    print_sweep(rows)
    console.print(f"\n[bold green]Wrote[/bold green] {path}\n")
    return rows


def cmd_presets(args: argparse.Namespace) -> None:
    if args.action == "list":
        table = Table(title="Bundled presets")
        table.add_column("Name", style="cyan")
        table.add_column("Application")
        table.add_column("Description")
        for name in available_presets():
            scenario = load_scenario(preset_path(name))
            table.add_row(name, scenario.application, scenario.description)
        console.print(table)
        return
    if not args.name:
        raise ConfigurationError("presets show needs a preset name")
    path = preset_path(args.name)
    console.print(Panel(Text(path.read_text(encoding="utf-8")), title=args.name, border_style="cyan"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="escvs",
        description="Extremum seeking for vibrational stabilization on rigid-body plants",
    )
    parser.add_argument("--log-level", default=None, help="Override ESCVS_LOG_LEVEL (DEBUG, INFO, WARNING)")
    sub = parser.add_subparsers(dest="command")

    # run subcommand
    run = sub.add_parser("run", help="Simulate a scenario (file path or preset name)")
    run.add_argument("scenario")
    run.add_argument("--out", help="Output directory (default: ESCVS_OUTPUT_DIR or ./results)")
    run.add_argument("--dt", type=float, help="Integration step in seconds")
    run.add_argument("--t-final", type=float, help="Run length in seconds")
    run.add_argument("--decimate", type=int, help="Record every N-th step")

    # compare-averaged subcommand
    cmp_ = sub.add_parser("compare-averaged", help="Closeness of the loop to its averaged system")
    cmp_.add_argument("scenario")
    cmp_.add_argument("--omegas", help="Comma-separated frequencies (default: omega, 2*omega, 4*omega)")
    cmp_.add_argument("--t-final", type=float, help="Comparison horizon in seconds")
    cmp_.add_argument("--channels", choices=CHANNEL_SETS, default="kinematic")
    cmp_.add_argument("--out", help="Output directory")

    # sweep subcommand
    swp = sub.add_parser("sweep", help="Repeat a run over values of one parameter")
    swp.add_argument("scenario")
    swp.add_argument("--param", required=True, choices=SWEEP_PARAMETERS)
    swp.add_argument("--values", required=True, help="Comma-separated values")
    swp.add_argument("--t-final", type=float, help="Run length in seconds")
    swp.add_argument("--out", help="Output directory")

    # presets subcommand
    pre = sub.add_parser("presets", help="List or show bundled presets")
    pre.add_argument("action", choices=("list", "show"))
    pre.add_argument("name", nargs="?")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    setup_logging(args.log_level or settings.log_level)

    if args.command == "compare-averaged":
        args.omegas = _parse_floats(args.omegas, parser, "--omegas") if args.omegas else None
    elif args.command == "sweep":
        args.values = _parse_floats(args.values, parser, "--values")

    commands = {
        "run": cmd_run,
        "compare-averaged": cmd_compare_averaged,
        "sweep": cmd_sweep,
        "presets": cmd_presets,
    }
    if args.command not in commands:
        parser.print_help()
        return EXIT_USAGE

    try:
        commands[args.command](args)
    except StateCorruptionError as exc:
        console.print(f"[red]Numerical failure:[/red] {escape(str(exc))}")
        return EXIT_NUMERIC
    except ConfigurationError as exc:
        console.print(f"[red]Invalid configuration:[/red] {escape(str(exc))}")
        return EXIT_VALIDATION
    except ArithmeticError as exc:
        console.print(f"[red]Numerical failure:[/red] {escape(str(exc))}")
        return EXIT_NUMERIC
    except OSError as exc:
        console.print(f"[red]I/O error:[/red] {escape(str(exc))}")
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
