"""Command-line entry point: ``python -m hybridwsn <command> [flags]``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .config import PRESETS, RunConfig, dump_config, load_config, parse_seeds
from .engine import run_simulation, summarize
from .experiments import (
    ExperimentKind,
    ExperimentSpec,
    protocol_comparison,
    region_division_sweep,
    relay_position_sweep,
)
from .output import emit_csv, emit_svg_chart, read_series_csv
from .protocols import ProtocolKind

SWEEP_COLUMNS = ("mean_fnd", "min_fnd", "max_fnd", "mean_lnd", "min_lnd", "max_lnd",
                 "lnd_not_reached", "seeds")

COMPARE_CHARTS = {
    "alive": ("alive.svg", "Alive nodes (% of n)"),
    "dead": ("dead.svg", "Dead nodes"),
    "cumulative_packets": ("throughput.svg", "Packets delivered to BS (cumulative)"),
    "packets_delivered": ("packets_received.svg", "Packets delivered to BS per round"),
    "total_residual_energy": ("residual_energy.svg", "Total residual energy (J)"),
}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="configuration file")
    p.add_argument("--preset", choices=sorted(PRESETS), help="named parameter preset")
    p.add_argument("--protocol", choices=[k.value for k in ProtocolKind])
    p.add_argument("--seed", type=int, help="single seed (overrides --seeds)")
    p.add_argument("--seeds", help="seed list, e.g. '1-10' or '1,4,7'")
    p.add_argument("--rounds", type=int, help="maximum rounds per run")
    p.add_argument("--out", type=Path, default=Path("results"), help="output directory")
    p.add_argument("--workers", type=int, default=1, help="parallel worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hybridwsn",
                                     description="Round-based clustered WSN routing simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("simulate", "run one protocol on one seed"),
        ("sweep-relay", "relay position study"),
        ("sweep-regions", "Region 3 span study"),
        ("compare", "compare LEACH, SEP, SNRP and the hybrid scheme"),
    ):
        _common(sub.add_parser(name, help=help_text))
    plot = sub.add_parser("plot", help="chart one column from series CSV files")
    plot.add_argument("csv", nargs="+", type=Path)
    plot.add_argument("--column", default="alive")
    plot.add_argument("--out", type=Path, default=Path("chart.svg"))
    plot.add_argument("--title", default="")
    return parser


def resolve(args) -> RunConfig:
    rc = load_config(args.config, args.preset)
    changes = {}
    if args.protocol:
        changes["protocol"] = ProtocolKind(args.protocol)
    if args.rounds is not None:
        changes["max_rounds"] = args.rounds
    if args.seeds:
        changes["seeds"] = parse_seeds(args.seeds)
    if args.seed is not None:
        changes["seeds"] = (args.seed,)
    rc = replace(rc, **changes)
    return replace(rc, network=rc.network.with_(seed=rc.seeds[0]))


def _spec(rc: RunConfig, kind: ExperimentKind, args) -> ExperimentSpec:
    return ExperimentSpec(kind, rc.seeds, rc.network, rc.max_rounds, args.out, args.workers)


def _write_config(rc: RunConfig, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    (out / "config.ini").write_text(dump_config(rc), encoding="utf-8")


def cmd_simulate(rc: RunConfig, args) -> None:
    result = run_simulation(rc.network, rc.protocol, rc.max_rounds)
    out = args.out
    _write_config(rc, out)
    emit_csv(result, out / "series.csv")
    s = summarize(result)
    emit_csv([{"protocol": rc.protocol.value, "seed": rc.network.seed, "fnd": s.fnd, "lnd": s.lnd,
               "total_packets": s.total_packets, "rounds_simulated": s.rounds_simulated}],
             out / "summary.csv")
    rounds = result.column("round")
    emit_svg_chart([(rc.protocol.value, rounds, result.column("alive"))],
                   "Round", "Alive nodes", out / "alive.svg")
    print(f"{rc.protocol.value} seed={rc.network.seed}: fnd={s.fnd or 'not reached'} "
          f"lnd={s.lnd or 'not reached'} packets={s.total_packets} rounds={s.rounds_simulated}")


def cmd_sweep_relay(rc: RunConfig, args) -> None:
    rows = relay_position_sweep(_spec(rc, ExperimentKind.RELAY_POSITION_SWEEP, args))
    out = args.out
    _write_config(rc, out)
    emit_csv(rows, out / "relay_sweep.csv", ("relay_x", "relay_y", "model", *SWEEP_COLUMNS))
    series = []
    for model in ("homogeneous", "heterogeneous"):
        sel = [r for r in rows if r["model"] == model]
        series.append((model, [r["relay_y"] for r in sel], [r["mean_lnd"] for r in sel]))
    emit_svg_chart(series, "Relay y position (m)", "Mean lifetime (rounds)", out / "relay_sweep.svg")
    for r in rows:
        print(f"relay=({r['relay_x']:g},{r['relay_y']:g}) {r['model']:>13}: "
              f"mean_fnd={r['mean_fnd']:.1f} mean_lnd={r['mean_lnd']:.1f}")


def cmd_sweep_regions(rc: RunConfig, args) -> None:
    rows = region_division_sweep(_spec(rc, ExperimentKind.REGION_DIVISION_SWEEP, args))
    out = args.out
    _write_config(rc, out)
    emit_csv(rows, out / "region_sweep.csv", ("r3_x_min", "r3_x_max", "model", *SWEEP_COLUMNS))
    for metric, fname, label in (("mean_fnd", "region_stability.svg", "Mean stability (rounds)"),
                                 ("mean_lnd", "region_lifetime.svg", "Mean lifetime (rounds)")):
        series = []
        for model in ("homogeneous", "heterogeneous"):
            sel = [r for r in rows if r["model"] == model]
            series.append((model, [r["r3_x_max"] - r["r3_x_min"] for r in sel], [r[metric] for r in sel]))
        emit_svg_chart(series, "Region 3 width (m)", label, out / fname)
    for r in rows:
        print(f"R3=[{r['r3_x_min']:g},{r['r3_x_max']:g}] {r['model']:>13}: "
              f"mean_fnd={r['mean_fnd']:.1f} mean_lnd={r['mean_lnd']:.1f}")


def cmd_compare(rc: RunConfig, args) -> None:
    comp = protocol_comparison(_spec(rc, ExperimentKind.PROTOCOL_COMPARISON, args))
    out = args.out
    _write_config(rc, out)
    rows = comp.summary()
    emit_csv(rows, out / "summary.csv")
    for kind, runs in comp.results.items():
        for seed, run in zip(comp.seeds, runs):
            emit_csv(run, out / "series" / f"{kind.value}_seed{seed}.csv")
    rounds = list(range(1, rc.max_rounds + 1))
    n = rc.network.n
    for column, (fname, label) in COMPARE_CHARTS.items():
        # the alive chart is a percentage; the CSV keeps raw counts
        scale = 100.0 / n if column == "alive" and n else 1.0
        series = [(k.value, rounds, scale * comp.mean_series(k, column)) for k in comp.results]
        emit_svg_chart(series, "Round", label + " (seed mean)", out / fname)
    for r in rows:
        print(f"{r['protocol']:>6}: mean_fnd={r['mean_fnd']:.1f} mean_lnd={r['mean_lnd']:.1f} "
              f"(lnd not reached in {r['lnd_not_reached']}/{r['seeds']}) "
              f"packets={r['mean_total_packets']:.0f}")


def cmd_plot(args) -> None:
    series = []
    for path in args.csv:
        cols = read_series_csv(path)
        if args.column not in cols:
            raise ValueError(f"{path}: no column {args.column!r}")
        series.append((path.stem, cols["round"], cols[args.column]))
    emit_svg_chart(series, "Round", args.column, args.out, args.title)
    print(f"wrote {args.out}")


COMMANDS = {
    "simulate": cmd_simulate,
    "sweep-relay": cmd_sweep_relay,
    "sweep-regions": cmd_sweep_regions,
    "compare": cmd_compare,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "plot":
            cmd_plot(args)
        else:
            COMMANDS[args.command](resolve(args), args)
    except (ValueError, OSError) as exc:
        print(f"hybridwsn: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
