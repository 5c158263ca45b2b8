#!/usr/bin/env python3
"""Factory D2D caching simulator CLI.

Usage:
    # Write the built-in factory scenario (or the three-sensor variant)
    python scripts/factorysim.py generate-default --out scenario.json
    python scripts/factorysim.py generate-default --out sensors.json --variant sensors

    # Strategy x interarrival sweep: runs.csv, aggregate.csv and three SVG plots
    python scripts/factorysim.py run --scenario scenario.json --out results/ \
        --strategies direct,storage,predictive --interarrival-ms 5,10,20 --runs 10

    # LoS map towards the base station plus per-device LoS traces
    python scripts/factorysim.py losmap --scenario sensors.json --out losmap/

    # Re-render the sweep plots from an aggregate CSV alone
    python scripts/factorysim.py plot --aggregate results/aggregate.csv --out results/

Exit codes:
    0  success
    1  runtime error
    2  invalid scenario, configuration or flags
"""
import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional

# Add project root to path for imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

import structlog

from src.charts.templates import (
    export_svg,
    render_losmap_heatmap,
    render_trace_chart,
    write_sweep_plots,
)
from src.core.logging import setup_logging
from src.data.config import settings
from src.data.results import (
    aggregate_to_frame,
    losmap_to_frame,
    read_aggregate_csv,
    runs_to_frame,
    traces_to_frame,
    write_csv,
)
from src.dissemination.models import StrategyKind
from src.engine import run_sweep
from src.exceptions import ScenarioValidationError, SimulationConfigError
from src.losmap import build_infra_los_map, build_los_trace, infra_link, los_fraction_any
from src.scenario import Variant, default_scenario, load_config, write_scenario
from src.scene import scene_period

logger = structlog.get_logger(__name__)

DEFAULT_INTERARRIVALS_MS = [5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0, 45.0, 50.0]
DEFAULT_STRATEGIES = [s.value for s in StrategyKind]

# Trace length when the scene has no common mobility period
FALLBACK_TRACE_S = 10.0


def _split(value: str) -> list[str]:
    return [part.strip() for part in value.split(",") if part.strip()]


def parse_strategies(value: str) -> list[StrategyKind]:
    items = _split(value)
    if not items:
        raise SimulationConfigError("--strategies must name at least one strategy")
    strategies = []
    for item in items:
        try:
            strategies.append(StrategyKind(item))
        except ValueError as e:
            raise SimulationConfigError(
                f"Unknown strategy '{item}' (expected one of {', '.join(DEFAULT_STRATEGIES)})"
            ) from e
    return strategies


def parse_interarrivals_ms(value: str) -> list[float]:
    items = _split(value)
    if not items:
        raise SimulationConfigError("--interarrival-ms must list at least one value")
    try:
        values = [float(item) for item in items]
    except ValueError as e:
        raise SimulationConfigError(f"--interarrival-ms must be numbers, got '{value}'") from e
    if any(v <= 0 for v in values):
        raise SimulationConfigError("--interarrival-ms values must be > 0")
    return values


def cmd_generate_default(args: argparse.Namespace) -> int:
    path = write_scenario(default_scenario(Variant(args.variant)), args.out)
    print(f"Scenario written: {path}")
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    config = load_config(args.scenario)
    strategies = parse_strategies(args.strategies)
    interarrivals_ms = parse_interarrivals_ms(args.interarrival_ms)

    overrides = {}
    if args.runs is not None:
        overrides["n_runs"] = args.runs
    if args.seed is not None:
        overrides["base_seed"] = args.seed
    if args.duration_s is not None:
        overrides["sim_duration_s"] = args.duration_s
    if args.tick_ms is not None:
        overrides["tick_s"] = args.tick_ms * 1e-3
    config = replace(config, **overrides)
    for interarrival_ms in interarrivals_ms:
        replace(config, interarrival_s=interarrival_ms * 1e-3).validate()

    threads = args.threads if args.threads is not None else settings.default_threads
    result = run_sweep(
        config,
        strategies,
        [ms * 1e-3 for ms in interarrivals_ms],
        threads=threads,
    )

    out_dir = Path(args.out)
    write_csv(runs_to_frame(result.runs), out_dir / "runs.csv")
    aggregate = aggregate_to_frame(result.reports)
    write_csv(aggregate, out_dir / "aggregate.csv")
    write_sweep_plots(aggregate, out_dir)

    print(f"Sweep finished: {len(result.reports)} point(s), {len(result.runs)} run(s)")
    print(f"Results: {out_dir}")
    return 0


def cmd_losmap(args: argparse.Namespace) -> int:
    config = load_config(args.scenario)
    scene = config.scene
    if args.grid_res <= 0:
        raise SimulationConfigError(f"--grid-res must be > 0, got {args.grid_res}")
    if args.samples < 1:
        raise SimulationConfigError(f"--samples must be >= 1, got {args.samples}")
    if args.trace_dt_ms <= 0:
        raise SimulationConfigError(f"--trace-dt-ms must be > 0, got {args.trace_dt_ms}")

    out_dir = Path(args.out)
    losmap = build_infra_los_map(
        scene, grid_res=args.grid_res, n_samples=args.samples, rng_seed=args.seed
    )
    losmap_frame = losmap_to_frame(losmap)
    write_csv(losmap_frame, out_dir / "losmap.csv")
    export_svg(render_losmap_heatmap(losmap_frame), out_dir / "losmap.svg")

    trace_s = args.trace_s or scene_period(scene) or FALLBACK_TRACE_S
    trace_dt = args.trace_dt_ms * 1e-3
    if trace_s < trace_dt:
        raise SimulationConfigError(f"--trace-s must cover at least one sample, got {trace_s}")
    traces = [
        build_los_trace(
            scene,
            infra_link(device_id),
            dt=trace_dt,
            t_end=trace_s,
            marginalize=args.marginalize,
            rng_seed=args.seed,
        )
        for device_id in scene.device_ids
    ]
    traces_frame = traces_to_frame(traces)
    write_csv(traces_frame, out_dir / "traces.csv")
    export_svg(render_trace_chart(traces_frame), out_dir / "traces.svg")

    print(f"Mean LoS probability: {float(losmap.cells.mean()):.4f}")
    if traces:
        print(f"Time with at least one device in LoS: {los_fraction_any(traces):.4f}")
    print(f"Results: {out_dir}")
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    aggregate = read_aggregate_csv(args.aggregate)
    paths = write_sweep_plots(aggregate, args.out)
    print(f"Plots written: {', '.join(str(p) for p in paths)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Caching-aided D2D dissemination simulator for factory mmWave deployments",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("--log-level", default=None, help="Override FACTORYSIM_LOG_LEVEL")
    parser.add_argument(
        "--log-console",
        action="store_true",
        help="Human-readable log lines instead of JSON",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    generate = subparsers.add_parser("generate-default", help="Write the default scenario file")
    generate.add_argument("--out", required=True, help="Scenario file to write")
    generate.add_argument(
        "--variant",
        choices=[v.value for v in Variant],
        default=Variant.FACTORY.value,
        help="factory: 16 robots and two conveyors; sensors: three sensor devices",
    )
    generate.set_defaults(handler=cmd_generate_default)

    run = subparsers.add_parser("run", help="Run a strategy x interarrival sweep")
    run.add_argument("--scenario", required=True, help="Scenario JSON file")
    run.add_argument("--out", required=True, help="Output directory")
    run.add_argument(
        "--strategies",
        default=",".join(DEFAULT_STRATEGIES),
        help="Comma-separated subset of direct,storage,predictive",
    )
    run.add_argument(
        "--interarrival-ms",
        default=",".join(f"{v:g}" for v in DEFAULT_INTERARRIVALS_MS),
        help="Comma-separated interarrival times in milliseconds",
    )
    run.add_argument("--runs", type=int, default=None, help="Runs per point (default: scenario)")
    run.add_argument("--seed", type=int, default=None, help="Base seed (default: scenario)")
    run.add_argument("--threads", type=int, default=None, help="Worker processes")
    run.add_argument("--duration-s", type=float, default=None, help="Simulated seconds per run")
    run.add_argument("--tick-ms", type=float, default=None, help="Tick length in milliseconds")
    run.set_defaults(handler=cmd_run)

    losmap = subparsers.add_parser("losmap", help="LoS map and per-device LoS traces")
    losmap.add_argument("--scenario", required=True, help="Scenario JSON file")
    losmap.add_argument("--out", required=True, help="Output directory")
    losmap.add_argument("--grid-res", type=float, default=0.25, help="Cell size in meters")
    losmap.add_argument("--samples", type=int, default=1000, help="Configurations per cell")
    losmap.add_argument("--seed", type=int, default=0, help="Sampling seed")
    losmap.add_argument("--trace-dt-ms", type=float, default=1.0, help="Trace step in ms")
    losmap.add_argument(
        "--trace-s",
        type=float,
        default=None,
        help="Trace length in seconds (default: the scene's mobility period)",
    )
    losmap.add_argument(
        "--marginalize",
        action="store_true",
        help="Average traces over unknown blocker phases",
    )
    losmap.set_defaults(handler=cmd_losmap)

    plot = subparsers.add_parser("plot", help="Re-render sweep plots from an aggregate CSV")
    plot.add_argument("--aggregate", required=True, help="aggregate.csv from a previous run")
    plot.add_argument("--out", required=True, help="Output directory")
    plot.set_defaults(handler=cmd_plot)

    return parser


def main(argv: Optional[list] = None) -> int:
    """Main CLI entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(
        level=args.log_level or settings.log_level,
        json=settings.log_json and not args.log_console,
    )

    try:
        return args.handler(args)
    except ScenarioValidationError as e:
        print(f"Error: invalid scenario {e.path or ''}".rstrip(), file=sys.stderr)
        for location, message in e.diagnostics:
            print(f"  {location}: {message}", file=sys.stderr)
        return 2
    except SimulationConfigError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        logger.exception("command_failed", command=args.command)
        print(f"Error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
