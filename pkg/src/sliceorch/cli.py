"""Command-line entry point.

``sliceorch run SCENARIO`` batch-runs a scenario and writes the run
directory (scenario.json, frames.csv, frames.jsonl, events.jsonl,
summary.json); with ``--serve`` it starts the HTTP service on a live
session instead.

Exit codes: 0 success, 2 scenario error, 3 SLA violation when
``--fail-on-violation`` is set.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .model import OrchestratorError
from .scenario import ScenarioError, bundled_scenario_path, load_scenario, serialize_scenario
from .sim import Simulator

EXIT_OK = 0
EXIT_SCENARIO_ERROR = 2
EXIT_VIOLATION = 3


def _resolve(scenario_arg: str) -> Path:
    path = Path(scenario_arg)
    if path.exists():
        return path
    if scenario_arg.replace("-", "").replace("_", "").isalnum():
        try:
            return bundled_scenario_path(scenario_arg)
        except ScenarioError:
            pass
    raise ScenarioError(f"scenario file not found: {scenario_arg}")


@click.group()
def main():
    """Network-slicing orchestrator and simulator."""


@main.command()
@click.argument("scenario_arg", metavar="SCENARIO")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Run directory for outputs.")
@click.option("--no-assurance", is_flag=True, help="Disable the resource-management loop (baseline mode).")
@click.option("--fail-on-violation", is_flag=True, help="Exit 3 if any frame shows an SLA violation.")
@click.option("--seed", type=int, default=None, help="Reserved; the model is fully deterministic.")
@click.option("--serve", "serve_addr", metavar="ADDR", default=None, help="Serve a live session on host:port instead of batch-running.")
@click.option("--tick-interval", type=float, default=1.0, show_default=True, help="Wall seconds per simulated tick in serve mode.")
def run(scenario_arg, out, no_assurance, fail_on_violation, seed, serve_addr, tick_interval):
    """Run SCENARIO (a file path or a bundled name like exp1/exp2)."""
    del seed  # reserved flag: accepted, unused
    try:
        path = _resolve(scenario_arg)
        scenario = load_scenario(path)
    except (OrchestratorError, OSError) as exc:
        click.echo(f"scenario error: {exc}", err=True)
        sys.exit(EXIT_SCENARIO_ERROR)

    if serve_addr is not None:
        import uvicorn

        from .service import create_app

        host, _, port = serve_addr.rpartition(":")
        app = create_app(scenario, tick_interval_s=tick_interval, assurance_enabled=not no_assurance)
        uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
        return

    sim = Simulator(scenario, assurance_enabled=not no_assurance)
    result = sim.run()
    summary = result.summary()

    if out:
        out_dir = Path(out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "scenario.json").write_text(serialize_scenario(scenario) + "\n")
        (out_dir / "frames.csv").write_text(result.frames_csv())
        (out_dir / "frames.jsonl").write_text(result.frames_jsonl())
        (out_dir / "events.jsonl").write_text(result.events_jsonl())
        (out_dir / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")

    click.echo(f"scenario {summary['scenario']}: {summary['frames']} frames, {summary['records']} events")
    for sid in sorted(summary["slices"]):
        s = summary["slices"][sid]
        click.echo(
            f"  {s['label'] or sid}: mean {s['mean_achieved_mbps']:.1f} Mbps, "
            f"rtt {s['rtt_ms']:.0f} ms, {s['pool_cuup']}/{s['pool_upf']}, floor {s['prb_floor']} PRBs, "
            f"violated {s['violated_frames']}/{s['frames']} frames"
        )
    click.echo(f"  total cost: {summary['total_cost']:.4f}")

    if fail_on_violation and summary["violations_total"] > 0:
        click.echo("SLA violations present", err=True)
        sys.exit(EXIT_VIOLATION)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
