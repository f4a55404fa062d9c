"""Batch entry point: scenario configs in, reports out.

Exit codes: 0 success, 2 configuration/schema violation, 3 capability
violation found by `fuzz`.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
import tempfile
from pathlib import Path

import click

from . import config as configmod
from . import game, scenarios
from .errors import ConfigurationError
from .fuzz import fuzz_capability_soundness
from .users import ATTENTION_PRESETS

EXIT_CONFIG = 2
EXIT_VIOLATION = 3


def _atomic_write(path: Path, data: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load(config_path) -> dict:
    if config_path is None:
        return configmod.default_scenario()
    try:
        return configmod.load_scenario(config_path)
    except ConfigurationError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)


def _payoffs(scenario: dict) -> game.PayoffTable:
    raw = scenario.get("payoffs")
    if not raw:
        return game.DEFAULT_PAYOFFS
    rows = {
        name: game.PayoffRow(entry["user"], entry["attacker"]) for name, entry in raw.items()
    }
    return game.PayoffTable(**rows)


@click.group()
def main():
    """Phishing screening-strategy simulator."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option(
    "--out",
    "out_dir",
    type=click.Path(),
    default=None,
    help="Output directory (default: env PHISHGAME_OUT or ./reports).",
)
def matrix(config_path, out_dir):
    """Evaluate the full strategy x policy matrix; write matrix.json and matrix.csv."""
    scenario = _load(config_path)
    out = Path(out_dir or os.environ.get("PHISHGAME_OUT", "reports"))

    strategies = [
        scenarios.make_strategy(name, scenario["fullscreen_fidelity"])
        for name in scenario["strategies"]
    ]
    result = game.evaluate_matrix(
        strategies,
        scenario["policies"],
        n_per_cell=scenario["n"],
        base_seed=scenario["seed"],
        universe_size=scenario["universe_size"],
        attention=ATTENTION_PRESETS[scenario["attention"]],
        profile_name=scenario["profile"],
        payoffs=_payoffs(scenario),
    )

    report = {
        "config_hash": configmod.config_hash(scenario),
        "base_seed": scenario["seed"],
        "n_per_cell": scenario["n"],
        "cells": [
            {"strategy": s, "policy": p, **stats.to_dict()}
            for (s, p), stats in sorted(result.cells.items())
        ],
        "baselines": [
            {"strategy": "genuine_baseline", "policy": p, **stats.to_dict()}
            for p, stats in sorted(result.baselines.items())
        ],
    }
    _atomic_write(out / "matrix.json", json.dumps(report, indent=2, sort_keys=True) + "\n")

    buffer = io.StringIO()
    fieldnames = ["strategy", "policy"] + list(
        next(iter(result.cells.values())).to_dict().keys()
    )
    writer = csv.DictWriter(buffer, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in report["cells"] + report["baselines"]:
        writer.writerow(row)
    _atomic_write(out / "matrix.csv", buffer.getvalue())

    click.echo(f"wrote {out / 'matrix.json'} and {out / 'matrix.csv'}")


def _format_trace(transcript: game.EpisodeTranscript, scenario: dict) -> str:
    lines = [
        "phishgame episode trace",
        f"config_hash: {configmod.config_hash(scenario)}",
        f"seed: {transcript.seed}",
        f"world: {transcript.world_draw}",
        "events:",
    ]
    lines += [f"  tick {tick:>3}  {name}  {detail}" for tick, name, detail in transcript.events]
    lines += [
        "perceived signals: " + (", ".join(transcript.signals) or "(none)"),
        f"decision: {transcript.decision}",
        f"credentials_captured: {transcript.credentials_captured}",
        f"payoff_row: {transcript.payoff_row}",
        f"user_payoff: {transcript.user_payoff}",
        f"attacker_payoff: {transcript.attacker_payoff}",
    ]
    return "\n".join(lines) + "\n"


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--seed", type=int, default=None, help="Override the scenario seed.")
@click.option("--trace", is_flag=True, help="Write a human-readable transcript.")
@click.option("--out", "out_path", type=click.Path(), default=None)
def episode(config_path, seed, trace, out_path):
    """Run a single seeded episode."""
    scenario = _load(config_path)
    strategy = scenarios.make_strategy(scenario["strategy"], scenario["fullscreen_fidelity"])
    cfg = game.default_config(
        policy_name=scenario["policy"],
        strategy=strategy,
        p_genuine=scenario["p_genuine"],
        seed=scenario["seed"] if seed is None else seed,
        universe_size=scenario["universe_size"],
        attention=ATTENTION_PRESETS[scenario["attention"]],
        profile_name=scenario["profile"],
        payoffs=_payoffs(scenario),
        secret_compromised=scenario["strategy"] == "secret_thief",
    )
    transcript = game.run_episode(cfg)
    if trace:
        if out_path is not None:
            target = Path(out_path)
        else:
            out_dir = Path(os.environ.get("PHISHGAME_OUT", "."))
            target = out_dir / f"episode-{transcript.seed}.trace.txt"
        _atomic_write(target, _format_trace(transcript, scenario))
        click.echo(f"wrote {target}")
    else:
        click.echo(transcript.to_json())


@main.command()
@click.option("--actions", type=int, default=10_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--universe", type=int, default=128, show_default=True)
def fuzz(actions, seed, universe):
    """Capability-soundness fuzzing; exit 3 on any violation."""
    report = fuzz_capability_soundness(actions, seed, universe)
    click.echo(
        f"ran {report.actions_run} actions over {report.sequences_run} sequences; "
        f"{len(report.violations)} violations"
    )
    if not report.ok:
        for index, description in report.violations:
            click.echo(f"  sequence {index}: {description}", err=True)
        sys.exit(EXIT_VIOLATION)


@main.command()
@click.option("--port", type=int, default=None, help="Default: env PHISHGAME_PORT or 8000.")
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port, host):
    """Start the interactive game service."""
    import uvicorn

    from .service import create_app

    resolved_port = port if port is not None else int(os.environ.get("PHISHGAME_PORT", "8000"))
    uvicorn.run(create_app(), host=host, port=resolved_port)


if __name__ == "__main__":
    main()
