# tmkit/cli.py
"""Command-line driver: ``tmkit check|classify|impact|simulate|export``."""
import logging
from enum import IntEnum
from typing import Iterable, Optional

import click

from . import __version__
from .connectors.file.json import JsonFileConnector
from .connectors.file.tm import TmFileConnector
from .core.diagnostics import Code, Diagnostic, Severity, error, has_errors
from .core.exceptions import InvalidEventError, ParseFailure, SimulationError, TmkitError
from .core.types import Mode, ModelDocument
from .events.dependencies import derive_dependencies
from .export.canonical import to_json
from .export.dot import to_dot_behavior, to_dot_static
from .monitoring.logging import configure_logging
from .monitoring.metrics import ResourceMonitor, conservation_check
from .pipeline.builder import default_pipeline
from .simulation.chronology import validate_chronology
from .simulation.engine import Simulator
from .utils.config import DEFAULT_MODE, MODE_ENV_VAR
from .validators.aggregation import deletion_impact
from .validators.encapsulation import classification_frame, classify

logger = logging.getLogger("tmkit.cli")

_SEVERITY_COLORS = {Severity.ERROR: "red", Severity.WARNING: "yellow"}


class ExitStatus(IntEnum):
    CLEAN = 0
    ERRORS = 1
    USAGE = 2


class InputError(click.ClickException):
    """Unreadable input file."""

    exit_code = ExitStatus.USAGE


input_path = click.argument("path", type=click.Path(exists=True, dir_okay=False))

mode_option = click.option(
    "--mode",
    type=click.Choice([m.value for m in Mode], case_sensitive=False),
    envvar=MODE_ENV_VAR,
    default=DEFAULT_MODE.value,
    show_default=True,
    help=f"Strictness of flow checks and simulation (env: {MODE_ENV_VAR}).",
)


def _echo_line(ctx: click.Context, text: str, color: Optional[str] = None) -> None:
    if ctx.obj.get("color") and color:
        click.echo(click.style(text, fg=color), color=True)
    else:
        click.echo(text)


def _echo_diagnostics(ctx: click.Context, diagnostics: Iterable[Diagnostic]) -> None:
    for d in diagnostics:
        _echo_line(ctx, d.format(), _SEVERITY_COLORS[d.severity])


def _load(ctx: click.Context, path: str) -> ModelDocument:
    try:
        return TmFileConnector(path).load()
    except ParseFailure as e:
        for err in e.errors:
            _echo_line(ctx, err.format(), "red")
        ctx.exit(ExitStatus.ERRORS)
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e.strerror or e}") from None


@click.group()
@click.option("-v", "--verbose", count=True, help="Log to stderr; repeat for debug output.")
@click.option("--color/--no-color", default=False, help="Colorize diagnostics.")
@click.version_option(__version__, prog_name="tmkit")
@click.pass_context
def cli(ctx: click.Context, verbose: int, color: bool) -> None:
    """Thinging-machine modeling toolkit."""
    configure_logging(verbose)
    ctx.obj = {"color": color}
    monitor = ResourceMonitor().start()

    def _finish() -> None:
        monitor.stop().alert_on_anomalies()
        logger.debug(f"Finished in {monitor.metrics['duration']:.3f}s")

    ctx.call_on_close(_finish)


@cli.command()
@input_path
@mode_option
@click.pass_context
def check(ctx: click.Context, path: str, mode: str) -> None:
    """Parse a model and run flow, encapsulation and event checks."""
    doc = _load(ctx, path)
    diagnostics = default_pipeline(mode, doc.events, logger=logger).run(doc.static)
    _echo_diagnostics(ctx, diagnostics)
    errors = sum(1 for d in diagnostics if d.severity is Severity.ERROR)
    click.echo(f"{errors} error(s), {len(diagnostics) - errors} warning(s)")
    ctx.exit(ExitStatus.ERRORS if errors else ExitStatus.CLEAN)


@cli.command(name="classify")
@input_path
@click.pass_context
def classify_cmd(ctx: click.Context, path: str) -> None:
    """Print the computed OO / NON_OO / LEAF verdict of every thimac."""
    doc = _load(ctx, path)
    frame = classification_frame(classify(doc.static))
    if not frame.empty:
        click.echo(frame.to_string(index=False))
    ctx.exit(ExitStatus.CLEAN)


@cli.command()
@input_path
@click.option("--delete", "thimac_id", required=True, help="Thimac whose deletion is analysed.")
@click.pass_context
def impact(ctx: click.Context, path: str, thimac_id: str) -> None:
    """List the thimacs removed by deleting one, following composite links."""
    doc = _load(ctx, path)
    if thimac_id not in doc.static.thimac_index:
        raise click.BadParameter(f"unknown thimac '{thimac_id}'", param_hint="--delete")
    for tid in sorted(deletion_impact(doc.static, thimac_id)):
        click.echo(tid)
    ctx.exit(ExitStatus.CLEAN)


@cli.command()
@input_path
@click.option("--behavior", "behavior_id", required=True, help="Behavior to simulate.")
@mode_option
@click.option("--trace-json", type=click.Path(dir_okay=False), default=None, help="Also write the trace as JSON.")
@click.pass_context
def simulate(ctx: click.Context, path: str, behavior_id: str, mode: str, trace_json: Optional[str]) -> None:
    """Check a behavior's chronology, run it, and report token conservation."""
    doc = _load(ctx, path)
    behavior = doc.behavior(behavior_id)
    if behavior is None:
        raise click.BadParameter(f"unknown behavior '{behavior_id}'", param_hint="--behavior")

    try:
        deps = derive_dependencies(doc.static, doc.events)
    except InvalidEventError as e:
        _echo_diagnostics(ctx, e.diagnostics)
        ctx.exit(ExitStatus.ERRORS)

    diagnostics = validate_chronology(behavior, deps)
    cyclic = [d for d in diagnostics if d.code is Code.CYCLIC_BEHAVIOR]
    if cyclic:
        _echo_diagnostics(ctx, [error(Code.CYCLIC_BEHAVIOR, d.subject, d.message) for d in cyclic])
        ctx.exit(ExitStatus.ERRORS)
    _echo_diagnostics(ctx, diagnostics)

    try:
        trace = Simulator(doc.static, mode, logger=logger).run(doc.events, behavior)
    except SimulationError as e:
        _echo_line(ctx, f"ERROR {e.code} {e.subject}: {e}", "red")
        ctx.exit(ExitStatus.ERRORS)

    for record in trace.firings:
        click.echo(record.format())
    report = conservation_check(trace)
    click.echo(report.format())

    if trace_json:
        try:
            JsonFileConnector(trace_json, logger=logger).save(trace)
        except OSError as e:
            raise InputError(f"Cannot write {trace_json}: {e.strerror or e}") from None

    failed = has_errors(diagnostics) or not report.passed
    ctx.exit(ExitStatus.ERRORS if failed else ExitStatus.CLEAN)


@cli.command()
@input_path
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["dot-static", "dot-behavior", "json"]),
    required=True,
    help="Output format.",
)
@click.option("--behavior", "behavior_id", default=None, help="Behavior to draw (dot-behavior only).")
@click.pass_context
def export(ctx: click.Context, path: str, fmt: str, behavior_id: Optional[str]) -> None:
    """Write the model as DOT or canonical JSON to stdout."""
    doc = _load(ctx, path)
    if fmt == "dot-static":
        click.echo(to_dot_static(doc.static).text, nl=False)
    elif fmt == "json":
        click.echo(to_json(doc))
    else:
        if behavior_id is None:
            raise click.UsageError("--behavior is required with --format dot-behavior")
        behavior = doc.behavior(behavior_id)
        if behavior is None:
            raise click.BadParameter(f"unknown behavior '{behavior_id}'", param_hint="--behavior")
        click.echo(to_dot_behavior(behavior).text, nl=False)
    ctx.exit(ExitStatus.CLEAN)


def main() -> None:
    try:
        cli(prog_name="tmkit")
    except TmkitError as e:
        click.echo(f"ERROR {e.code}: {e}", err=True)
        raise SystemExit(ExitStatus.ERRORS)
