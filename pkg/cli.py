# cli.py
"""Command-line front end: one-shot verbs, an interactive REPL and batch files.

Every front end builds the same Command objects and publishes them on the
command bus, so a verb gives identical output whichever way it is run.
"""
import json
import shlex
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import List, Optional

import click
import typer

from command_bus import CommandBus
from driver import (
    COMMAND_TYPES,
    Driver,
    PartsResult,
    RankResult,
    Settings,
    configure_logging,
    load_settings,
)
from errors import CommandError, GrossError
from grossparse import to_text

PROG_NAME = "grossnum"
PROMPT = "grossnum> "
# Verbs accepted on a REPL or batch line
LINE_VERBS = ("eval", "cmp", "parts", "measure", "measure-cmp", "rank", "table")
# Expressions may start with "-", which click would otherwise read as an option
EXPRESSION_ARGS = {"ignore_unknown_options": True}

app = typer.Typer(
    name=PROG_NAME,
    help="Exact arithmetic with grossone, set measures and lexicographic ranking.",
    add_completion=False,
    no_args_is_help=True,
)


class RankMethodName(str, Enum):
    gross = "gross"
    binary = "binary"


@dataclass
class AppState:
    driver: Driver
    settings: Settings
    json_output: bool


@app.callback()
def main_callback(
    ctx: typer.Context,
    json_output: bool = typer.Option(False, "--json", help="Print results as JSON."),
    unicode: bool = typer.Option(False, "--unicode", help="Print the grossone symbol instead of G."),
    max_div_terms: Optional[int] = typer.Option(
        None, "--max-div-terms", min=1,
        help="Quotient terms computed before division gives up (default 32, env GROSSNUM_MAX_DIV_TERMS).",
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log progress to stderr."),
):
    # Settings file and environment first, then the command-line flags on top
    try:
        settings = load_settings()
    except CommandError as e:
        raise click.UsageError(str(e), ctx) from e
    if max_div_terms is not None:
        settings = replace(settings, max_div_terms=max_div_terms)
    if unicode:
        settings = replace(settings, unicode_output=True)

    configure_logging("INFO" if verbose else settings.log_level)

    # One bus and one driver per invocation, shut down when the group context closes
    driver = Driver(CommandBus(), settings)
    driver.start()
    ctx.call_on_close(driver.stop_system)
    ctx.obj = AppState(driver, settings, json_output)


# Rendering
def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _render_parts(result: PartsResult, unicode: bool, as_json: bool) -> str:
    fields = {
        "value": result.value,
        "infinite": result.parts.infinite,
        "finite": result.parts.finite,
        "infinitesimal": result.parts.infinitesimal,
    }
    if as_json:
        obj = {name: to_text(value) for name, value in fields.items()}
        obj["class"] = result.magnitude.value
        return _dumps(obj)
    lines = [f"{name}: {to_text(value, unicode)}" for name, value in fields.items()]
    lines.append(f"class: {result.magnitude.value}")
    return "\n".join(lines)


def _render_rank(result: RankResult, unicode: bool, as_json: bool) -> str:
    method = result.method
    if as_json:
        return _dumps({
            "method": method.name,
            "leaderboard": [
                {
                    "position": entry.position,
                    "label": entry.label,
                    "scores": entry.vector.to_json()["scores"],
                    "rank": method.rank_json(entry.vector),
                }
                for entry in result.entries
            ],
        })
    width = max(len(entry.label) for entry in result.entries)
    return "\n".join(
        f"{entry.position}. {entry.label.ljust(width)}  {method.rank_text(entry.vector, unicode)}"
        for entry in result.entries
    )


def _render_table(rows: list, unicode: bool, as_json: bool) -> str:
    if as_json:
        return _dumps([
            {
                "description": row.description,
                "set": row.descriptor.to_text(),
                "cantor": row.cantor.value,
                "measure": row.measure.to_json(),
            }
            for row in rows
        ])
    return "\n".join(
        f"{row.description} | {row.cantor.display(unicode)} | {row.measure.to_text(unicode)}"
        for row in rows
    )


def render(verb: str, result, settings: Settings, as_json: bool = False) -> str:
    """Text printed on stdout for the result of a verb"""
    unicode = settings.unicode_output
    if verb == "eval":
        return _dumps({"value": to_text(result)}) if as_json else to_text(result, unicode)
    if verb in ("cmp", "measure-cmp"):
        return _dumps({"ordering": result.symbol}) if as_json else result.symbol
    if verb == "parts":
        return _render_parts(result, unicode, as_json)
    if verb == "measure":
        return _dumps(result.measure.to_json()) if as_json else result.measure.to_text(unicode)
    if verb == "rank":
        return _render_rank(result, unicode, as_json)
    if verb == "table":
        return _render_table(result, unicode, as_json)
    raise ValueError(f"no renderer for verb '{verb}'")


def report_error(error: GrossError):
    typer.echo(f"{error.code}: {error.describe()}", err=True)


def _execute(ctx: typer.Context, command_type, **params):
    """Build the command, publish it on the bus and print the result"""
    state = ctx.obj
    try:
        command = command_type(**params)
        result = state.driver.bus.publish(command.verb, command)
    # Malformed commands exit 2, domain errors exit 1
    except CommandError as e:
        raise click.UsageError(str(e), ctx) from e
    except GrossError as e:
        report_error(e)
        raise typer.Exit(code=1)
    typer.echo(render(command.verb, result, state.settings, state.json_output))


# Verbs
@app.command("eval", context_settings=EXPRESSION_ARGS)
def eval_command(ctx: typer.Context, expr: str = typer.Argument(..., help='Expression such as "3*G^2 - (G - 1)".')):
    """Evaluate an expression and print its canonical form."""
    _execute(ctx, COMMAND_TYPES["eval"], expr=expr)


@app.command("cmp", context_settings=EXPRESSION_ARGS)
def cmp_command(
    ctx: typer.Context,
    lhs: str = typer.Argument(..., help="Left expression."),
    rhs: str = typer.Argument(..., help="Right expression."),
):
    """Compare two expressions, printing <, = or >."""
    _execute(ctx, COMMAND_TYPES["cmp"], lhs=lhs, rhs=rhs)


@app.command("parts", context_settings=EXPRESSION_ARGS)
def parts_command(ctx: typer.Context, expr: str = typer.Argument(..., help="Expression to split.")):
    """Split a value into its infinite, finite and infinitesimal parts."""
    _execute(ctx, COMMAND_TYPES["parts"], expr=expr)


@app.command("measure")
def measure_command(ctx: typer.Context, set_expr: str = typer.Argument(..., help='Set such as "N(1,2)" or "num[1,2)@10".')):
    """Print the grossone measure of a set."""
    _execute(ctx, COMMAND_TYPES["measure"], set_expr=set_expr)


@app.command("measure-cmp")
def measure_cmp_command(
    ctx: typer.Context,
    lhs: str = typer.Argument(..., help="Left set."),
    rhs: str = typer.Argument(..., help="Right set."),
):
    """Compare the measures of two sets, printing <, = or >."""
    _execute(ctx, COMMAND_TYPES["measure-cmp"], lhs=lhs, rhs=rhs)


@app.command("rank")
def rank_command(
    ctx: typer.Context,
    method: RankMethodName = typer.Option(RankMethodName.gross, "--method", help="Ranking counter."),
    vectors: List[str] = typer.Option(..., "--scores", help="Comma-separated tallies, most important first. Repeat per competitor."),
    labels: Optional[List[str]] = typer.Option(None, "--label", help="Competitor name, one per --scores."),
):
    """Print a leaderboard, best first."""
    _execute(ctx, COMMAND_TYPES["rank"], method=method.value, vectors=tuple(vectors), labels=tuple(labels or ()))


@app.command("table")
def table_command(ctx: typer.Context):
    """Print the catalog of infinite sets with their measures."""
    _execute(ctx, COMMAND_TYPES["table"])


# Line-oriented front ends
def _split_line(line: str) -> list:
    try:
        args = shlex.split(line)
    except ValueError as e:
        raise CommandError(f"cannot split line: {e}") from e
    if args[0] not in LINE_VERBS:
        raise CommandError(f"unknown verb '{args[0]}', expected one of: {', '.join(LINE_VERBS)}")
    return args


def run_line(group_ctx: click.Context, line: str) -> int:
    """Run one verb line exactly as the one-shot command would; returns its exit code"""
    try:
        verb, *rest = _split_line(line)
    except CommandError as e:
        report_error(e)
        return 2
    # Reuse the group context so the line sees the same driver and flags
    command = group_ctx.command.get_command(group_ctx, verb)
    try:
        with command.make_context(verb, rest, parent=group_ctx) as sub_ctx:
            command.invoke(sub_ctx)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return e.exit_code
    return 0


def command_from_line(group_ctx: click.Context, line: str):
    """Parse a verb line into its Command without running it"""
    verb, *rest = _split_line(line)
    command = group_ctx.command.get_command(group_ctx, verb)
    try:
        with command.make_context(verb, rest, parent=group_ctx) as sub_ctx:
            params = dict(sub_ctx.params)
    except click.ClickException as e:
        raise CommandError(e.format_message()) from e
    if verb == "rank":
        params["vectors"] = tuple(params["vectors"])
        params["labels"] = tuple(params["labels"] or ())
    return COMMAND_TYPES[verb](**params)


@app.command("repl")
def repl_command(ctx: typer.Context):
    """Read verb lines from stdin until quit, exit or end of input."""
    group_ctx = ctx.parent
    stdin = click.get_text_stream("stdin")
    interactive = stdin.isatty()
    while True:
        if interactive:
            typer.echo(PROMPT, nl=False)
        line = stdin.readline()
        if not line:
            break
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("quit", "exit"):
            break
        if line == "help":
            typer.echo(f"verbs: {', '.join(LINE_VERBS)}; quit or exit to leave")
            continue
        run_line(group_ctx, line)


@app.command("batch")
def batch_command(
    ctx: typer.Context,
    path: Path = typer.Argument(..., exists=True, dir_okay=False, readable=True, help="File with one verb line per line."),
):
    """Run every line of a file on the worker pool and print results in input order."""
    state = ctx.obj
    lines = [line.strip() for line in path.read_text(encoding="utf-8").splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]

    # Lines that do not parse keep their slot and are reported in order
    jobs = []
    for line in lines:
        try:
            jobs.append(command_from_line(ctx.parent, line))
        except CommandError as e:
            jobs.append(e)

    outcomes = iter(state.driver.run_batch([job for job in jobs if not isinstance(job, CommandError)]))
    failed = False
    for job in jobs:
        if isinstance(job, CommandError):
            report_error(job)
            failed = True
            continue
        outcome = next(outcomes)
        if outcome.ok:
            typer.echo(render(job.verb, outcome.result, state.settings, state.json_output))
        else:
            report_error(outcome.error)
            failed = True
    if failed:
        raise typer.Exit(code=1)


def run(argv=None) -> int:
    """Run the command line and return the process exit code"""
    command = typer.main.get_command(app)
    # standalone_mode=False hands the exit code back instead of calling sys.exit
    try:
        result = command.main(args=argv, prog_name=PROG_NAME, standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        typer.echo("Aborted!", err=True)
        return 1
    return result if isinstance(result, int) else 0
