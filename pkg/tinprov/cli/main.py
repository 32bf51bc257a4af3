# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" The 'tinprov' command line.

Every command writes line-oriented JSON to stdout and logs to stderr. Exit
codes: 0 on success, 1 when verification finds a mismatch, 2 on bad input
(usage, parse or validation errors) and 3 when verification refuses an
oversized log.

"""


# Standard library imports.
import json
import logging
import sys
from contextlib import contextmanager
from fractions import Fraction

# Third party imports.
import click

# Enthought library imports.
from traits.api import TraitError

# Local imports.
from tinprov.api import (
    CSV,
    JSONL,
    ProvenanceQuery,
    StateEngine,
    TinProvError,
    load_config,
    load_snapshot,
    read_log,
    save_snapshot,
    serialize_interaction,
    validate_log,
)
from tinprov.cli.query_battery import MAX_VERIFY_INTERACTIONS, QueryBattery
from tinprov.cli.workloads import KINDS, WorkloadSpec
from tinprov.interaction import EpochMarker
from tinprov.quantity import EXACT, FLOAT, format_decimal, to_rational
from tinprov.query_answers import quantity_to_json
from tinprov.tin_config import (
    DISCRETE,
    FIFO,
    LIFO,
    LIQUID,
    PER_INTERACTION,
    PHASE_CHANGE,
    PROPORTIONAL,
    TIME_BUCKET,
)
from tinprov.vertex_state import FLANKS, POST


# Logging.
logger = logging.getLogger(__name__)

#: Exit codes.
EXIT_MISMATCH = 1
EXIT_BAD_INPUT = 2
EXIT_REFUSED = 3

#: Levels accepted by '--log-level'.
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

#: Query types accepted by 'query --type'.
QUERY_TYPES = ("q1", "q2", "q3", "q4", "q5")

#: Places shown for compression ratios.
RATIO_PLACES = 3


class NumberType(click.ParamType):
    """ A decimal, integer or 'p/q' option value, kept exact. """

    name = "number"

    def convert(self, value, param, ctx):
        if isinstance(value, (int, Fraction)):
            return value

        try:
            return to_rational(value)

        except ValueError:
            self.fail("%r is not a number" % (value,), param, ctx)


class DepthType(click.ParamType):
    """ A depth limit of at least 1, or 'inf' for none. """

    name = "depth"

    def convert(self, value, param, ctx):
        if value is None or value == "inf":
            return None

        try:
            depth = int(value)

        except ValueError:
            self.fail("%r is not a depth" % (value,), param, ctx)

        if depth < 1:
            self.fail("depth must be at least 1", param, ctx)

        return depth


NUMBER = NumberType()
DEPTH = DepthType()

format_option = click.option(
    "--format",
    "log_format",
    default=None,
    type=click.Choice([JSONL, CSV]),
    help="Log format  [default: from the file extension]",
)
data_class_option = click.option(
    "--data-class",
    default=None,
    type=click.Choice([LIQUID, DISCRETE]),
    help="Data class  [default: from preferences]",
)
policy_option = click.option(
    "--policy",
    default=None,
    type=click.Choice([PROPORTIONAL, FIFO, LIFO]),
    help="Attribution policy for liquid outflows",
)
boundary_option = click.option(
    "--boundary",
    default=None,
    type=click.Choice([PHASE_CHANGE, PER_INTERACTION, TIME_BUCKET]),
    help="State boundary policy",
)
delta_option = click.option(
    "--delta",
    default=None,
    type=float,
    help="Bucket width for the 'bucket' boundary policy",
)
tolerance_option = click.option(
    "--tolerance",
    default=None,
    type=float,
    help=(
        "Float tolerance. The TINPROV_TOLERANCE environment variable also "
        "sets it."
    ),
)
arithmetic_option = click.option(
    "--arithmetic",
    default=None,
    type=click.Choice([EXACT, FLOAT]),
    help="Keep quantities as exact rationals or as floats",
)


def config_options(function):
    """ Add the options that override the configured policies. """

    for option in reversed(
        [
            data_class_option,
            policy_option,
            boundary_option,
            delta_option,
            tolerance_option,
            arithmetic_option,
        ]
    ):
        function = option(function)

    return function


@click.group()
@click.option(
    "--log-level",
    default="WARNING",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    show_default=True,
    help="Level of the messages logged to stderr",
)
def cli(log_level):
    """ Temporal provenance over interaction logs. """

    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        format="%(levelname)s:%(name)s:%(message)s",
        stream=sys.stderr,
        force=True,
    )


@cli.command()
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False))
@format_option
@config_options
@click.option(
    "--output",
    "-o",
    default=None,
    type=click.Path(dir_okay=False),
    help="Snapshot path  [default: LOG_PATH.snapshot]",
)
def ingest(log_path, log_format, output, **overrides):
    """ Build the provenance index of a log and save its snapshot.

    """
    with _exit_on_error():
        config = _config(**overrides)
        report = validate_log(
            read_log(log_path, log_format, config), config.is_discrete
        )
        if not report.ok:
            _echo_violations(report)
            sys.exit(EXIT_BAD_INPUT)

        engine = StateEngine(config=config)
        engine.ingest(read_log(log_path, log_format, config))

        if output is None:
            output = log_path + ".snapshot"
        save_snapshot(engine.index, output)

        summary = {"snapshot": output}
        summary.update(_stats(engine.index))
        _echo(summary)


@cli.command()
@click.argument("snapshot_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--type",
    "query_type",
    required=True,
    type=click.Choice(QUERY_TYPES),
    help="Query type",
)
@click.option("--vertex", default=None, help="Vertex queried (q1, q3, q5)")
@click.option("--source", default=None, help="Source vertex (q2, q4)")
@click.option("--dest", default=None, help="Destination vertex (q4)")
@click.option("--via", default=None, help="Intermediate vertex (q4)")
@click.option("--t", "t", default=None, type=NUMBER, help="Time (q1, q2)")
@click.option("--t1", default=None, type=NUMBER, help="Range start")
@click.option("--t2", default=None, type=NUMBER, help="Range end")
@click.option(
    "--depth",
    default="inf",
    type=DEPTH,
    show_default=True,
    help="Depth limit (q1, q2)",
)
@click.option(
    "--flank",
    default=POST,
    type=click.Choice(FLANKS),
    show_default=True,
    help="Provenance just after or just before t (q1)",
)
def query(
    snapshot_path,
    query_type,
    vertex,
    source,
    dest,
    via,
    t,
    t1,
    t2,
    depth,
    flank,
):
    """ Answer a provenance query over a saved snapshot. """

    with _exit_on_error():
        index = load_snapshot(snapshot_path)
        number = index.config.number
        provenance = ProvenanceQuery(index=index)

        if query_type == "q1":
            _require(vertex=vertex, t=t)
            answer = provenance.q1_backward(vertex, number(t), depth, flank)

        elif query_type == "q2":
            source = source or vertex
            _require(source=source, t=t)
            answer = provenance.q2_forward(source, number(t), depth)

        elif query_type == "q3":
            _require(vertex=vertex, t1=t1, t2=t2)
            answer = provenance.q3_temporal_lineage(
                vertex, number(t1), number(t2)
            )

        elif query_type == "q4":
            _require(source=source, dest=dest, via=via)
            if (t1 is None) != (t2 is None):
                raise click.UsageError("give both --t1 and --t2, or neither")

            horizon = None if t1 is None else (number(t1), number(t2))
            try:
                q = provenance.q4_flow_lineage(source, dest, via, horizon)

            except ValueError as e:
                raise click.UsageError(str(e))

            click.echo(quantity_to_json(q))
            return

        else:
            _require(vertex=vertex, t1=t1, t2=t2)
            answer = provenance.q5_versioning(vertex, number(t1), number(t2))

        click.echo(answer.to_json())


@cli.command()
@click.argument("kind", type=click.Choice(KINDS))
@click.option(
    "--output",
    "-o",
    default=None,
    type=click.Path(dir_okay=False),
    help="Log path  [default: stdout]",
)
@click.option(
    "--format",
    "log_format",
    default=JSONL,
    type=click.Choice([JSONL, CSV]),
    show_default=True,
    help="Log format",
)
@click.option("--seed", default=0, show_default=True, help="Random seed")
@click.option(
    "--vertices",
    default=50,
    show_default=True,
    help="Accounts (financial_random)",
)
@click.option(
    "--interactions",
    default=10000,
    show_default=True,
    help="Interactions (financial_random)",
)
@click.option(
    "--min-amount",
    default="1",
    show_default=True,
    help="Smallest amount (financial_random)",
)
@click.option(
    "--max-amount",
    default="1000",
    show_default=True,
    help="Largest amount (financial_random)",
)
@click.option(
    "--burst",
    default=1,
    show_default=True,
    help="Transfers sharing each timestamp (financial_random)",
)
@click.option(
    "--windows", default=10, show_default=True, help="Windows (windowed)"
)
@click.option(
    "--events",
    default=1000,
    show_default=True,
    help="Events per window (windowed)",
)
@click.option(
    "--count",
    default=1000,
    show_default=True,
    help="Interactions (alternating)",
)
def generate(kind, output, log_format, **parameters):
    """ Generate a synthetic interaction log. """

    try:
        items = WorkloadSpec(kind=kind, **parameters).generate()
        lines = [serialize_interaction(item, log_format) for item in items]

    except (TraitError, ValueError) as e:
        raise click.UsageError(str(e))

    if output is None:
        for line in lines:
            click.echo(line)
        return

    with open(output, "w", encoding="utf-8") as f:
        for line in lines:
            f.write(line)
            f.write("\n")

    _echo({"output": output, "records": len(lines)})


@cli.command()
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False))
@format_option
@config_options
@click.option(
    "--queries",
    default=1000,
    show_default=True,
    help="Number of random queries",
)
@click.option("--seed", default=0, show_default=True, help="Query seed")
def verify(log_path, log_format, queries, seed, **overrides):
    """ Cross-check the index of a log against the event-replay oracle.

    """
    with _exit_on_error():
        config = _config(**overrides)
        items = list(read_log(log_path, log_format, config))

        interactions = sum(
            1 for item in items if not isinstance(item, EpochMarker)
        )
        if interactions > MAX_VERIFY_INTERACTIONS:
            _echo(
                {
                    "refused": "%d interactions is over the limit of %d"
                    % (interactions, MAX_VERIFY_INTERACTIONS)
                }
            )
            sys.exit(EXIT_REFUSED)

        report = validate_log(items, config.is_discrete)
        if not report.ok:
            _echo_violations(report)
            sys.exit(EXIT_BAD_INPUT)

        battery = QueryBattery(queries=queries, seed=seed)
        result = battery.run(items, config)

        for mismatch in result.mismatches:
            _echo({"mismatch": str(mismatch)})
        for problem in result.problems:
            _echo({"conservation": problem})

        _echo(
            {
                "queries": result.checked,
                "mismatches": len(result.mismatches),
                "ok": result.ok,
            }
        )
        if not result.ok:
            sys.exit(EXIT_MISMATCH)


@cli.command()
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False))
@format_option
@data_class_option
def validate(log_path, log_format, data_class):
    """ Check a log for ordering and entity conservation violations. """

    with _exit_on_error():
        config = _config(data_class=data_class)
        report = validate_log(
            read_log(log_path, log_format, config), config.is_discrete
        )
        _echo_violations(report)
        _echo(
            {
                "records": report.record_count,
                "violations": len(report.violations),
            }
        )
        if not report.ok:
            sys.exit(EXIT_BAD_INPUT)


@cli.command()
@click.argument("snapshot_path", type=click.Path(exists=True, dir_okay=False))
def stats(snapshot_path):
    """ Print the size and compression ratio of a saved snapshot. """

    with _exit_on_error():
        _echo(_stats(load_snapshot(snapshot_path)))


#### Private protocol #########################################################


@contextmanager
def _exit_on_error():
    """ Report a 'TinProvError' on stderr and exit with status 2. """

    try:
        yield

    except TinProvError as e:
        logger.debug("command failed", exc_info=True)
        click.echo("error: %s" % e, err=True)
        sys.exit(EXIT_BAD_INPUT)


def _config(
    data_class=None,
    policy=None,
    boundary=None,
    delta=None,
    tolerance=None,
    arithmetic=None,
):
    """ Load the configuration, turning bad values into usage errors. """

    try:
        return load_config(
            data_class=data_class,
            attribution=policy,
            boundary=boundary,
            delta=delta,
            tolerance=tolerance,
            arithmetic=arithmetic,
        )

    except (TraitError, ValueError) as e:
        raise click.UsageError(str(e))


def _echo(data):
    """ Write one JSON line to stdout. """

    click.echo(json.dumps(data, sort_keys=True, separators=(",", ":")))


def _echo_violations(report):
    for violation in report.violations:
        _echo(
            {
                "line": violation.line_number,
                "kind": violation.kind,
                "message": violation.message,
            }
        )


def _ratio(raw_count, state_count):
    """ Format a compression ratio, "n/a" when there are no states. """

    if state_count < 1:
        return "n/a"

    return format_decimal(Fraction(raw_count, state_count), RATIO_PLACES)


def _require(**values):
    """ Raise a usage error naming the options that are missing. """

    missing = sorted(name for name, value in values.items() if value is None)
    if missing:
        raise click.UsageError(
            "missing option(s): %s"
            % ", ".join("--" + name.replace("_", "-") for name in missing)
        )


def _stats(index):
    """ Return the JSON-friendly size summary of an index. """

    stats = index.stats()

    return {
        "raw_count": stats["raw_count"],
        "state_count": stats["state_count"],
        "ratio": _ratio(stats["raw_count"], stats["state_count"]),
        "vertices": {
            v: {
                "states": entry["states"],
                "events": entry["events"],
                "ratio": _ratio(entry["events"], entry["states"]),
            }
            for v, entry in stats["vertices"].items()
        },
    }


if __name__ == "__main__":
    cli()
