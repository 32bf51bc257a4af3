# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Reading and writing interaction log records.

Two formats are supported:

- 'jsonl': one JSON object per line, either an interaction
  ``{"src": str, "dst": str, "t": num, "q": num, "entities": [str],
  "replicate": bool}`` (the last two optional) or an epoch marker
  ``{"mark": str, "vertex": str, "t": num}``.
- 'csv': ``src,dst,t,q`` per line (liquid data only).

"""


# Standard library imports.
import csv
import io
import json
import logging
from decimal import Decimal

# Local imports.
from .interaction import EpochMarker, Interaction
from .interaction_parse_error import InteractionParseError
from .quantity import format_quantity, to_rational
from .tin_config import TinConfig


# Logging.
logger = logging.getLogger(__name__)

#: Supported record formats.
JSONL = "jsonl"
CSV = "csv"
FORMATS = (JSONL, CSV)

#: The optional header line of a CSV log.
CSV_HEADER = ("src", "dst", "t", "q")

_INTERACTION_FIELDS = {"src", "dst", "t", "q", "entities", "replicate"}
_MARKER_FIELDS = {"mark", "vertex", "t"}


def format_for_path(path):
    """ Guess the record format from a file name. """

    return CSV if str(path).lower().endswith(".csv") else JSONL


def parse_interaction(line, format=JSONL, config=None, line_number=None):
    """ Parse one text record into an 'Interaction'.

    Raises an 'InteractionParseError' naming the offending field if the
    record is malformed or violates an interaction invariant.

    """

    item = parse_record(line, format, config, line_number)
    if not isinstance(item, Interaction):
        raise InteractionParseError(
            "expected an interaction, got an epoch marker",
            field="mark",
            line_number=line_number,
        )

    return item


def parse_record(line, format=JSONL, config=None, line_number=None):
    """ Parse one text record into an 'Interaction' or an 'EpochMarker'. """

    if config is None:
        config = TinConfig()

    if format == JSONL:
        return _parse_jsonl(line, config, line_number)

    if format == CSV:
        return _parse_csv(line, config, line_number)

    raise ValueError("unknown record format %r" % (format,))


def serialize_interaction(r, format=JSONL):
    """ Render an 'Interaction' (or 'EpochMarker') as one text record.

    JSONL output omits fields that hold their default value.

    """

    if format == CSV:
        if isinstance(r, EpochMarker) or r.entities is not None:
            raise ValueError("only liquid interactions can be written as csv")

        if r.replicate:
            raise ValueError("the csv format cannot express replication")

        buffer = io.StringIO()
        csv.writer(buffer, lineterminator="").writerow(
            [r.src, r.dst, _number_text(r.t), _number_text(r.q)]
        )
        return buffer.getvalue()

    if format != JSONL:
        raise ValueError("unknown record format %r" % (format,))

    if isinstance(r, EpochMarker):
        fields = [
            ("mark", json.dumps(r.label)),
            ("vertex", json.dumps(r.vertex)),
            ("t", _json_number(r.t)),
        ]

    else:
        fields = [
            ("src", json.dumps(r.src)),
            ("dst", json.dumps(r.dst)),
            ("t", _json_number(r.t)),
            ("q", _json_number(r.q)),
        ]
        if r.entities is not None:
            fields.append(("entities", json.dumps(list(r.entities))))
        if r.replicate:
            fields.append(("replicate", "true"))

    return "{%s}" % ",".join('"%s":%s' % field for field in fields)


def read_log(source, format=None, config=None):
    """ Lazily parse a log, yielding interactions and epoch markers.

    'source' is a path or an iterable of lines (an open file, say). Blank
    lines and a leading CSV header are skipped. Items get 'seq' in read
    order and carry their 'line_number'.

    """

    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        if format is None:
            format = format_for_path(source)

        with open(source, "r", encoding="utf-8") as f:
            yield from read_log(f, format, config)

        return

    if format is None:
        format = JSONL

    if config is None:
        config = TinConfig()

    seq = 0
    for line_number, line in enumerate(source, 1):
        if not line.strip():
            continue

        if format == CSV and seq == 0 and _is_csv_header(line):
            continue

        item = parse_record(line, format, config, line_number)
        item.seq = seq
        seq += 1

        yield item

    logger.debug("read %d records", seq)


def write_log(items, sink, format=JSONL):
    """ Write items as text records, one per line, to a stream. """

    count = 0
    for item in items:
        sink.write(serialize_interaction(item, format))
        sink.write("\n")
        count += 1

    return count


#### Private protocol #########################################################


def _is_csv_header(line):
    """ Is the line the optional CSV header? """

    cells = tuple(cell.strip().lower() for cell in line.split(","))
    return cells == CSV_HEADER


def _json_number(value):
    """ Return JSON text for a number, a string if JSON cannot hold it. """

    text = _number_text(value)
    return text if "/" not in text else json.dumps(text)


def _number_text(value):
    """ Return exact text for a number. """

    return format_quantity(value)


def _parse_jsonl(line, config, line_number):
    """ Parse a JSONL record. """

    try:
        data = json.loads(line, parse_float=Decimal)

    except ValueError as e:
        raise InteractionParseError(
            "malformed JSON record: %s" % e, line_number=line_number
        )

    if not isinstance(data, dict):
        raise InteractionParseError(
            "a record must be a JSON object", line_number=line_number
        )

    if "mark" in data:
        return _parse_marker(data, config, line_number)

    unknown = set(data) - _INTERACTION_FIELDS
    if unknown:
        field = sorted(unknown)[0]
        raise InteractionParseError(
            "unknown field %r" % field, field=field, line_number=line_number
        )

    for field in ("src", "dst", "t", "q"):
        if field not in data:
            raise InteractionParseError(
                "missing field %r" % field,
                field=field,
                line_number=line_number,
            )

    replicate = data.get("replicate", False)
    if not isinstance(replicate, bool):
        raise InteractionParseError(
            "replicate must be true or false",
            field="replicate",
            line_number=line_number,
        )

    return _build(
        data["src"],
        data["dst"],
        data["t"],
        data["q"],
        data.get("entities"),
        replicate,
        config,
        line_number,
    )


def _parse_marker(data, config, line_number):
    """ Parse an epoch marker record. """

    unknown = set(data) - _MARKER_FIELDS
    if unknown:
        field = sorted(unknown)[0]
        raise InteractionParseError(
            "unknown field %r" % field, field=field, line_number=line_number
        )

    label = data["mark"]
    if not isinstance(label, str):
        raise InteractionParseError(
            "mark must be a string", field="mark", line_number=line_number
        )

    vertex = _vertex(data.get("vertex"), "vertex", line_number)
    t = _time(data.get("t"), config, line_number)

    return EpochMarker(vertex, t, label, line_number=line_number)


def _parse_csv(line, config, line_number):
    """ Parse a CSV record. """

    if config.is_discrete:
        raise InteractionParseError(
            "the csv format carries no entities; use jsonl for discrete data",
            field="entities",
            line_number=line_number,
        )

    try:
        cells = next(csv.reader([line.strip()]))

    except (csv.Error, StopIteration) as e:
        raise InteractionParseError(
            "malformed csv record: %s" % e, line_number=line_number
        )

    if len(cells) != 4:
        raise InteractionParseError(
            "expected 4 fields (src,dst,t,q), got %d" % len(cells),
            line_number=line_number,
        )

    src, dst, t, q = (cell.strip() for cell in cells)

    return _build(src, dst, t, q, None, False, config, line_number)


def _build(src, dst, t, q, entities, replicate, config, line_number):
    """ Validate field values and build an 'Interaction'. """

    src = _vertex(src, "src", line_number)
    dst = _vertex(dst, "dst", line_number)
    if src == dst:
        raise InteractionParseError(
            "src and dst are both %r" % src,
            field="dst",
            line_number=line_number,
        )

    t = _time(t, config, line_number)

    exact_q = _rational(q, "q", line_number)
    if exact_q <= 0:
        raise InteractionParseError(
            "q must be positive, got %s" % format_quantity(exact_q),
            field="q",
            line_number=line_number,
        )

    if config.is_discrete:
        if entities is None:
            raise InteractionParseError(
                "discrete interactions must list their entities",
                field="entities",
                line_number=line_number,
            )

        if exact_q.denominator != 1:
            raise InteractionParseError(
                "discrete quantities must be integers",
                field="q",
                line_number=line_number,
            )

        if not isinstance(entities, list) or not all(
            isinstance(entity, str) and entity for entity in entities
        ):
            raise InteractionParseError(
                "entities must be a list of non-empty strings",
                field="entities",
                line_number=line_number,
            )

        if len(entities) != exact_q:
            raise InteractionParseError(
                "%d entities listed for q=%s" % (len(entities), exact_q),
                field="entities",
                line_number=line_number,
            )

    elif entities is not None:
        raise InteractionParseError(
            "entities are only allowed for discrete data",
            field="entities",
            line_number=line_number,
        )

    return Interaction(
        src,
        dst,
        t,
        config.number(exact_q),
        entities=entities,
        replicate=replicate,
        line_number=line_number,
    )


def _vertex(value, field, line_number):
    """ Check a vertex id. """

    if not isinstance(value, str) or not value:
        raise InteractionParseError(
            "%s must be a non-empty string" % field,
            field=field,
            line_number=line_number,
        )

    return value


def _time(value, config, line_number):
    """ Check and convert a timestamp. """

    t = _rational(value, "t", line_number)
    if t < 0:
        raise InteractionParseError(
            "t must not be negative", field="t", line_number=line_number
        )

    return config.number(t)


def _rational(value, field, line_number):
    """ Convert a field value to an exact rational. """

    try:
        return to_rational(value)

    except ValueError:
        raise InteractionParseError(
            "%s must be a finite number, got %r" % (field, value),
            field=field,
            line_number=line_number,
        )
