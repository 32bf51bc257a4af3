# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Saving and loading temporal provenance indexes.

A snapshot is a versioned JSON-lines file: a header line with the format
version, the configuration and the index counters, one line per state in
vertex and time order, and a trailer line with the number of states so that
truncation is detected. Quantities are exact decimal strings (or "p/q" for
rationals without a finite decimal expansion).

"""


# Standard library imports.
import json
import logging
import os
import tempfile
from decimal import Decimal

# Enthought library imports.
from traits.api import TraitError

# Local imports.
from .non_monotone_insertion_error import NonMonotoneInsertionError
from .provenance_entry import ProvenanceEntry
from .provenance_index import TemporalProvenanceIndex
from .quantity import format_quantity, json_time
from .snapshot_load_error import SnapshotLoadError
from .tin_config import TinConfig
from .vertex_state import Arrival, Content, Departure, PHASES, VertexState


# Logging.
logger = logging.getLogger(__name__)

#: The snapshot format version written (and the only one read).
SNAPSHOT_VERSION = 1


def dump_snapshot(index, sink):
    """ Write a snapshot of 'index' to a text stream.

    Returns the number of states written.

    """

    with index.lock:
        header = {
            "tinprov_snapshot": SNAPSHOT_VERSION,
            "config": index.config.to_dict(),
            "raw_count": index.raw_count,
            "first_t": _time(index.first_t),
            "last_t": _time(index.last_t),
        }
        _write(sink, header)

        count = 0
        for v in index.vertices():
            for state in index.states(v):
                _write(sink, _state_to_dict(state))
                count += 1

        _write(sink, {"end": count})

    logger.debug("wrote snapshot of %d states", count)

    return count


def save_snapshot(index, path):
    """ Write a snapshot of 'index' to 'path', replacing it atomically. """

    directory = os.path.dirname(os.path.abspath(path))
    fd, temporary = tempfile.mkstemp(
        prefix=".tinprov-", suffix=".tmp", dir=directory
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            count = dump_snapshot(index, f)
        os.replace(temporary, path)

    except BaseException:
        if os.path.exists(temporary):
            os.remove(temporary)
        raise

    logger.debug("saved snapshot to %s", path)

    return count


def read_snapshot(source):
    """ Load an index from a stream of snapshot lines.

    Raises a 'SnapshotLoadError' if the snapshot is corrupt, truncated or
    of another version; no partial index is ever returned.

    """

    lines = (
        (line_number, line)
        for line_number, line in enumerate(source, 1)
        if line.strip()
    )

    line_number = 0
    try:
        line_number, line = next(lines, (0, None))
        if line is None:
            raise SnapshotLoadError("empty snapshot")

        header = _parse(line)
        version = header.get("tinprov_snapshot")
        if version != SNAPSHOT_VERSION:
            raise SnapshotLoadError(
                "unsupported snapshot version %r (expected %d)"
                % (version, SNAPSHOT_VERSION)
            )

        config = TinConfig.from_dict(header["config"])
        index = TemporalProvenanceIndex(config=config)

        count = 0
        ends = {}
        ended = False
        for line_number, line in lines:
            if ended:
                raise SnapshotLoadError("data after the end of the snapshot")

            data = _parse(line)
            if "end" in data:
                if data["end"] != count:
                    raise SnapshotLoadError(
                        "trailer counts %r states, found %d"
                        % (data["end"], count)
                    )
                ended = True
                continue

            state, t_end = _state_from_dict(data, config)
            previous_end = ends.get(state.vertex, state.t_start)
            if previous_end != state.t_start:
                raise SnapshotLoadError(
                    "state of %s at %s does not follow the previous state"
                    % (state.vertex, state.t_start)
                )

            index.close_and_append(state.vertex, state)
            ends[state.vertex] = t_end
            count += 1

        if not ended:
            raise SnapshotLoadError("truncated snapshot: no trailer")

        if any(t_end is not None for t_end in ends.values()):
            raise SnapshotLoadError("a vertex has no open last state")

        index.raw_count = header["raw_count"]
        index.first_t = _number(config, header["first_t"])
        index.last_t = _number(config, header["last_t"])
        config.freeze()

    except SnapshotLoadError as e:
        raise SnapshotLoadError("line %d: %s" % (line_number, e))

    except (
        KeyError,
        IndexError,
        TypeError,
        ValueError,
        NonMonotoneInsertionError,
        TraitError,
    ) as e:
        raise SnapshotLoadError(
            "line %d: corrupt snapshot (%s: %s)"
            % (line_number, type(e).__name__, e)
        )

    logger.debug("loaded snapshot of %d states", count)

    return index


def load_snapshot(path):
    """ Load an index from the snapshot file at 'path'. """

    try:
        with open(path, "r", encoding="utf-8") as f:
            return read_snapshot(f)

    except OSError as e:
        raise SnapshotLoadError("cannot read %s: %s" % (path, e))


#### Private protocol #########################################################


def _write(sink, data):
    """ Write one JSON line. """

    sink.write(json.dumps(data, separators=(",", ":")))
    sink.write("\n")


def _parse(line):
    """ Parse one JSON line into a dict. """

    data = json.loads(line, parse_float=Decimal)
    if not isinstance(data, dict):
        raise ValueError("expected a JSON object")

    return data


def _time(value):
    """ Return the JSON form of a time (None stays None). """

    return None if value is None else json_time(value)


def _number(config, value):
    """ Convert a JSON time or quantity back to the configured type. """

    return None if value is None else config.number(value)


def _entry_to_list(entry):
    """ Return the JSON form of a provenance entry. """

    return [
        entry.origin,
        json_time(entry.birth_t),
        format_quantity(entry.q),
        entry.via_replication,
    ]


def _entry_from_list(data, config):
    """ Return the provenance entry for its JSON form. """

    origin, birth_t, q, via_replication = data
    if not isinstance(via_replication, bool):
        raise ValueError("via_replication must be a boolean")

    return ProvenanceEntry(
        origin,
        config.number(birth_t),
        config.number(q),
        via_replication,
    )


def _feeds_to_list(feeds):
    """ Return the JSON form of a {key: {seq: q}} feeds map. """

    return [
        [
            origin,
            json_time(birth_t),
            [[seq, format_quantity(q)] for seq, q in sorted(parts.items())],
        ]
        for (origin, birth_t), parts in sorted(feeds.items())
    ]


def _feeds_from_list(data, config):
    """ Return the feeds map for its JSON form. """

    feeds = {}
    for origin, birth_t, parts in data:
        feeds[(origin, config.number(birth_t))] = {
            int(seq): config.number(q) for seq, q in parts
        }

    return feeds


def _state_to_dict(state):
    """ Return the JSON form of a vertex state. """

    content = state.content
    data = {
        "v": state.vertex,
        "t0": json_time(state.t_start),
        "t1": _time(state.t_end),
        "b": format_quantity(content.buffer),
        "prov": [_entry_to_list(entry) for entry in content.entries()],
        "feeds": _feeds_to_list(content.feeds),
    }

    if content.entities is not None:
        data["entities"] = [
            [entity, sender, json_time(t)]
            for entity, (sender, t) in sorted(content.entities.items())
        ]

    data["phase"] = state.phase
    data["labels"] = list(state.labels)
    data["last"] = json_time(state.last_t)
    data["n"] = state.event_count
    data["arr"] = [
        [
            row.sender,
            json_time(row.t),
            format_quantity(row.q),
            list(row.entities),
            row.via_replication,
            row.seq,
        ]
        for row in state.arrival_rows()
    ]
    data["dep"] = [
        [
            json_time(row.t),
            row.receiver,
            format_quantity(row.q),
            row.replicate,
            [_entry_to_list(entry) for entry in row.consumed_entries()],
            list(row.entities),
            row.seq,
            _feeds_to_list(row.feeds),
        ]
        for row in state.departure_rows()
    ]

    return data


def _state_from_dict(data, config):
    """ Return (state, t_end) for the JSON form of a vertex state. """

    prov = {}
    for item in data["prov"]:
        entry = _entry_from_list(item, config)
        prov[entry.key] = entry

    entities = None
    if "entities" in data:
        entities = {
            entity: (sender, config.number(t))
            for entity, sender, t in data["entities"]
        }

    content = Content(
        config.number(data["b"]),
        prov,
        entities,
        _feeds_from_list(data["feeds"], config),
    )

    phase = data["phase"]
    if phase not in PHASES:
        raise ValueError("unknown phase %r" % (phase,))

    state = VertexState(
        data["v"],
        config.number(data["t0"]),
        content,
        phase,
        labels=data["labels"],
    )
    state.last_t = config.number(data["last"])
    state.event_count = data["n"]

    for sender, t, q, row_entities, via_replication, seq in data["arr"]:
        t = config.number(t)
        state.arrivals[seq] = Arrival(
            sender,
            t,
            config.number(q),
            row_entities,
            via_replication,
            seq,
        )

    for row in data["dep"]:
        t, receiver, q, replicate, consumed, row_entities, seq, feeds = row
        t = config.number(t)
        entries = [_entry_from_list(item, config) for item in consumed]
        state.departures[seq] = Departure(
            t,
            receiver,
            config.number(q),
            replicate,
            {entry.key: entry for entry in entries},
            row_entities,
            seq,
            _feeds_from_list(feeds, config),
        )

    return state, _number(config, data["t1"])
