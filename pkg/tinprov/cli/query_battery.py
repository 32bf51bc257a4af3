# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Cross-check the index against the event-replay oracle. """


# Standard library imports.
import io
import logging
import random

# Enthought library imports.
from traits.api import Callable, HasStrictTraits, Int, List

# Local imports.
from tinprov.interaction import EpochMarker
from tinprov.oracle.api import (
    oracle_q1,
    oracle_q2,
    oracle_q3,
    oracle_q4,
    oracle_q5,
    replay,
)
from tinprov.provenance_query import ProvenanceQuery
from tinprov.snapshot import dump_snapshot, read_snapshot
from tinprov.state_engine import StateEngine
from tinprov.tin_config import TinConfig
from tinprov.vertex_state import FLANKS


# Logging.
logger = logging.getLogger(__name__)

#: Logs with more interactions than this are not verified.
MAX_VERIFY_INTERACTIONS = 10 ** 5

#: The query types, in the order the battery cycles through them.
QUERY_TYPES = ("q1", "q2", "q3", "q4", "q5")

#: Depth limits drawn for Q1 and Q2 (None is unbounded).
DEPTHS = (1, 2, 3, None)


class Mismatch:
    """ A query the index and the oracle answered differently. """

    __slots__ = ("query", "index_answer", "oracle_answer")

    def __init__(self, query, index_answer, oracle_answer):
        self.query = query
        self.index_answer = index_answer
        self.oracle_answer = oracle_answer

    def __str__(self):
        return "%s: index %r, oracle %r" % (
            self.query,
            self.index_answer,
            self.oracle_answer,
        )


class BatteryReport(HasStrictTraits):
    """ The outcome of a verification run. """

    #: The number of queries compared.
    checked = Int(0)

    #: The disagreements found.
    mismatches = List(Mismatch)

    #: Conservation problems reported by either side.
    problems = List

    @property
    def ok(self):
        """ Did the index agree with the oracle everywhere? """

        return not self.mismatches and not self.problems


class QueryBattery(HasStrictTraits):
    """ Build an index from a log and compare random queries with the
    oracle.

    The index goes through a snapshot dump and 'loader' before it is
    queried, so that the snapshot format is verified too.

    """

    #: The number of random queries to run.
    queries = Int(1000)

    #: The seed of the query generator.
    seed = Int(0)

    #: Loads an index from a stream of snapshot lines.
    loader = Callable(read_snapshot)

    def run(self, items, config=None):
        """ Verify the log 'items' under 'config'.

        Returns a 'BatteryReport'.

        """

        items = list(items)
        if config is None:
            config = TinConfig()

        oracle_config = TinConfig.from_dict(config.to_dict())

        engine = StateEngine(config=config)
        engine.ingest(items)

        stream = io.StringIO()
        dump_snapshot(engine.index, stream)
        stream.seek(0)
        query = ProvenanceQuery(index=self.loader(stream))

        timeline = replay(items, oracle_config)

        report = BatteryReport()
        report.problems.extend(engine.audit().problems)
        report.problems.extend(timeline.audit())

        tolerance = config.tolerance
        for description, index_call, oracle_call, compare in self._draw(
            items, query, timeline
        ):
            index_answer = index_call()
            oracle_answer = oracle_call()
            report.checked += 1
            if not compare(index_answer, oracle_answer, tolerance):
                logger.warning("mismatch on %s", description)
                report.mismatches.append(
                    Mismatch(description, index_answer, oracle_answer)
                )

        logger.info(
            "verified %d queries, %d mismatches",
            report.checked,
            len(report.mismatches),
        )

        return report

    #### Private protocol #####################################################

    def _draw(self, items, query, timeline):
        """ Generate (description, index call, oracle call, compare). """

        rng = random.Random(self.seed)
        vertices = timeline.vertices()
        times = sorted(
            {item.t for item in items if not isinstance(item, EpochMarker)}
        )
        if not vertices or not times:
            return

        # Sample between and around event times too.
        probes = sorted(
            set(times)
            | {(a + b) / 2 for a, b in zip(times, times[1:])}
            | {times[0] - 1, times[-1] + 1}
        )

        def pair():
            t1, t2 = sorted(rng.sample(probes, 2))
            return t1, t2

        for i in range(self.queries):
            kind = QUERY_TYPES[i % len(QUERY_TYPES)]
            v = rng.choice(vertices)

            if kind == "q1":
                t = rng.choice(probes)
                depth = rng.choice(DEPTHS)
                flank = rng.choice(FLANKS)
                yield (
                    "q1(%s, %s, depth=%s, %s)" % (v, t, depth, flank),
                    lambda: query.q1_backward(v, t, depth, flank).as_dict(),
                    lambda: oracle_q1(timeline, v, t, depth, flank).as_dict(),
                    _same_amounts,
                )

            elif kind == "q2":
                t = rng.choice(probes)
                depth = rng.choice(DEPTHS)
                yield (
                    "q2(%s, %s, depth=%s)" % (v, t, depth),
                    lambda: query.q2_forward(v, t, depth).as_dict(),
                    lambda: oracle_q2(timeline, v, t, depth).as_dict(),
                    _same_amounts,
                )

            elif kind == "q3":
                t1, t2 = pair()
                yield (
                    "q3(%s, %s, %s)" % (v, t1, t2),
                    lambda: query.q3_temporal_lineage(v, t1, t2).as_dict(),
                    lambda: oracle_q3(timeline, v, t1, t2).as_dict(),
                    _same_amounts,
                )

            elif kind == "q4":
                if len(vertices) < 3:
                    continue

                s, d, via = rng.sample(vertices, 3)
                horizon = pair() if rng.random() < 0.5 else None
                yield (
                    "q4(%s, %s, via=%s, %s)" % (s, d, via, horizon),
                    lambda: query.q4_flow_lineage(s, d, via, horizon),
                    lambda: oracle_q4(timeline, s, d, via, horizon),
                    _same_quantity,
                )

            else:
                t1, t2 = pair()
                yield (
                    "q5(%s, %s, %s)" % (v, t1, t2),
                    lambda: _delta(query.q5_versioning(v, t1, t2)),
                    lambda: _delta(oracle_q5(timeline, v, t1, t2)),
                    _same_delta,
                )


def run_battery(items, config=None, queries=1000, seed=0, loader=None):
    """ Verify a log with a 'QueryBattery'; returns a 'BatteryReport'. """

    battery = QueryBattery(queries=queries, seed=seed)
    if loader is not None:
        battery.loader = loader

    return battery.run(items, config)


#### Private protocol #########################################################


def _same_quantity(a, b, tolerance):
    """ Are two quantities equal within a relative tolerance? """

    return abs(a - b) <= tolerance * max(1, abs(a), abs(b))


def _same_amounts(a, b, tolerance):
    """ Are two {key: q} dicts equal within a relative tolerance? """

    return all(
        _same_quantity(a.get(key, 0), b.get(key, 0), tolerance)
        for key in set(a) | set(b)
    )


def _delta(delta):
    """ Flatten a 'ProvenanceDelta' for comparison. """

    after = {entry.key: entry.q for entry in delta.added}
    before = {entry.key: entry.q for entry in delta.removed}
    for origin, time, q_before, q_after in delta.changed:
        before[(origin, time)] = q_before
        after[(origin, time)] = q_after

    return delta.buffer_before, delta.buffer_after, before, after


def _same_delta(a, b, tolerance):
    """ Are two flattened deltas equal within a relative tolerance? """

    return (
        _same_quantity(a[0], b[0], tolerance)
        and _same_quantity(a[1], b[1], tolerance)
        and _same_amounts(a[2], b[2], tolerance)
        and _same_amounts(a[3], b[3], tolerance)
    )
