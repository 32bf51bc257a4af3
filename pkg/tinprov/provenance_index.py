# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" The temporal provenance index. """


# Standard library imports.
import logging
import threading
from bisect import bisect_left, bisect_right
from itertools import groupby

# Enthought library imports.
from traits.api import Any, Dict, HasStrictTraits, Instance, Int, provides

# Local imports.
from .compression import compression_ratio
from .i_provenance_index import IProvenanceIndex
from .non_monotone_insertion_error import NonMonotoneInsertionError
from .range_order_error import RangeOrderError
from .tin_config import TinConfig
from .vertex_state import Content, POST, PRE


# Logging.
logger = logging.getLogger(__name__)


@provides(IProvenanceIndex)
class TemporalProvenanceIndex(HasStrictTraits):
    """ Per-vertex state sequences with ordered lookup by start time.

    Each vertex has a sorted list of state start times next to the list of
    states; point lookups are predecessor searches with 'bisect'. There is
    a single writer (the state engine) and any number of readers, which
    synchronise on 'lock'.

    """

    #### 'IProvenanceIndex' interface #########################################

    #: The configuration the states were built under.
    config = Instance(TinConfig, factory=TinConfig)

    #: The number of interactions applied.
    raw_count = Int(0)

    #: The time of the first and the last applied item.
    first_t = Any
    last_t = Any

    #### Private interface ####################################################

    # vertex -> sorted list of state start times.
    _starts = Dict

    # vertex -> list of states, parallel to '_starts'.
    _states = Dict

    # Guards every read and write of the state lists.
    _lock = Any

    def __init__(self, **traits):
        """ Constructor. """

        super().__init__(**traits)

        self._lock = threading.RLock()

    ###########################################################################
    # 'TemporalProvenanceIndex' interface.
    ###########################################################################

    @property
    def lock(self):
        """ The lock readers and the writer synchronise on. """

        return self._lock

    ###########################################################################
    # 'IProvenanceIndex' interface.
    ###########################################################################

    def vertices(self):
        """ Return the ids of all vertices with at least one state. """

        with self._lock:
            return sorted(self._states)

    def states(self, v):
        """ Return all states of vertex 'v' in time order. """

        with self._lock:
            return list(self._states.get(v, []))

    def current(self, v):
        """ Return the open state of 'v' (None if 'v' has no states). """

        with self._lock:
            states = self._states.get(v)
            return states[-1] if states else None

    def state_at(self, v, t, flank=POST):
        """ Return the state of 'v' at time 't'. """

        with self._lock:
            index = self._index_at(v, t, flank)
            if index is None:
                return None

            return self._states[v][index]

    def states_in(self, v, t1, t2):
        """ Return the states of 'v' meeting the closed range [t1, t2]. """

        if t1 > t2:
            raise RangeOrderError("t1=%s is after t2=%s" % (t1, t2))

        with self._lock:
            starts = self._starts.get(v)
            if not starts:
                return []

            first = max(bisect_right(starts, t1) - 1, 0)
            last = bisect_right(starts, t2)

            return self._states[v][first:last]

    def close_and_append(self, v, state):
        """ Close the open state of 'v' and append 'state'. """

        with self._lock:
            states = self._states.setdefault(v, [])
            starts = self._starts.setdefault(v, [])

            if states:
                open_state = states[-1]
                if state.t_start <= open_state.t_start:
                    raise NonMonotoneInsertionError(
                        "state of %s at t=%s does not start after the open "
                        "state at t=%s"
                        % (v, state.t_start, open_state.t_start)
                    )

                open_state.t_end = state.t_start

            state.t_end = None
            states.append(state)
            starts.append(state.t_start)

        logger.debug("appended %r", state)

        return self

    def provenance_at(self, v, t, flank=POST):
        """ Return the exact 'Content' of 'v' at time 't' (or None).

        The content is rebuilt from the end content of the previous state
        and the ledgers of the state that holds 't', so it is the same
        whatever boundary policy the states were built under.

        """

        with self._lock:
            index = self._index_at(v, t, flank)
            if index is None:
                return None

            states = self._states[v]
            state = states[index]

            if flank == PRE:
                inside = state.last_t < t
            else:
                inside = state.last_t <= t

            if inside:
                return state.content.copy()

            if index > 0:
                content = states[index - 1].content.copy()
            else:
                content = Content.empty(
                    self.config.is_discrete, self.config.number(0)
                )

            rows = [(a.t, a.seq, 0, a) for a in state.arrivals.values()]
            rows.extend((d.t, d.seq, 1, d) for d in state.departures.values())

        rows.sort(key=lambda row: row[:3])
        tolerance = self.config.tolerance
        for when, group in groupby(rows, key=lambda row: row[0]):
            if when > t or (flank == PRE and when == t):
                break

            for _, _, kind, row in group:
                if kind == 0:
                    content.add_arrival(
                        row.sender,
                        row.t,
                        row.q,
                        row.entities,
                        row.via_replication,
                        row.seq,
                    )
                elif not row.replicate:
                    content.remove_departure(
                        v, row.consumed.values(), row.entities, tolerance
                    )

        return content

    def departures_at(self, u, t, receiver):
        """ Return the outflows from 'u' to 'receiver' at exactly 't'. """

        state = self.state_at(u, t)
        if state is None:
            return []

        return [
            row
            for row in state.departure_rows()
            if row.t == t and row.receiver == receiver
        ]

    def departure(self, u, t, seq):
        """ Return the outflow of interaction 'seq' from 'u' (or None). """

        state = self.state_at(u, t)
        if state is None:
            return None

        return state.departures.get(seq)

    def arrivals_in(self, v, t1, t2):
        """ Return the inflows into 'v' within the closed range [t1, t2]. """

        rows = []
        for state in self.states_in(v, t1, t2):
            rows.extend(
                row for row in state.arrival_rows() if t1 <= row.t <= t2
            )

        return rows

    def departures_in(self, v, t1=None, t2=None):
        """ Return the outflows from 'v' within the closed range [t1, t2].

        A missing bound leaves that side of the range open.

        """

        if t1 is not None and t2 is not None:
            states = self.states_in(v, t1, t2)
        else:
            states = self.states(v)

        return [
            row
            for state in states
            for row in state.departure_rows()
            if (t1 is None or row.t >= t1) and (t2 is None or row.t <= t2)
        ]

    def entity_path(self, entity):
        """ Return the hops of an entity as (src, dst, t) triples. """

        return self.entity_paths().get(entity, [])

    def entity_origin(self, entity):
        """ Return the (vertex, time) an entity was born at, or None. """

        path = self.entity_path(entity)
        if not path:
            return None

        src, _, t = path[0]
        return (src, t)

    def entity_paths(self):
        """ Return every entity's hops, keyed by entity. """

        hops = []
        with self._lock:
            for v, states in self._states.items():
                for state in states:
                    for row in state.departures.values():
                        for position, entity in enumerate(row.entities):
                            hops.append(
                                (
                                    entity,
                                    row.t,
                                    row.seq,
                                    position,
                                    v,
                                    row.receiver,
                                )
                            )

        hops.sort(key=lambda hop: hop[:4])

        paths = {}
        for entity, t, _, _, src, dst in hops:
            paths.setdefault(entity, []).append((src, dst, t))

        return paths

    def stats(self):
        """ Return a summary of the index size. """

        with self._lock:
            vertices = {
                v: {
                    "states": len(states),
                    "events": sum(state.event_count for state in states),
                }
                for v, states in sorted(self._states.items())
            }

        state_count = sum(entry["states"] for entry in vertices.values())
        ratio = (
            compression_ratio(self.raw_count, state_count)
            if state_count
            else None
        )

        return {
            "raw_count": self.raw_count,
            "state_count": state_count,
            "ratio": ratio,
            "vertices": vertices,
        }

    def state_count(self, v=None):
        """ Return the number of states of 'v', or of all vertices. """

        with self._lock:
            if v is not None:
                return len(self._states.get(v, []))

            return sum(len(states) for states in self._states.values())

    def covered_range(self):
        """ Return (first_t, last_t), or None for an empty index. """

        if self.first_t is None:
            return None

        return (self.first_t, self.last_t)

    ###########################################################################
    # Private interface.
    ###########################################################################

    def _index_at(self, v, t, flank):
        """ Return the position of the state answering (t, flank). """

        starts = self._starts.get(v)
        if not starts:
            return None

        if flank == PRE:
            index = bisect_left(starts, t) - 1
        elif flank == POST:
            index = bisect_right(starts, t) - 1
        else:
            raise ValueError("unknown flank %r" % (flank,))

        return index if index >= 0 else None
