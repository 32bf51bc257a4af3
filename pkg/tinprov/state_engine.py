# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" The state engine. """


# Standard library imports.
import logging
from collections import Counter

# Enthought library imports.
from traits.api import Any, Dict, HasStrictTraits, Instance, Int, List, Str

# Local imports.
from .attribution import attribute_outflow, mint_birth
from .entity_transfer_error import EntityTransferError
from .interaction import EpochMarker
from .provenance_index import TemporalProvenanceIndex
from .time_regression_error import TimeRegressionError
from .tin_config import PER_INTERACTION, TIME_BUCKET, TinConfig
from .vertex_state import (
    ACCUMULATING,
    Content,
    DEPLETING,
    IDLE,
    VertexState,
)


# Logging.
logger = logging.getLogger(__name__)

#: State transition kinds.
OPENED = "opened"
UPDATED = "updated"


class StateTransition:
    """ What applying an item did to one vertex.

    'kind' is 'opened' when a new state was started (and 'closed' is the
    state that ended, if any) or 'updated' when the open state changed in
    place.

    """

    __slots__ = ("vertex", "kind", "state", "closed")

    def __init__(self, vertex, kind, state, closed=None):
        self.vertex = vertex
        self.kind = kind
        self.state = state
        self.closed = closed

    def __repr__(self):
        return "StateTransition(%s, %s, t=%s)" % (
            self.vertex,
            self.kind,
            self.state.t_start,
        )


class ConservationAudit(HasStrictTraits):
    """ The result of checking the engine's conservation invariants. """

    #: Quantity minted at senders to cover deficits.
    minted = Any

    #: Quantity copied by replicating outflows.
    replicated = Any

    #: Quantity dropped as dust.
    dust = Any

    #: The sum of all current buffers.
    buffers = Any

    #: Descriptions of every broken invariant.
    problems = List(Str)

    @property
    def ok(self):
        """ Do all invariants hold? """

        return not self.problems


class StateEngine(HasStrictTraits):
    """ Evolves vertex buffers and provenance as items are applied.

    Items must arrive in non-decreasing time order. Items sharing a
    timestamp at a vertex are applied as one unit: only the first of them
    may open a new state.

    """

    #### 'StateEngine' interface ##############################################

    #: The configuration (frozen as soon as the first item is applied).
    config = Instance(TinConfig, factory=TinConfig)

    #: The index the states are published to.
    index = Instance(TemporalProvenanceIndex)

    #: The time of the last applied item.
    last_t = Any

    #: Totals for the conservation audit.
    minted = Any
    replicated = Any
    dust = Any

    #### Private interface ####################################################

    # entity -> set of vertices holding it (discrete data).
    _holders = Dict

    # The number of items applied (the ledger sequence number).
    _applied = Int(0)

    def _index_default(self):
        """ Trait initializer. """

        return TemporalProvenanceIndex(config=self.config)

    def _minted_default(self):
        """ Trait initializer. """

        return self.config.number(0)

    def _replicated_default(self):
        """ Trait initializer. """

        return self.config.number(0)

    def _dust_default(self):
        """ Trait initializer. """

        return self.config.number(0)

    ###########################################################################
    # 'StateEngine' interface.
    ###########################################################################

    def ingest(self, items):
        """ Apply interactions and epoch markers in order.

        Returns the number of items applied.

        """

        count = 0
        for item in items:
            if isinstance(item, EpochMarker):
                self.mark_epoch(item.vertex, item.t, item.label)
            else:
                self.apply_interaction(item)
            count += 1

        logger.debug("ingested %d items", count)

        return count

    def apply_interaction(self, r):
        """ Apply one interaction.

        Returns the list of (vertex, 'StateTransition') pairs, sender first.

        """

        with self.index.lock:
            self._advance(r.t)
            if self.config.is_discrete:
                self._check_entities(r)

            seq = self._next_seq()
            src_transition = self._apply_outflow(r, seq)
            dst_transition = self._apply_inflow(r, seq)
            self.index.raw_count += 1

        return [(r.src, src_transition), (r.dst, dst_transition)]

    def mark_epoch(self, v, t, label):
        """ Force a state boundary at 'v' at time 't'.

        Returns the 'StateTransition'. A marker at the start time of the
        open state only labels it; a marker at a later time already used by
        an interaction at 'v' is coalesced into the open state.

        """

        with self.index.lock:
            self._advance(t)
            self._next_seq()

            state = self.index.current(v)
            if state is not None and t > state.last_t:
                state = self._open_buckets(v, state, t)

            if state is None:
                transition = self._first_state(v, t, IDLE)
                transition.state.labels.append(label)

            elif t == state.t_start:
                state.labels.append(label)
                transition = StateTransition(v, UPDATED, state)

            elif t == state.last_t:
                logger.warning(
                    "epoch %r at %s coalesced into the state opened at %s",
                    label,
                    v,
                    state.t_start,
                )
                state.labels.append(label)
                transition = StateTransition(v, UPDATED, state)

            else:
                new_state = VertexState(
                    v, t, state.content.copy(), IDLE, labels=[label]
                )
                self.index.close_and_append(v, new_state)
                transition = StateTransition(v, OPENED, new_state, state)

        logger.debug("epoch %r at %s, t=%s", label, v, t)

        return transition

    def audit(self):
        """ Check the conservation invariants over every state.

        Minted plus replicated quantity (less dust) must equal the sum of
        the current buffers, buffers must not be negative and every state's
        provenance must add up to its buffer.

        """

        tolerance = self.config.tolerance
        problems = []
        buffers = self.config.number(0)

        for v in self.index.vertices():
            states = self.index.states(v)
            buffers += states[-1].content.buffer

            for state in states:
                content = state.content
                if content.buffer < 0:
                    problems.append(
                        "%s at %s: negative buffer %s"
                        % (v, state.t_start, content.buffer)
                    )

                total = sum(entry.q for entry in content.prov.values())
                if abs(total - content.buffer) > tolerance:
                    problems.append(
                        "%s at %s: provenance sums to %s, buffer is %s"
                        % (v, state.t_start, total, content.buffer)
                    )

                if (
                    content.entities is not None
                    and len(content.entities) != content.buffer
                ):
                    problems.append(
                        "%s at %s: %d entities, buffer is %s"
                        % (
                            v,
                            state.t_start,
                            len(content.entities),
                            content.buffer,
                        )
                    )

        expected = self.minted + self.replicated - self.dust
        scale = max(1, abs(expected))
        if abs(buffers - expected) > tolerance * scale:
            problems.append(
                "buffers sum to %s, minted + replicated - dust is %s"
                % (buffers, expected)
            )

        return ConservationAudit(
            minted=self.minted,
            replicated=self.replicated,
            dust=self.dust,
            buffers=buffers,
            problems=problems,
        )

    ###########################################################################
    # Private interface.
    ###########################################################################

    def _advance(self, t):
        """ Check an item's time and move the clock forward. """

        if self.last_t is not None and t < self.last_t:
            raise TimeRegressionError(
                "t=%s is before the last applied t=%s" % (t, self.last_t)
            )

        if not self.config.frozen:
            self.config.freeze()

        if self.index.first_t is None:
            self.index.first_t = t

        self.last_t = t
        self.index.last_t = t

    def _next_seq(self):
        """ Return the next ledger sequence number. """

        seq = self._applied
        self._applied += 1

        return seq

    def _check_entities(self, r):
        """ Check a discrete interaction's entities before anything moves. """

        seen = set()
        for entity in r.entities:
            if entity in seen:
                raise EntityTransferError(
                    "entity %r is listed twice in one interaction" % entity
                )
            seen.add(entity)

            holders = self._holders.get(entity)
            if holders is None:
                continue

            if r.src not in holders:
                raise EntityTransferError(
                    "entity %r is not at %s (held by %s)"
                    % (entity, r.src, ", ".join(sorted(holders)))
                )

            if r.dst in holders:
                raise EntityTransferError(
                    "entity %r is already at %s" % (entity, r.dst)
                )

    def _apply_outflow(self, r, seq):
        """ Take an interaction's quantity out of the sender. """

        u = r.src
        state = self.index.current(u)
        content = (
            state.content
            if state is not None
            else Content.empty(self.config.is_discrete, self.config.number(0))
        )

        if self.config.is_discrete:
            consumed, remaining, take = self._take_entities(content, r)
        else:
            consumed, remaining = attribute_outflow(
                content.prov.values(),
                content.buffer,
                r.q,
                self.config.attribution,
                self.config.tolerance,
            )
            take = min(r.q, content.buffer)

        minted = mint_birth(u, r.t, r.q - take)
        if minted is not None:
            consumed.append(minted)
            self.minted += minted.q

        feeds = content.taken_feeds(consumed, u)
        drops_origin = not r.replicate and bool(
            content.origins - {entry.origin for entry in remaining}
        )

        transition = self._transition(u, r.t, DEPLETING, drops_origin)
        state = transition.state
        content = state.content

        if r.replicate:
            self.replicated += take

        else:
            buffer = content.buffer
            content.replace_entries(remaining)
            self.dust += buffer - take - content.buffer
            if content.entities is not None:
                for entity in r.entities:
                    content.entities.pop(entity, None)
            state.count_origins()

        state.record_departure(
            r.t, r.dst, r.q, r.replicate, consumed, r.entities, seq, feeds
        )
        state.last_t = r.t
        state.event_count += 1

        return transition

    def _apply_inflow(self, r, seq):
        """ Add an interaction's quantity to the receiver. """

        v = r.dst
        state = self.index.current(v)
        joins = state is None or r.src not in state.origins

        transition = self._transition(v, r.t, ACCUMULATING, joins)
        state = transition.state

        state.content.add_arrival(
            r.src, r.t, r.q, r.entities, via_replication=r.replicate, seq=seq
        )
        state.origin_counts[r.src] = sum(
            1 for origin, _ in state.content.prov if origin == r.src
        )
        state.record_arrival(r.src, r.t, r.q, r.entities, r.replicate, seq)
        state.last_t = r.t
        state.event_count += 1

        if r.entities is not None:
            for entity in r.entities:
                holders = self._holders.setdefault(entity, set())
                if not r.replicate:
                    holders.clear()
                holders.add(v)

        return transition

    def _take_entities(self, content, r):
        """ Group the entities leaving the sender by the entry holding them.

        Returns (consumed, remaining, take) where 'take' counts the entities
        the sender held; the others are born at the sender.

        """

        groups = Counter(
            content.entities[entity]
            for entity in r.entities
            if entity in content.entities
        )

        consumed = []
        remaining = []
        for key, entry in content.prov.items():
            count = groups.get(key, 0)
            if count:
                consumed.append(entry.with_q(self.config.number(count)))

            if r.replicate or entry.q > count:
                left = entry.q if r.replicate else entry.q - count
                remaining.append(entry.with_q(left))

        take = self.config.number(sum(groups.values()))

        return consumed, remaining, take

    def _transition(self, v, t, kind, changes_origins):
        """ Return the transition for an event of 'kind' at 'v'.

        Opens a new state when the boundary policy calls for one, otherwise
        the open state is updated in place.

        """

        state = self.index.current(v)
        if state is None:
            return self._first_state(v, t, kind)

        if t <= state.last_t:
            # A later event at a timestamp the state already covers.
            if state.phase == IDLE:
                state.phase = kind
            return StateTransition(v, UPDATED, state)

        state = self._open_buckets(v, state, t)
        boundary = self.config.boundary
        if boundary.kind == PER_INTERACTION:
            opens = True
        else:
            opens = (
                state.phase == IDLE
                or state.phase != kind
                or changes_origins
                or (
                    boundary.kind == TIME_BUCKET
                    and boundary.bucket_of(t) != boundary.bucket_of(
                        state.t_start
                    )
                )
            )

        if not opens:
            return StateTransition(v, UPDATED, state)

        new_state = VertexState(v, t, state.content.copy(), kind)
        self.index.close_and_append(v, new_state)

        logger.debug(
            "%s: %s state opened at t=%s after %s", v, kind, t, state.phase
        )

        return StateTransition(v, OPENED, new_state, state)

    def _first_state(self, v, t, kind):
        """ Open the first state of a vertex (after an idle lead-in). """

        discrete = self.config.is_discrete
        zero = self.config.number(0)

        lead_in = None
        first_t = self.index.first_t
        if self.config.boundary.kind != PER_INTERACTION and t > first_t:
            lead_in = VertexState(v, first_t, Content.empty(discrete, zero))
            self.index.close_and_append(v, lead_in)

        if lead_in is not None and self.config.boundary.kind == TIME_BUCKET:
            for start in self.config.boundary.bucket_starts(first_t, t):
                lead_in = VertexState(v, start, Content.empty(discrete, zero))
                self.index.close_and_append(v, lead_in)

        state = VertexState(v, t, Content.empty(discrete, zero), kind)
        self.index.close_and_append(v, state)

        return StateTransition(v, OPENED, state, lead_in)

    def _open_buckets(self, v, state, t):
        """ Open an idle state at every bucket start after the open state
        and before 't'.

        Returns the state that is open afterwards.

        """

        boundary = self.config.boundary
        if boundary.kind != TIME_BUCKET:
            return state

        for start in boundary.bucket_starts(state.last_t, t):
            new_state = VertexState(v, start, state.content.copy(), IDLE)
            self.index.close_and_append(v, new_state)
            logger.debug("%s: bucket state opened at t=%s", v, start)
            state = new_state

        return state
