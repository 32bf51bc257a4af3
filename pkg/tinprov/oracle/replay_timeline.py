# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Event-by-event replay of an interaction log, without compression. """


# Standard library imports.
import logging
from bisect import bisect_left, bisect_right
from collections import Counter

# Enthought library imports.
from traits.api import Any, Dict, HasStrictTraits, Instance, List

# Local imports.
from tinprov.entity_transfer_error import EntityTransferError
from tinprov.interaction import EpochMarker
from tinprov.time_regression_error import TimeRegressionError
from tinprov.tin_config import FIFO, LIFO, PROPORTIONAL, TinConfig
from tinprov.vertex_state import PRE


# Logging.
logger = logging.getLogger(__name__)


class ReplayedEvent:
    """ An applied interaction and what its outflow consumed.

    'consumed' maps (origin, time) keys to quantities; the key
    (src, t) holds quantity minted at the sender.

    """

    __slots__ = ("interaction", "consumed", "minted")

    def __init__(self, interaction, consumed, minted):
        self.interaction = interaction
        self.consumed = consumed
        self.minted = minted

    def __repr__(self):
        return "ReplayedEvent(%r)" % (self.interaction,)


class Snapshot:
    """ A vertex's exact content right after one event. """

    __slots__ = ("t", "buffer", "prov", "entities")

    def __init__(self, t, buffer, prov, entities):
        self.t = t
        self.buffer = buffer
        self.prov = prov
        self.entities = entities

    def __repr__(self):
        return "Snapshot(%s, %s, %r)" % (self.t, self.buffer, self.prov)


class ReplayTimeline(HasStrictTraits):
    """ The full event-resolution history of every vertex. """

    #: The configuration the log was replayed under.
    config = Instance(TinConfig, factory=TinConfig)

    #: Every applied interaction, in order.
    events = List(ReplayedEvent)

    #: vertex -> list of 'Snapshot', one per event touching the vertex.
    history = Dict

    #: Totals for the conservation audit.
    minted = Any(0)
    replicated = Any(0)
    dust = Any(0)

    #### Private interface ####################################################

    # vertex -> snapshot times, parallel to 'history'.
    _times = Dict

    ###########################################################################
    # 'ReplayTimeline' interface.
    ###########################################################################

    def vertices(self):
        """ Return every vertex touched by the log. """

        return sorted(self.history)

    def content_at(self, v, t, flank="post"):
        """ Return the 'Snapshot' of 'v' at 't' (None before any event). """

        times = self._times.get(v)
        if not times:
            return None

        if flank == PRE:
            position = bisect_left(times, t) - 1
        else:
            position = bisect_right(times, t) - 1

        return self.history[v][position] if position >= 0 else None

    def audit(self):
        """ Return a list of conservation problems (empty if none). """

        problems = []
        total = 0
        for v, snapshots in self.history.items():
            for snapshot in snapshots:
                if snapshot.buffer < 0:
                    problems.append(
                        "%s at %s: negative buffer" % (v, snapshot.t)
                    )
            total += snapshots[-1].buffer

        expected = self.minted + self.replicated - self.dust
        tolerance = self.config.tolerance * max(1, abs(expected))
        if abs(total - expected) > tolerance:
            problems.append(
                "buffers sum to %s, minted + replicated - dust is %s"
                % (total, expected)
            )

        return problems

    def record_snapshot(self, v, t, holding):
        """ Append a snapshot of a vertex's holding. """

        prov, entities = holding
        self.history.setdefault(v, []).append(
            Snapshot(
                t,
                sum(prov.values()),
                dict(prov),
                None if entities is None else dict(entities),
            )
        )
        self._times.setdefault(v, []).append(t)


def replay(log, config=None):
    """ Replay a log event by event and return its 'ReplayTimeline'.

    Epoch markers are skipped: they never change what a vertex holds.

    """

    if config is None:
        config = TinConfig()

    timeline = ReplayTimeline(config=config)
    zero = config.number(0)
    tolerance = config.tolerance
    discrete = config.is_discrete

    # vertex -> (prov {key: q}, entities {entity: key} or None)
    holdings = {}
    holders = {}
    minted_total = zero
    replicated_total = zero
    dust_total = zero
    last_t = None

    for item in log:
        if last_t is not None and item.t < last_t:
            raise TimeRegressionError(
                "t=%s is before the last replayed t=%s" % (item.t, last_t)
            )
        last_t = item.t

        if isinstance(item, EpochMarker):
            continue

        r = item
        src_prov, src_entities = holdings.setdefault(
            r.src, ({}, {} if discrete else None)
        )
        dst_prov, dst_entities = holdings.setdefault(
            r.dst, ({}, {} if discrete else None)
        )
        buffer = sum(src_prov.values(), zero)

        if discrete:
            _check_entities(r, holders)
            held = [e for e in r.entities if e in src_entities]
            taken = Counter(src_entities[e] for e in held)
            consumed = {key: config.number(n) for key, n in taken.items()}
            left = {
                key: q - taken.get(key, 0)
                for key, q in src_prov.items()
                if q - taken.get(key, 0) > 0
            }
            take = config.number(len(held))

        else:
            consumed, left = _split(
                src_prov, buffer, r.q, config.attribution.kind, tolerance
            )
            take = min(r.q, buffer)

        minted = r.q - take
        if minted > 0:
            consumed[(r.src, r.t)] = consumed.get((r.src, r.t), 0) + minted
            minted_total += minted

        if r.replicate:
            replicated_total += take
        else:
            dust_total += buffer - take - sum(left.values(), zero)
            src_prov.clear()
            src_prov.update(left)
            if discrete:
                for entity in r.entities:
                    src_entities.pop(entity, None)

        key = (r.src, r.t)
        dst_prov[key] = dst_prov.get(key, 0) + r.q
        if discrete:
            for entity in r.entities:
                dst_entities[entity] = key
                if not r.replicate:
                    holders[entity] = {r.dst}
                else:
                    holders.setdefault(entity, set()).add(r.dst)

        timeline.events.append(ReplayedEvent(r, consumed, minted))
        timeline.record_snapshot(r.src, r.t, holdings[r.src])
        timeline.record_snapshot(r.dst, r.t, holdings[r.dst])

    timeline.minted = minted_total
    timeline.replicated = replicated_total
    timeline.dust = dust_total

    logger.debug("replayed %d interactions", len(timeline.events))

    return timeline


def _check_entities(r, holders):
    """ Check a discrete interaction against the entity holders. """

    if len(set(r.entities)) != len(r.entities):
        raise EntityTransferError("an entity is listed twice")

    for entity in r.entities:
        where = holders.get(entity)
        if where is None:
            holders[entity] = {r.src}
        elif r.src not in where:
            raise EntityTransferError(
                "entity %r is not at %s" % (entity, r.src)
            )
        elif r.dst in where:
            raise EntityTransferError(
                "entity %r is already at %s" % (entity, r.dst)
            )


def _split(prov, buffer, out_q, policy, tolerance):
    """ Split {key: q} between an outflow and what is left. """

    take = min(out_q, buffer)
    if take <= 0:
        return {}, {key: q for key, q in prov.items() if q > tolerance}

    if take >= buffer:
        return {key: q for key, q in prov.items() if q > 0}, {}

    consumed = {}
    left = {}
    if policy == PROPORTIONAL:
        for key, q in prov.items():
            part = take * q / buffer
            if part > 0:
                consumed[key] = part
            left[key] = q - part

    else:
        if policy == FIFO:
            order = sorted(prov, key=lambda key: (key[1], key[0]))
        elif policy == LIFO:
            order = sorted(prov, key=lambda key: (-key[1], key[0]))
        else:
            raise ValueError("unknown attribution policy %r" % (policy,))

        need = take
        for key in order:
            part = min(need, prov[key])
            if part > 0:
                consumed[key] = part
                need -= part
            left[key] = prov[key] - part

    return consumed, {key: q for key, q in left.items() if q > tolerance}
