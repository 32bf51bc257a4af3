# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Vertex states and the ledgers they carry. """


# Standard library imports.
from collections import Counter

# Local imports.
from .provenance_entry import ProvenanceEntry, merge_entry


#: Phases.
IDLE = "idle"
ACCUMULATING = "accumulating"
DEPLETING = "depleting"
PHASES = (IDLE, ACCUMULATING, DEPLETING)

#: Query flanks at a state boundary.
POST = "post"
PRE = "pre"
FLANKS = (POST, PRE)


class Content:
    """ A vertex's buffer with its provenance (and entities).

    'prov' maps (origin, birth_t) to a 'ProvenanceEntry'. 'feeds' maps the
    same keys to {arrival seq: quantity}, the part of the entry each
    interaction delivered; the parts always add up to the entry. 'entities'
    maps each held entity to the key of the entry it is counted in, and is
    None for liquid data.

    """

    __slots__ = ("buffer", "prov", "feeds", "entities")

    def __init__(self, buffer=0, prov=None, entities=None, feeds=None):
        self.buffer = buffer
        self.prov = {} if prov is None else prov
        self.feeds = {} if feeds is None else feeds
        self.entities = entities

    @classmethod
    def empty(cls, discrete=False, zero=0):
        """ Return empty content. """

        return cls(zero, {}, {} if discrete else None)

    def copy(self):
        """ Return an independent copy. """

        # The inner feed maps are replaced, never mutated.
        return Content(
            self.buffer,
            dict(self.prov),
            None if self.entities is None else dict(self.entities),
            dict(self.feeds),
        )

    @property
    def origins(self):
        """ The set of origins with an entry in the buffer. """

        return {origin for origin, _ in self.prov}

    def entries(self):
        """ Return the provenance entries ordered by (origin, birth_t). """

        return [self.prov[key] for key in sorted(self.prov)]

    def origin_totals(self):
        """ Return the buffer split by origin alone, {origin: q}. """

        totals = {}
        for (origin, _), entry in self.prov.items():
            totals[origin] = totals.get(origin, 0) + entry.q

        return totals

    def add_arrival(
        self, sender, t, q, entities=None, via_replication=False, seq=None
    ):
        """ Add an arrival from 'sender' at 't' (interaction 'seq'). """

        key = (sender, t)
        merge_entry(self.prov, ProvenanceEntry(sender, t, q, via_replication))
        self.buffer += q

        if seq is not None:
            feeds = dict(self.feeds.get(key, ()))
            feeds[seq] = feeds.get(seq, 0) + q
            self.feeds[key] = feeds

        if self.entities is not None and entities:
            for entity in entities:
                self.entities[entity] = key

    def taken_feeds(self, consumed, owner):
        """ Return the feed parts an outflow consuming 'consumed' takes.

        Every entry is a pool: taking a fraction of it takes the same
        fraction of each of its feeds. Entries minted at 'owner' have none.

        """

        taken = {}
        for entry in consumed:
            if entry.origin == owner:
                continue

            held = self.prov.get(entry.key)
            feeds = self.feeds.get(entry.key)
            if held is None or not feeds or not held.q:
                continue

            ratio = entry.q / held.q
            taken[entry.key] = {seq: q * ratio for seq, q in feeds.items()}

        return taken

    def replace_entries(self, entries):
        """ Replace the provenance entries, scaling the feeds to match. """

        prov = {entry.key: entry for entry in entries}
        feeds = {}
        for key, entry in prov.items():
            old = self.feeds.get(key)
            held = self.prov.get(key)
            if not old or held is None or not held.q:
                continue

            if entry.q == held.q:
                feeds[key] = old
            else:
                ratio = entry.q / held.q
                feeds[key] = {seq: q * ratio for seq, q in old.items()}

        self.prov = prov
        self.feeds = feeds
        self.buffer = sum(entry.q for entry in prov.values())

    def remove_departure(self, owner, consumed, entities, tolerance):
        """ Remove what a (non-replicating) departure took from the buffer.

        Entries in 'consumed' minted at 'owner' never were in the buffer
        and are skipped.

        """

        remaining = dict(self.prov)
        for entry in consumed:
            if entry.origin == owner:
                continue

            held = remaining.get(entry.key)
            if held is None:
                continue

            left = held.q - entry.q
            if left > tolerance:
                remaining[entry.key] = held.with_q(left)
            else:
                del remaining[entry.key]

        self.replace_entries(remaining.values())

        if self.entities is not None and entities:
            for entity in entities:
                self.entities.pop(entity, None)

    def __eq__(self, other):
        if not isinstance(other, Content):
            return NotImplemented

        return (
            self.buffer == other.buffer
            and self.prov == other.prov
            and self.entities == other.entities
        )

    def __repr__(self):
        return "Content(buffer=%s, entries=%d)" % (self.buffer, len(self.prov))


class Arrival:
    """ Inflow from one interaction. """

    __slots__ = ("sender", "t", "q", "entities", "via_replication", "seq")

    def __init__(
        self, sender, t, q, entities=None, via_replication=False, seq=0
    ):
        self.sender = sender
        self.t = t
        self.q = q
        self.entities = [] if entities is None else list(entities)
        self.via_replication = via_replication
        self.seq = seq

    def __repr__(self):
        return "Arrival(%s, %s, %s)" % (self.sender, self.t, self.q)


class Departure:
    """ Outflow of one interaction.

    'consumed' maps entry keys to the entries the outflow took, including
    any quantity minted at the sender. 'feeds' maps the same keys (less
    the minted one) to {arrival seq: quantity}, the part taken from what
    each earlier interaction delivered.

    """

    __slots__ = (
        "t",
        "receiver",
        "q",
        "replicate",
        "consumed",
        "entities",
        "seq",
        "feeds",
    )

    def __init__(
        self,
        t,
        receiver,
        q,
        replicate=False,
        consumed=None,
        entities=None,
        seq=0,
        feeds=None,
    ):
        self.t = t
        self.receiver = receiver
        self.q = q
        self.replicate = replicate
        self.consumed = {} if consumed is None else consumed
        self.entities = [] if entities is None else list(entities)
        self.seq = seq
        self.feeds = {} if feeds is None else feeds

    def consumed_entries(self):
        """ Return the consumed entries ordered by (origin, birth_t). """

        return [
            self.consumed[key]
            for key in sorted(self.consumed)
        ]

    def __repr__(self):
        return "Departure(%s, %s, %s)" % (self.t, self.receiver, self.q)


class VertexState:
    """ One interval of a vertex's history, stored as one record.

    The interval is [t_start, t_end); t_end is None while the state is
    open. 'content' is the content at the end of the state; 'arrivals'
    and 'departures' record every flow inside it, keyed by interaction seq,
    so that the content at any instant of the interval can be recomputed
    exactly.

    """

    __slots__ = (
        "vertex",
        "t_start",
        "t_end",
        "content",
        "phase",
        "labels",
        "last_t",
        "event_count",
        "origin_counts",
        "arrivals",
        "departures",
    )

    def __init__(self, vertex, t_start, content, phase=IDLE, labels=None):
        self.vertex = vertex
        self.t_start = t_start
        self.t_end = None
        self.content = content
        self.phase = phase
        self.labels = [] if labels is None else list(labels)
        self.last_t = t_start
        self.event_count = 0
        self.origin_counts = Counter()
        self.arrivals = {}
        self.departures = {}
        self.count_origins()

    #### Properties ###########################################################

    @property
    def buffer(self):
        """ The buffer at the end of the state. """

        return self.content.buffer

    @property
    def prov(self):
        """ The provenance entries at the end of the state. """

        return self.content.entries()

    @property
    def entity_set(self):
        """ The entities held at the end of the state (discrete data). """

        if self.content.entities is None:
            return None

        return frozenset(self.content.entities)

    @property
    def origins(self):
        """ The origins contributing to the buffer. """

        return {
            origin for origin, count in self.origin_counts.items() if count
        }

    @property
    def is_open(self):
        """ Is this the last state of its vertex? """

        return self.t_end is None

    #### Methods ##############################################################

    def origin_totals(self):
        """ Return the buffer at the end of the state split by origin. """

        return self.content.origin_totals()

    def contains(self, t):
        """ Does the interval contain 't'? """

        return self.t_start <= t and (self.t_end is None or t < self.t_end)

    def count_origins(self):
        """ Recount the origins of the content's entries. """

        self.origin_counts = Counter(origin for origin, _ in self.content.prov)

    def record_arrival(self, sender, t, q, entities, via_replication, seq):
        """ Add an inflow to the arrivals ledger. """

        row = self.arrivals[seq] = Arrival(
            sender, t, q, entities, via_replication, seq
        )

        return row

    def record_departure(
        self, t, receiver, q, replicate, consumed, entities, seq, feeds=None
    ):
        """ Add an outflow to the departures ledger. """

        row = self.departures[seq] = Departure(
            t,
            receiver,
            q,
            replicate=replicate,
            entities=entities,
            seq=seq,
            feeds=feeds,
        )
        for entry in consumed:
            merge_entry(row.consumed, entry)

        return row

    def arrival_rows(self):
        """ Return the arrivals ledger in time order. """

        return sorted(self.arrivals.values(), key=lambda a: (a.t, a.seq))

    def departure_rows(self):
        """ Return the departures ledger in time order. """

        return sorted(self.departures.values(), key=lambda d: (d.t, d.seq))

    def __repr__(self):
        return "VertexState(%s, [%s, %s), %s, buffer=%s)" % (
            self.vertex,
            self.t_start,
            "OPEN" if self.t_end is None else self.t_end,
            self.phase,
            self.content.buffer,
        )

