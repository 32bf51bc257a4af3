# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" The answers of provenance queries.

Every answer serialises to one line of JSON with quantities as decimal
strings rounded to 12 fractional digits.

"""


# Standard library imports.
import json

# Enthought library imports.
from traits.api import Any, Bool, HasStrictTraits, Int, List, Str

# Local imports.
from .provenance_entry import ProvenanceEntry
from .quantity import format_decimal, json_time


def _dumps(data):
    """ Serialise a JSON-friendly structure compactly and stably. """

    return json.dumps(data, separators=(",", ":"))


def quantity_to_json(q):
    """ Serialise a single quantity answer. """

    return _dumps({"q": format_decimal(q)})


class ProvenanceAnswer(HasStrictTraits):
    """ (origin, time, quantity) tuples answering a where-from query. """

    #: The entries, ordered by (origin, time) and merged on that pair.
    entries = List(ProvenanceEntry)

    #: The deepest level the answer was traced to.
    depth_reached = Int(0)

    #: Did the depth limit stop tracing before every entry was minted?
    truncated = Bool(False)

    @classmethod
    def from_amounts(cls, amounts, depth_reached=0, truncated=False):
        """ Build an answer from a {(origin, time): q} dict. """

        entries = [
            ProvenanceEntry(origin, time, q)
            for (origin, time), q in sorted(amounts.items())
            if q > 0
        ]

        return cls(
            entries=entries,
            depth_reached=depth_reached if entries else 0,
            truncated=truncated,
        )

    def as_dict(self):
        """ Return the entries as a {(origin, time): q} dict. """

        return {entry.key: entry.q for entry in self.entries}

    def total(self):
        """ Return the sum of the entry quantities. """

        return sum(entry.q for entry in self.entries)

    def to_json(self):
        """ Serialise the answer. """

        return _dumps(
            {
                "entries": [
                    [
                        entry.origin,
                        json_time(entry.birth_t),
                        format_decimal(entry.q),
                    ]
                    for entry in self.entries
                ],
                "depth_reached": self.depth_reached,
                "truncated": self.truncated,
            }
        )


class Delivery:
    """ Quantity from a source delivered to one vertex at one time. """

    __slots__ = ("destination", "time", "q_from_source", "delivered", "hops")

    def __init__(self, destination, time, q_from_source, delivered, hops):
        self.destination = destination
        self.time = time
        self.q_from_source = q_from_source
        self.delivered = delivered
        self.hops = hops

    def __repr__(self):
        return "Delivery(%s, %s, %s of %s)" % (
            self.destination,
            self.time,
            self.q_from_source,
            self.delivered,
        )


class ForwardAnswer(HasStrictTraits):
    """ Where quantity from a source went. """

    #: The source vertex.
    source = Str

    #: The deliveries ordered by (time, destination).
    deliveries = List(Delivery)

    #: The source followed by every vertex reached, in reach order.
    chain = List(Str)

    def as_dict(self):
        """ Return the deliveries as a {(destination, time): q} dict. """

        return {
            (delivery.destination, delivery.time): delivery.q_from_source
            for delivery in self.deliveries
        }

    def to_json(self):
        """ Serialise the answer. """

        return _dumps(
            {
                "deliveries": [
                    [
                        delivery.destination,
                        json_time(delivery.time),
                        format_decimal(delivery.q_from_source),
                        delivery.hops,
                    ]
                    for delivery in self.deliveries
                ],
                "chain": list(self.chain),
            }
        )


class ProvenanceDelta(HasStrictTraits):
    """ How a vertex's provenance changed between two times. """

    #: Entries present only at the later time.
    added = List(ProvenanceEntry)

    #: Entries present only at the earlier time.
    removed = List(ProvenanceEntry)

    #: (origin, time, q_before, q_after) for entries present at both.
    changed = List

    #: The buffer at the two times.
    buffer_before = Any(0)
    buffer_after = Any(0)

    @classmethod
    def between(cls, before, after):
        """ Return the delta between two 'Content' objects. """

        added = [
            entry
            for key, entry in sorted(after.prov.items())
            if key not in before.prov
        ]
        removed = [
            entry
            for key, entry in sorted(before.prov.items())
            if key not in after.prov
        ]
        changed = [
            (key[0], key[1], entry.q, after.prov[key].q)
            for key, entry in sorted(before.prov.items())
            if key in after.prov and after.prov[key].q != entry.q
        ]

        return cls(
            added=added,
            removed=removed,
            changed=changed,
            buffer_before=before.buffer,
            buffer_after=after.buffer,
        )

    @property
    def is_empty(self):
        """ Did nothing change? """

        return (
            not self.added
            and not self.removed
            and not self.changed
            and self.buffer_before == self.buffer_after
        )

    def apply_to(self, amounts):
        """ Apply the delta to a {(origin, time): q} dict.

        Returns a new dict; applying the delta to the earlier provenance
        gives the later one.

        """

        result = dict(amounts)
        for entry in self.removed:
            result.pop(entry.key, None)
        for origin, time, _, q_after in self.changed:
            result[(origin, time)] = q_after
        for entry in self.added:
            result[entry.key] = entry.q

        return result

    def to_json(self):
        """ Serialise the answer. """

        def entries(items):
            return [
                [
                    entry.origin,
                    json_time(entry.birth_t),
                    format_decimal(entry.q),
                ]
                for entry in items
            ]

        return _dumps(
            {
                "added": entries(self.added),
                "removed": entries(self.removed),
                "changed": [
                    [
                        origin,
                        json_time(time),
                        format_decimal(q_before),
                        format_decimal(q_after),
                    ]
                    for origin, time, q_before, q_after in self.changed
                ],
                "buffer_before": format_decimal(self.buffer_before),
                "buffer_after": format_decimal(self.buffer_after),
            }
        )

