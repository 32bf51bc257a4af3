# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" A provenance entry. """


class ProvenanceEntry:
    """ Part of a buffer attributed to where (and when) it came from.

    Inside a vertex's buffer the origin is the sender the quantity arrived
    from and 'birth_t' the arrival time. In the consumed set of an outflow
    an entry whose origin is the sender itself is quantity minted there.

    Entries are immutable; use 'with_q' to derive one with another
    quantity.

    """

    __slots__ = ("origin", "birth_t", "q", "via_replication")

    def __init__(self, origin, birth_t, q, via_replication=False):
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "birth_t", birth_t)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "via_replication", via_replication)

    def __setattr__(self, name, value):
        raise AttributeError("provenance entries are immutable")

    @property
    def key(self):
        """ The (origin, birth_t) pair entries are merged by. """

        return (self.origin, self.birth_t)

    def with_q(self, q):
        """ Return a copy of the entry with quantity 'q'. """

        return ProvenanceEntry(
            self.origin, self.birth_t, q, self.via_replication
        )

    def merged(self, other):
        """ Return the sum of this entry and another with the same key. """

        if other.key != self.key:
            raise ValueError(
                "cannot merge %r into %r: keys differ" % (other, self)
            )

        return ProvenanceEntry(
            self.origin,
            self.birth_t,
            self.q + other.q,
            self.via_replication or other.via_replication,
        )

    def __eq__(self, other):
        if not isinstance(other, ProvenanceEntry):
            return NotImplemented

        return (
            self.origin == other.origin
            and self.birth_t == other.birth_t
            and self.q == other.q
            and self.via_replication == other.via_replication
        )

    def __hash__(self):
        return hash((self.origin, self.birth_t, self.q, self.via_replication))

    def __repr__(self):
        suffix = ", via_replication=True" if self.via_replication else ""
        return "ProvenanceEntry(%s, %s, %s%s)" % (
            self.origin,
            self.birth_t,
            self.q,
            suffix,
        )


def merge_entry(prov, entry):
    """ Add 'entry' to the dict 'prov' (keyed by entry key) in place. """

    existing = prov.get(entry.key)
    prov[entry.key] = entry if existing is None else existing.merged(entry)

    return prov
