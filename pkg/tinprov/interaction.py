# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" The records of an interaction log. """


class Interaction:
    """ One time-stamped quantity transfer between two vertices.

    'entities' is a tuple of entity ids for discrete data and None for
    liquid data. 'seq' is the position in the log and is assigned when the
    record is read; 'line_number' is only known for records read from
    text.

    """

    __slots__ = (
        "src",
        "dst",
        "t",
        "q",
        "entities",
        "replicate",
        "seq",
        "line_number",
    )

    def __init__(
        self,
        src,
        dst,
        t,
        q,
        entities=None,
        replicate=False,
        seq=None,
        line_number=None,
    ):
        self.src = src
        self.dst = dst
        self.t = t
        self.q = q
        self.entities = None if entities is None else tuple(entities)
        self.replicate = replicate
        self.seq = seq
        self.line_number = line_number

    def __eq__(self, other):
        if not isinstance(other, Interaction):
            return NotImplemented

        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        text = "Interaction(%s, %s, %s, %s" % (
            self.src,
            self.dst,
            self.t,
            self.q,
        )
        if self.entities is not None:
            text += ", entities=%d" % len(self.entities)
        if self.replicate:
            text += ", replicate=True"

        return text + ")"

    def _key(self):
        # 'seq' and 'line_number' are positions, not content.
        return (
            self.src,
            self.dst,
            self.t,
            self.q,
            self.entities,
            self.replicate,
        )


class EpochMarker:
    """ An internal event (a window firing, say) at one vertex.

    A marker moves no quantity; it only forces a state boundary at
    'vertex' at time 't'.

    """

    __slots__ = ("vertex", "t", "label", "seq", "line_number")

    def __init__(self, vertex, t, label, seq=None, line_number=None):
        self.vertex = vertex
        self.t = t
        self.label = label
        self.seq = seq
        self.line_number = line_number

    def __eq__(self, other):
        if not isinstance(other, EpochMarker):
            return NotImplemented

        return (self.vertex, self.t, self.label) == (
            other.vertex,
            other.t,
            other.label,
        )

    def __hash__(self):
        return hash((self.vertex, self.t, self.label))

    def __repr__(self):
        return "EpochMarker(%s, %s, %r)" % (self.vertex, self.t, self.label)
