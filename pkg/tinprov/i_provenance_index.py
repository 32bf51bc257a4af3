# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" The temporal provenance index interface. """


# Enthought library imports.
from traits.api import Any, Instance, Int, Interface

# Local imports.
from .tin_config import TinConfig


class IProvenanceIndex(Interface):
    """ The temporal provenance index interface.

    An index holds, for every vertex, the chronologically ordered sequence
    of its states. States are keyed by their start time and cover
    half-open intervals, so exactly one state answers any time inside the
    covered range.

    """

    #: The configuration the states were built under.
    config = Instance(TinConfig)

    #: The number of interactions applied.
    raw_count = Int

    #: The time of the first and the last applied item.
    first_t = Any
    last_t = Any

    def vertices(self):
        """ Return the ids of all vertices with at least one state. """

    def states(self, v):
        """ Return all states of vertex 'v' in time order. """

    def current(self, v):
        """ Return the open state of 'v' (None if 'v' has no states). """

    def state_at(self, v, t, flank="post"):
        """ Return the state of 'v' at time 't'.

        With the 'post' flank this is the state whose interval contains 't';
        with the 'pre' flank it is the state just before any boundary at
        't'. Return None if 'v' is unknown or 't' precedes its first state.

        """

    def states_in(self, v, t1, t2):
        """ Return the states of 'v' intersecting the closed range [t1, t2].

        Raises a 'RangeOrderError' if t1 > t2.

        """

    def close_and_append(self, v, state):
        """ Close the open state of 'v' at 'state.t_start' and append 'state'.

        Raises a 'NonMonotoneInsertionError' unless 'state' starts after the
        open state.

        """

    def provenance_at(self, v, t, flank="post"):
        """ Return the exact 'Content' of 'v' at time 't' (or None). """

    def departures_at(self, u, t, receiver):
        """ Return the outflows from 'u' to 'receiver' at exactly 't'. """

    def departure(self, u, t, seq):
        """ Return the outflow of interaction 'seq' from 'u' (or None). """

    def arrivals_in(self, v, t1, t2):
        """ Return the inflows into 'v' within the closed range [t1, t2]. """

    def entity_path(self, entity):
        """ Return the hops of an entity as (src, dst, t) triples. """

    def departures_in(self, v, t1=None, t2=None):
        """ Return the outflows from 'v' within the closed range [t1, t2]. """

    def entity_paths(self):
        """ Return every entity's hops, keyed by entity. """

    def entity_origin(self, entity):
        """ Return the (vertex, time) an entity was born at, or None. """

    def stats(self):
        """ Return a summary of the index size. """

    def state_count(self, v=None):
        """ Return the number of states of 'v', or of all vertices. """

    def covered_range(self):
        """ Return (first_t, last_t), or None for an empty index. """
