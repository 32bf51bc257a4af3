# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" The five temporal provenance queries. """


# Standard library imports.
import logging
from collections import Counter

# Enthought library imports.
from traits.api import Any, HasStrictTraits, Instance

# Local imports.
from .i_provenance_index import IProvenanceIndex
from .lineage_tracer import LineageTracer
from .query_answers import (
    Delivery,
    ForwardAnswer,
    ProvenanceAnswer,
    ProvenanceDelta,
)
from .range_order_error import RangeOrderError
from .vertex_state import Content, POST


# Logging.
logger = logging.getLogger(__name__)


class ProvenanceQuery(HasStrictTraits):
    """ Answers provenance queries over a temporal provenance index.

    Queries are read-only. Multi-level tracing goes through the outflow
    ledgers of the index, never through a raw log.

    """

    #### 'ProvenanceQuery' interface ##########################################

    #: The index being queried.
    index = Instance(IProvenanceIndex)

    #### Private interface ####################################################

    # The tracer, and the index version its memo is valid for.
    _tracer = Instance(LineageTracer)
    _tracer_version = Any

    ###########################################################################
    # 'ProvenanceQuery' interface.
    ###########################################################################

    def q1_backward(self, v, t, depth=None, flank=POST):
        """ Where did the buffer of 'v' at 't' come from?

        'depth' 1 gives the last hop of every entry; each further level
        re-attributes entries through the outflow that delivered them,
        stopping at quantity minted at its origin. None traces to the
        mintings.

        """

        if depth is not None and depth < 1:
            raise ValueError("depth must be at least 1, got %r" % (depth,))

        content = self.index.provenance_at(v, t, flank)
        if content is None or not content.prov:
            return ProvenanceAnswer()

        if depth == 1:
            amounts = {key: entry.q for key, entry in content.prov.items()}
            return ProvenanceAnswer.from_amounts(amounts, 1)

        tracer = self._get_tracer()
        levels = None if depth is None else depth - 2

        amounts = {}
        depth_reached = 1
        truncated = False
        for entry in content.prov.values():
            parts = content.feeds.get(entry.key, {})
            fed = sum(parts.values())
            if not fed:
                _add(amounts, entry.key, entry.q)
                continue

            for seq, part in parts.items():
                q = entry.q * part / fed
                fractions, below, cut = tracer.composition(
                    entry.origin, entry.birth_t, seq, levels
                )
                if not fractions:
                    _add(amounts, entry.key, q)
                    continue

                for key, share in fractions.items():
                    _add(amounts, key, q * share)

                depth_reached = max(depth_reached, below + 1)
                truncated = truncated or cut

        return ProvenanceAnswer.from_amounts(amounts, depth_reached, truncated)

    def q2_forward(self, s, t, depth=None):
        """ Where did quantity leaving 's' at or after 't' go?

        Every outflow at or after 't' carrying such quantity is a delivery;
        its share counts the quantity that left 's' at most 'depth' hops
        earlier.

        """

        if depth is not None and depth < 1:
            raise ValueError("depth must be at least 1, got %r" % (depth,))

        shares_of = self._get_tracer().hop_shares_for(s, t, {})
        deliveries = {}

        for u in self.index.vertices():
            for row in self.index.departures_in(u, t):
                shares = shares_of(u, row.t, row.seq)
                if not shares:
                    continue

                within = [
                    hops
                    for hops in shares
                    if depth is None or hops <= depth
                ]
                if not within:
                    continue

                total = row.q
                q = total * sum(shares[hops] for hops in within)
                if not q > 0:
                    continue

                time, w = row.t, row.receiver
                delivery = deliveries.get((w, time))
                if delivery is None:
                    deliveries[(w, time)] = Delivery(
                        w, time, q, total, min(within)
                    )
                else:
                    delivery.q_from_source += q
                    delivery.delivered += total
                    delivery.hops = min(delivery.hops, min(within))

        ordered = sorted(
            deliveries.values(), key=lambda d: (d.time, d.destination)
        )

        chain = [s]
        reach = {}
        for delivery in ordered:
            if delivery.destination == s:
                continue
            first = reach.get(delivery.destination)
            candidate = (delivery.time, delivery.hops, delivery.destination)
            if first is None or candidate < first:
                reach[delivery.destination] = candidate
        chain.extend(v for _, _, v in sorted(reach.values()))

        return ForwardAnswer(
            source=s, deliveries=ordered, chain=chain if ordered else [s]
        )

    def q3_temporal_lineage(self, v, t1, t2):
        """ Which last hops delivered into 'v' within [t1, t2]? """

        if t1 > t2:
            raise RangeOrderError("t1=%s is after t2=%s" % (t1, t2))

        amounts = {}
        for row in self.index.arrivals_in(v, t1, t2):
            _add(amounts, (row.sender, row.t), row.q)

        return ProvenanceAnswer.from_amounts(amounts, 1)

    def q4_flow_lineage(self, s, d, via, horizon=None):
        """ How much quantity minted at 's' reached 'd' through 'via'?

        Only quantity minted and delivered within 'horizon', a (t1, t2)
        pair defaulting to the whole covered timeline, counts. An empty
        horizon (t1 > t2) gives 0.

        """

        if len({s, d, via}) != 3:
            raise ValueError(
                "source, destination and via must be distinct (%s, %s, %s)"
                % (s, d, via)
            )

        zero = self.index.config.number(0)
        if horizon is None:
            horizon = self.index.covered_range()
            if horizon is None:
                return zero

        h1, h2 = horizon
        if h1 > h2:
            return zero

        tracer = self._get_tracer()
        shares_of = tracer.flow_shares_for(s, via, h1, {})

        result = zero
        for row in self.index.arrivals_in(d, h1, h2):
            _, via_share = shares_of(row.sender, row.t, row.seq)
            result += row.q * via_share

        return result

    def q5_versioning(self, v, t1, t2):
        """ How did the provenance of 'v' change from 't1' to 't2'? """

        if t1 >= t2:
            raise RangeOrderError("t1=%s is not before t2=%s" % (t1, t2))

        return ProvenanceDelta.between(
            self._content_at(v, t1), self._content_at(v, t2)
        )

    #### Entity paths (discrete data) #########################################

    def count_entities_through(self, s, d, via, horizon=None):
        """ Count entity deliveries into 'd' of entities born at 's' that
        left 'via' on the way, within 'horizon'.
        """

        if len({s, d, via}) != 3:
            raise ValueError(
                "source, destination and via must be distinct (%s, %s, %s)"
                % (s, d, via)
            )

        if horizon is None:
            horizon = self.index.covered_range()
            if horizon is None:
                return 0

        h1, h2 = horizon
        if h1 > h2:
            return 0

        count = 0
        for path in self.index.entity_paths().values():
            born_at, _, born_t = path[0]
            if born_at != s or born_t < h1:
                continue

            passed = False
            for src, dst, t in path:
                passed = passed or src == via
                if t > h2:
                    break
                if dst == d and passed:
                    count += 1

        return count

    def entity_backward(self, v, t, flank=POST):
        """ Where were the entities held by 'v' at 't' born? """

        content = self.index.provenance_at(v, t, flank)
        if content is None or not content.entities:
            return ProvenanceAnswer()

        paths = self.index.entity_paths()
        births = Counter()
        for entity in content.entities:
            src, _, born_t = paths[entity][0]
            births[(src, born_t)] += 1

        amounts = {
            key: self.index.config.number(count)
            for key, count in births.items()
        }

        return ProvenanceAnswer.from_amounts(amounts, 1)

    ###########################################################################
    # Private interface.
    ###########################################################################

    def _get_tracer(self):
        """ Return a tracer whose memo matches the current index. """

        version = (
            self.index.raw_count,
            self.index.state_count(),
            self.index.last_t,
        )
        if self._tracer is None or self._tracer_version != version:
            self._tracer = LineageTracer(index=self.index)
            self._tracer_version = version

        return self._tracer

    def _content_at(self, v, t):
        """ Return the content of 'v' at 't' (empty before any state). """

        content = self.index.provenance_at(v, t)
        if content is None:
            config = self.index.config
            content = Content.empty(config.is_discrete, config.number(0))

        return content


def _add(amounts, key, q):
    """ Add 'q' to 'amounts[key]'. """

    amounts[key] = amounts.get(key, 0) + q

