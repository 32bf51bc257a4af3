# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Tracing quantity backwards through recorded outflows. """


# Enthought library imports.
from traits.api import Dict, HasStrictTraits, Instance

# Local imports.
from .i_provenance_index import IProvenanceIndex


class LineageTracer(HasStrictTraits):
    """ Re-attributes outflows through the outflows that fed them.

    A node is the outflow '(u, t, seq)' of one interaction. Its consumed
    entries either were minted at 'u' (leaves) or arrived at 'u' from
    'origin' at 'birth_t'; the feeds of such an entry name the earlier
    interactions whose outflows '(origin, birth_t, seq)' delivered it, and
    each is followed in proportion to the part it contributed. Sequence
    numbers only go down along a trace. Nodes are evaluated bottom-up
    without recursion and memoized.

    """

    #### 'LineageTracer' interface ############################################

    #: The index whose ledgers are traced.
    index = Instance(IProvenanceIndex)

    #### Private interface ####################################################

    # (u, t, seq) -> (total, {entry key: q}, {entry key: {seq: q}}).
    _outflows = Dict

    # Memoized compositions, keyed by (u, t, seq, levels).
    _compositions = Dict

    ###########################################################################
    # 'LineageTracer' interface.
    ###########################################################################

    def outflow(self, u, t, seq):
        """ Return (total, consumed, feeds) for the outflow of 'seq'. """

        node = (u, t, seq)
        cached = self._outflows.get(node)
        if cached is None:
            row = self.index.departure(u, t, seq)
            if row is None:
                cached = (self.index.config.number(0), {}, {})
            else:
                consumed = {
                    key: entry.q for key, entry in row.consumed.items()
                }
                cached = (row.q, consumed, row.feeds)

            self._outflows[node] = cached

        return cached

    def feeders(self, u, t, seq, since=None):
        """ Return the (origin, birth_t, seq, q) parts the outflow took.

        Quantity minted at 'u', and entries born before 'since', are left
        out.

        """

        _, consumed, feeds = self.outflow(u, t, seq)

        parts = []
        for key in sorted(consumed):
            origin, birth_t = key
            if origin == u or (since is not None and birth_t < since):
                continue

            for fed_by, q in sorted(feeds.get(key, {}).items()):
                parts.append((origin, birth_t, fed_by, q))

        return parts

    def composition(self, u, t, seq, levels=None):
        """ Return where the outflow '(u, t, seq)' came from.

        Returns '(fractions, depth, truncated)': 'fractions' maps
        (origin, time) to the share of the outflow, 'depth' is the number of
        entry levels below the outflow and 'truncated' is True when some
        share stopped at the level limit before reaching its minting.
        'levels' limits how many times consumed entries are expanded
        further (None for no limit).

        """

        def children(node):
            u, t, seq, levels = node
            if levels == 0:
                return []

            below = None if levels is None else levels - 1

            return [
                (origin, birth_t, fed_by, below)
                for origin, birth_t, fed_by, _ in self.feeders(u, t, seq)
            ]

        def reduce(node, memo):
            u, t, seq, levels = node
            total, consumed, feeds = self.outflow(u, t, seq)
            below = None if levels is None else levels - 1

            fractions = {}
            depth = 1
            truncated = False
            if not total:
                return fractions, depth, truncated

            for key, q in consumed.items():
                origin, birth_t = key
                parts = feeds.get(key, {})
                fed = sum(parts.values())

                if origin == u or levels == 0 or not fed:
                    _add(fractions, key, q / total)
                    if origin != u and levels == 0:
                        truncated = True
                    continue

                for fed_by, part in parts.items():
                    share = q * part / (fed * total)
                    child = memo.get((origin, birth_t, fed_by, below))
                    if child is None:
                        _add(fractions, key, share)
                        continue

                    child_fractions, child_depth, child_truncated = child
                    for child_key, child_share in child_fractions.items():
                        _add(fractions, child_key, share * child_share)

                    depth = max(depth, child_depth + 1)
                    truncated = truncated or child_truncated

            return fractions, depth, truncated

        return self._evaluate(
            (u, t, seq, levels), children, reduce, self._compositions
        )

    def hop_shares_for(self, source, since, memo):
        """ Return a function computing {hops: share} for an outflow.

        Only quantity that left 'source' at or after 'since' counts; a
        share that left 'source' 'h' hops before reaching the receiver is
        counted under 'h'. 'memo' may be shared by calls for the same
        (source, since) pair.

        """

        def children(node):
            if node[0] == source:
                return []

            return [
                (origin, birth_t, fed_by)
                for origin, birth_t, fed_by, _ in self.feeders(*node, since)
            ]

        def reduce(node, memo):
            if node[0] == source:
                return {1: 1}

            total = self.outflow(*node)[0]
            shares = {}
            if not total:
                return shares

            for origin, birth_t, fed_by, q in self.feeders(*node, since):
                child = memo.get((origin, birth_t, fed_by))
                if not child:
                    continue

                share = q / total
                for hops, child_share in child.items():
                    _add(shares, hops + 1, share * child_share)

            return shares

        def evaluate(u, t, seq):
            return self._evaluate((u, t, seq), children, reduce, memo)

        return evaluate

    def flow_shares_for(self, source, via, since, memo):
        """ Return a function computing (source share, via share) pairs.

        The source share of an outflow is the part minted at 'source' at or
        after 'since'; the via share is the part of that which left 'via'
        on its way.

        """

        def children(node):
            return [
                (origin, birth_t, fed_by)
                for origin, birth_t, fed_by, _ in self.feeders(*node, since)
            ]

        def reduce(node, memo):
            u = node[0]
            total, consumed, _ = self.outflow(*node)
            if not total:
                return (0, 0)

            source_share = 0
            if u == source:
                for (origin, birth_t), q in consumed.items():
                    if origin == u and birth_t >= since:
                        source_share += q / total

            via_share = 0
            for origin, birth_t, fed_by, q in self.feeders(*node, since):
                child = memo.get((origin, birth_t, fed_by))
                if child is None:
                    continue

                share = q / total
                source_share += share * child[0]
                via_share += share * child[1]

            if u == via:
                via_share = source_share

            return (source_share, via_share)

        def evaluate(u, t, seq):
            return self._evaluate((u, t, seq), children, reduce, memo)

        return evaluate

    ###########################################################################
    # Private interface.
    ###########################################################################

    def _evaluate(self, root, children, reduce, memo):
        """ Evaluate 'root' after all of its descendants, iteratively. """

        if root in memo:
            return memo[root]

        stack = [(root, iter(children(root)))]
        while stack:
            node, pending = stack[-1]
            for child in pending:
                if child not in memo:
                    stack.append((child, iter(children(child))))
                    break

            else:
                stack.pop()
                memo[node] = reduce(node, memo)

        return memo[root]


def _add(amounts, key, q):
    """ Add 'q' to 'amounts[key]'. """

    amounts[key] = amounts.get(key, 0) + q
