# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Reference answers computed from a replay timeline.

Nothing here looks at states: where-from answers are carried forward with
every unit of quantity from the moment it is minted, tagged with its origin
(unbounded depth) or with the path of entries it passed through (finite
depth).

"""


# Standard library imports.
from collections import Counter

# Local imports.
from tinprov.query_answers import (
    Delivery,
    ForwardAnswer,
    ProvenanceAnswer,
    ProvenanceDelta,
)
from tinprov.range_order_error import RangeOrderError
from tinprov.vertex_state import Content, POST, PRE
from tinprov.provenance_entry import ProvenanceEntry


def oracle_q1(timeline, v, t, depth=None, flank=POST):
    """ Where did the buffer of 'v' at 't' come from? """

    if depth is not None and depth < 1:
        raise ValueError("depth must be at least 1, got %r" % (depth,))

    snapshot = timeline.content_at(v, t, flank)
    if snapshot is None or not snapshot.prov:
        return ProvenanceAnswer()

    if depth == 1:
        return ProvenanceAnswer.from_amounts(dict(snapshot.prov), 1)

    if depth is None:
        return _q1_forward(timeline, v, t, flank)

    return _q1_paths(timeline, v, t, depth, flank)


def oracle_q2(timeline, s, t, depth=None):
    """ Where did quantity leaving 's' at or after 't' go? """

    if depth is not None and depth < 1:
        raise ValueError("depth must be at least 1, got %r" % (depth,))

    deliveries = {}

    def deliver(event, parts, minted):
        r = event.interaction
        if r.t < t:
            return {}

        if r.src == s:
            tags = {1: r.q}
        else:
            tags = {hops + 1: q for hops, q in parts.items() if q}

        within = {
            hops: q
            for hops, q in tags.items()
            if q and (depth is None or hops <= depth)
        }
        if within:
            delivery = deliveries.get((r.dst, r.t))
            if delivery is None:
                deliveries[(r.dst, r.t)] = Delivery(
                    r.dst, r.t, sum(within.values()), r.q, min(within)
                )
            else:
                delivery.q_from_source += sum(within.values())
                delivery.delivered += r.q
                delivery.hops = min(delivery.hops, min(within))

        return tags

    _propagate(timeline, deliver)

    ordered = sorted(
        deliveries.values(), key=lambda d: (d.time, d.destination)
    )
    reach = {}
    for delivery in ordered:
        if delivery.destination == s:
            continue
        candidate = (delivery.time, delivery.hops, delivery.destination)
        first = reach.get(delivery.destination)
        if first is None or candidate < first:
            reach[delivery.destination] = candidate

    chain = [s] + [v for _, _, v in sorted(reach.values())]

    return ForwardAnswer(source=s, deliveries=ordered, chain=chain)


def oracle_q3(timeline, v, t1, t2):
    """ Which last hops delivered into 'v' within [t1, t2]? """

    if t1 > t2:
        raise RangeOrderError("t1=%s is after t2=%s" % (t1, t2))

    amounts = {}
    for event in timeline.events:
        r = event.interaction
        if r.dst == v and t1 <= r.t <= t2:
            key = (r.src, r.t)
            amounts[key] = amounts.get(key, 0) + r.q

    return ProvenanceAnswer.from_amounts(amounts, 1)


def oracle_q4(timeline, s, d, via, horizon=None):
    """ How much quantity minted at 's' reached 'd' through 'via'? """

    if len({s, d, via}) != 3:
        raise ValueError(
            "source, destination and via must be distinct (%s, %s, %s)"
            % (s, d, via)
        )

    zero = timeline.config.number(0)
    if horizon is None:
        if not timeline.events:
            return zero
        horizon = (
            timeline.events[0].interaction.t,
            timeline.events[-1].interaction.t,
        )

    h1, h2 = horizon
    if h1 > h2:
        return zero

    through = [zero]

    def deliver(event, parts, minted):
        r = event.interaction
        tags = dict(parts)
        if r.src == s and r.t >= h1 and minted:
            tags["s"] = tags.get("s", 0) + minted
        if r.src == via:
            tags["via"] = tags.get("s", 0)
        if r.dst == d and h1 <= r.t <= h2:
            through[0] += tags.get("via", 0)

        return tags

    _propagate(timeline, deliver, until=lambda r: r.t <= h2)

    return through[0]


def oracle_q5(timeline, v, t1, t2):
    """ How did the provenance of 'v' change from 't1' to 't2'? """

    if t1 >= t2:
        raise RangeOrderError("t1=%s is not before t2=%s" % (t1, t2))

    return ProvenanceDelta.between(
        _content(timeline, v, t1), _content(timeline, v, t2)
    )


#### Entity paths (discrete data) #############################################


def oracle_entity_path(timeline, entity):
    """ Return the hops of an entity as (src, dst, t) triples. """

    return [
        (event.interaction.src, event.interaction.dst, event.interaction.t)
        for event in timeline.events
        if event.interaction.entities
        and entity in event.interaction.entities
    ]


def oracle_count_entities_through(timeline, s, d, via, horizon=None):
    """ Count deliveries into 'd' of entities born at 's' via 'via'. """

    if horizon is None:
        if not timeline.events:
            return 0
        horizon = (
            timeline.events[0].interaction.t,
            timeline.events[-1].interaction.t,
        )

    h1, h2 = horizon
    born = {}
    passed = set()
    count = 0
    for event in timeline.events:
        r = event.interaction
        if r.t > h2:
            break

        for entity in r.entities or ():
            if entity not in born:
                born[entity] = (r.src, r.t)

            origin, born_t = born[entity]
            if origin != s or born_t < h1:
                continue

            if r.src == via:
                passed.add(entity)
            if r.dst == d and entity in passed:
                count += 1

    return count


def oracle_entity_backward(timeline, v, t, flank=POST):
    """ Where were the entities held by 'v' at 't' born? """

    snapshot = timeline.content_at(v, t, flank)
    if snapshot is None or not snapshot.entities:
        return ProvenanceAnswer()

    born = {}
    for event in timeline.events:
        r = event.interaction
        for entity in r.entities or ():
            born.setdefault(entity, (r.src, r.t))

    counts = Counter(born[entity] for entity in snapshot.entities)
    amounts = {
        key: timeline.config.number(n) for key, n in counts.items()
    }

    return ProvenanceAnswer.from_amounts(amounts, 1)


#### Private protocol #########################################################


def _content(timeline, v, t):
    """ Return the content of 'v' at 't' as a 'Content'. """

    snapshot = timeline.content_at(v, t)
    if snapshot is None:
        return Content(timeline.config.number(0), {})

    prov = {
        key: ProvenanceEntry(key[0], key[1], q)
        for key, q in snapshot.prov.items()
    }

    return Content(snapshot.buffer, prov)


def _q1_forward(timeline, v, t, flank):
    """ Carry origin tags forward to find the mintings in 'v' at 't'. """

    def deliver(event, parts, minted):
        r = event.interaction
        tags = dict(parts)
        if minted:
            key = (r.src, r.t)
            tags[key] = tags.get(key, 0) + minted

        return tags

    def until(r):
        return r.t < t if flank == PRE else r.t <= t

    holdings = _propagate(timeline, deliver, until)

    amounts = {}
    for q, tags in holdings.get(v, {}).values():
        for key, amount in tags.items():
            amounts[key] = amounts.get(key, 0) + amount

    return ProvenanceAnswer.from_amounts(amounts)


def _q1_paths(timeline, v, t, depth, flank):
    """ Carry hop paths forward to trace the buffer of 'v' 'depth' levels.

    A path lists the entry keys a unit passed through, latest first, and
    ends with its minting key repeated; only the first depth + 1 keys are
    kept, so a longer path is one the trace stops short of.

    """

    def deliver(event, parts, minted):
        r = event.interaction
        hop = (r.src, r.t)
        tags = {}
        for path, amount in parts.items():
            longer = ((hop,) + path)[: depth + 1]
            tags[longer] = tags.get(longer, 0) + amount
        if minted:
            path = (hop, hop)[: depth + 1]
            tags[path] = tags.get(path, 0) + minted

        return tags

    def until(r):
        return r.t < t if flank == PRE else r.t <= t

    holdings = _propagate(timeline, deliver, until)

    amounts = {}
    deepest = 1
    truncated = False
    for q, tags in holdings.get(v, {}).values():
        for path, amount in tags.items():
            if len(path) > depth:
                key = path[depth - 1]
                truncated = truncated or amount > 0
            else:
                key = path[-1]
            amounts[key] = amounts.get(key, 0) + amount
            deepest = max(deepest, min(len(path), depth))

    return ProvenanceAnswer.from_amounts(amounts, deepest, truncated)


def _propagate(timeline, deliver, until=None):
    """ Replay the events carrying tags with every unit of quantity.

    Every held entry carries a {label: amount} dict; an outflow takes from
    each consumed entry the same fraction of its tags as of its quantity.
    'deliver(event, parts, minted)' returns the tags of the delivered
    quantity given the tags taken out of the sender. Returns the final
    holdings, vertex -> {key: (q, tags)}.

    """

    tolerance = timeline.config.tolerance
    holdings = {}

    for event in timeline.events:
        r = event.interaction
        if until is not None and not until(r):
            break

        held = holdings.setdefault(r.src, {})
        parts = {}
        for key, cq in event.consumed.items():
            if key[0] == r.src:
                continue

            entry = held.get(key)
            if entry is None:
                continue

            q, tags = entry
            for label, amount in tags.items():
                parts[label] = parts.get(label, 0) + amount * cq / q

            if not r.replicate:
                left = q - cq
                if left > tolerance:
                    held[key] = (
                        left,
                        {
                            label: amount - amount * cq / q
                            for label, amount in tags.items()
                        },
                    )
                else:
                    del held[key]

        if not r.replicate:
            # Entries the outflow left as dust are dropped with it.
            for key in [key for key, (q, _) in held.items() if q <= tolerance]:
                del held[key]

        tags = deliver(event, parts, event.minted)

        received = holdings.setdefault(r.dst, {})
        key = (r.src, r.t)
        q, before = received.get(key, (0, {}))
        merged = dict(before)
        for label, amount in tags.items():
            merged[label] = merged.get(label, 0) + amount
        received[key] = (q + r.q, merged)

    return holdings
