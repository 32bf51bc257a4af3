# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Tests for the provenance queries. """

# Standard library imports.
import json
import unittest
from fractions import Fraction

# Local imports.
from tinprov.cli.workloads import financial_random, flink_fig1, metro
from tinprov.interaction import Interaction
from tinprov.provenance_query import ProvenanceQuery
from tinprov.quantity import FLOAT
from tinprov.range_order_error import RangeOrderError
from tinprov.state_engine import StateEngine
from tinprov.tin_config import (
    DISCRETE,
    PER_INTERACTION,
    TIME_BUCKET,
    TinConfig,
)
from tinprov.vertex_state import PRE


def build_query(items, config=None):
    """ Ingest items and return a query over the resulting index. """

    engine = StateEngine(config=TinConfig() if config is None else config)
    engine.ingest(items)

    return ProvenanceQuery(index=engine.index)


class ProvenanceQueryTestCase(unittest.TestCase):
    """ Tests for the provenance queries. """

    ###########################################################################
    # 'TestCase' interface.
    ###########################################################################

    def setUp(self):
        """ Prepares the test fixture before each test method is called. """

        self.query = build_query(flink_fig1())

    ###########################################################################
    # Tests.
    ###########################################################################

    def test_q1_to_the_mintings(self):
        """ q1 to the mintings """

        answer = self.query.q1_backward("W1", Fraction(7, 2))

        self.assertEqual(
            answer.as_dict(),
            {("K1", 1): 450, ("K2", 1): 660, ("K3", 1): 715, ("M2", 3): 175},
        )
        self.assertEqual(answer.total(), 2000)
        self.assertFalse(answer.truncated)

    def test_q1_depth_limits(self):
        """ q1 depth limits """

        last_hop = self.query.q1_backward("W1", Fraction(7, 2), depth=1)
        self.assertEqual(
            last_hop.as_dict(),
            {("M1", 3): 450, ("M2", 3): 775, ("M3", 3): 775},
        )
        self.assertEqual(last_hop.depth_reached, 1)

        two_hops = self.query.q1_backward("W1", Fraction(7, 2), depth=2)
        self.assertEqual(
            two_hops.as_dict(),
            {("S1", 2): 450, ("S2", 2): 1375, ("M2", 3): 175},
        )
        self.assertTrue(two_hops.truncated)

        with self.assertRaises(ValueError):
            self.query.q1_backward("W1", 3, depth=0)

    def test_q1_flanks_and_unknown_vertices(self):
        """ q1 flanks and unknown vertices """

        self.assertEqual(
            self.query.q1_backward("S2", 2, flank=PRE).as_dict(),
            {("K2", 1): 1200, ("K3", 1): 1300},
        )
        self.assertEqual(
            self.query.q1_backward("S2", 2).as_dict(),
            {("K2", 1): 540, ("K3", 1): 585},
        )
        self.assertEqual(
            self.query.q1_backward("W1", 3, flank=PRE).entries, []
        )
        self.assertEqual(self.query.q1_backward("W1", 0).entries, [])
        self.assertEqual(self.query.q1_backward("nowhere", 3).entries, [])

        self.assertEqual(
            json.loads(self.query.q1_backward("W1", 0).to_json())["entries"],
            [],
        )

    def test_q2(self):
        """ q2 """

        answer = self.query.q2_forward("K1", 1)

        self.assertEqual(
            answer.as_dict(),
            {
                ("S1", 1): 1500,
                ("M1", 2): 900,
                ("W1", 3): 450,
                ("Sink", 4): 450,
            },
        )
        self.assertEqual(
            [delivery.hops for delivery in answer.deliveries], [1, 2, 3, 4]
        )
        self.assertEqual(answer.chain, ["K1", "S1", "M1", "W1", "Sink"])

        self.assertEqual(
            json.loads(answer.to_json())["deliveries"][0], ["S1", 1, "1500", 1]
        )

    def test_q2_limits(self):
        """ q2 limits """

        self.assertEqual(
            self.query.q2_forward("K1", 1, depth=2).as_dict(),
            {("S1", 1): 1500, ("M1", 2): 900},
        )

        late = self.query.q2_forward("K1", 2)
        self.assertEqual(late.deliveries, [])
        self.assertEqual(late.chain, ["K1"])

        # What S2 sends at t=2 and after.
        self.assertEqual(
            self.query.q2_forward("S2", 2).as_dict(),
            {
                ("M2", 2): 600,
                ("M3", 2): 775,
                ("W1", 3): 1375,
                ("Sink", 4): 1375,
            },
        )

    def test_q3(self):
        """ q3 """

        self.assertEqual(
            self.query.q3_temporal_lineage("W1", 2, 3).as_dict(),
            {("M1", 3): 450, ("M2", 3): 775, ("M3", 3): 775},
        )
        self.assertEqual(
            self.query.q3_temporal_lineage("W1", 4, 9).entries, []
        )

        with self.assertRaises(RangeOrderError):
            self.query.q3_temporal_lineage("W1", 3, 2)

    def test_q4(self):
        """ q4 """

        self.assertEqual(self.query.q4_flow_lineage("K1", "W1", "M1"), 450)
        self.assertEqual(self.query.q4_flow_lineage("K1", "W1", "M2"), 0)
        self.assertEqual(self.query.q4_flow_lineage("K2", "Sink", "M2"), 288)
        self.assertEqual(self.query.q4_flow_lineage("M2", "Sink", "W1"), 175)

        # Minted before the horizon, or an empty horizon.
        self.assertEqual(
            self.query.q4_flow_lineage("K1", "W1", "M1", (2, 4)), 0
        )
        self.assertEqual(
            self.query.q4_flow_lineage("K1", "W1", "M1", (4, 1)), 0
        )

        with self.assertRaises(ValueError):
            self.query.q4_flow_lineage("K1", "K1", "M1")

    def test_q5(self):
        """ q5 """

        delta = self.query.q5_versioning("W1", 3, 4)

        self.assertEqual(delta.added, [])
        self.assertEqual(
            [entry.key for entry in delta.removed],
            [("M1", 3), ("M2", 3), ("M3", 3)],
        )
        self.assertEqual((delta.buffer_before, delta.buffer_after), (2000, 0))
        self.assertEqual(delta.apply_to({("M1", 3): 450}), {})

        unchanged = self.query.q5_versioning("K1", 2, 3)
        self.assertTrue(unchanged.is_empty)

        changed = self.query.q5_versioning("S2", 1, 2)
        self.assertEqual(
            changed.changed, [("K2", 1, 1200, 540), ("K3", 1, 1300, 585)]
        )

        with self.assertRaises(RangeOrderError):
            self.query.q5_versioning("W1", 3, 3)

    def test_answers_follow_new_ingestion(self):
        """ answers follow new ingestion """

        items = flink_fig1()
        engine = StateEngine()
        engine.ingest(items[:7])
        query = ProvenanceQuery(index=engine.index)

        self.assertEqual(
            query.q1_backward("W1", 3).as_dict(), {("K1", 1): 450}
        )

        engine.ingest(items[7:])

        self.assertEqual(query.q1_backward("W1", 3).total(), 2000)


class PolicyTransparencyTestCase(unittest.TestCase):
    """ Query answers do not depend on the state boundary policy. """

    def assert_same_answers(self, items):
        """ Compare every query type across the boundary policies. """

        configs = []
        for kind in (PER_INTERACTION, TIME_BUCKET):
            config = TinConfig()
            config.boundary.kind = kind
            config.boundary.delta = 0.5
            configs.append(config)

        reference = build_query(items)
        others = [build_query(items, config) for config in configs]

        index = reference.index
        times = sorted({item.t for item in items})
        probes = times + [(a + b) / 2 for a, b in zip(times, times[1:])]
        vertices = index.vertices()

        for query in others:
            for v in vertices:
                for t in probes:
                    self.assertEqual(
                        query.q1_backward(v, t).as_dict(),
                        reference.q1_backward(v, t).as_dict(),
                    )
                    self.assertEqual(
                        query.q1_backward(v, t, depth=2).as_dict(),
                        reference.q1_backward(v, t, depth=2).as_dict(),
                    )
                    self.assertEqual(
                        query.q2_forward(v, t).as_dict(),
                        reference.q2_forward(v, t).as_dict(),
                    )

                first, last = times[0], times[-1]
                self.assertEqual(
                    query.q3_temporal_lineage(v, first, last).as_dict(),
                    reference.q3_temporal_lineage(v, first, last).as_dict(),
                )

            s, d, via = vertices[:3]
            self.assertEqual(
                query.q4_flow_lineage(s, d, via),
                reference.q4_flow_lineage(s, d, via),
            )

    def test_pipeline(self):
        """ pipeline """

        self.assert_same_answers(flink_fig1())

    def test_random_transfers(self):
        """ random transfers """

        self.assert_same_answers(financial_random(7, 5, 40))


def bounce_log():
    """ Transfers between A and B going back and forth at one timestamp. """

    return [
        Interaction("K", "A", 1, 10),
        Interaction("A", "B", 2, 10),
        Interaction("B", "A", 2, 5),
        Interaction("A", "B", 2, 5),
    ]


def relay_log():
    """ Two sends from A to B at t=2 with B forwarding in between, then
    everything drains into the sink Z at t=3.
    """

    return [
        Interaction("K", "A", 1, 10),
        Interaction("A", "B", 2, 4),
        Interaction("B", "C", 2, 4),
        Interaction("J", "A", 2, 10),
        Interaction("A", "B", 2, 6),
        Interaction("B", "Z", 3, 6),
        Interaction("C", "Z", 3, 4),
        Interaction("A", "Z", 3, 10),
    ]


class SameTimestampTestCase(unittest.TestCase):
    """ Tracing through several transfers that share a timestamp. """

    def test_relay_keeps_the_log_order(self):
        """ relay keeps the log order """

        query = build_query(relay_log()[:5])

        self.assertEqual(query.q1_backward("C", 2).as_dict(), {("K", 1): 4})
        self.assertEqual(
            query.q1_backward("B", 2).as_dict(),
            {("K", 1): Fraction(9, 4), ("J", 2): Fraction(15, 4)},
        )
        self.assertEqual(
            query.q1_backward("C", 2, depth=2).as_dict(), {("A", 2): 4}
        )

        state = query.index.state_at("A", 2)
        self.assertEqual(
            [(row.receiver, row.q) for row in state.departure_rows()],
            [("B", 4), ("B", 6)],
        )

    def test_bounce_is_not_a_cycle(self):
        """ bounce is not a cycle """

        query = build_query(bounce_log())

        self.assertEqual(
            query.q1_backward("B", 2).as_dict(), {("K", 1): 10}
        )
        answer = query.q1_backward("B", 2, depth=2)
        self.assertEqual(answer.as_dict(), {("K", 1): 5, ("B", 2): 5})
        self.assertTrue(answer.truncated)
        self.assertEqual(query.q4_flow_lineage("K", "B", "A"), 15)

    def test_random_bursts_across_policies(self):
        """ random bursts across policies """

        items = financial_random(19, 5, 40, burst=5)
        reference = build_query(items)

        config = TinConfig()
        config.boundary.kind = PER_INTERACTION
        other = build_query(items, config)

        for v in reference.index.vertices():
            for t in sorted({item.t for item in items}):
                self.assertEqual(
                    other.q1_backward(v, t).as_dict(),
                    reference.q1_backward(v, t).as_dict(),
                )


class QueryIdentitiesTestCase(unittest.TestCase):
    """ Relations that hold between the answers of different queries. """

    def test_q1_mass_matches_the_buffer_at_every_depth(self):
        """ q1 mass matches the buffer at every depth """

        for items in (relay_log(), financial_random(17, 6, 60, burst=4)):
            query = build_query(items)
            times = sorted({item.t for item in items})

            for v in query.index.vertices():
                for t in times:
                    content = query.index.provenance_at(v, t)
                    buffer = 0 if content is None else content.buffer
                    for depth in (1, 2, 3, 4, None):
                        answer = query.q1_backward(v, t, depth)
                        self.assertEqual(answer.total(), buffer, (v, t, depth))

    def test_q1_and_q2_agree_on_deliveries(self):
        """ q1 and q2 agree on deliveries """

        query = build_query(relay_log())
        backward = query.q1_backward("Z", 3).as_dict()

        for source, minted_at in (("K", 1), ("J", 2)):
            forward = query.q2_forward(source, minted_at)
            delivered = sum(
                delivery.q_from_source
                for delivery in forward.deliveries
                if delivery.destination == "Z"
            )
            self.assertEqual(delivered, 10)
            self.assertEqual(backward[(source, minted_at)], delivered)

    def test_q4_splits_over_last_hops(self):
        """ q4 splits over last hops """

        query = build_query(flink_fig1())
        totals = {}
        for entry in query.q1_backward("W1", Fraction(7, 2)).entries:
            totals[entry.origin] = totals.get(entry.origin, 0) + entry.q

        for source in ("K1", "K2", "K3"):
            self.assertEqual(
                sum(
                    query.q4_flow_lineage(source, "W1", via)
                    for via in ("M1", "M2", "M3")
                ),
                totals[source],
            )

    def test_q5_deltas_compose(self):
        """ q5 deltas compose """

        items = financial_random(23, 5, 45, burst=3)
        query = build_query(items)
        times = sorted({item.t for item in items})
        t0, t1, t2 = times[3], times[len(times) // 2], times[-1]

        for v in query.index.vertices():
            start = query.q1_backward(v, t0, depth=1).as_dict()
            end = query.q1_backward(v, t2, depth=1).as_dict()

            first = query.q5_versioning(v, t0, t1)
            second = query.q5_versioning(v, t1, t2)
            whole = query.q5_versioning(v, t0, t2)

            self.assertEqual(
                second.apply_to(first.apply_to(start)), whole.apply_to(start)
            )
            self.assertEqual(whole.apply_to(start), end)


class DiscreteQueryTestCase(unittest.TestCase):
    """ Tests for the entity queries over discrete data. """

    def setUp(self):
        """ Prepares the test fixture before each test method is called. """

        config = TinConfig()
        config.data_class.kind = DISCRETE
        self.query = build_query(metro(), config)

    def test_count_entities_through(self):
        """ count entities through """

        self.assertEqual(self.query.count_entities_through("A", "C", "B"), 190)
        self.assertEqual(
            self.query.count_entities_through("A", "C", "B", (9, 11)), 130
        )
        self.assertEqual(self.query.q4_flow_lineage("A", "C", "B"), 190)

    def test_entity_backward(self):
        """ entity backward """

        answer = self.query.entity_backward("C", 11)

        self.assertEqual(
            answer.as_dict(), {("A", 8): 60, ("A", 9): 80, ("A", 10): 50}
        )
        self.assertEqual(self.query.entity_backward("C", 8).entries, [])

    def test_liquid_answers_match_entity_paths(self):
        """ liquid answers match entity paths """

        liquid = build_query(metro())

        for v in ("B", "C", "D"):
            for t in (Fraction(17, 2), 9, Fraction(39, 4), 11):
                self.assertEqual(
                    liquid.q1_backward(v, t).as_dict(),
                    self.query.entity_backward(v, t).as_dict(),
                    (v, t),
                )

        for d in ("C", "D"):
            self.assertEqual(
                liquid.q4_flow_lineage("A", d, "B"),
                self.query.count_entities_through("A", d, "B"),
            )


class FloatArithmeticTestCase(unittest.TestCase):
    """ Tests for the queries under float arithmetic. """

    def test_pipeline(self):
        """ pipeline """

        config = TinConfig(arithmetic=FLOAT)
        items = flink_fig1()
        for item in items:
            item.t = float(item.t)
            item.q = float(item.q)

        answer = build_query(items, config).q1_backward("W1", 3.5)

        expected = {
            ("K1", 1): 450,
            ("K2", 1): 660,
            ("K3", 1): 715,
            ("M2", 3): 175,
        }
        self.assertEqual(set(answer.as_dict()), set(expected))
        for key, q in answer.as_dict().items():
            self.assertAlmostEqual(q, expected[key], places=6)
