# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Tests for the event-replay oracle timeline. """

# Standard library imports.
import unittest
from fractions import Fraction

# Local imports.
from tinprov.cli.workloads import flink_fig1, metro
from tinprov.entity_transfer_error import EntityTransferError
from tinprov.interaction import EpochMarker, Interaction
from tinprov.oracle.api import replay
from tinprov.time_regression_error import TimeRegressionError
from tinprov.tin_config import DISCRETE, FIFO, TinConfig
from tinprov.vertex_state import PRE


class ReplayTimelineTestCase(unittest.TestCase):
    """ Tests for the event-replay oracle timeline. """

    def test_pipeline(self):
        """ pipeline """

        timeline = replay(flink_fig1())

        self.assertEqual(len(timeline.events), 10)
        self.assertEqual(timeline.vertices()[:3], ["K1", "K2", "K3"])

        to_m2 = timeline.events[4]
        self.assertEqual(to_m2.interaction.dst, "M2")
        self.assertEqual(to_m2.consumed, {("K2", 1): 288, ("K3", 1): 312})

        from_m2 = timeline.events[7]
        self.assertEqual(from_m2.minted, 175)
        self.assertEqual(from_m2.consumed, {("S2", 2): 600, ("M2", 3): 175})

        snapshot = timeline.content_at("W1", Fraction(7, 2))
        self.assertEqual(snapshot.buffer, 2000)
        self.assertEqual(
            snapshot.prov, {("M1", 3): 450, ("M2", 3): 775, ("M3", 3): 775}
        )

        self.assertEqual(timeline.audit(), [])
        self.assertEqual(timeline.minted, 4175)

    def test_snapshots_per_event(self):
        """ snapshots per event """

        timeline = replay(flink_fig1())

        # S2 at t=2 after the first and after the second outflow.
        self.assertEqual(
            [snapshot.buffer for snapshot in timeline.history["S2"]],
            [1200, 2500, 1900, 1125],
        )
        self.assertEqual(timeline.content_at("S2", 2).buffer, 1125)
        self.assertEqual(timeline.content_at("S2", 2, PRE).buffer, 2500)
        self.assertIsNone(timeline.content_at("S2", 0))
        self.assertIsNone(timeline.content_at("nowhere", 2))

    def test_fifo(self):
        """ fifo """

        config = TinConfig()
        config.attribution.kind = FIFO

        timeline = replay(
            [
                Interaction("A", "V", 1, 10),
                Interaction("B", "V", 2, 10),
                Interaction("V", "W", 3, 15),
            ],
            config,
        )

        self.assertEqual(
            timeline.events[-1].consumed, {("A", 1): 10, ("B", 2): 5}
        )

    def test_markers_are_skipped(self):
        """ markers are skipped """

        timeline = replay(
            [Interaction("A", "B", 1, 1), EpochMarker("B", 2, "close")]
        )

        self.assertEqual(len(timeline.events), 1)

        with self.assertRaises(TimeRegressionError):
            replay([Interaction("A", "B", 2, 1), EpochMarker("B", 1, "x")])

    def test_discrete(self):
        """ discrete """

        config = TinConfig()
        config.data_class.kind = DISCRETE

        timeline = replay(metro(), config)

        self.assertEqual(timeline.content_at("C", 11).buffer, 190)
        self.assertEqual(len(timeline.content_at("D", 11).entities), 260)
        self.assertEqual(timeline.audit(), [])

        with self.assertRaises(EntityTransferError):
            replay(
                [
                    Interaction("A", "B", 1, 1, entities=["p"]),
                    Interaction("A", "C", 2, 1, entities=["p"]),
                ],
                TinConfig.from_dict(config.to_dict()),
            )
