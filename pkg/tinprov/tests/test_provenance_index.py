# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Tests for the temporal provenance index. """

# Standard library imports.
import unittest
from fractions import Fraction

# Local imports.
from tinprov.cli.workloads import flink_fig1, flink_fig1_expanded
from tinprov.compression import compression_ratio
from tinprov.i_provenance_index import IProvenanceIndex
from tinprov.interaction import Interaction
from tinprov.non_monotone_insertion_error import NonMonotoneInsertionError
from tinprov.provenance_index import TemporalProvenanceIndex
from tinprov.range_order_error import RangeOrderError
from tinprov.state_engine import StateEngine
from tinprov.vertex_state import Content, PRE, VertexState
from tinprov.zero_states_error import ZeroStatesError


class ProvenanceIndexTestCase(unittest.TestCase):
    """ Tests for the temporal provenance index. """

    ###########################################################################
    # 'TestCase' interface.
    ###########################################################################

    def setUp(self):
        """ Prepares the test fixture before each test method is called. """

        engine = StateEngine()
        engine.ingest(flink_fig1())

        self.index = engine.index

    ###########################################################################
    # Tests.
    ###########################################################################

    def test_provides_interface(self):
        """ provides interface """

        self.assertIsInstance(self.index, IProvenanceIndex)

    def test_state_at_flanks(self):
        """ state at flanks """

        index = self.index

        self.assertEqual(index.state_at("S2", 2).buffer, 1125)
        self.assertEqual(index.state_at("S2", 2, PRE).buffer, 2500)
        self.assertEqual(index.state_at("S2", Fraction(3, 2)).buffer, 2500)
        self.assertEqual(index.state_at("S2", 100).buffer, 1125)

        self.assertIsNone(index.state_at("S2", 1, PRE))
        self.assertIsNone(index.state_at("S2", 0))
        self.assertIsNone(index.state_at("nowhere", 2))

        with self.assertRaises(ValueError):
            index.state_at("S2", 2, "during")

    def test_states_are_contiguous(self):
        """ states are contiguous """

        for v in self.index.vertices():
            states = self.index.states(v)
            for state, following in zip(states, states[1:]):
                self.assertEqual(state.t_end, following.t_start)
                self.assertFalse(state.is_open)
            self.assertTrue(states[-1].is_open)

    def test_states_in(self):
        """ states in """

        index = self.index

        self.assertEqual(
            [state.t_start for state in index.states_in("M1", 2, 3)], [2, 3]
        )
        self.assertEqual(
            [state.t_start for state in index.states_in("M1", 0, 10)],
            [1, 2, 3],
        )
        self.assertEqual(index.states_in("nowhere", 0, 10), [])

        with self.assertRaises(RangeOrderError):
            index.states_in("M1", 3, 2)

    def test_ledgers(self):
        """ ledgers """

        index = self.index

        self.assertEqual(
            [(row.sender, row.q) for row in index.arrivals_in("W1", 3, 3)],
            [("M1", 450), ("M2", 775), ("M3", 775)],
        )
        self.assertEqual(index.arrivals_in("W1", 4, 10), [])
        self.assertEqual(
            [(row.receiver, row.q) for row in index.departures_in("S2")],
            [("M2", 600), ("M3", 775)],
        )
        self.assertEqual(index.departures_at("S2", 2, "M1"), [])

    def test_one_ledger_row_per_interaction(self):
        """ one ledger row per interaction """

        engine = StateEngine()
        engine.ingest(
            [
                Interaction("K", "A", 1, 10),
                Interaction("A", "B", 2, 4),
                Interaction("A", "B", 2, 6),
            ]
        )
        index = engine.index

        first, second = index.departures_at("A", 2, "B")
        self.assertEqual((first.q, first.seq), (4, 1))
        self.assertEqual((second.q, second.seq), (6, 2))
        self.assertIs(index.departure("A", 2, 2), second)
        self.assertIsNone(index.departure("A", 2, 7))
        self.assertIsNone(index.departure("nowhere", 2, 0))

        self.assertEqual(first.feeds, {("K", 1): {0: 4}})
        self.assertEqual(second.feeds, {("K", 1): {0: 6}})
        self.assertEqual(
            index.provenance_at("B", 2).feeds, {("A", 2): {1: 4, 2: 6}}
        )
        self.assertEqual(
            index.provenance_at("A", 2, PRE).feeds, {("K", 1): {0: 10}}
        )
        self.assertEqual(
            [row.seq for row in index.arrivals_in("B", 2, 2)], [1, 2]
        )

    def test_provenance_at_inside_a_state(self):
        """ provenance at inside a state """

        engine = StateEngine()
        engine.ingest(flink_fig1_expanded())
        index = engine.index

        self.assertEqual(index.provenance_at("W1", 3, PRE).buffer, 0)
        self.assertEqual(index.provenance_at("W1", 3).buffer, 3)
        self.assertEqual(
            index.provenance_at("W1", 3 + Fraction(500, 2000)).buffer, 503
        )
        self.assertEqual(
            index.provenance_at("W1", Fraction(7, 2)).buffer, 1003
        )
        self.assertEqual(
            index.provenance_at("W1", Fraction(7999, 2000)).buffer, 2000
        )
        self.assertEqual(index.provenance_at("W1", 4).buffer, 0)
        self.assertIsNone(index.provenance_at("W1", 0))

        # M2 and M3 tie for the first interleaved slot; M2 sorts first.
        content = index.provenance_at("W1", 3 + Fraction(1, 2000))
        self.assertEqual(content.buffer, 4)
        self.assertEqual(
            sorted(content.prov),
            [
                ("M1", 3),
                ("M2", 3),
                ("M2", 3 + Fraction(1, 2000)),
                ("M3", 3),
            ],
        )

    def test_close_and_append_is_monotone(self):
        """ close and append is monotone """

        index = TemporalProvenanceIndex()
        index.close_and_append("V", VertexState("V", 2, Content()))

        with self.assertRaises(NonMonotoneInsertionError):
            index.close_and_append("V", VertexState("V", 2, Content()))
        with self.assertRaises(NonMonotoneInsertionError):
            index.close_and_append("V", VertexState("V", 1, Content()))

        index.close_and_append("V", VertexState("V", 3, Content()))
        self.assertEqual(index.states("V")[0].t_end, 3)

    def test_stats(self):
        """ stats """

        stats = self.index.stats()

        self.assertEqual(stats["raw_count"], 10)
        self.assertEqual(stats["state_count"], 21)
        self.assertAlmostEqual(stats["ratio"], 10 / 21)
        self.assertEqual(stats["vertices"]["W1"], {"states": 3, "events": 4})
        self.assertEqual(self.index.covered_range(), (1, 4))

    def test_empty_index(self):
        """ empty index """

        index = TemporalProvenanceIndex()

        self.assertEqual(index.vertices(), [])
        self.assertIsNone(index.covered_range())
        self.assertIsNone(index.stats()["ratio"])
        with self.assertRaises(ZeroStatesError):
            compression_ratio(0, 0)
