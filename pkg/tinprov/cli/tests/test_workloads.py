# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Tests for the synthetic workloads. """

# Standard library imports.
import unittest
from collections import Counter

# Local imports.
from tinprov.cli.workloads import (
    ALTERNATING,
    FINANCIAL_RANDOM,
    FLINK_FIG1_EXPANDED,
    METRO,
    WINDOWED,
    WorkloadSpec,
    alternating,
    financial_random,
    flink_fig1,
    flink_fig1_expanded,
    metro,
    windowed,
)
from tinprov.interaction import EpochMarker
from tinprov.log_validator import validate_log
from tinprov.state_engine import StateEngine


class WorkloadsTestCase(unittest.TestCase):
    """ Tests for the synthetic workloads. """

    def test_pipeline(self):
        """ pipeline """

        items = flink_fig1()

        self.assertEqual(len(items), 10)
        self.assertEqual(sum(r.q for r in items if r.dst == "W1"), 2000)
        self.assertTrue(validate_log(items).ok)

    def test_expanded_pipeline(self):
        """ expanded pipeline """

        items = flink_fig1_expanded()
        into_window = [r for r in items if r.dst == "W1"]

        self.assertEqual(len(items), 2007)
        self.assertEqual(len(into_window), 2000)
        self.assertTrue(all(3 <= r.t < 4 for r in into_window))
        self.assertEqual(
            len({r.t for r in into_window if r.t > 3}), 1997
        )

        totals = Counter()
        for r in into_window:
            totals[r.src] += r.q
        self.assertEqual(totals, {"M1": 450, "M2": 775, "M3": 775})
        self.assertTrue(validate_log(items).ok)

    def test_metro(self):
        """ metro """

        items = metro()
        entities = [e for r in items if r.src == "A" for e in r.entities]

        self.assertEqual(len(items), 9)
        self.assertEqual(len(set(entities)), 450)
        self.assertTrue(all(len(r.entities) == r.q for r in items))
        self.assertTrue(validate_log(items, discrete=True).ok)

    def test_financial_random(self):
        """ financial random """

        items = financial_random(42, 10, 200)

        self.assertEqual(items, financial_random(42, 10, 200))
        self.assertNotEqual(items, financial_random(43, 10, 200))
        self.assertEqual(len(items), 200)
        self.assertTrue(all(a.t < b.t for a, b in zip(items, items[1:])))
        self.assertTrue(all(0 < r.q <= 1000 for r in items))
        self.assertLessEqual(
            len({r.src for r in items} | {r.dst for r in items}), 10
        )

    def test_windowed(self):
        """ windowed """

        items = windowed(3, 10)
        markers = [item for item in items if isinstance(item, EpochMarker)]

        self.assertEqual(len(markers), 3)
        self.assertEqual(len(items), 3 * (10 + 2))
        self.assertTrue(validate_log(items).ok)

        engine = StateEngine()
        engine.ingest(items)
        self.assertEqual(engine.index.state_count("W"), 6)

    def test_alternating(self):
        """ alternating """

        engine = StateEngine()
        engine.ingest(alternating(10))

        self.assertEqual(engine.index.state_count("X"), 10)
        self.assertEqual(engine.index.state_count(), 13)

    def test_workload_spec(self):
        """ workload spec """

        items = WorkloadSpec(kind=METRO).generate()
        self.assertEqual([item.seq for item in items], list(range(9)))
        self.assertTrue(WorkloadSpec(kind=METRO).is_discrete)
        self.assertEqual(
            len(WorkloadSpec(kind=FLINK_FIG1_EXPANDED).generate()), 2007
        )
        self.assertEqual(
            len(WorkloadSpec(kind=ALTERNATING, count=4).generate()), 4
        )

        spec = WorkloadSpec(
            kind=FINANCIAL_RANDOM,
            seed=1,
            vertices=3,
            interactions=5,
            min_amount="0.5",
            max_amount="2",
        )
        self.assertTrue(all(0 < r.q <= 2 for r in spec.generate()))

    def test_bad_specs(self):
        """ bad specs """

        bad = [
            WorkloadSpec(kind=FINANCIAL_RANDOM, vertices=1),
            WorkloadSpec(kind=FINANCIAL_RANDOM, min_amount="0"),
            WorkloadSpec(
                kind=FINANCIAL_RANDOM, min_amount="5", max_amount="1"
            ),
            WorkloadSpec(kind=WINDOWED, windows=0),
            WorkloadSpec(kind=ALTERNATING, count=-1),
        ]
        for spec in bad:
            with self.assertRaises(ValueError):
                spec.generate()
