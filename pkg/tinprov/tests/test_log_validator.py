# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Tests for log validation. """

# Standard library imports.
import unittest

# Local imports.
from tinprov.interaction import EpochMarker, Interaction
from tinprov.log_validator import (
    ALREADY_AT_DESTINATION,
    DUPLICATE_BIRTH,
    NOT_AT_SOURCE,
    OUT_OF_ORDER,
    validate_log,
)


def numbered(items):
    """ Give items line numbers as if read from a file. """

    for line_number, item in enumerate(items, 1):
        item.seq = line_number - 1
        item.line_number = line_number

    return items


class LogValidatorTestCase(unittest.TestCase):
    """ Tests for log validation. """

    def test_valid_log(self):
        """ valid log """

        log = numbered(
            [
                Interaction("A", "B", 1, 5),
                Interaction("A", "C", 1, 5),
                EpochMarker("B", 2, "close"),
                Interaction("B", "C", 2, 1),
            ]
        )

        report = validate_log(log)

        self.assertTrue(report.ok)
        self.assertEqual(report.record_count, 4)
        self.assertEqual(len(report), 0)

    def test_out_of_order(self):
        """ out of order """

        log = numbered(
            [
                Interaction("A", "B", 2, 5),
                Interaction("B", "C", 1, 1),
                Interaction("B", "C", 3, 1),
            ]
        )

        report = validate_log(log)

        self.assertEqual(report.kinds(), [OUT_OF_ORDER])
        self.assertEqual(report.violations[0].line_number, 2)
        self.assertTrue(
            report.to_lines()[0].startswith("line 2: out-of-order timestamp")
        )

    def test_entity_movements(self):
        """ entity movements """

        log = numbered(
            [
                Interaction("A", "B", 1, 2, entities=["p1", "p2"]),
                Interaction("B", "C", 2, 1, entities=["p1"]),
                # p1 has already left B.
                Interaction("B", "D", 3, 1, entities=["p1"]),
                # p2 was born at A and is at B, not at E.
                Interaction("E", "D", 4, 1, entities=["p2"]),
                Interaction("B", "C", 5, 1, entities=["p2"], replicate=True),
                # p2 is already at B.
                Interaction("C", "B", 6, 1, entities=["p2"]),
                Interaction("A", "C", 7, 2, entities=["p3", "p3"]),
            ]
        )

        report = validate_log(log, discrete=True)

        self.assertEqual(
            report.kinds(),
            [
                NOT_AT_SOURCE,
                DUPLICATE_BIRTH,
                ALREADY_AT_DESTINATION,
                DUPLICATE_BIRTH,
            ],
        )
        self.assertEqual(
            [violation.line_number for violation in report], [3, 4, 6, 7]
        )

    def test_duplicate_in_one_record(self):
        """ duplicate in one record """

        log = numbered([Interaction("A", "B", 1, 2, entities=["p", "p"])])

        report = validate_log(log, discrete=True)

        self.assertEqual(report.kinds(), [DUPLICATE_BIRTH])

    def test_replicated_entities_stay_at_the_sender(self):
        """ replicated entities stay at the sender """

        log = numbered(
            [
                Interaction("A", "B", 1, 1, entities=["p"]),
                Interaction("B", "C", 2, 1, entities=["p"], replicate=True),
                Interaction("B", "D", 3, 1, entities=["p"]),
                Interaction("C", "E", 4, 1, entities=["p"]),
            ]
        )

        self.assertTrue(validate_log(log, discrete=True).ok)

    def test_entities_ignored_for_liquid_logs(self):
        """ entities ignored for liquid logs """

        log = numbered(
            [
                Interaction("A", "B", 1, 1, entities=["p"]),
                Interaction("C", "D", 2, 1, entities=["p"]),
            ]
        )

        self.assertTrue(validate_log(log).ok)
