# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Validation of interaction logs. """


# Standard library imports.
import logging

# Enthought library imports.
from traits.api import Any, Bool, Dict, HasStrictTraits, Int, List

# Local imports.
from .interaction import Interaction


# Logging.
logger = logging.getLogger(__name__)

#: Violation kinds.
OUT_OF_ORDER = "out-of-order timestamp"
DUPLICATE_BIRTH = "duplicate entity birth"
NOT_AT_SOURCE = "entity not at source"
ALREADY_AT_DESTINATION = "entity already at destination"


class Violation:
    """ One rule broken by one log record. """

    __slots__ = ("line_number", "seq", "kind", "message")

    def __init__(self, line_number, seq, kind, message):
        self.line_number = line_number
        self.seq = seq
        self.kind = kind
        self.message = message

    def __eq__(self, other):
        if not isinstance(other, Violation):
            return NotImplemented

        return (self.line_number, self.seq, self.kind, self.message) == (
            other.line_number,
            other.seq,
            other.kind,
            other.message,
        )

    def __hash__(self):
        return hash((self.line_number, self.seq, self.kind, self.message))

    def __repr__(self):
        return "Violation(%s, %s, %r)" % (
            self.line_number,
            self.seq,
            self.kind,
        )

    def __str__(self):
        where = (
            "line %d" % self.line_number
            if self.line_number is not None
            else "record %s" % self.seq
        )
        return "%s: %s: %s" % (where, self.kind, self.message)


class ValidationReport(HasStrictTraits):
    """ The violations found in a log. """

    #: The violations in log order.
    violations = List(Violation)

    #: The number of records checked.
    record_count = Int(0)

    @property
    def ok(self):
        """ Did the log pass? """

        return not self.violations

    def kinds(self):
        """ Return the violation kinds, in log order. """

        return [violation.kind for violation in self.violations]

    def to_lines(self):
        """ Return the report as text lines. """

        return [str(violation) for violation in self.violations]

    def __len__(self):
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)


class LogValidator(HasStrictTraits):
    """ Checks log records one at a time.

    Records at equal timestamps are legal and keep their log order.

    """

    #### 'LogValidator' interface #############################################

    #: Check entity movements (discrete data)?
    discrete = Bool(False)

    #: The report being built.
    report = Any

    #### Private interface ####################################################

    # The latest timestamp seen.
    _last_t = Any

    # entity -> the set of vertices currently holding it.
    _holders = Dict

    # entity -> every vertex that ever held it.
    _history = Dict

    def _report_default(self):
        """ Trait initializer. """

        return ValidationReport()

    ###########################################################################
    # 'LogValidator' interface.
    ###########################################################################

    def check(self, item):
        """ Check one record (an interaction or an epoch marker). """

        seq = item.seq if item.seq is not None else self.report.record_count
        self.report.record_count += 1

        if self._last_t is not None and item.t < self._last_t:
            self._add(
                item,
                seq,
                OUT_OF_ORDER,
                "t=%s follows t=%s" % (item.t, self._last_t),
            )
        else:
            self._last_t = item.t

        if (
            self.discrete
            and isinstance(item, Interaction)
            and item.entities is not None
        ):
            self._check_entities(item, seq)

        return self.report

    ###########################################################################
    # Private interface.
    ###########################################################################

    def _add(self, item, seq, kind, message):
        """ Record a violation. """

        self.report.violations.append(
            Violation(item.line_number, seq, kind, message)
        )

    def _check_entities(self, r, seq):
        """ Check the entity movements of a discrete interaction. """

        seen = set()
        for entity in r.entities:
            if entity in seen:
                self._add(
                    r,
                    seq,
                    DUPLICATE_BIRTH,
                    "entity %r is listed twice" % entity,
                )
                continue

            seen.add(entity)

            holders = self._holders.get(entity)
            if holders is None:
                # Born at the sender.
                holders = self._holders[entity] = {r.src}
                self._history[entity] = {r.src}

            elif r.src not in holders:
                if r.src in self._history[entity]:
                    kind = NOT_AT_SOURCE
                    message = "entity %r has left %s" % (entity, r.src)
                else:
                    kind = DUPLICATE_BIRTH
                    message = "entity %r already exists at %s" % (
                        entity,
                        ", ".join(sorted(holders)),
                    )

                self._add(r, seq, kind, message)
                continue

            if r.dst in holders:
                self._add(
                    r,
                    seq,
                    ALREADY_AT_DESTINATION,
                    "entity %r is already at %s" % (entity, r.dst),
                )
                continue

            if not r.replicate:
                holders.discard(r.src)
            holders.add(r.dst)
            self._history[entity].add(r.dst)


def validate_log(log, discrete=False):
    """ Return a 'ValidationReport' for a sequence of log records.

    Never raises: every problem becomes a 'Violation'.

    """

    validator = LogValidator(discrete=discrete)
    for item in log:
        validator.check(item)

    report = validator.report
    logger.debug(
        "validated %d records, %d violations",
        report.record_count,
        len(report.violations),
    )

    return report
