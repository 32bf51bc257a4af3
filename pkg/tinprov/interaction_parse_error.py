# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" The exception raised when a log record cannot be parsed. """


# Local imports.
from .tinprov_error import TinProvError


class InteractionParseError(TinProvError):
    """ The exception raised when a log record cannot be parsed.

    'field' names the offending field (None when the record as a whole is
    malformed) and 'line_number' is the record's 1-based position in its
    file, when known.

    """

    def __init__(self, message, field=None, line_number=None):
        """ Constructor. """

        super().__init__(message)

        self.field = field
        self.line_number = line_number

    def __str__(self):
        message = super().__str__()
        if self.line_number is not None:
            message = "line %d: %s" % (self.line_number, message)

        return message
