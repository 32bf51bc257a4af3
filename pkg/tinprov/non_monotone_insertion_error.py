# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" The exception raised for an out-of-order state insertion. """


# Local imports.
from .tinprov_error import TinProvError


class NonMonotoneInsertionError(TinProvError):
    """ Raised when a state does not start after the open state. """
