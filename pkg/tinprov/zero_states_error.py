# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" The exception raised when a ratio over no states is asked for. """


# Local imports.
from .tinprov_error import TinProvError


class ZeroStatesError(TinProvError):
    """ Raised when a compression ratio is computed over zero states. """
