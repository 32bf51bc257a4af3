# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" The exception raised when a snapshot cannot be loaded. """


# Local imports.
from .tinprov_error import TinProvError


class SnapshotLoadError(TinProvError):
    """ The exception raised when a snapshot is corrupt, truncated or has an
    unsupported version.
    """
