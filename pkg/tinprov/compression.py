# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Compression ratios. """


# Local imports.
from .zero_states_error import ZeroStatesError


def compression_ratio(raw_count, state_count):
    """ Return the number of raw interactions per stored state.

    Raises a 'ZeroStatesError' when there are no states.

    """

    if state_count < 1:
        raise ZeroStatesError(
            "cannot compute a compression ratio over %d states" % state_count
        )

    return raw_count / state_count
