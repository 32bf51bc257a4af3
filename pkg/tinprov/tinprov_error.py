# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" The base class of all errors raised by tinprov. """


class TinProvError(Exception):
    """ The base class of all errors raised by tinprov. """
