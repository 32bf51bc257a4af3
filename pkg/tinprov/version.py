# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.

"""
Version information for this tinprov distribution.

This file is autogenerated by the tinprov setup.py script.
"""

#: The full version of the package, including a development suffix
#: for unreleased versions of the package.
version = "1.0.0.dev0"

#: The Git revision from which this release was made.
git_revision = "unknown"

#: Flag whether this is a final release
is_released = False
