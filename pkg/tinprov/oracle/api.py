# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Oracle API.

- :class:`~.ReplayTimeline`
- :class:`~.ReplayedEvent`
- :class:`~.Snapshot`
- :func:`~.replay`
- :func:`~.oracle_q1`
- :func:`~.oracle_q2`
- :func:`~.oracle_q3`
- :func:`~.oracle_q4`
- :func:`~.oracle_q5`
- :func:`~.oracle_entity_path`
- :func:`~.oracle_count_entities_through`
- :func:`~.oracle_entity_backward`

"""

from .oracle_queries import (
    oracle_count_entities_through,
    oracle_entity_backward,
    oracle_entity_path,
    oracle_q1,
    oracle_q2,
    oracle_q3,
    oracle_q4,
    oracle_q5,
)
from .replay_timeline import ReplayedEvent, ReplayTimeline, Snapshot, replay
