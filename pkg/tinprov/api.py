# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.

"""
Primary API for tinprov

Interfaces
----------

- :class:`~.IProvenanceIndex`

Model
-----
- :class:`~.Interaction`
- :class:`~.EpochMarker`
- :class:`~.TinConfig`
- :class:`~.DataClass`
- :class:`~.AttributionPolicy`
- :class:`~.BoundaryPolicy`
- :class:`~.TinPreferences`
- :func:`~.load_config`
- :func:`~.parse_interaction`
- :func:`~.parse_record`
- :func:`~.serialize_interaction`
- :func:`~.read_log`
- :func:`~.write_log`
- :class:`~.LogValidator`
- :class:`~.ValidationReport`
- :class:`~.Violation`
- :func:`~.validate_log`

States and the index
--------------------
- :class:`~.ProvenanceEntry`
- :class:`~.Content`
- :class:`~.VertexState`
- :class:`~.Arrival`
- :class:`~.Departure`
- :class:`~.StateEngine`
- :class:`~.StateTransition`
- :class:`~.ConservationAudit`
- :class:`~.TemporalProvenanceIndex`
- :func:`~.attribute_outflow`
- :func:`~.mint_birth`
- :func:`~.compression_ratio`
- :func:`~.dump_snapshot`
- :func:`~.save_snapshot`
- :func:`~.read_snapshot`
- :func:`~.load_snapshot`

Queries
-------
- :class:`~.ProvenanceQuery`
- :class:`~.LineageTracer`
- :class:`~.ProvenanceAnswer`
- :class:`~.ForwardAnswer`
- :class:`~.Delivery`
- :class:`~.ProvenanceDelta`

Exceptions
----------
- :class:`~.TinProvError`
- :class:`~.InteractionParseError`
- :class:`~.TimeRegressionError`
- :class:`~.EntityTransferError`
- :class:`~.NonMonotoneInsertionError`
- :class:`~.SnapshotLoadError`
- :class:`~.ZeroStatesError`
- :class:`~.RangeOrderError`

"""

from .i_provenance_index import IProvenanceIndex

from .attribution import attribute_outflow, mint_birth
from .compression import compression_ratio
from .entity_transfer_error import EntityTransferError
from .interaction import EpochMarker, Interaction
from .interaction_parse_error import InteractionParseError
from .interaction_parser import (
    CSV,
    JSONL,
    parse_interaction,
    parse_record,
    read_log,
    serialize_interaction,
    write_log,
)
from .lineage_tracer import LineageTracer
from .log_validator import (
    LogValidator,
    ValidationReport,
    Violation,
    validate_log,
)
from .non_monotone_insertion_error import NonMonotoneInsertionError
from .provenance_entry import ProvenanceEntry
from .provenance_index import TemporalProvenanceIndex
from .provenance_query import ProvenanceQuery
from .query_answers import (
    Delivery,
    ForwardAnswer,
    ProvenanceAnswer,
    ProvenanceDelta,
)
from .range_order_error import RangeOrderError
from .snapshot import (
    dump_snapshot,
    load_snapshot,
    read_snapshot,
    save_snapshot,
)
from .snapshot_load_error import SnapshotLoadError
from .state_engine import ConservationAudit, StateEngine, StateTransition
from .time_regression_error import TimeRegressionError
from .tin_config import (
    AttributionPolicy,
    BoundaryPolicy,
    DataClass,
    TinConfig,
)
from .tin_preferences import TinPreferences, load_config
from .tinprov_error import TinProvError
from .vertex_state import Arrival, Content, Departure, VertexState
from .zero_states_error import ZeroStatesError
