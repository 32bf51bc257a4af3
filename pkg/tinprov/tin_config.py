# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Configuration of a temporal interaction network. """


# Standard library imports.
import math

# Enthought library imports.
from traits.api import (
    Bool,
    Enum,
    HasStrictTraits,
    Instance,
    Range,
    TraitError,
)

# Local imports.
from .quantity import EXACT, FLOAT, to_number, to_rational


#: Data classes.
LIQUID = "liquid"
DISCRETE = "discrete"

#: Attribution policies.
PROPORTIONAL = "proportional"
FIFO = "fifo"
LIFO = "lifo"

#: Boundary policies.
PHASE_CHANGE = "phase"
PER_INTERACTION = "per-interaction"
TIME_BUCKET = "bucket"


class Freezable(HasStrictTraits):
    """ A traits object whose public traits can be frozen. """

    #### Private interface ####################################################

    # Set once ingestion begins; public assignments raise afterwards.
    _frozen = Bool(False)

    ###########################################################################
    # 'object' interface.
    ###########################################################################

    def __setattr__(self, name, value):
        if self._frozen and not name.startswith("_"):
            raise TraitError(
                "%s is immutable once ingestion begins (tried to set %r)"
                % (type(self).__name__, name)
            )

        super().__setattr__(name, value)

    ###########################################################################
    # 'Freezable' interface.
    ###########################################################################

    def freeze(self):
        """ Make the public traits read-only. """

        self._frozen = True

    @property
    def frozen(self):
        """ Has the object been frozen? """

        return self._frozen


class DataClass(Freezable):
    """ Whether transferred units keep their identity. """

    #: 'discrete' units are identifiable entities (passengers, vehicles),
    #: 'liquid' quantities merge and split (money, event counts).
    kind = Enum(LIQUID, DISCRETE)

    @property
    def is_discrete(self):
        """ Is this the discrete data class? """

        return self.kind == DISCRETE

    def __str__(self):
        return self.kind


class AttributionPolicy(Freezable):
    """ Which provenance entries a liquid outflow consumes. """

    #: 'proportional' takes from every entry in proportion to its share,
    #: 'fifo' takes the oldest entries first and 'lifo' the newest.
    kind = Enum(PROPORTIONAL, FIFO, LIFO)

    def __str__(self):
        return self.kind


class BoundaryPolicy(Freezable):
    """ When a vertex's current state is closed and a new one opened. """

    #: 'phase' opens states at phase transitions only, 'per-interaction'
    #: at every new event timestamp and 'bucket' additionally whenever an
    #: event falls into a later multiple of 'delta'.
    kind = Enum(PHASE_CHANGE, PER_INTERACTION, TIME_BUCKET)

    #: The bucket width for the 'bucket' policy.
    delta = Range(low=0.0, value=1.0, exclude_low=True)

    def bucket_of(self, t):
        """ Return the index of the time bucket containing 't'. """

        return math.floor(to_rational(t) / to_rational(self.delta))

    def bucket_starts(self, t1, t2):
        """ Return the multiples of 'delta' strictly between 't1' and 't2'.

        They are floats when 't2' is.

        """

        delta = to_rational(self.delta)
        end = to_rational(t2)

        starts = []
        for k in range(self.bucket_of(t1) + 1, self.bucket_of(t2) + 1):
            start = k * delta
            if start < end:
                starts.append(float(start) if isinstance(t2, float) else start)

        return starts

    def __str__(self):
        if self.kind == TIME_BUCKET:
            return "%s(%s)" % (self.kind, self.delta)

        return self.kind


class TinConfig(Freezable):
    """ The configuration of a temporal interaction network.

    The configuration is frozen by the state engine as soon as the first
    interaction is applied.

    """

    #### 'TinConfig' interface ################################################

    #: The data class all interactions conform to.
    data_class = Instance(DataClass, factory=DataClass)

    #: The attribution policy for liquid outflows.
    attribution = Instance(AttributionPolicy, factory=AttributionPolicy)

    #: The state boundary policy.
    boundary = Instance(BoundaryPolicy, factory=BoundaryPolicy)

    #: Provenance entries at or below this quantity are dropped, and sum
    #: invariants are checked within it.
    float_tolerance = Range(low=0.0, value=1e-9)

    #: 'exact' keeps quantities as rationals, 'float' as binary floats.
    arithmetic = Enum(EXACT, FLOAT)

    ###########################################################################
    # 'Freezable' interface.
    ###########################################################################

    def freeze(self):
        """ Make the configuration (and its policies) read-only. """

        self.data_class.freeze()
        self.attribution.freeze()
        self.boundary.freeze()
        super().freeze()

    ###########################################################################
    # 'TinConfig' interface.
    ###########################################################################

    @property
    def is_discrete(self):
        """ Is this a discrete-data TIN? """

        return self.data_class.is_discrete

    @property
    def tolerance(self):
        """ The tolerance in the configured number type. """

        return self.number(repr(self.float_tolerance))

    def number(self, value):
        """ Convert a number (or its text) to the configured number type. """

        return to_number(value, self.arithmetic)

    def to_dict(self):
        """ Return a JSON-friendly dictionary. """

        return {
            "data_class": self.data_class.kind,
            "attribution": self.attribution.kind,
            "boundary": self.boundary.kind,
            "delta": self.boundary.delta,
            "float_tolerance": self.float_tolerance,
            "arithmetic": self.arithmetic,
        }

    @classmethod
    def from_dict(cls, data):
        """ Create a configuration from the output of 'to_dict'. """

        return cls(
            data_class=DataClass(kind=data.get("data_class", LIQUID)),
            attribution=AttributionPolicy(
                kind=data.get("attribution", PROPORTIONAL)
            ),
            boundary=BoundaryPolicy(
                kind=data.get("boundary", PHASE_CHANGE),
                delta=float(data.get("delta", 1.0)),
            ),
            float_tolerance=float(data.get("float_tolerance", 1e-9)),
            arithmetic=data.get("arithmetic", EXACT),
        )

    def __str__(self):
        return "TinConfig(%s, %s, %s, tolerance=%r, %s)" % (
            self.data_class,
            self.attribution,
            self.boundary,
            self.float_tolerance,
            self.arithmetic,
        )

