# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Default configuration read from the preferences layer. """


# Standard library imports.
import logging
import os

# Enthought library imports.
from apptools.preferences.api import Preferences, PreferencesHelper
from traits.api import Enum, Range

# Local imports.
from .quantity import EXACT, FLOAT
from .tin_config import (
    AttributionPolicy,
    BoundaryPolicy,
    DataClass,
    DISCRETE,
    FIFO,
    LIFO,
    LIQUID,
    PER_INTERACTION,
    PHASE_CHANGE,
    PROPORTIONAL,
    TIME_BUCKET,
    TinConfig,
)


# Logging.
logger = logging.getLogger(__name__)

#: The preferences file bundled with the package.
DEFAULT_PREFERENCES_FILE = os.path.join(
    os.path.dirname(__file__), "preferences.ini"
)

#: The environment variable that overrides the float tolerance.
TOLERANCE_ENVIRONMENT_VARIABLE = "TINPROV_TOLERANCE"


class TinPreferences(PreferencesHelper):
    """ Helper for the tinprov preferences. """

    #### 'PreferencesHelper' interface ########################################

    # The path to the preferences node that contains the preferences.
    preferences_path = "tinprov"

    #### Preferences ##########################################################

    # The data class of newly created networks.
    data_class = Enum(LIQUID, DISCRETE, is_str=True)

    # The attribution policy for liquid outflows.
    attribution = Enum(PROPORTIONAL, FIFO, LIFO, is_str=True)

    # The state boundary policy.
    boundary = Enum(PHASE_CHANGE, PER_INTERACTION, TIME_BUCKET, is_str=True)

    # The bucket width used by the 'bucket' boundary policy.
    bucket_delta = Range(low=0.0, value=1.0, exclude_low=True)

    # The dust threshold and invariant tolerance.
    float_tolerance = Range(low=0.0, value=1e-9)

    # Exact rationals or binary floats.
    arithmetic = Enum(EXACT, FLOAT, is_str=True)


def default_preferences(filename=DEFAULT_PREFERENCES_FILE):
    """ Return a preferences node loaded from 'filename'. """

    preferences = Preferences()
    if os.path.exists(filename):
        logger.debug("loading preferences from %s", filename)
        preferences.load(filename)

    return preferences


def load_config(
    data_class=None,
    attribution=None,
    boundary=None,
    delta=None,
    tolerance=None,
    arithmetic=None,
    preferences=None,
    environ=None,
):
    """ Build a 'TinConfig' from preferences, environment and overrides.

    Later sources win: the preferences node (the bundled defaults unless
    one is given), then the 'TINPROV_TOLERANCE' environment variable, then
    the explicit keyword arguments that are not None.

    """

    if preferences is None:
        preferences = default_preferences()

    if environ is None:
        environ = os.environ

    helper = TinPreferences(preferences=preferences)

    float_tolerance = helper.float_tolerance
    override = environ.get(TOLERANCE_ENVIRONMENT_VARIABLE)
    if override:
        try:
            float_tolerance = float(override)

        except ValueError:
            raise ValueError(
                "%s must be a number, got %r"
                % (TOLERANCE_ENVIRONMENT_VARIABLE, override)
            )

        logger.debug("float tolerance %r taken from environment", override)

    if tolerance is not None:
        float_tolerance = float(tolerance)

    config = TinConfig(
        data_class=DataClass(
            kind=helper.data_class if data_class is None else data_class
        ),
        attribution=AttributionPolicy(
            kind=helper.attribution if attribution is None else attribution
        ),
        boundary=BoundaryPolicy(
            kind=helper.boundary if boundary is None else boundary,
            delta=helper.bucket_delta if delta is None else float(delta),
        ),
        float_tolerance=float_tolerance,
        arithmetic=helper.arithmetic if arithmetic is None else arithmetic,
    )

    logger.debug("loaded configuration %s", config)

    return config
