# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Tests for loading the configuration from preferences. """

# Standard library imports.
import unittest

# Enthought library imports.
from apptools.preferences.api import Preferences

# Local imports.
from tinprov.tin_preferences import (
    default_preferences,
    load_config,
    TOLERANCE_ENVIRONMENT_VARIABLE,
)


class TinPreferencesTestCase(unittest.TestCase):
    """ Tests for loading the configuration from preferences. """

    ###########################################################################
    # 'TestCase' interface.
    ###########################################################################

    def setUp(self):
        """ Prepares the test fixture before each test method is called. """

        self.preferences = Preferences()
        self.preferences.set("tinprov.attribution", "fifo")
        self.preferences.set("tinprov.boundary", "bucket")
        self.preferences.set("tinprov.bucket_delta", "0.5")

    ###########################################################################
    # Tests.
    ###########################################################################

    def test_bundled_defaults(self):
        """ bundled defaults """

        preferences = default_preferences()
        self.assertEqual(preferences.get("tinprov.boundary"), "phase")

        config = load_config(environ={})
        self.assertEqual(config.data_class.kind, "liquid")
        self.assertEqual(config.attribution.kind, "proportional")
        self.assertEqual(config.boundary.kind, "phase")
        self.assertEqual(config.arithmetic, "exact")
        self.assertEqual(config.float_tolerance, 1e-9)

    def test_preferences_are_used(self):
        """ preferences are used """

        config = load_config(preferences=self.preferences, environ={})

        self.assertEqual(config.attribution.kind, "fifo")
        self.assertEqual(config.boundary.kind, "bucket")
        self.assertEqual(config.boundary.delta, 0.5)

    def test_environment_overrides_preferences(self):
        """ environment overrides preferences """

        config = load_config(
            preferences=self.preferences,
            environ={TOLERANCE_ENVIRONMENT_VARIABLE: "1e-6"},
        )

        self.assertEqual(config.float_tolerance, 1e-6)

    def test_bad_environment_value(self):
        """ bad environment value """

        with self.assertRaises(ValueError):
            load_config(environ={TOLERANCE_ENVIRONMENT_VARIABLE: "tiny"})

    def test_arguments_override_everything(self):
        """ arguments override everything """

        config = load_config(
            attribution="lifo",
            boundary="per-interaction",
            tolerance=0.001,
            arithmetic="float",
            preferences=self.preferences,
            environ={TOLERANCE_ENVIRONMENT_VARIABLE: "1e-6"},
        )

        self.assertEqual(config.attribution.kind, "lifo")
        self.assertEqual(config.boundary.kind, "per-interaction")
        self.assertEqual(config.float_tolerance, 0.001)
        self.assertEqual(config.arithmetic, "float")
