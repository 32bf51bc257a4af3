# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Conversions between numeric text and the engine's number types.

Quantities and timestamps are held either as exact rationals
(``fractions.Fraction``) or as floats, depending on the configured
arithmetic. Text is always the source of truth: a record's ``"q": 0.1`` is
read from its decimal text, never through a binary float first.

"""

# Standard library imports.
from decimal import Decimal, ROUND_HALF_EVEN, localcontext
from fractions import Fraction


#: Arithmetic modes.
EXACT = "exact"
FLOAT = "float"

#: Number of fractional digits used when rendering query results.
RESULT_PLACES = 12


def to_rational(value):
    """ Convert a number (or its text) to an exact ``Fraction``.

    Raises ``ValueError`` for anything that is not a finite real number,
    including booleans.

    """

    if isinstance(value, bool):
        raise ValueError("not a number: %r" % (value,))

    if isinstance(value, Fraction):
        return value

    if isinstance(value, int):
        return Fraction(value)

    if isinstance(value, Decimal):
        if not value.is_finite():
            raise ValueError("not a finite number: %r" % (value,))
        return Fraction(value)

    if isinstance(value, float):
        # 'repr' gives the shortest text that round-trips, which is what
        # the record author wrote in the common case.
        text = repr(value)

    elif isinstance(value, str):
        text = value.strip()

    else:
        raise ValueError("not a number: %r" % (value,))

    try:
        return Fraction(text)

    except (ValueError, ZeroDivisionError):
        raise ValueError("not a finite number: %r" % (value,))


def to_number(value, arithmetic=EXACT):
    """ Convert a number (or its text) to the engine's number type. """

    rational = to_rational(value)
    if arithmetic == FLOAT:
        return float(rational)

    return rational


def _has_terminating_decimal(rational):
    """ Does the rational have a finite decimal expansion? """

    denominator = rational.denominator
    for prime in (2, 5):
        while denominator % prime == 0:
            denominator //= prime

    return denominator == 1


def _decimal_text(rational, digits):
    """ Render a rational as plain decimal text with enough precision. """

    with localcontext() as context:
        context.prec = len(str(abs(rational.numerator))) + digits + 10
        value = Decimal(rational.numerator) / Decimal(rational.denominator)

    text = format(value.normalize(), "f")
    if text in ("-0", "0"):
        text = "0"

    return text


def format_quantity(value):
    """ Render a number as text that parses back to exactly the same value.

    Floats use their shortest round-trip form, rationals with a finite
    decimal expansion use plain decimal text and all other rationals use
    ``"p/q"``.

    """

    if isinstance(value, float):
        if value.is_integer():
            return str(int(value))
        return repr(value)

    rational = to_rational(value)
    if rational.denominator == 1:
        return str(rational.numerator)

    if _has_terminating_decimal(rational):
        # A denominator of 2**a * 5**b needs at most max(a, b) digits.
        return _decimal_text(rational, rational.denominator.bit_length())

    return "%d/%d" % (rational.numerator, rational.denominator)


def format_decimal(value, places=RESULT_PLACES):
    """ Render a number as decimal text rounded to 'places' digits. """

    if isinstance(value, float):
        rational = Fraction(value)
    else:
        rational = to_rational(value)

    with localcontext() as context:
        context.prec = len(str(abs(rational.numerator))) + places + 30
        exact = Decimal(rational.numerator) / Decimal(rational.denominator)
        rounded = exact.quantize(
            Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN
        )

    text = format(rounded.normalize(), "f")
    if text in ("-0", "0"):
        text = "0"

    return text


def json_time(value):
    """ Return a JSON-friendly form of a timestamp.

    Integral timestamps become ints, timestamps whose float repr parses
    back exactly become floats, everything else becomes exact text.

    """

    if isinstance(value, float):
        return int(value) if value.is_integer() else value

    rational = to_rational(value)
    if rational.denominator == 1:
        return rational.numerator

    approximation = float(rational)
    if Fraction(repr(approximation)) == rational:
        return approximation

    return format_quantity(rational)
