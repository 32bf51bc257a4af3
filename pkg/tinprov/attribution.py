# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Attribution of liquid outflows to provenance entries. """


# Local imports.
from .provenance_entry import ProvenanceEntry
from .tin_config import FIFO, LIFO, PROPORTIONAL


def attribute_outflow(prov, buffer, out_q, policy=PROPORTIONAL, tolerance=0):
    """ Split a buffer's provenance between an outflow and what remains.

    'prov' is an iterable of 'ProvenanceEntry' summing to 'buffer' and
    'policy' an attribution policy (or its kind). Returns the pair
    '(consumed, remaining)' of entry lists where the consumed quantities
    sum to 'min(out_q, buffer)'. Remaining entries at or below
    'tolerance' are dropped. The caller mints any deficit.

    """

    kind = getattr(policy, "kind", policy)
    entries = list(prov)

    if buffer < 0 or out_q < 0:
        raise ValueError(
            "quantities must not be negative (buffer=%s, out_q=%s)"
            % (buffer, out_q)
        )

    if any(entry.q < 0 for entry in entries):
        raise ValueError("provenance quantities must not be negative")

    take = min(out_q, buffer)
    if take <= 0 or not entries:
        return [], _drop_dust(entries, tolerance)

    if take >= buffer:
        # The whole buffer leaves; every policy agrees.
        return [entry for entry in entries if entry.q > 0], []

    if kind == PROPORTIONAL:
        consumed = []
        remaining = []
        for entry in entries:
            part = take * entry.q / buffer
            if part > 0:
                consumed.append(entry.with_q(part))
            remaining.append(entry.with_q(entry.q - part))

    elif kind in (FIFO, LIFO):
        if kind == FIFO:
            order = sorted(entries, key=lambda e: (e.birth_t, e.origin))
        else:
            order = sorted(entries, key=lambda e: (-e.birth_t, e.origin))

        consumed = []
        remaining = []
        left = take
        for entry in order:
            part = min(left, entry.q)
            if part > 0:
                consumed.append(entry.with_q(part))
                left -= part
            remaining.append(entry.with_q(entry.q - part))

    else:
        raise ValueError("unknown attribution policy %r" % (kind,))

    return consumed, _drop_dust(remaining, tolerance)


def mint_birth(v, t, deficit):
    """ Return the entry minted at 'v' to cover an outflow's deficit.

    Returns None when there is no deficit.

    """

    if deficit <= 0:
        return None

    return ProvenanceEntry(v, t, deficit)


def _drop_dust(entries, tolerance):
    """ Drop entries at or below the tolerance. """

    return [entry for entry in entries if entry.q > tolerance]
