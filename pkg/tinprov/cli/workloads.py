# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.
""" Synthetic interaction logs.

- 'flink_fig1': a stream pipeline where Kafka sources K1..K3 feed sources
  S1, S2, which feed maps M1..M3, which feed a window W1 that fires into
  a sink (10 aggregate interactions).
- 'flink_fig1_expanded': the same pipeline with the 2000 events into W1
  delivered one by one within [3, 4).
- 'metro': passengers travelling A -> B, then on to C or D (discrete).
- 'financial_random': random transfers between accounts, optionally in
  bursts sharing one timestamp.
- 'windowed': 'windows' windows of 'events' events each into a window
  vertex that fires into a sink at the end of every window.
- 'alternating': a vertex that receives and sends on alternate steps, the
  worst case for phase-based compression.

"""


# Standard library imports.
import logging
import random
from fractions import Fraction

# Enthought library imports.
from traits.api import Enum, HasStrictTraits, Int, Str

# Local imports.
from tinprov.interaction import EpochMarker, Interaction
from tinprov.quantity import to_rational


# Logging.
logger = logging.getLogger(__name__)

#: Workload kinds.
FLINK_FIG1 = "flink_fig1"
FLINK_FIG1_EXPANDED = "flink_fig1_expanded"
METRO = "metro"
FINANCIAL_RANDOM = "financial_random"
WINDOWED = "windowed"
ALTERNATING = "alternating"
KINDS = (
    FLINK_FIG1,
    FLINK_FIG1_EXPANDED,
    METRO,
    FINANCIAL_RANDOM,
    WINDOWED,
    ALTERNATING,
)

#: The aggregate pipeline: (src, dst, t, q).
FLINK_FIG1_INTERACTIONS = (
    ("K1", "S1", 1, 1500),
    ("K2", "S2", 1, 1200),
    ("K3", "S2", 1, 1300),
    ("S1", "M1", 2, 900),
    ("S2", "M2", 2, 600),
    ("S2", "M3", 2, 775),
    ("M1", "W1", 3, 450),
    ("M2", "W1", 3, 775),
    ("M3", "W1", 3, 775),
    ("W1", "Sink", 4, 2000),
)

#: Passenger batches on (A, B) and how they continue: (t, count) and
#: (t, count) per onward destination.
METRO_BATCHES = (
    (8, 150, ((Fraction("8.5"), "C", 60), (Fraction("8.75"), "D", 90))),
    (9, 180, ((Fraction("9.5"), "C", 80), (Fraction("9.75"), "D", 100))),
    (10, 120, ((Fraction("10.5"), "C", 50), (Fraction("10.75"), "D", 70))),
)


class WorkloadSpec(HasStrictTraits):
    """ Which workload to generate, and its parameters. """

    #: The workload kind.
    kind = Enum(*KINDS)

    #: financial_random: the random seed, number of accounts and
    #: interactions, and the range of amounts.
    seed = Int(0)
    vertices = Int(50)
    interactions = Int(10000)
    min_amount = Str("1")
    max_amount = Str("1000")

    #: financial_random: how many consecutive transfers share a timestamp.
    burst = Int(1)

    #: windowed: the number of windows and of events per window.
    windows = Int(10)
    events = Int(1000)

    #: alternating: the number of interactions.
    count = Int(1000)

    @property
    def is_discrete(self):
        """ Does the workload carry entities? """

        return self.kind == METRO

    def check(self):
        """ Raise a 'ValueError' if the parameters are unusable. """

        if self.kind == FINANCIAL_RANDOM:
            if self.vertices < 2:
                raise ValueError("financial_random needs at least 2 vertices")
            if self.interactions < 0:
                raise ValueError("interactions must not be negative")
            if self.burst < 1:
                raise ValueError("burst must be positive")

            low = to_rational(self.min_amount)
            high = to_rational(self.max_amount)
            if low <= 0 or high < low:
                raise ValueError(
                    "amounts must satisfy 0 < min <= max, got %s..%s"
                    % (self.min_amount, self.max_amount)
                )

        elif self.kind == WINDOWED:
            if self.windows < 1 or self.events < 1:
                raise ValueError("windows and events must be positive")

        elif self.kind == ALTERNATING:
            if self.count < 0:
                raise ValueError("count must not be negative")

    def generate(self):
        """ Return the workload as a list of log items. """

        self.check()

        generator = {
            FLINK_FIG1: flink_fig1,
            FLINK_FIG1_EXPANDED: flink_fig1_expanded,
            METRO: metro,
            FINANCIAL_RANDOM: lambda: financial_random(
                self.seed,
                self.vertices,
                self.interactions,
                to_rational(self.min_amount),
                to_rational(self.max_amount),
                self.burst,
            ),
            WINDOWED: lambda: windowed(self.windows, self.events),
            ALTERNATING: lambda: alternating(self.count),
        }[self.kind]

        items = _numbered(generator())
        logger.debug("generated %d %s records", len(items), self.kind)

        return items


def flink_fig1():
    """ The aggregate pipeline, ten interactions. """

    return [
        Interaction(src, dst, t, q)
        for src, dst, t, q in FLINK_FIG1_INTERACTIONS
    ]


def flink_fig1_expanded(distinct_times=False):
    """ The pipeline with W1's 2000 input events delivered one at a time.

    M1, M2 and M3 each send their first unit at exactly t=3 (at 3, 3 +
    1/6000 and 3 + 2/6000 with 'distinct_times'); the other 1997 units
    follow at 3 + i/2000, interleaved evenly so that the senders' totals
    are 450, 775 and 775.

    """

    items = [
        Interaction(src, dst, t, q)
        for src, dst, t, q in FLINK_FIG1_INTERACTIONS
        if t < 3
    ]

    totals = [
        (src, q) for src, dst, t, q in FLINK_FIG1_INTERACTIONS if dst == "W1"
    ]
    items.extend(
        Interaction(
            src, "W1", 3 + Fraction(i, 6000) if distinct_times else 3, 1
        )
        for i, (src, _) in enumerate(totals)
    )

    slots = sorted(
        (Fraction(2 * k + 1, 2 * (q - 1)), src)
        for src, q in totals
        for k in range(q - 1)
    )
    for i, (_, src) in enumerate(slots, 1):
        items.append(Interaction(src, "W1", 3 + Fraction(i, 2000), 1))

    items.append(Interaction("W1", "Sink", 4, 2000))

    return items


def metro():
    """ Passengers A -> B at t=8, 9, 10, each batch continuing to C or D.
    """

    items = []
    serial = 0
    for t, count, onward in METRO_BATCHES:
        batch = ["p%04d" % (serial + i + 1) for i in range(count)]
        serial += count
        items.append(Interaction("A", "B", t, count, entities=batch))

        start = 0
        for onward_t, dst, n in onward:
            group = batch[start:start + n]
            start += n
            items.append(Interaction("B", dst, onward_t, n, entities=group))

    items.sort(key=lambda r: r.t)

    return items


def financial_random(
    seed, vertices, interactions, low=1, high=1000, burst=1
):
    """ Random transfers between accounts.

    Times increase by random steps of 1/1000 to 1 after every 'burst'
    transfers, so each timestamp is shared by up to 'burst' of them.
    Senders usually pay out of their balance; the rest is money entering
    the network.

    """

    rng = random.Random(seed)
    width = len(str(vertices - 1))
    names = ["a%0*d" % (width, i) for i in range(vertices)]
    balances = dict.fromkeys(names, Fraction(0))

    low_cents = int(to_rational(low) * 100)
    high_cents = max(int(to_rational(high) * 100), low_cents)

    items = []
    t = Fraction(0)
    for i in range(interactions):
        if i % burst == 0:
            t += Fraction(rng.randint(1, 1000), 1000)
        src, dst = rng.sample(names, 2)

        q = Fraction(rng.randint(max(low_cents, 1), high_cents), 100)
        if balances[src] > 0 and rng.random() < 0.8:
            q = max(min(q, balances[src]), Fraction(1, 100))

        balances[src] = max(balances[src] - q, Fraction(0))
        balances[dst] += q
        items.append(Interaction(src, dst, t, q))

    return items


def windowed(windows, events):
    """ Windows of 'events' unit events into W, each fired into Sink.

    Window 'i' opens at 10*i with one event from each of P and Q; the rest
    alternate between them until the window fires at 10*i + 9.

    """

    items = []
    for i in range(windows):
        base = 10 * i
        for j in range(events):
            src = "P" if j % 2 == 0 else "Q"
            offset = 0 if j < 2 else Fraction(9 * (j - 1), events)
            items.append(Interaction(src, "W", base + offset, 1))

        fire = base + 9
        items.append(EpochMarker("W", fire, "window-fire"))
        items.append(Interaction("W", "Sink", fire, events))

    return items


def alternating(count):
    """ A -> X and X -> B on alternate steps, one unit each. """

    return [
        Interaction("A", "X", step, 1)
        if step % 2 == 0
        else Interaction("X", "B", step, 1)
        for step in range(count)
    ]


def _numbered(items):
    """ Assign log positions to generated items. """

    for seq, item in enumerate(items):
        item.seq = seq

    return items
