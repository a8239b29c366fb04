"""Point-mass Bernoulli beliefs and the clutter-free detection model.

Each observed component yields either no measurement or one detection; the
spatial spread of a detection never enters any cost, so outcomes carry no
measurement value.
"""

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .metrics import base_distance


class ImpossibleOutcomeError(ValueError):
    """The requested outcome has probability zero."""


class Outcome(enum.Enum):
    EMPTY = "empty"
    DETECTED = "detected"


def _check_probability(name, value):
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class BernoulliComponent:
    existence: float
    location: tuple = (0.0,)

    def __post_init__(self):
        _check_probability("existence", self.existence)
        loc = tuple(float(v) for v in np.atleast_1d(self.location))
        object.__setattr__(self, "location", loc)


@dataclass(frozen=True)
class MultiBernoulli:
    """Independent Bernoulli components at known, mutually distant locations.

    When ``cutoff`` is given, every pair of locations must be more than
    ``cutoff`` apart.
    """

    components: tuple
    cutoff: float = field(default=None)

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if self.cutoff is None:
            return
        for a, b in itertools.combinations(comps, 2):
            if base_distance(a.location, b.location) <= self.cutoff:
                raise ValueError(
                    f"components at {a.location} and {b.location} are not "
                    f"separated by more than the cutoff {self.cutoff}"
                )

    @classmethod
    def on_grid(cls, existences, cutoff):
        """Components on a 1-D grid with spacing ``2 * cutoff``."""
        comps = [BernoulliComponent(r, (2.0 * cutoff * i,)) for i, r in enumerate(existences)]
        return cls(tuple(comps), cutoff)

    def __len__(self):
        return len(self.components)

    @property
    def existences(self):
        return np.array([comp.existence for comp in self.components], dtype=float)

    @property
    def locations(self):
        return np.array([comp.location for comp in self.components], dtype=float)


@dataclass(frozen=True)
class SensorModel:
    detection_probability: float

    def __post_init__(self):
        _check_probability("detection_probability", self.detection_probability)


@dataclass(frozen=True)
class SensingCost:
    per_sensor_cost: float

    def __post_init__(self):
        if self.per_sensor_cost < 0:
            raise ValueError(f"sensing cost must be non-negative, got {self.per_sensor_cost}")

    def of(self, action):
        return self.per_sensor_cost * sum(action)


def check_bits(bits, n, what="action"):
    bits = tuple(int(b) for b in bits)
    if len(bits) != n:
        raise ValueError(f"{what} has length {len(bits)}, expected {n}")
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"{what} entries must be 0 or 1, got {bits}")
    return bits


def outcome_probability(component, action_bit, sensor, outcome):
    outcome = Outcome(outcome)
    if not action_bit:
        if outcome is Outcome.DETECTED:
            raise ValueError("an unobserved component cannot be detected")
        return 1.0
    hit = component.existence * sensor.detection_probability
    return hit if outcome is Outcome.DETECTED else 1.0 - hit


def posterior_existence(r, sensor, action_bit, outcome):
    """Existence probability after observing ``outcome`` (Bayes' rule)."""
    outcome = Outcome(outcome)
    _check_probability("existence", r)
    if not action_bit:
        if outcome is Outcome.DETECTED:
            raise ValueError("an unobserved component cannot be detected")
        return r
    if outcome is Outcome.DETECTED:
        return 1.0
    pd = sensor.detection_probability
    empty = 1.0 - r * pd
    if empty <= 0.0:
        raise ImpossibleOutcomeError("no detection is impossible when r * pD = 1")
    return r * (1.0 - pd) / empty


def cardinality_distribution(existences):
    r = np.asarray(existences, dtype=float).reshape(-1)
    for value in r:
        _check_probability("existence", value)
    return kernels().cardinality(r)


def leave_one_out_cardinality(existences, i):
    r = np.asarray(existences, dtype=float).reshape(-1)
    if not 0 <= i < len(r):
        raise IndexError(f"component index {i} out of range for {len(r)} components")
    return cardinality_distribution(np.delete(r, i))
