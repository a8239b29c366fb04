"""Line-oriented scenario and point-set files.

::

    # comments and blank lines are ignored
    param c 10          # cutoff
    param p 2           # metric order
    param pd 0.6        # detection probability
    param s 10          # per-sensor cost
    component 0.6 0     # existence, then location coordinates (optional)
    component 0.6 25
    x 0 0               # a point of set X (metric subcommand)
    y 3 4               # a point of set Y

Components given without coordinates are placed on a 1-D grid with
spacing 2c; either all components carry coordinates or none do.
"""

from dataclasses import dataclass, field

import numpy as np

from .bernoulli import BernoulliComponent, MultiBernoulli, SensingCost, SensorModel
from .metrics import DimensionMismatchError, MetricParams

PARAM_KEYS = {"c", "p", "pd", "s"}
DEFAULTS = {"c": 10.0, "p": 2.0, "pd": 0.6, "s": 10.0}


class ScenarioError(ValueError):
    """The scenario text could not be parsed."""


@dataclass
class Scenario:
    params: dict = field(default_factory=dict)
    components: list = field(default_factory=list)
    x: list = field(default_factory=list)
    y: list = field(default_factory=list)

    def get(self, key):
        return self.params.get(key, DEFAULTS[key])

    @property
    def metric_params(self):
        return MetricParams(self.get("c"), self.get("p"))

    @property
    def sensor(self):
        return SensorModel(self.get("pd"))

    @property
    def sensing_cost(self):
        return SensingCost(self.get("s"))

    def belief(self):
        c = self.get("c")
        if not self.components:
            return MultiBernoulli((), c)
        located = [len(loc) > 0 for _, loc in self.components]
        if not any(located):
            return MultiBernoulli.on_grid([r for r, _ in self.components], c)
        if not all(located):
            raise ScenarioError("either every component has a location or none does")
        comps = tuple(BernoulliComponent(r, loc) for r, loc in self.components)
        return MultiBernoulli(comps, c)

    def point_sets(self):
        return _stack(self.x), _stack(self.y)


def _stack(points):
    if not points:
        return np.zeros((0, 0))
    if len({len(p) for p in points}) != 1:
        raise DimensionMismatchError("points within one set have different dimensions")
    return np.array(points, dtype=float)


def _numbers(tokens, lineno):
    try:
        return [float(t) for t in tokens]
    except ValueError:
        raise ScenarioError(f"line {lineno}: expected numbers, got {' '.join(tokens)!r}") from None


def parse_scenario(text):
    scenario = Scenario()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *rest = line.split()
        if keyword == "param":
            if len(rest) != 2 or rest[0] not in PARAM_KEYS:
                raise ScenarioError(f"line {lineno}: expected 'param <{'|'.join(sorted(PARAM_KEYS))}> <value>'")
            scenario.params[rest[0]] = _numbers(rest[1:], lineno)[0]
        elif keyword == "component":
            if not rest:
                raise ScenarioError(f"line {lineno}: component needs an existence probability")
            values = _numbers(rest, lineno)
            if not 0.0 <= values[0] <= 1.0:
                raise ScenarioError(f"line {lineno}: existence must lie in [0, 1]")
            scenario.components.append((values[0], tuple(values[1:])))
        elif keyword in ("x", "y"):
            if not rest:
                raise ScenarioError(f"line {lineno}: a point needs at least one coordinate")
            getattr(scenario, keyword).append(_numbers(rest, lineno))
        else:
            raise ScenarioError(f"line {lineno}: unknown keyword {keyword!r}")
    return scenario


def load_scenario(path):
    with open(path, encoding="utf-8") as handle:
        return parse_scenario(handle.read())
