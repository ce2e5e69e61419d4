"""
Experiment configuration: the `key = value` file grammar, presets and the
resolved ExperimentConfig the runners consume.

Grammar: one `key = value` entry per line, split at the first `=`, with
surrounding whitespace stripped. Blank lines and lines starting with `#` are
ignored, except `# config: key = value` lines, which are entries. A file that
contains any `# config:` line is read as the output of an earlier run: only
those lines count, so a CSV or report can be passed back as `--config`.

Precedence when merging: preset < config file < command-line flags.
"""

import logging
import math
from dataclasses import dataclass
from pathlib import Path

from django.conf import settings

from greencache.base.exceptions import ConfigError
from greencache.caching.power import CachePowerParams
from greencache.network.params import NetworkParams

logger = logging.getLogger(__name__)

ECHO_PREFIX = "# config:"


def _split_entry(entry, where):
    key, sep, value = entry.partition("=")
    key = key.strip()
    if not sep or not key:
        raise ConfigError("{}: expected 'key = value', got {!r}".format(where, entry.strip()))
    return key, value.strip()


def parse_config(text, source="<config>"):
    lines = list(enumerate(text.splitlines(), start=1))
    echoed = [(number, line) for number, line in lines if line.startswith(ECHO_PREFIX)]
    if echoed:
        entries = [(number, line[len(ECHO_PREFIX) :]) for number, line in echoed]
    else:
        entries = [
            (number, line)
            for number, line in lines
            if line.strip() and not line.lstrip().startswith("#")
        ]

    data = {}
    for number, entry in entries:
        key, value = _split_entry(entry, "{}:{}".format(source, number))
        data[key] = value
    return data


def load_config(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError("cannot read config {}: {}".format(path, e.strerror)) from e
    data = parse_config(text, source=str(path))
    logger.debug("read %d keys from %s", len(data), path)
    return data


def preset_config(name):
    try:
        return dict(settings.EXPERIMENT_PRESETS[name])
    except KeyError:
        raise ConfigError(
            "unknown preset {!r}; choose from {}".format(
                name, ", ".join(sorted(settings.EXPERIMENT_PRESETS))
            )
        )


def parse_assignments(assignments):
    """Parse repeated `--set key=value` flags."""
    data = {}
    for assignment in assignments or ():
        key, value = _split_entry(assignment, "--set")
        data[key] = value
    return data


def resolve_config(*, preset=None, path=None, overrides=None):
    data = {}
    if preset:
        data.update(preset_config(preset))
    if path:
        data.update(load_config(path))
    data.update(overrides or {})
    return data


def format_value(value):
    """Canonical text of a config value; parsing it back gives the same value."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple | list):
        return ",".join(format_value(item) for item in value)
    return str(value)


def grid_points(start, stop, step):
    """floor((stop - start) / step) + 1 points from `start` in steps of `step`."""
    # The slack absorbs representation error when the range is a whole
    # number of steps (e.g. 0.1 steps).
    count = math.floor((stop - start) / step + 1e-9) + 1
    return [start + step * index for index in range(count)]


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    network: NetworkParams
    # Catalog size is carried by f0_values; power.f0 is left at 1.
    power: CachePowerParams
    f0_values: tuple
    alphas: tuple
    density_rule: str
    density_constant: float | None
    pcov_nn: float | None
    grid: tuple
    seed: int
    convention: str
    objective: str
    transmit_power: float
    trials: int
    requests: int
    window_radius: float | None
    mc_gamma_scale: float
    bits: bool
    # Sorted (key, text) pairs of every resolved key.
    echo: tuple = ()

    @property
    def powers(self):
        return grid_points(*self.grid)
