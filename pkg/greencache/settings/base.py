"""
Django settings for the greencache project.

The project has no database, templates or URL routes: Django provides the
settings layer, the logging configuration, the management-command CLI and the
test runner. Numerical tunables live at the bottom of this file.

For more information on this file, see
https://docs.djangoproject.com/en/stable/topics/settings/
"""

import os

# Build paths inside the project like this: os.path.join(PROJECT_DIR, ...)
PROJECT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
BASE_DIR = os.path.dirname(PROJECT_DIR)

DEBUG = False

# Application definition

INSTALLED_APPS = [
    "greencache.base",
    "greencache.network",
    "greencache.coverage",
    "greencache.caching",
    "greencache.metrics",
    "greencache.montecarlo",
    "greencache.experiments",
]

# No models anywhere in the project, so no database is configured.
DATABASES = {}

USE_I18N = False

USE_TZ = True

TIME_ZONE = "UTC"

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {
            "format": "%(levelname)s %(name)s %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "simple",
        },
    },
    "loggers": {
        "django": {
            "handlers": ["console"],
            "level": os.getenv("DJANGO_LOG_LEVEL", "INFO"),
        },
        "greencache": {
            "handlers": ["console"],
            "level": os.getenv("GREENCACHE_LOG_LEVEL", "INFO"),
            "propagate": False,
        },
    },
}

# #############
# Analytic model

# Absolute tolerance and evaluation budget of the coverage quadrature.
COVERAGE_QUADRATURE_TOLERANCE = 1e-9
COVERAGE_QUADRATURE_BUDGET = 10**6

# Golden-section searches stop once the bracket is narrower than
# OPTIMIZER_RELATIVE_TOLERANCE * (1 + P).
OPTIMIZER_RELATIVE_TOLERANCE = 1e-8
OPTIMIZER_BRACKET_FACTOR = 2.0
OPTIMIZER_BRACKET_CAP = 1e9

# Noise-correction coefficient used by the energy-efficiency expressions:
# "paper" (c = 1), "derived" (c = A' / lambda_b^(alpha/2 - 1)) or
# "printed" (c = A / lambda_b^(alpha/2 - 1)).
EE_CORRECTION_CONVENTION = os.getenv("GREENCACHE_EE_CONVENTION", "derived")

# #############
# Monte Carlo

MONTECARLO_TRUNCATION_GUARD = 1e-3
# The window radius is never smaller than this many mean BS spacings.
MONTECARLO_MIN_SPACINGS = 10
# Upper bound on the expected BS count per realization.
MONTECARLO_MAX_POINTS = 20000
MONTECARLO_MAX_WORKERS = int(os.getenv("GREENCACHE_MC_WORKERS", "1"))
MONTECARLO_CHUNK_SIZE = 2000

# #############
# Experiments

# Transmit power grids (start, stop, step) mirroring the published figures.
EXPERIMENT_DEFAULT_GRIDS = {
    "apc_sweep": (0.5, 99.0, 0.5),
    "ee_sweep": (2.0, 60.0, 0.25),
    "optimize": (0.5, 99.0, 0.5),
    "mc_validate": (0.5, 99.0, 0.5),
}

# Named parameter sets taken from the figure captions. Presets are applied
# before the config file and command-line flags. The APC captions leave
# lambda_u open; the values below keep eta(P) > 1 over the default grid.
EXPERIMENT_PRESETS = {
    "apc-cache-size": {
        "kind": "apc_sweep",
        "lambda_b": "0.5",
        "lambda_u": "0.6",
        "gamma": "2",
        "p_o": "20",
        "p_hd": "5",
        "p_bh": "15",
        "beta": "1",
        "alpha": "4.75",
        "f0_values": "10,100,1000",
    },
    "apc-pathloss": {
        "kind": "apc_sweep",
        "lambda_b": "0.5",
        "lambda_u": "10",
        "gamma": "2",
        "p_o": "20",
        "p_hd": "5",
        "p_bh": "15",
        "density_constant": "2",
        "alphas": "4,5,6",
        "f0_values": "10",
    },
    "ee-cache-size": {
        "kind": "ee_sweep",
        "p_o": "20",
        "p_hd": "5",
        "p_bh": "15",
        "alpha": "4.75",
        "beta": "1",
        "pcov_nn": "1",
        "lambda_b": "0.5",
        "lambda_u": "0.6",
        "gamma": "2",
        "f0_values": "10,100,1000",
    },
    "mc-validate": {
        "kind": "mc_validate",
        "lambda_b": "1",
        "lambda_u": "1.2",
        "alpha": "4",
        "gamma": "2",
        "beta": "0",
        "p_o": "20",
        "p_hd": "5",
        "p_bh": "15",
        "f0_values": "10",
        "transmit_power": "50",
    },
}
