from .base import *  # noqa
from .base import LOGGING

# #############
# General

# Keep the test output readable; failures still surface through assertions.
LOGGING["loggers"]["greencache"]["level"] = "WARNING"

# #############
# Performance

# Run Monte Carlo trials in-process so tests do not depend on the host's cores.
MONTECARLO_MAX_WORKERS = 1
