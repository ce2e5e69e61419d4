from django.db import models


class Mode(models.TextChoices):
    CACHED = "cached", "With caching"
    UNCACHED = "uncached", "Without caching"


class DensityRule(models.TextChoices):
    # BS density pinned to the minimal QoS density A / P^(2/(alpha - 2)).
    QOS_BOUNDARY = "qos_boundary", "QoS boundary density"
    FIXED = "fixed", "Fixed density"


class OptimumMethod(models.TextChoices):
    CLOSED_FORM = "closed-form", "Closed form"
    BOUND = "bound", "Bound"
    NUMERIC = "numeric", "Numeric search"
    NONE = "none", "No interior optimum"
