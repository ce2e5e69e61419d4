from django.db import models


class ExperimentKind(models.TextChoices):
    APC_SWEEP = "apc_sweep", "APC sweep"
    EE_SWEEP = "ee_sweep", "EE sweep"
    OPTIMIZE = "optimize", "Optimize"
    MC_VALIDATE = "mc_validate", "Monte Carlo validation"


class Objective(models.TextChoices):
    APC = "apc", "Area power consumption"
    EE = "ee", "Energy efficiency"
    BOTH = "both", "Both"


class OutputFormat(models.TextChoices):
    CSV = "csv", "CSV"
    # One JSON object per line.
    TEXT = "text", "Text"
