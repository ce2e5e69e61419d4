from django.db import models


class CorrectionConvention(models.TextChoices):
    """
    Which coefficient multiplies 1/P in the low-noise coverage correction
    c / P. "derived" uses A' / lambda_b^(alpha/2 - 1) as the coverage
    approximation defines it, "printed" uses A in its place as the
    energy-efficiency expressions are typeset, and "paper" fixes c = 1, the
    value under which the closed-form EE maximizers hold.
    """

    PAPER = "paper", "Paper (c = 1)"
    DERIVED = "derived", "Derived (A')"
    PRINTED = "printed", "Printed (A)"
