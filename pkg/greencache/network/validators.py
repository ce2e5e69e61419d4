import math
from dataclasses import dataclass

# Pathloss exponents beyond this make 2*pi/alpha small enough for csc(2*pi/alpha)
# to lose precision; they are outside the modeled range.
MAX_PATHLOSS_EXPONENT = 200


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def is_valid(self):
        return not self.violations

    def __str__(self):
        return "valid" if self.is_valid else "; ".join(self.violations)


def validate(params):
    """
    Check a NetworkParams against the model's constraints. Every failed
    constraint is listed, worded as the constraint that must hold; the
    report is empty iff the parameters are usable.
    """
    violations = []

    values = [params.lambda_b, params.lambda_u, params.alpha, params.gamma, params.b]
    if not all(math.isfinite(value) for value in values):
        violations.append("parameters are finite")
        return ValidationReport(tuple(violations))

    if params.lambda_b <= 0:
        violations.append("lambda_b > 0")
    if params.lambda_u <= 0:
        violations.append("lambda_u > 0")
    if params.lambda_u <= params.lambda_b:
        violations.append("lambda_u > lambda_b")
    if params.alpha <= 2:
        violations.append("alpha > 2")
    if params.alpha > MAX_PATHLOSS_EXPONENT:
        violations.append("alpha <= {}".format(MAX_PATHLOSS_EXPONENT))
    if params.b <= 0:
        violations.append("b > 0")
    if params.gamma <= 1:
        violations.append("gamma > 1")

    noise = params.noise
    if noise.is_direct:
        if not math.isfinite(noise.beta_override) or noise.beta_override < 0:
            violations.append("beta >= 0")
    elif any(
        value is None or not math.isfinite(value) or value <= 0
        for value in noise.constituents()
    ):
        violations.append("noise constituents > 0")

    return ValidationReport(tuple(violations))
