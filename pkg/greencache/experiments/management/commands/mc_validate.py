from greencache.experiments.choices import ExperimentKind
from greencache.experiments.command import ExperimentCommand
from greencache.experiments.validation import run_mc_validate


class Command(ExperimentCommand):
    help = (
        "Compare analytic coverage, hit rate, APC and EE with Monte Carlo "
        "estimates. Exits with status 1 if any row is out of tolerance."
    )
    kind = ExperimentKind.MC_VALIDATE

    def run(self, cfg):
        return run_mc_validate(cfg)
