from greencache.experiments.choices import ExperimentKind
from greencache.experiments.command import ExperimentCommand
from greencache.experiments.sweeps import run_optimize


class Command(ExperimentCommand):
    help = (
        "Report the APC-minimizing and EE-maximizing transmit powers: closed "
        "forms, bounds and numeric searches side by side."
    )
    kind = ExperimentKind.OPTIMIZE

    def run(self, cfg):
        return run_optimize(cfg)
