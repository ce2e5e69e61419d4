from greencache.experiments.choices import ExperimentKind
from greencache.experiments.command import ExperimentCommand
from greencache.experiments.sweeps import run_apc_sweep


class Command(ExperimentCommand):
    help = "Sweep area power consumption over transmit power, with and without caching."
    kind = ExperimentKind.APC_SWEEP

    def run(self, cfg):
        return run_apc_sweep(cfg)
