from greencache.experiments.choices import ExperimentKind
from greencache.experiments.command import ExperimentCommand
from greencache.experiments.sweeps import run_ee_sweep


class Command(ExperimentCommand):
    help = "Sweep energy efficiency over transmit power, with and without caching."
    kind = ExperimentKind.EE_SWEEP

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            "--bits", action="store_true", help="Report EE in bits instead of nats"
        )

    def overrides(self, options):
        data = super().overrides(options)
        if options["bits"]:
            data["bits"] = "true"
        return data

    def run(self, cfg):
        return run_ee_sweep(cfg)
