import json
import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from greencache.base.exceptions import ConfigError, GreenCacheError, InvalidParameters
from greencache.coverage.choices import CorrectionConvention
from greencache.experiments.choices import OutputFormat
from greencache.experiments.config import parse_assignments, resolve_config
from greencache.experiments.forms import ExperimentConfigForm
from greencache.experiments.output import render

logger = logging.getLogger(__name__)

# Exit statuses
FAILED = 1
CONFIG_ERROR = 2


class ExperimentCommand(BaseCommand):
    """
    Shared flags and flow of the experiment commands: merge preset, config
    file and flags, validate, run, then write the result to --out or stdout.
    Configuration problems exit with status 2 after an `error:` JSON line on
    stderr; numerical failures and failed validation rows exit with 1.
    """

    kind = None

    def add_arguments(self, parser):
        parser.add_argument("--config", help="Path of a key = value config file")
        parser.add_argument("--preset", help="Named parameter set applied first")
        parser.add_argument("--out", help="Write the result here instead of stdout")
        parser.add_argument("--seed", type=int)
        parser.add_argument("--convention", choices=CorrectionConvention.values)
        parser.add_argument(
            "--format",
            dest="output_format",
            choices=OutputFormat.values,
            default=OutputFormat.CSV,
        )
        parser.add_argument(
            "--set",
            dest="assignments",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="Override one config key; repeatable",
        )

    def run(self, cfg):
        raise NotImplementedError

    def overrides(self, options):
        data = parse_assignments(options["assignments"])
        if options["seed"] is not None:
            data["seed"] = str(options["seed"])
        if options["convention"]:
            data["convention"] = options["convention"]
        data["kind"] = self.kind
        return data

    def config_error(self, errors):
        self.stderr.write("error: " + json.dumps({"errors": errors}, sort_keys=True))
        return CommandError("invalid configuration", returncode=CONFIG_ERROR)

    def handle(self, **options):
        try:
            data = resolve_config(
                preset=options["preset"],
                path=options["config"],
                overrides=self.overrides(options),
            )
        except ConfigError as e:
            raise self.config_error({"config": [str(e)]})

        form = ExperimentConfigForm(data)
        if not form.is_valid():
            raise self.config_error(form.error_report())
        cfg = form.to_config()

        logger.info("%s started (seed %d)", self.kind, cfg.seed)
        try:
            result = self.run(cfg)
        except InvalidParameters as e:
            raise self.config_error({"__all__": e.violations})
        except GreenCacheError as e:
            self.stderr.write("error: " + json.dumps({"failure": str(e)}))
            raise CommandError(str(e), returncode=FAILED)

        text = render(result, options["output_format"])
        if options["out"]:
            with Path(options["out"]).open("w", encoding="utf-8", newline="") as f:
                f.write(text)
            logger.info("%s: %d rows written to %s", self.kind, len(result.rows), options["out"])
        else:
            self.stdout.write(text, ending="")

        if not result.passed:
            raise CommandError(
                "validation failed: {}".format(", ".join(result.failed)), returncode=FAILED
            )
