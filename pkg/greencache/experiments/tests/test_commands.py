import csv
import io
import json
import math
import tempfile
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from greencache.experiments.config import parse_config


def run(command, **options):
    out = io.StringIO()
    call_command(command, stdout=out, stderr=io.StringIO(), **options)
    return out.getvalue()


def table(text):
    """Rows of a CSV result as dicts, metadata lines skipped."""
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(lines))


def column(rows, name):
    return [float(row[name]) for row in rows]


def run_validation(**options):
    # The table is written before a failed row raises.
    try:
        call_command("mc_validate", stdout=io.StringIO(), stderr=io.StringIO(), **options)
    except CommandError as e:
        if e.returncode != 1:
            raise


class ApcSweepCommandTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.cache_size = table(run("apc_sweep", preset="apc-cache-size"))
        cls.pathloss = table(run("apc_sweep", preset="apc-pathloss"))

    def test_default_grid(self):
        powers = column(self.cache_size, "P")

        self.assertEqual(len(powers), 198)
        self.assertEqual((powers[0], powers[-1]), (0.5, 99.0))

    def test_columns(self):
        self.assertEqual(
            list(self.cache_size[0]),
            ["P", "apc_cached_f0_10", "apc_cached_f0_100", "apc_cached_f0_1000", "apc_uncached"],
        )
        self.assertEqual(
            list(self.pathloss[0]),
            [
                "P",
                "apc_cached_alpha_4_f0_10",
                "apc_uncached_alpha_4",
                "apc_cached_alpha_5_f0_10",
                "apc_uncached_alpha_5",
                "apc_cached_alpha_6_f0_10",
                "apc_uncached_alpha_6",
            ],
        )

    def test_caching_lowers_apc(self):
        uncached = column(self.cache_size, "apc_uncached")
        for f0 in (10, 100, 1000):
            cached = column(self.cache_size, "apc_cached_f0_{}".format(f0))
            with self.subTest(f0=f0):
                self.assertTrue(all(c <= u for c, u in zip(cached, uncached)))

    def test_larger_catalog_lowers_apc(self):
        values = [
            column(self.cache_size, "apc_cached_f0_{}".format(f0)) for f0 in (10, 100, 1000)
        ]

        self.assertTrue(all(b <= a for a, b in zip(values[0], values[1])))
        self.assertTrue(all(b <= a for a, b in zip(values[1], values[2])))

    def test_pathloss_value(self):
        row = next(row for row in self.pathloss if float(row["P"]) == 50.0)

        self.assertAlmostEqual(float(row["apc_uncached_alpha_4"]), 2 * 85 / 50, places=12)

    def test_uncached_minimum_location(self):
        powers = column(self.cache_size, "P")
        uncached = column(self.cache_size, "apc_uncached")

        best = powers[uncached.index(min(uncached))]

        self.assertAlmostEqual(best, 93.5, delta=0.5)


class EeSweepCommandTest(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.rows = table(run("ee_sweep", preset="ee-cache-size", convention="paper"))

    def test_default_grid(self):
        self.assertEqual(len(self.rows), 233)
        self.assertEqual(
            list(self.rows[0]),
            [
                "P",
                "ee_cached_f0_10",
                "ee_cached_f0_100",
                "ee_cached_f0_1000",
                "ee_uncached",
                "breakdown",
            ],
        )

    def test_cached_dominates(self):
        uncached = column(self.rows, "ee_uncached")
        for f0 in (10, 100, 1000):
            cached = column(self.rows, "ee_cached_f0_{}".format(f0))
            with self.subTest(f0=f0):
                self.assertTrue(all(c > u for c, u in zip(cached, uncached)))

    def test_peaks(self):
        powers = column(self.rows, "P")

        def peak(name):
            values = column(self.rows, name)
            return powers[values.index(max(values))]

        self.assertEqual(peak("ee_uncached"), 7.0)
        peaks = [peak("ee_cached_f0_{}".format(f0)) for f0 in (10, 100, 1000)]
        self.assertLessEqual(peaks[0], 7.0)
        self.assertTrue(all(b <= a for a, b in zip(peaks, peaks[1:])))

    def test_breakdown_flags(self):
        self.assertTrue(all(row["breakdown"] == "0" for row in self.rows))

        rows = table(
            run(
                "ee_sweep",
                preset="ee-cache-size",
                convention="paper",
                set=["p_start=0.5", "p_stop=2", "p_step=0.5"],
            )
        )

        self.assertEqual([row["breakdown"] for row in rows], ["1", "1", "0", "0"])

    def test_bits(self):
        bits = table(run("ee_sweep", preset="ee-cache-size", convention="paper", bits=True))

        for nats_row, bits_row in zip(self.rows, bits):
            self.assertAlmostEqual(
                float(bits_row["ee_uncached"]) * math.log(2),
                float(nats_row["ee_uncached"]),
                places=12,
            )


class OptimizeCommandTest(SimpleTestCase):
    def results(self, **options):
        text = run("optimize", format="text", **options)
        return [json.loads(line) for line in text.splitlines() if not line.startswith("#")]

    def find(self, results, objective, mode, f0=None):
        return next(
            result
            for result in results
            if (result["objective"], result["mode"], result["f0"]) == (objective, mode, f0)
        )

    def test_apc_optima(self):
        results = self.results(preset="apc-cache-size", set=["objective=apc"])

        uncached = self.find(results, "apc", "uncached")
        self.assertEqual(uncached["method"], "closed-form")
        self.assertAlmostEqual(uncached["argopt"], 93.3333333, places=6)
        self.assertLessEqual(uncached["agreement"], 1e-3)
        for f0 in (10.0, 100.0, 1000.0):
            cached = self.find(results, "apc", "cached", f0)
            with self.subTest(f0=f0):
                self.assertEqual(cached["method"], "numeric")
                self.assertGreater(cached["argopt"], 2 * 25 / 0.75 - 1e-5)
                self.assertEqual(cached["note"], "")

    def test_no_minimum_is_reported(self):
        results = self.results(preset="apc-cache-size", set=["objective=apc", "alpha=4"])

        self.assertEqual(len(results), 4)
        self.assertTrue(all(result["method"] == "none" for result in results))
        self.assertTrue(all(result["argopt"] is None for result in results))
        self.assertIn("alpha <= 4", results[0]["note"])

    def test_paper_ee_optima(self):
        results = self.results(preset="ee-cache-size", convention="paper", set=["objective=ee"])

        self.assertAlmostEqual(self.find(results, "ee", "uncached")["argopt"], 7.0, places=12)
        cached = self.find(results, "ee", "cached", 10.0)
        self.assertAlmostEqual(cached["argopt"], 6.684, places=3)
        self.assertAlmostEqual(cached["numeric"], cached["argopt"], delta=1e-4)
        self.assertEqual(cached["convention"], "paper")

    def test_csv_output(self):
        rows = table(run("optimize", preset="ee-cache-size", convention="paper"))

        self.assertEqual(len(rows), 8)
        self.assertEqual(rows[0]["objective"], "apc")
        self.assertEqual(rows[0]["f0"], "10.0")
        self.assertEqual(rows[3]["f0"], "")


class McValidateCommandTest(SimpleTestCase):
    def test_passes_at_reference_point(self):
        rows = table(run("mc_validate", preset="mc-validate", set=["trials=2000"]))

        self.assertEqual(
            [row["quantity"] for row in rows],
            ["coverage", "hit_rate_f0_10", "apc_f0_10", "ee_f0_10", "window"],
        )
        self.assertTrue(all(row["pass"] == "1" for row in rows))
        self.assertAlmostEqual(float(rows[0]["analytic"]), 0.450158, places=6)
        self.assertAlmostEqual(float(rows[1]["analytic"]), 1 - 10**-0.2, places=12)

    def test_mismatch_fails(self):
        out = io.StringIO()

        with self.assertLogs("greencache.experiments.validation", "WARNING"):
            with self.assertRaises(CommandError) as raised:
                call_command(
                    "mc_validate",
                    preset="mc-validate",
                    set=["trials=2000", "mc_gamma_scale=4"],
                    stdout=out,
                    stderr=io.StringIO(),
                )

        self.assertEqual(raised.exception.returncode, 1)
        self.assertIn("coverage", str(raised.exception))
        rows = table(out.getvalue())
        self.assertEqual(rows[0]["pass"], "0")
        self.assertEqual(rows[1]["pass"], "1")

    @override_settings(MONTECARLO_MAX_POINTS=50)
    def test_capped_window_fails(self):
        out = io.StringIO()

        with self.assertLogs("greencache.montecarlo.simulation", "WARNING"):
            with self.assertRaises(CommandError) as raised:
                call_command(
                    "mc_validate",
                    preset="mc-validate",
                    set=["trials=4000", "alpha=2.5"],
                    stdout=out,
                    stderr=io.StringIO(),
                )

        self.assertEqual(raised.exception.returncode, 1)
        self.assertIn("window", str(raised.exception))
        window = table(out.getvalue())[-1]
        self.assertEqual(window["quantity"], "window")
        self.assertEqual(window["pass"], "0")
        self.assertGreater(abs(float(window["simulated"])), 0.002)


class ConfigErrorTest(SimpleTestCase):
    def assertConfigError(self, command, **options):
        err = io.StringIO()
        with self.assertRaises(CommandError) as raised:
            call_command(command, stdout=io.StringIO(), stderr=err, **options)
        self.assertEqual(raised.exception.returncode, 2)
        line = err.getvalue().strip()
        self.assertTrue(line.startswith("error: "))
        return json.loads(line[len("error: ") :])["errors"]

    def test_missing_parameters(self):
        errors = self.assertConfigError("apc_sweep")

        self.assertIn("lambda_b", errors)

    def test_invalid_network(self):
        errors = self.assertConfigError(
            "apc_sweep", preset="apc-cache-size", set=["lambda_u=0.1"]
        )

        self.assertEqual(errors["__all__"], ["lambda_u > lambda_b"])

    def test_unknown_preset(self):
        errors = self.assertConfigError("ee_sweep", preset="figure-9")

        self.assertIn("unknown preset", errors["config"][0])

    def test_malformed_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "bad.cfg"
            path.write_text("alpha 4\n")

            errors = self.assertConfigError("optimize", config=str(path))

        self.assertIn("expected 'key = value'", errors["config"][0])

    def test_unknown_key(self):
        errors = self.assertConfigError("apc_sweep", preset="apc-cache-size", set=["colour=1"])

        self.assertEqual(errors["__all__"], ["Unknown key(s): colour"])

    def test_noise_free_derived_density(self):
        # A = 0 without noise, so the QoS density needs an explicit constant.
        errors = self.assertConfigError("apc_sweep", preset="apc-cache-size", set=["beta=0"])

        self.assertEqual(errors["__all__"], ["A > 0"])


class ReproducibilityTest(SimpleTestCase):
    def test_reruns_are_byte_identical(self):
        with tempfile.TemporaryDirectory() as directory:
            first = Path(directory) / "first.csv"
            second = Path(directory) / "second.csv"
            options = dict(preset="mc-validate", set=["trials=500", "requests=10000"], seed=5)

            run_validation(out=str(first), **options)
            run_validation(out=str(second), **options)

            self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_output_reproduces_run(self):
        with tempfile.TemporaryDirectory() as directory:
            first = Path(directory) / "first.csv"
            second = Path(directory) / "second.csv"

            call_command(
                "ee_sweep",
                preset="ee-cache-size",
                convention="printed",
                set=["f0_values=10,50", "p_step=0.5"],
                out=str(first),
            )
            call_command("ee_sweep", config=str(first), out=str(second))

            self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_metadata_block(self):
        text = run("apc_sweep", preset="apc-pathloss", seed=3)
        lines = text.splitlines()

        self.assertTrue(lines[0].startswith("# greencache "))
        self.assertTrue(lines[1].startswith("# numpy "))
        self.assertTrue(lines[2].startswith("# scipy "))
        self.assertTrue(lines[3].startswith("# django "))
        echoed = parse_config(text)
        self.assertEqual(echoed["seed"], "3")
        self.assertEqual(echoed["kind"], "apc_sweep")
        self.assertEqual(echoed["alphas"], "4.0,5.0,6.0")
        self.assertEqual(echoed["density_constant"], "2.0")
        self.assertEqual(echoed["alpha"], "4.0")

    def test_pathloss_output_reproduces_run(self):
        with tempfile.TemporaryDirectory() as directory:
            first = Path(directory) / "first.csv"
            second = Path(directory) / "second.csv"

            call_command("apc_sweep", preset="apc-pathloss", set=["p_step=5"], out=str(first))
            call_command("apc_sweep", config=str(first), out=str(second))

            self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_precedence(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "experiment.cfg"
            path.write_text("# overrides the preset\nalpha = 5\n")

            from_file = parse_config(run("apc_sweep", preset="apc-cache-size", config=str(path)))
            from_flag = parse_config(
                run("apc_sweep", preset="apc-cache-size", config=str(path), set=["alpha=6"])
            )

        self.assertEqual(from_file["alpha"], "5.0")
        self.assertEqual(from_flag["alpha"], "6.0")
        self.assertEqual(from_file["f0_values"], "10.0,100.0,1000.0")
