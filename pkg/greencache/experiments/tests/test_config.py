import tempfile
from pathlib import Path

from django.test import SimpleTestCase, override_settings

from greencache.base.exceptions import ConfigError
from greencache.experiments.config import (
    format_value,
    grid_points,
    load_config,
    parse_assignments,
    parse_config,
    resolve_config,
)


class ParseConfigTest(SimpleTestCase):
    def test_grammar(self):
        text = "\n".join(
            [
                "# Figure 2 parameters",
                "",
                "alpha = 4.75",
                "  f0_values=10,100 ",
                "note = a=b",
                "alpha = 5",
            ]
        )

        self.assertEqual(
            parse_config(text),
            {"alpha": "5", "f0_values": "10,100", "note": "a=b"},
        )

    def test_rejects_line_without_assignment(self):
        with self.assertRaisesMessage(ConfigError, "cfg.txt:2: expected 'key = value'"):
            parse_config("alpha = 4\nalpha 4\n", source="cfg.txt")

    def test_rejects_missing_key(self):
        with self.assertRaises(ConfigError):
            parse_config("= 4")

    def test_output_file_reads_echo_lines_only(self):
        text = "\n".join(
            [
                "# greencache 1.0.0",
                "# config: alpha = 4.75",
                "# config: seed = 3",
                "P,apc_uncached",
                "0.5,1.25",
            ]
        )

        self.assertEqual(parse_config(text), {"alpha": "4.75", "seed": "3"})

    def test_empty_value(self):
        self.assertEqual(parse_config("density_constant ="), {"density_constant": ""})


class ResolveConfigTest(SimpleTestCase):
    @override_settings(EXPERIMENT_PRESETS={"demo": {"alpha": "4", "gamma": "2"}})
    def test_precedence(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "experiment.cfg"
            path.write_text("alpha = 5\nbeta = 1\n")

            data = resolve_config(
                preset="demo", path=path, overrides=parse_assignments(["beta=2"])
            )

        self.assertEqual(data, {"alpha": "5", "gamma": "2", "beta": "2"})

    def test_unknown_preset(self):
        with self.assertRaisesMessage(ConfigError, "unknown preset 'nope'"):
            resolve_config(preset="nope")

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            load_config("/nonexistent/experiment.cfg")

    def test_bad_assignment(self):
        with self.assertRaisesMessage(ConfigError, "--set"):
            parse_assignments(["alpha"])


class FormatValueTest(SimpleTestCase):
    def test_values(self):
        self.assertEqual(format_value(0.1), "0.1")
        self.assertEqual(format_value(10.0), "10.0")
        self.assertEqual(format_value((10.0, 100.0)), "10.0,100.0")
        self.assertEqual(format_value(True), "true")
        self.assertEqual(format_value(7), "7")
        self.assertEqual(format_value("derived"), "derived")


class GridPointsTest(SimpleTestCase):
    def test_default_grids(self):
        apc = grid_points(0.5, 99.0, 0.5)
        ee = grid_points(2.0, 60.0, 0.25)

        self.assertEqual(len(apc), 198)
        self.assertEqual((apc[0], apc[-1]), (0.5, 99.0))
        self.assertEqual(len(ee), 233)
        self.assertEqual(ee[20], 7.0)

    def test_partial_last_step(self):
        points = grid_points(1.0, 2.0, 0.3)

        self.assertEqual(len(points), 4)
        self.assertAlmostEqual(points[-1], 1.9, places=12)

    def test_tenth_steps(self):
        self.assertEqual(len(grid_points(0.1, 1.0, 0.1)), 10)

    def test_single_point(self):
        self.assertEqual(grid_points(3.0, 3.0, 0.5), [3.0])
