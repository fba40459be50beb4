import csv
import json
import os
import tempfile
from io import StringIO
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from likelihood.exceptions import DomainError, InvariantViolation
from likelihood.serializers import RunConfig, run_config_from_options


def run(command, **options):
    out, err = StringIO(), StringIO()
    call_command(command, stdout=out, stderr=err, **options)
    return out.getvalue(), err.getvalue()


def run_json(command, **options):
    return json.loads(run(command, **options)[0])


def run_csv(command, **options):
    return list(csv.reader(StringIO(run(command, format="csv", **options)[0])))


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.tmp = tmp.name

    def write_walk(self, name, payload):
        path = os.path.join(self.tmp, name)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(payload if isinstance(payload, str) else json.dumps(payload))
        return path

    def assertExitCode(self, code, command, **options):
        with self.assertRaises(CommandError) as ctx:
            run(command, **options)
        self.assertEqual(ctx.exception.returncode, code)


class CharsCommandTests(CommandTestCase):
    def test_small_table(self):
        data = run_json("chars", n=3)
        self.assertEqual(data["partitions"], [[3], [2, 1], [1, 1, 1]])
        self.assertEqual(data["classes"], ["1^3", "1 2", "3"])
        self.assertEqual(data["class_sizes"], [1, 3, 2])
        self.assertEqual(data["chi"], [[1, 1, 1], [2, 0, -1], [1, -1, 1]])

    def test_trivial_group(self):
        data = run_json("chars", n=1)
        self.assertEqual(data["chi"], [[1]])
        self.assertEqual(run_csv("chars", n=1), [["partition", "1"], ["1", "1"]])

    def test_cap_exit_code(self):
        self.assertExitCode(2, "chars", n=99)

    def test_output_file_matches_stdout(self):
        path = os.path.join(self.tmp, "chars.json")
        out, _ = run("chars", n=4, output=path)
        self.assertEqual(out, "")
        with open(path, encoding="utf-8") as handle:
            self.assertEqual(handle.read(), run("chars", n=4)[0])

    def test_output_is_deterministic(self):
        self.assertEqual(run("chars", n=5)[0], run("chars", n=5)[0])


class DistCommandTests(CommandTestCase):
    def test_csv_rows(self):
        rows = run_csv("dist", n=3, t=2)
        self.assertEqual(
            rows[0], ["class", "per_element_num", "per_element_den", "class_size"]
        )
        self.assertEqual(
            rows[1:],
            [["3", "1", "3", "2"], ["1 2", "0", "1", "3"], ["1^3", "1", "3", "1"]],
        )

    def test_csv_approx_column(self):
        rows = run_csv("dist", n=3, t=2, approx=True)
        self.assertEqual(rows[0][-1], "approx")
        self.assertAlmostEqual(float(rows[1][-1]), 1 / 3)

    def test_json_with_approx(self):
        data = run_json("dist", n=3, t=2, approx=True)
        self.assertEqual(data["coset_sign"], 1)
        self.assertEqual(
            [data["rows"][0][key] for key in ("per_element_num", "per_element_den")],
            [1, 3],
        )
        self.assertAlmostEqual(data["rows"][0]["approx"], 1 / 3)
        self.assertEqual(data["ranking"]["restricted_parity"], "even")
        self.assertEqual(
            data["ranking"]["groups"],
            [{"classes": ["3", "1^3"], "prob": {"num": 1, "den": 3}}],
        )

    def test_custom_walk_file(self):
        path = self.write_walk(
            "walk.json",
            {
                "n": 3,
                "step": [
                    {"class": "1 2", "prob": "1/6"},
                    {"class": "3", "prob": {"num": 1, "den": 4}},
                ],
            },
        )
        data = run_json("dist", n=3, t=1, walk=f"custom:{path}")
        self.assertEqual(data["walk"], "custom")
        probs = {
            row["class"]: (row["per_element_num"], row["per_element_den"])
            for row in data["rows"]
        }
        self.assertEqual(probs["1 2"], (1, 6))
        self.assertEqual(probs["3"], (1, 4))
        self.assertEqual(probs["1^3"], (0, 1))

    def test_walk_file_with_holding_probability(self):
        payload = {
            "n": 3,
            "p": {"num": 1, "den": 2},
            "step": [{"class": [2, 1], "prob": {"num": 1, "den": 6}}],
        }
        alias = {"n": 3, "hold": "1/2", "step": [{"class": "1 2", "prob": "1/6"}]}
        for name, walk in (("p.json", payload), ("hold.json", alias)):
            with self.subTest(name=name):
                path = self.write_walk(name, walk)
                rows = run_csv("dist", n=3, t=1, walk=f"custom:{path}")
                self.assertIn(["1^3", "1", "2", "1"], rows)
                self.assertIn(["1 2", "1", "6", "3"], rows)

    def test_invalid_walk_files(self):
        unnormalized = self.write_walk(
            "heavy.json", {"n": 3, "step": [{"class": "1 2", "prob": "1/2"}]}
        )
        broken = self.write_walk("broken.json", "{not json")
        other_degree = self.write_walk(
            "s4.json", {"n": 4, "step": [{"class": "1^2 2", "prob": "1/6"}]}
        )
        for path in (unnormalized, broken, other_degree, "/nonexistent/walk.json"):
            with self.subTest(path=path):
                self.assertExitCode(2, "dist", n=3, t=1, walk=f"custom:{path}")

    def test_unknown_walk(self):
        self.assertExitCode(2, "dist", n=5, t=1, walk="bogus")


class OrderCommandTests(CommandTestCase):
    def test_inversion_at_fixed_time(self):
        data = run_json("order", n=8, t=4)
        self.assertFalse(data["holds"])
        pairs = {(item["greater"], item["lesser"]) for item in data["inversions"]}
        self.assertIn(("1 7", "2^4"), pairs)

    def test_time_zero_holds(self):
        data = run_json("order", n=5, t=0)
        self.assertTrue(data["holds"])
        self.assertEqual(data["inversions"], [])

    def test_stabilize(self):
        out, err = run(
            "order",
            n=6,
            walk="three-cycle",
            stabilize=True,
            parity="even",
            kind="alt-cl",
        )
        data = json.loads(out)
        self.assertEqual(data["mismatches"], [])
        self.assertTrue(data["matches_kind"])
        self.assertFalse(data["warning"])
        self.assertEqual(data["order"], data["expected_order"])
        self.assertEqual(data["order"][0], "1^6")
        self.assertEqual(len(data["pairs"]), 15)
        self.assertEqual(err, "")

    def test_ranking_waits_for_every_class(self):
        data = run_json("order", n=5, stabilize=True, parity="even")
        ranking = data["ranking"]
        self.assertEqual(ranking["t"], 4)
        self.assertEqual(
            [group["classes"] for group in ranking["groups"]],
            [[alpha] for alpha in data["order"]],
        )
        self.assertEqual(ranking["groups"][-1]["classes"], ["5"])

    def test_uncertified_pairs_warn(self):
        out, err = run(
            "order", n=6, walk="three-cycle", stabilize=True, kind="alt-cl"
        )
        data = json.loads(out)
        self.assertEqual(data["mismatches"], [])
        self.assertTrue(data["matches_kind"])
        self.assertTrue(data["warning"])
        self.assertEqual(len(data["uncertified"]), 1)
        self.assertIn("could not be certified", err)

    def test_parity_is_required_for_alternating_walks(self):
        self.assertExitCode(2, "order", n=5, stabilize=True)

    def test_time_and_stabilize_exclude_each_other(self):
        self.assertExitCode(2, "order", n=5, t=3, stabilize=True)
        self.assertExitCode(2, "order", n=5)

    def test_majorization_is_rejected(self):
        self.assertExitCode(2, "order", n=5, t=2, kind="majorization")

    def test_failed_verification_exit_code(self):
        with mock.patch(
            "likelihood.reports.verify_report",
            side_effect=InvariantViolation("certificate contradicted"),
        ):
            self.assertExitCode(
                3, "order", n=5, walk="three-cycle", stabilize=True, parity="even"
            )


class TvCommandTests(CommandTestCase):
    def test_curve(self):
        rows = run_csv("tv", n=5, tmax=20)
        self.assertEqual(len(rows), 22)
        self.assertEqual(rows[1][:3], ["0", "59", "60"])
        data = run_json("tv", n=5, tmax=20)
        tvs = [row["tv"]["num"] / row["tv"]["den"] for row in data["rows"]]
        self.assertEqual(tvs, sorted(tvs, reverse=True))

    def test_approx_columns(self):
        rows = run_csv("tv", n=4, tmax=2, approx=True)
        self.assertEqual(rows[0][-3:], ["tv_approx", "sep_approx", "linf_approx"])


class SplitCommandTests(CommandTestCase):
    def test_predicted_sides(self):
        data = run_json("split", n=7, t=82)
        self.assertEqual(data["equal"], [])
        self.assertEqual(data["above"], data["predicted"]["above"])
        self.assertEqual(data["below"], data["predicted"]["below"])

    def test_no_prediction_off_transpositions(self):
        data = run_json("split", n=5, t=10, walk="three-cycle")
        self.assertIsNone(data["predicted"])


class DetectorCommandTests(CommandTestCase):
    def test_detectors(self):
        data = run_json("detector", n=6, i=2)
        self.assertEqual(
            [item["partition"] for item in data["detectors"]],
            [
                [4, 2],
                [4, 1, 1],
                [3, 3],
                [3, 2, 1],
                [3, 1, 1, 1],
                [2, 2, 2],
                [2, 2, 1, 1],
            ],
        )
        self.assertEqual(
            data["detectors"][0], {"partition": [4, 2], "h21": 2, "h12": 4}
        )
        self.assertEqual(run_json("detector", n=6, i=4)["detectors"], [])
        self.assertExitCode(2, "detector", n=6, i=7)


class RunConfigTests(SimpleTestCase):
    def test_argv_round_trip(self):
        config = RunConfig(
            command="order",
            n=6,
            walk="three-cycle",
            kind="alt-cl",
            stabilize=True,
            parity="even",
        )
        self.assertEqual(
            config.to_argv(),
            [
                "order",
                "--n",
                "6",
                "--walk",
                "three-cycle",
                "--kind",
                "alt-cl",
                "--stabilize",
                "--parity",
                "even",
            ],
        )
        self.assertEqual(RunConfig.from_argv(config.to_argv()), config)

    def test_options_must_apply(self):
        with self.assertRaises(DomainError):
            run_config_from_options("chars", {"n": 3, "t": 2})
        with self.assertRaises(DomainError):
            run_config_from_options("tv", {"n": 3})
        with self.assertRaises(DomainError):
            RunConfig.from_argv(["plot", "--n", "3"])
