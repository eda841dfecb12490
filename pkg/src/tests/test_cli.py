import contextlib
import io
import json
import logging
import os
import tempfile
import unittest

from config.run_info import get_limits, get_run_info, modify_run_info
from MSutils import model_io
from MSutils.cli import build_parser, parse_step, run
from MSutils.exceptions import UserInputError
from MSutils.multiset import Multiset

TRIALS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "trials")


def trial(name):
    return os.path.join(TRIALS, name)


class RunInfoTests(unittest.TestCase):
    def test_defaults(self):
        run_info = get_run_info()
        self.assertEqual(run_info["mode"], "lmax")
        self.assertEqual(get_limits(run_info).max_states, 10000)
        self.assertEqual(run_info["exit_codes"]["closure"], 3)

    def test_overrides(self):
        run_info = get_run_info(mode="max", max_depth=4, n_jobs=None)
        self.assertEqual((run_info["mode"], run_info["max_depth"], run_info["n_jobs"]), ("max", 4, 1))
        with self.assertRaises(UserInputError):
            modify_run_info(run_info, colour="red")
        with self.assertRaises(UserInputError):
            get_run_info(mode="eager")
        with self.assertRaises(UserInputError):
            get_run_info(max_states=0)
        with self.assertRaises(UserInputError):
            get_run_info(log_level="chatty")


class CommandTests(unittest.TestCase):
    def setUp(self):
        self.dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.dir.cleanup()

    def path(self, name):
        return os.path.join(self.dir.name, name)

    def call(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            code = run(["-q", *argv])
        return code, stdout.getvalue(), stderr.getvalue()

    def test_log_level(self):
        package = logging.getLogger("MSutils")
        try:
            with contextlib.redirect_stdout(io.StringIO()):
                run(["validate", trial("bms0.bms")])
                self.assertEqual(package.level, logging.INFO)
                run(["-v", "validate", trial("bms0.bms")])
                self.assertEqual(package.level, logging.DEBUG)
                run(["-q", "validate", trial("bms0.bms")])
                self.assertEqual(package.level, logging.WARNING)
        finally:
            package.setLevel(logging.WARNING)

    def test_parse_step(self):
        self.assertEqual(parse_step("t1,t1, t2"), Multiset({"t1": 2, "t2": 1}))
        with self.assertRaises(UserInputError):
            parse_step(" , ")

    def test_validate(self):
        code, out, _ = self.call("validate", trial("bms0.bms"))
        self.assertEqual((code, out.strip()), (0, "valid"))
        code, out, _ = self.call("validate", trial("no_closure.sts"))
        self.assertEqual(code, 0)

    def test_validate_reports_violations(self):
        doc = {"actions": ["a", "b"], "states": ["q0"], "initial": "q0",
               "arcs": [{"from": "q0", "step": {"a": 1}, "to": "q0"}]}
        model_io.write_json(self.path("bad.sts"), doc)
        code, out, _ = self.call("validate", self.path("bad.sts"))
        self.assertEqual(code, 1)
        self.assertIn("unused-action", out)

    def test_simulate(self):
        code, out, _ = self.call(
            "simulate", trial("bms0.bms"), "--mode", "free", "--step", "r11,r12", "--step", "r21,r22",
            "--out", self.path("trace.json"),
        )
        self.assertEqual(code, 0)
        self.assertEqual(out.strip().splitlines()[-1], "({a:1,b:1},{a:1,b:1,c:2},{a:1})")
        self.assertEqual(len(model_io.read_json(self.path("trace.json"))["steps"]), 2)
        code, _, err = self.call("simulate", trial("bms0.bms"), "--mode", "max", "--step", "r11")
        self.assertEqual(code, 4)
        self.assertIn("not max-enabled", err)

    def test_crg(self):
        code, _, err = self.call(
            "crg", "--in", trial("bms0.bms"), "--mode", "max", "--max-depth", "2",
            "--out", self.path("crg.sts"), "--dot", self.path("crg.dot"),
        )
        self.assertEqual(code, 0)
        self.assertIn("truncated", err)
        doc = model_io.read_json(self.path("crg.sts"))
        self.assertEqual((doc["mode"], doc["truncated"]), ("max", True))
        self.assertEqual(doc["initial"], "({a:1,b:1},{a:1,b:1,c:2},{})")
        self.assertTrue(os.path.exists(self.path("crg.dot")))

    def test_crg_and_check_iso(self):
        code, _, err = self.call("crg", "--in", trial("toggle.bms"), "--out", self.path("toggle.sts"))
        self.assertEqual(code, 0)
        self.assertNotIn("truncated", err)
        code, out, _ = self.call(
            "check-iso", self.path("toggle.sts"), trial("toggle_lmax.sts"), "--phi", trial("toggle_identity.json")
        )
        self.assertEqual(code, 0)
        self.assertEqual(len(json.loads(out)), 4)
        self.call("crg", "--in", trial("toggle.bms"), "--mode", "max", "--out", self.path("toggle_max.sts"))
        code, out, _ = self.call(
            "check-iso", self.path("toggle_max.sts"), trial("toggle_lmax.sts"), "--phi", trial("toggle_identity.json")
        )
        self.assertEqual((code, out.strip()), (1, "not isomorphic"))

    def test_translate_both_ways(self):
        code, _, _ = self.call(
            "translate", "--in", trial("toggle.bms"), "--out", self.path("toggle.ptl"), "--maps", self.path("maps.json")
        )
        self.assertEqual(code, 0)
        net = model_io.read(self.path("toggle.ptl"))
        self.assertIn("p^a_1", net.places)
        self.assertEqual(model_io.read(self.path("maps.json"), "maps").degree, 2)
        code, _, _ = self.call(
            "translate", "--in", self.path("toggle.ptl"), "--out", self.path("back.bms"),
            "--structure", trial("toggle_structure.json"),
        )
        self.assertEqual(code, 0)
        self.assertEqual(model_io.read(self.path("back.bms")).validate(), [])

    def test_synthesize(self):
        code, out, _ = self.call(
            "synthesize", "--ts", trial("toggle_lmax.sts"), "--structure", trial("toggle_structure.json"),
            "--locations", trial("toggle_locations.json"), "--out", self.path("net.ptl"),
            "--bms", self.path("net.bms"), "--certificate", self.path("report.json"),
        )
        self.assertEqual(code, 0)
        self.assertIn("synthesized a net", out)
        self.assertEqual(model_io.read_json(self.path("report.json"))["outcome"], "success")
        self.assertEqual(model_io.read(self.path("net.ptl")).check_spanned(model_io.read(trial("toggle_structure.json"), "structure")), [])
        code, _, _ = self.call("validate", self.path("net.bms"))
        self.assertEqual(code, 0)

    def test_synthesis_failures(self):
        code, _, err = self.call(
            "synthesize", "--mode", "free", "--ts", trial("no_separation.sts"),
            "--structure", trial("one_membrane.json"),
            "--locations", trial("no_separation_locations.json"), "--out", self.path("net.ptl"),
        )
        self.assertEqual(code, 2)
        self.assertIn("separation", err)
        self.assertFalse(os.path.exists(self.path("net.ptl")))
        code, _, err = self.call(
            "synthesize", "--mode", "free", "--ts", trial("no_closure.sts"),
            "--structure", trial("three_membranes.json"),
            "--locations", trial("no_closure_locations.json"), "--out", self.path("net.ptl"),
            "--certificate", self.path("report.json"),
        )
        self.assertEqual(code, 3)
        self.assertEqual(model_io.read_json(self.path("report.json"))["step"], {"a": 1, "b": 1})
        code, _, _ = self.call(
            "synthesize", "--ts", trial("no_closure.sts"), "--structure", trial("one_membrane.json"),
            "--locations", trial("no_closure_locations.json"), "--out", self.path("net.ptl"),
        )
        self.assertEqual(code, 4)

    def test_dot(self):
        code, out, _ = self.call("dot", "--in", trial("toggle.bms"))
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("digraph bms"))

    def test_bad_input(self):
        code, _, err = self.call("validate", self.path("missing.bms"))
        self.assertEqual(code, 4)
        self.assertTrue(err.startswith("error:"))
        code, _, _ = self.call("crg", "--in", trial("toggle_lmax.sts"))
        self.assertEqual(code, 4)

    def test_parser(self):
        args = build_parser().parse_args(["crg", "--in", "x.bms", "--max-states", "7"])
        self.assertEqual((args.command, args.path, args.max_states, args.mode), ("crg", "x.bms", 7, None))


if __name__ == '__main__':
    unittest.main()
