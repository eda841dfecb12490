import json
import os
import tempfile
import unittest

from config.example_systems import get_bms0, get_bms0_net, get_three_membrane_structure, get_two_membrane_system
from MSutils import model_io
from MSutils.exceptions import ParseError
from MSutils.membrane_system import BasicMembraneSystem
from MSutils.modes import ExplorationLimits, Mode
from MSutils.ptl_net import PtlNet
from MSutils.transition_system import StepTransitionSystem, check_isomorphic

TRIALS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "trials")


def trial(name):
    return os.path.join(TRIALS, name)


class TrialFileTests(unittest.TestCase):
    def test_read_bms0(self):
        bms = model_io.read(trial("bms0.bms"))
        self.assertEqual(bms, get_bms0())
        self.assertEqual(bms.initial.canonical(), "({a:1,b:1},{a:1,b:1,c:2},{})")

    def test_read_toggle(self):
        self.assertEqual(model_io.read(trial("toggle.bms")), get_two_membrane_system())

    def test_toggle_graph(self):
        ts = model_io.read(trial("toggle_lmax.sts"))
        self.assertIsInstance(ts, StepTransitionSystem)
        self.assertEqual((len(ts.states), len(ts.arcs)), (4, 12))
        crg, _ = get_two_membrane_system().reachability_graph(Mode.LMAX)
        phi = model_io.read(trial("toggle_identity.json"), "phi")
        self.assertIsNotNone(check_isomorphic(crg, ts, phi))

    def test_side_files(self):
        self.assertEqual(model_io.read(trial("three_membranes.json"), "structure"), get_three_membrane_structure())
        self.assertEqual(model_io.read(trial("no_closure_locations.json"), "locations"), {"a": 2, "b": 3})
        self.assertEqual(model_io.read(trial("one_membrane.json"), "structure").degree, 1)


class WriteReadTests(unittest.TestCase):
    def setUp(self):
        self.dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.dir.cleanup()

    def path(self, name):
        return os.path.join(self.dir.name, name)

    def test_models(self):
        net, maps = get_bms0_net()
        crg, _ = net.reachability_graph(Mode.MAX, ExplorationLimits(max_depth=2))
        for name, model in (("bms0.bms", get_bms0()), ("bms0.ptl", net), ("crg.sts", crg)):
            model_io.write(self.path(name), model)
            self.assertEqual(model_io.read(self.path(name)), model)
        model_io.write(self.path("maps.json"), maps)
        self.assertEqual(model_io.read(self.path("maps.json"), "maps").to_json(), maps.to_json())

    def test_net_keeps_its_structure(self):
        net, _ = get_bms0_net()
        net.structure = get_three_membrane_structure()
        model_io.write(self.path("net.ptl"), net)
        back = model_io.read(self.path("net.ptl"))
        self.assertIsInstance(back, PtlNet)
        self.assertEqual(back.structure, net.structure)

    def test_equal_models_give_identical_files(self):
        model_io.write(self.path("one.bms"), get_bms0())
        model_io.write(self.path("two.bms"), model_io.read(trial("bms0.bms")))
        with open(self.path("one.bms")) as f, open(self.path("two.bms")) as g:
            self.assertEqual(f.read(), g.read())


class ParseErrorTests(unittest.TestCase):
    def setUp(self):
        self.dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.dir.cleanup()

    def write(self, text):
        path = os.path.join(self.dir.name, "model.json")
        with open(path, "w") as f:
            f.write(text)
        return path

    def assertParseError(self, doc, location, kind=None):
        path = self.write(json.dumps(doc))
        with self.assertRaises(ParseError) as ctx:
            model_io.read(path, kind)
        self.assertEqual(ctx.exception.path, path)
        self.assertEqual(ctx.exception.location, location)

    def test_syntax_error(self):
        path = self.write('{"states": [\n  "q0",\n}')
        with self.assertRaises(ParseError) as ctx:
            model_io.read(path)
        self.assertTrue(ctx.exception.location.startswith("line 3"))

    def test_missing_file(self):
        with self.assertRaises(ParseError):
            model_io.read(os.path.join(self.dir.name, "missing.sts"))

    def test_unknown_document(self):
        self.assertParseError({"foo": 1}, "document")

    def test_bad_step(self):
        doc = {
            "actions": ["a"], "states": ["q0"], "initial": "q0",
            "arcs": [{"from": "q0", "step": {"a": 1}, "to": "q0"}, {"from": "q0", "step": {"a": 0}, "to": "q0"}],
        }
        self.assertParseError(doc, "arcs[1].step.a")

    def test_missing_key(self):
        doc = {"actions": ["a"], "states": ["q0"], "initial": "q0", "arcs": [{"from": "q0", "to": "q0"}]}
        self.assertParseError(doc, "arcs[0]")

    def test_bad_arc_weight(self):
        doc = {
            "places": [{"id": "p"}], "transitions": [{"id": "t"}],
            "arcs": [{"from": "p", "to": "t", "weight": 0}], "initial_marking": {},
        }
        self.assertParseError(doc, "arcs[0].weight")

    def test_bad_rule_target(self):
        doc = model_io.read_json(trial("toggle.bms"))
        doc["rules"]["1"][0]["rhs"][0]["target"] = "sideways"
        self.assertParseError(doc, "rules.1[0].rhs[0].target")

    def test_semantic_errors_carry_the_path(self):
        doc = {"actions": ["a"], "states": ["q0"], "initial": "q9", "arcs": []}
        path = self.write(json.dumps(doc))
        with self.assertRaises(ParseError) as ctx:
            model_io.read(path)
        self.assertEqual(ctx.exception.path, path)

    def test_bad_locations(self):
        self.assertParseError({"a": "two"}, "a", "locations")


class RuleNameTests(unittest.TestCase):
    def test_clashing_names_are_qualified(self):
        doc = model_io.bms_to_json(get_two_membrane_system())
        doc["rules"]["2"][0]["name"] = "r11"
        bms = model_io.bms_from_json(doc)
        self.assertIsInstance(bms, BasicMembraneSystem)
        names = sorted(rule.name for rule in bms.rules())
        self.assertEqual(names, ["r11@1", "r11@2", "r12", "r22"])


if __name__ == '__main__':
    unittest.main()
