import unittest

from config.example_systems import get_bms0, get_bms0_net, get_three_membrane_structure, get_two_membrane_system
from MSutils.exceptions import ParseError, UserInputError, ValidationError
from MSutils.membrane_structure import MembraneStructure
from MSutils.membrane_system import BasicMembraneSystem, Configuration, EvolutionRule, IndexedObject
from MSutils.modes import ExplorationLimits, Mode
from MSutils.multiset import Multiset
from MSutils.ptl_net import PtlNet
from MSutils.transition_system import check_isomorphic
from MSutils.translate import (
    TranslationMaps,
    bms_to_ptl,
    config_to_marking,
    marking_to_config,
    ptl_to_bms,
    step_to_vector,
    vector_to_step,
)

DEPTH = 3


class BmsToPtlTests(unittest.TestCase):
    def setUp(self):
        self.net, self.maps = get_bms0_net()

    def test_places_and_transitions(self):
        net = self.net
        self.assertEqual(
            net.places.symbols, {f"p^{a}_{j}" for a in "abc" for j in (1, 2, 3)}
        )
        self.assertEqual(
            net.transitions.symbols,
            {"t^r11_1", "t^r12_1", "t^r13_1", "t^r21_2", "t^r22_2", "t^r31_3"},
        )
        self.assertEqual(net.location["p^c_2"], 2)
        self.assertEqual(net.location["t^r31_3"], 3)
        self.assertEqual(
            net.initial_marking,
            Multiset({"p^a_1": 1, "p^b_1": 1, "p^a_2": 1, "p^b_2": 1, "p^c_2": 2}),
        )

    def test_all_weights(self):
        expected = {
            ("p^b_1", "t^r11_1"): 1,
            ("t^r11_1", "p^a_1"): 1,
            ("p^a_1", "t^r12_1"): 1,
            ("t^r12_1", "p^b_1"): 1,
            ("t^r12_1", "p^c_2"): 1,
            ("t^r12_1", "p^a_3"): 1,
            ("p^b_1", "t^r13_1"): 1,
            ("t^r13_1", "p^c_1"): 1,
            ("t^r13_1", "p^a_3"): 1,
            ("p^a_2", "t^r21_2"): 1,
            ("p^c_2", "t^r21_2"): 1,
            ("t^r21_2", "p^b_2"): 1,
            ("p^b_2", "t^r22_2"): 1,
            ("t^r22_2", "p^a_2"): 1,
            ("p^a_3", "t^r31_3"): 1,
            ("t^r31_3", "p^a_3"): 2,
            ("t^r31_3", "p^c_3"): 1,
            ("t^r31_3", "p^c_1"): 1,
        }
        self.assertEqual({(s, t): w for s, t, w in self.net.arcs()}, expected)

    def test_net_is_spanned(self):
        self.assertEqual(self.net.check_spanned(get_three_membrane_structure()), [])

    def test_maps(self):
        maps = self.maps
        self.assertEqual(maps.action_map["t^r12_1"], "r12")
        self.assertEqual(maps.inverse_action_map["r31"], "t^r31_3")
        self.assertEqual(marking_to_config(maps, self.net.initial_marking), get_bms0().initial)
        self.assertEqual(config_to_marking(maps, get_bms0().initial), self.net.initial_marking)
        u = Multiset(["t^r11_1", "t^r11_1", "t^r31_3"])
        r = step_to_vector(maps, u)
        self.assertEqual(r.canonical(), "<{r11:2},{},{r31:1}>")
        self.assertEqual(vector_to_step(maps, r), u)
        with self.assertRaises(UserInputError):
            step_to_vector(maps, Multiset(["t^nope_1"]))

    def test_maps_json(self):
        doc = self.maps.to_json()
        self.assertEqual(doc["places"]["p^c_2"], {"object": "c", "membrane": 2})
        self.assertEqual(TranslationMaps.from_json(doc), self.maps)
        with self.assertRaises(ParseError):
            TranslationMaps.from_json({"phi": {}})

    def test_invalid_system_is_rejected(self):
        mu = MembraneStructure(1)
        rule = EvolutionRule("r", 1, Multiset(["a"]), Multiset([IndexedObject.out("a")]))
        bms = BasicMembraneSystem(["a"], mu, {1: {"a": 1}}, [rule])
        with self.assertRaises(ValidationError):
            bms_to_ptl(bms)

    def test_reachability_graphs_are_isomorphic(self):
        for bms in (get_two_membrane_system(), get_bms0()):
            net, maps = bms_to_ptl(bms)
            for mode in Mode:
                limits = ExplorationLimits(max_states=100000, max_depth=DEPTH)
                crg_bms, cut_bms = bms.reachability_graph(mode, limits)
                crg_net, cut_net = net.reachability_graph(mode, limits)
                self.assertEqual(cut_bms, cut_net)
                nu = check_isomorphic(crg_bms, crg_net, maps.inverse_action_map)
                self.assertIsNotNone(nu, f"mode {mode}")
                # the state bijection is the configuration/marking correspondence
                for q, m in nu.items():
                    config = Configuration.from_canonical(q)
                    self.assertEqual(maps.config_to_marking(config).canonical(), m)


class PtlToBmsTests(unittest.TestCase):
    def setUp(self):
        self.mu = get_three_membrane_structure()
        self.net, _ = get_bms0_net()

    def test_rules_follow_the_arcs(self):
        bms, maps = ptl_to_bms(self.net, self.mu)
        self.assertEqual(bms.objects.symbols, self.net.places.symbols)
        rule = bms.rule("t^r12_1")
        self.assertEqual(rule.membrane, 1)
        self.assertEqual(rule.lhs, Multiset(["p^a_1"]))
        self.assertEqual(
            rule.rhs,
            Multiset(
                [
                    IndexedObject.here("p^b_1"),
                    IndexedObject.into("p^c_2", 2),
                    IndexedObject.into("p^a_3", 3),
                ]
            ),
        )
        self.assertIn(IndexedObject.out("p^c_1"), bms.rule("t^r31_3").rhs)
        self.assertEqual(bms.initial[2], Multiset({"p^a_2": 1, "p^b_2": 1, "p^c_2": 2}))
        self.assertEqual(maps.action_map["t^r12_1"], "t^r12_1")
        self.assertEqual(bms.validate(), [])

    def test_reachability_graphs_are_isomorphic(self):
        bms, maps = ptl_to_bms(self.net, self.mu)
        for mode in Mode:
            limits = ExplorationLimits(max_states=100000, max_depth=DEPTH)
            crg_net, _ = self.net.reachability_graph(mode, limits)
            crg_bms, _ = bms.reachability_graph(mode, limits)
            nu = check_isomorphic(crg_net, crg_bms, maps.action_map)
            self.assertIsNotNone(nu, f"mode {mode}")
            for m, q in nu.items():
                self.assertEqual(maps.marking_to_config(Multiset.from_canonical(m)).canonical(), q)

    def test_net_not_spanned(self):
        net = PtlNet(
            ["p2", "p3"], ["t"], {"t": {"p2": 1}}, {"t": {"p3": 1}}, {}, location={"p2": 2, "p3": 3, "t": 2}
        )
        with self.assertRaises(ValidationError):
            ptl_to_bms(net, self.mu)


if __name__ == '__main__':
    unittest.main()
