import unittest

from config.example_systems import get_bms0, get_bms0_net, get_two_membrane_system
from MSutils.exceptions import NotEnabledError, UserInputError
from MSutils.membrane_system import Configuration
from MSutils.modes import Mode
from MSutils.multiset import Multiset
from MSutils.simulation import Simulation

C1 = "({a:1,b:1},{a:1,b:1,c:3},{a:1})"
C2 = "({a:1,b:1},{a:1,b:1,c:2},{a:1})"


class GivenStepsTests(unittest.TestCase):
    def test_bms0_run(self):
        sim = Simulation(2)
        sim.load_model(get_bms0(), Mode.FREE)
        trace = sim.run([Multiset(["r11", "r12"]), Multiset(["r21", "r22"])])
        self.assertEqual(trace["states"][1:], [C1, C2])
        self.assertEqual(trace["enabled"], [True, True])
        self.assertIsInstance(sim.final_state(trace), Configuration)
        self.assertEqual(sim.final_state(trace).canonical(), C2)

    def test_net_run_matches_the_system(self):
        net, maps = get_bms0_net()
        inverse = maps.inverse_action_map
        sim = Simulation(1)
        sim.load_model(net, Mode.FREE)
        trace = sim.run([Multiset([inverse["r11"], inverse["r12"]])])
        self.assertEqual(maps.marking_to_config(sim.final_state(trace)).canonical(), C1)

    def test_not_enabled_in_mode(self):
        sim = Simulation(1)
        sim.load_model(get_bms0(), Mode.MAX)
        with self.assertRaises(NotEnabledError):
            sim.run([Multiset(["r11"])])
        trace = sim.run([Multiset(["r11"])], strict=False)
        self.assertEqual(trace["enabled"], [False])
        self.assertEqual(len(trace["states"]), 2)

    def test_longer_sequence_is_cut(self):
        sim = Simulation(1)
        sim.load_model(get_two_membrane_system(), Mode.FREE)
        trace = sim.run([Multiset(["r12"]), Multiset(["r11"])])
        self.assertEqual(len(trace["steps"]), 1)


class RandomRunTests(unittest.TestCase):
    def test_seeded_runs_repeat(self):
        runs = []
        for _ in range(2):
            sim = Simulation(10)
            sim.load_model(get_two_membrane_system(), Mode.LMAX, rand_seed=5)
            runs.append(sim.run())
        self.assertEqual(runs[0], runs[1])
        self.assertEqual(len(runs[0]["steps"]), 10)
        self.assertFalse(runs[0]["deadlock"])

    def test_steps_are_enabled(self):
        bms = get_two_membrane_system()
        sim = Simulation(8)
        sim.load_model(bms, Mode.MAX, rand_seed=1)
        trace = sim.run()
        for k, step in enumerate(trace["steps"]):
            state = Configuration.from_canonical(trace["states"][k])
            rule = bms.vector_from_step(Multiset.from_canonical(step))
            self.assertTrue(bms.is_enabled(state, rule, Mode.MAX))

    def test_deadlock(self):
        net, _ = get_bms0_net()
        empty = type(net)(net.places, net.transitions, net.pre, net.post, {})
        sim = Simulation(3)
        sim.load_model(empty, Mode.FREE, rand_seed=0)
        trace = sim.run()
        self.assertTrue(trace["deadlock"])
        self.assertEqual(trace["steps"], [])


class InputTests(unittest.TestCase):
    def test_bad_arguments(self):
        with self.assertRaises(UserInputError):
            Simulation(-1)
        with self.assertRaises(UserInputError):
            Simulation(1).run()
        with self.assertRaises(UserInputError):
            Simulation(1).load_model("not a model")


if __name__ == '__main__':
    unittest.main()
