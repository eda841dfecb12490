import unittest

from MSutils.exceptions import UserInputError
from MSutils.multiset import EMPTY, Multiset
from MSutils.transition_system import StepTransitionSystem, check_isomorphic, enabled_steps

A = Multiset(["a"])
B = Multiset(["b"])
AB = Multiset(["a", "b"])


def square(names=("q0", "q1", "q2", "q3"), actions=("a", "b")):
    q0, q1, q2, q3 = names
    a, b = actions
    return StepTransitionSystem(
        list(actions),
        list(names),
        [
            (q0, {a: 1}, q1),
            (q0, {b: 1}, q2),
            (q0, {a: 1, b: 1}, q3),
            (q1, {b: 1}, q3),
            (q2, {a: 1}, q3),
        ],
        q0,
    )


class StepTransitionSystemTests(unittest.TestCase):
    def test_queries(self):
        ts = square()
        self.assertEqual(ts.states[0], "q0")
        self.assertEqual(enabled_steps(ts, "q0"), frozenset({A, B, AB}))
        self.assertEqual(ts.enabled_steps("q3"), frozenset())
        self.assertEqual(ts.successor("q0", AB), "q3")
        self.assertEqual(ts.successor("q1", EMPTY), "q1")
        self.assertIsNone(ts.successor("q1", A))
        self.assertEqual(ts.max_step_size(), 2)
        self.assertEqual(len(ts.arcs_from("q0")), 3)
        self.assertEqual(len(ts.empty_self_loops()), 4)
        self.assertEqual(ts.to_networkx().number_of_edges(), 5)
        with self.assertRaises(UserInputError):
            ts.enabled_steps("nowhere")

    def test_initial_state_comes_first(self):
        ts = StepTransitionSystem(["a"], ["q1", "q0"], [("q0", {"a": 1}, "q1")], "q0")
        self.assertEqual(ts.states, ("q0", "q1"))
        self.assertEqual(ts.state_index("q1"), 1)

    def test_valid_system(self):
        self.assertEqual(square().validate(), [])

    def test_empty_self_loops_are_implicit(self):
        ts = StepTransitionSystem(["a"], ["q0"], [("q0", {}, "q0"), ("q0", {"a": 1}, "q0")], "q0")
        self.assertEqual(len(ts.arcs), 1)
        self.assertEqual(ts.validate(), [])

    def test_violations(self):
        ts = StepTransitionSystem(
            ["a", "b", "c"],
            ["q0", "q1", "q2", "q3"],
            [
                ("q0", {"a": 1}, "q1"),
                ("q0", {"a": 1}, "q0"),
                ("q1", {}, "q0"),
                ("q3", {"b": 1}, "q3"),
            ],
            "q0",
        )
        kinds = sorted(v.kind for v in ts.validate())
        self.assertEqual(
            kinds, ["determinism", "empty-step", "unreachable", "unreachable", "unused-action"]
        )

    def test_unknown_symbols_are_rejected(self):
        with self.assertRaises(UserInputError):
            StepTransitionSystem(["a"], ["q0"], [("q0", {"z": 1}, "q0")], "q0")
        with self.assertRaises(UserInputError):
            StepTransitionSystem(["a"], ["q0"], [("q0", {"a": 1}, "q9")], "q0")
        with self.assertRaises(UserInputError):
            StepTransitionSystem(["a"], ["q0"], [], "q9")


class IsomorphismTests(unittest.TestCase):
    def test_renamed_copy_is_isomorphic(self):
        ts = square()
        ts2 = square(names=("s0", "s1", "s2", "s3"), actions=("x", "y"))
        nu = check_isomorphic(ts, ts2, {"a": "x", "b": "y"})
        self.assertEqual(nu, {"q0": "s0", "q1": "s1", "q2": "s2", "q3": "s3"})

    def test_swapped_actions(self):
        ts = square()
        ts2 = square(names=("s0", "s1", "s2", "s3"), actions=("x", "y"))
        nu = check_isomorphic(ts, ts2, {"a": "y", "b": "x"})
        self.assertEqual(nu, {"q0": "s0", "q1": "s2", "q2": "s1", "q3": "s3"})

    def test_extra_phi_entries_are_ignored(self):
        ts = square()
        self.assertIsNotNone(check_isomorphic(ts, ts, {"a": "a", "b": "b", "unused": "zzz"}))

    def test_not_isomorphic(self):
        ts = square()
        smaller = StepTransitionSystem(
            ["a", "b"], ["q0", "q1"], [("q0", {"a": 1}, "q1"), ("q0", {"b": 1}, "q1")], "q0"
        )
        self.assertIsNone(check_isomorphic(ts, smaller, {"a": "a", "b": "b"}))

    def test_state_merging_is_detected(self):
        # same labels everywhere, but q1 and q2 coincide in the second system
        ts = square()
        merged = StepTransitionSystem(
            ["a", "b"],
            ["q0", "q1", "q3"],
            [
                ("q0", {"a": 1}, "q1"),
                ("q0", {"b": 1}, "q1"),
                ("q0", {"a": 1, "b": 1}, "q3"),
                ("q1", {"b": 1}, "q3"),
                ("q1", {"a": 1}, "q3"),
            ],
            "q0",
        )
        self.assertIsNone(check_isomorphic(ts, merged, {"a": "a", "b": "b"}))

    def test_phi_must_be_a_bijection(self):
        ts = square()
        with self.assertRaises(UserInputError):
            check_isomorphic(ts, ts, {"a": "a"})
        with self.assertRaises(UserInputError):
            check_isomorphic(ts, ts, {"a": "a", "b": "a"})

    def test_nondeterminism_is_rejected(self):
        ts = StepTransitionSystem(
            ["a"], ["q0", "q1"], [("q0", {"a": 1}, "q0"), ("q0", {"a": 1}, "q1")], "q0"
        )
        with self.assertRaises(UserInputError):
            check_isomorphic(ts, ts, {"a": "a"})


if __name__ == '__main__':
    unittest.main()
