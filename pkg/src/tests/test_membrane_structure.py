import unittest

from config.example_systems import get_three_membrane_structure
from MSutils.exceptions import UserInputError, ValidationError
from MSutils.membrane_structure import MembraneStructure, Relation, relation, validate_tree


class MembraneStructureTests(unittest.TestCase):
    def setUp(self):
        self.mu = get_three_membrane_structure()

    def test_tree_queries(self):
        mu = self.mu
        self.assertEqual(mu.root, 1)
        self.assertEqual(mu.children(1), (2, 3))
        self.assertEqual(mu.parent(2), 1)
        self.assertIsNone(mu.parent(1))
        self.assertEqual([mu.depth(i) for i in mu.membranes()], [0, 1, 1])
        self.assertEqual(validate_tree(mu), [])

    def test_relation(self):
        mu = self.mu
        self.assertIs(relation(mu, 1, 1), Relation.SAME)
        self.assertIs(relation(mu, 1, 2), Relation.PARENT_OF)
        self.assertIs(relation(mu, 3, 1), Relation.CHILD_OF)
        self.assertIs(relation(mu, 2, 3), Relation.UNRELATED)
        self.assertTrue(mu.adjacent(2, 1))
        self.assertFalse(mu.adjacent(2, 3))
        with self.assertRaises(UserInputError):
            relation(mu, 1, 4)

    def test_root_need_not_be_one(self):
        mu = MembraneStructure(3, {1: 2, 3: 1})
        self.assertEqual(mu.root, 2)
        self.assertEqual(mu.depth(3), 2)

    def test_single_membrane(self):
        mu = MembraneStructure(1)
        self.assertEqual(mu.validate_tree(), [])
        self.assertEqual(mu.children(1), ())

    def test_invalid_trees(self):
        self.assertEqual([v.kind for v in validate_tree(MembraneStructure(2))], ["root"])
        cyclic = MembraneStructure(3, {2: 3, 3: 2})
        self.assertEqual(sorted(v.kind for v in validate_tree(cyclic)), ["cycle"])
        self.assertEqual(
            [v.kind for v in validate_tree(MembraneStructure(2, {2: 5}))], ["out-of-range"]
        )
        self.assertEqual([v.kind for v in validate_tree(MembraneStructure(2, {2: 2}))], ["cycle"])
        with self.assertRaises(ValidationError):
            MembraneStructure(2).root

    def test_bad_degree(self):
        with self.assertRaises(UserInputError):
            MembraneStructure(0)

    def test_json(self):
        self.assertEqual(self.mu.to_json(), {"degree": 3, "parents": {"2": 1, "3": 1}})


if __name__ == '__main__':
    unittest.main()
