# membrane structures
#
# This file defines the MembraneStructure class: a rooted tree of degree m
# whose nodes are the membranes 1..m. Parent/child queries on the tree decide
# where rule outputs may be routed and which regions are compatible with the
# structure.
#
# Requirements:
# * Python 3
# * NetworkX [https://networkx.org]
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

from enum import Enum
from typing import Dict, List, Mapping, Optional, Tuple

import networkx as nx

from MSutils.exceptions import UserInputError, ValidationError, Violation


class Relation(str, Enum):
    """How membrane i stands to membrane j."""

    SAME = "same"
    PARENT_OF = "parent_of"
    CHILD_OF = "child_of"
    UNRELATED = "unrelated"


class MembraneStructure:
    """A membrane structure mu of degree m >= 1.

    The tree is given by its parent map (child -> parent) on the membranes
    1..m. The root need not be membrane 1; it is the unique membrane without
    a parent. A structure that is not a valid tree can still be constructed so
    that ``validate_tree`` can describe what is wrong with it, but the tree
    queries (depth, root) then raise.
    """

    def __init__(self, degree: int, parents: Optional[Mapping[int, int]] = None) -> None:
        if isinstance(degree, bool) or not isinstance(degree, int) or degree < 1:
            raise UserInputError(f"Degree must be a positive integer, got {degree!r}.")
        self.degree = degree
        self.parents: Dict[int, int] = {int(c): int(p) for c, p in (parents or {}).items()}
        self._children: Dict[int, Tuple[int, ...]] = {
            i: tuple(sorted(c for c, p in self.parents.items() if p == i))
            for i in self.membranes()
        }
        self._depth: Optional[Dict[int, int]] = None

    def __repr__(self) -> str:
        return f"MembraneStructure(degree={self.degree}, parents={self.parents})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MembraneStructure):
            return NotImplemented
        return self.degree == other.degree and self.parents == other.parents

    def __hash__(self) -> int:
        return hash((self.degree, tuple(sorted(self.parents.items()))))

    def membranes(self) -> range:
        return range(1, self.degree + 1)

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.membranes())
        graph.add_edges_from((p, c) for c, p in self.parents.items())
        return graph

    def validate_tree(self) -> List[Violation]:
        return validate_tree(self)

    def _require_valid(self) -> None:
        violations = validate_tree(self)
        if violations:
            raise ValidationError("Invalid membrane structure", violations)

    @property
    def root(self) -> int:
        roots = [i for i in self.membranes() if i not in self.parents]
        if len(roots) != 1:
            self._require_valid()
        return roots[0]

    def _check(self, i: int) -> None:
        if i not in self._children:
            raise UserInputError(f"Membrane {i!r} is out of range 1..{self.degree}.")

    def parent(self, i: int) -> Optional[int]:
        self._check(i)
        return self.parents.get(i)

    def children(self, i: int) -> Tuple[int, ...]:
        self._check(i)
        return self._children[i]

    def depth(self, i: int) -> int:
        """Distance of membrane i from the root."""
        self._check(i)
        if self._depth is None:
            self._require_valid()
            self._depth = nx.shortest_path_length(self.to_networkx(), self.root)
        return self._depth[i]

    def relation(self, i: int, j: int) -> Relation:
        return relation(self, i, j)

    def adjacent(self, i: int, j: int) -> bool:
        """True when i and j are the same membrane or joined by a tree edge."""
        return relation(self, i, j) is not Relation.UNRELATED

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "parents": {str(c): p for c, p in sorted(self.parents.items())},
        }


def validate_tree(mu: MembraneStructure) -> List[Violation]:
    """Check that the parent map is a single rooted tree on exactly 1..m."""
    violations: List[Violation] = []
    for child, parent in sorted(mu.parents.items()):
        for node in (child, parent):
            if not 1 <= node <= mu.degree:
                violations.append(
                    Violation("out-of-range", str(node), f"membranes are 1..{mu.degree}")
                )
        if child == parent:
            violations.append(Violation("cycle", str(child), "membrane is its own parent"))
    if violations:
        return violations

    roots = [i for i in mu.membranes() if i not in mu.parents]
    if len(roots) != 1:
        violations.append(
            Violation("root", ", ".join(map(str, roots)) or "none", "exactly one root expected")
        )
    graph = mu.to_networkx()
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        violations.append(
            Violation("cycle", " -> ".join(str(u) for u, _ in cycle), "parent map is cyclic")
        )
    if not violations and not nx.is_arborescence(graph):
        violations.append(Violation("disconnected", "tree", "not all membranes hang below the root"))
    return violations


def relation(mu: MembraneStructure, i: int, j: int) -> Relation:
    """Classify the pair (i, j): i is the same as, parent of, child of, or unrelated to j."""
    mu._check(i)
    mu._check(j)
    if i == j:
        return Relation.SAME
    if mu.parents.get(j) == i:
        return Relation.PARENT_OF
    if mu.parents.get(i) == j:
        return Relation.CHILD_OF
    return Relation.UNRELATED
