# step transition systems
#
# This file defines the StepTransitionSystem class: a finite rooted graph whose
# arcs are labelled by steps (multisets of actions). It serves both as the
# behavioural specification handed to synthesis and as the output format of
# concurrent reachability graph construction.
#
# Requirements:
# * Python 3
# * NetworkX [https://networkx.org]
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import networkx as nx

from MSutils.exceptions import UserInputError, Violation
from MSutils.multiset import EMPTY, Alphabet, Multiset


@dataclass(frozen=True)
class Arc:
    source: str
    step: Multiset
    target: str


class StepTransitionSystem:
    """A step transition system TS = (Q, A, q0) over a finite set of actions.

    States are strings. The initial state is always ``states[0]``; the order of
    the remaining states is kept as given and fixes the state indices used by
    the region system. Empty-step self-loops are implicit: they are never
    stored, and an explicit empty-step self-loop passed to the constructor is
    dropped. Explicit empty-step arcs between distinct states are kept so that
    ``validate`` can report them.

    Instances are treated as immutable after construction.
    """

    def __init__(
        self,
        actions: Iterable[str],
        states: Iterable[str],
        arcs: Iterable[Tuple[str, Multiset, str]],
        initial: str,
    ) -> None:
        self.actions = Alphabet("actions", actions)
        ordered = list(dict.fromkeys(states))
        if initial not in ordered:
            raise UserInputError(f"Initial state {initial!r} is not a state.")
        ordered.remove(initial)
        self.states: Tuple[str, ...] = (initial, *ordered)
        self.initial = initial
        self._index = {q: i for i, q in enumerate(self.states)}

        kept: List[Arc] = []
        seen = set()
        self._out: Dict[str, List[Arc]] = {q: [] for q in self.states}
        for item in arcs:
            arc = item if isinstance(item, Arc) else Arc(item[0], Multiset(item[1]), item[2])
            for q in (arc.source, arc.target):
                if q not in self._index:
                    raise UserInputError(f"Arc {arc} refers to unknown state {q!r}.")
            self.actions.check(arc.step, f"step of arc {arc.source}->{arc.target}")
            if arc.step.is_empty() and arc.source == arc.target:
                continue
            if arc in seen:
                continue
            seen.add(arc)
            kept.append(arc)
            self._out[arc.source].append(arc)
        self.arcs: Tuple[Arc, ...] = tuple(kept)

    def __repr__(self) -> str:
        return (
            f"StepTransitionSystem(states={len(self.states)}, arcs={len(self.arcs)}, "
            f"actions={len(self.actions)}, initial={self.initial!r})"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StepTransitionSystem):
            return NotImplemented
        return (
            self.actions == other.actions
            and self.states == other.states
            and set(self.arcs) == set(other.arcs)
        )

    def state_index(self, q: str) -> int:
        self._require(q)
        return self._index[q]

    def _require(self, q: str) -> None:
        if q not in self._index:
            raise UserInputError(f"Unknown state {q!r}.")

    def arcs_from(self, q: str) -> Tuple[Arc, ...]:
        self._require(q)
        return tuple(self._out[q])

    def enabled_steps(self, q: str) -> FrozenSet[Multiset]:
        """AS_q: the nonempty steps labelling arcs leaving q."""
        self._require(q)
        return frozenset(a.step for a in self._out[q] if not a.step.is_empty())

    def successor(self, q: str, step: Multiset) -> Optional[str]:
        """Target of the arc leaving q labelled by step (q itself for the empty step)."""
        self._require(q)
        if step.is_empty():
            return q
        for arc in self._out[q]:
            if arc.step == step:
                return arc.target
        return None

    def max_step_size(self) -> int:
        """Max, the largest size of a step labelling an arc (0 without arcs)."""
        return max((a.step.size for a in self.arcs), default=0)

    def empty_self_loops(self) -> Tuple[Arc, ...]:
        return tuple(Arc(q, EMPTY, q) for q in self.states)

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.states)
        for arc in self.arcs:
            graph.add_edge(arc.source, arc.target, step=arc.step)
        return graph

    def validate(self) -> List[Violation]:
        return validate(self)


def validate(ts: StepTransitionSystem) -> List[Violation]:
    """Check the four axioms of step transition systems.

    Returns one violation per offending state/arc/action; an empty list
    means that ts is deterministic, fully reachable, uses every action and
    has empty steps only as (implicit) self-loops.
    """
    violations: List[Violation] = []
    for q in ts.states:
        targets: Dict[Multiset, str] = {}
        for arc in ts.arcs_from(q):
            if arc.step in targets and targets[arc.step] != arc.target:
                violations.append(
                    Violation(
                        "determinism",
                        f"{q} on {arc.step.canonical()}",
                        f"leads to both {targets[arc.step]} and {arc.target}",
                    )
                )
            targets.setdefault(arc.step, arc.target)

    reachable = nx.descendants(ts.to_networkx(), ts.initial) | {ts.initial}
    for q in ts.states:
        if q not in reachable:
            violations.append(Violation("unreachable", q, "no path from the initial state"))

    used = set()
    for arc in ts.arcs:
        used.update(arc.step.support)
    for action in ts.actions:
        if action not in used:
            violations.append(Violation("unused-action", str(action), "occurs in no arc label"))

    for arc in ts.arcs:
        if arc.step.is_empty():
            violations.append(
                Violation(
                    "empty-step",
                    f"{arc.source}->{arc.target}",
                    "empty steps are only allowed as self-loops",
                )
            )
    return violations


def enabled_steps(ts: StepTransitionSystem, q: str) -> FrozenSet[Multiset]:
    return ts.enabled_steps(q)


def max_step_size(ts: StepTransitionSystem) -> int:
    return ts.max_step_size()


def _label_map(ts: StepTransitionSystem, q: str) -> Dict[Multiset, str]:
    out: Dict[Multiset, str] = {}
    for arc in ts.arcs_from(q):
        if arc.step in out and out[arc.step] != arc.target:
            raise UserInputError(
                f"Isomorphism checking needs deterministic systems; state {q!r} "
                f"has two arcs labelled {arc.step.canonical()}."
            )
        out[arc.step] = arc.target
    return out


def _restrict_bijection(
    ts: StepTransitionSystem, ts2: StepTransitionSystem, phi: Mapping[str, str]
) -> Dict[str, str]:
    missing = [a for a in ts.actions if a not in phi]
    if missing:
        raise UserInputError(
            "Action map is not total: no image for " + ", ".join(map(str, missing))
        )
    restricted = {a: phi[a] for a in ts.actions}
    images = list(restricted.values())
    if len(set(images)) != len(images):
        raise UserInputError("Action map is not injective.")
    if set(images) != ts2.actions.symbols:
        raise UserInputError(
            "Action map is not a bijection onto the actions of the second system.",
            hint="Its image must be exactly the second system's action set.",
        )
    return restricted


def check_isomorphic(
    ts: StepTransitionSystem, ts2: StepTransitionSystem, phi: Mapping[str, str]
) -> Optional[Dict[str, str]]:
    """Look for the state bijection nu with ts ~(phi, nu) ts2.

    phi is a map on actions; entries for symbols that are not actions of ts
    are ignored, and the restriction to the actions of ts must be a
    bijection onto the actions of ts2. Because both systems are deterministic
    and rooted, nu is forced arc by arc from nu(q0) = q0', so a synchronised
    breadth-first traversal either constructs it or finds a mismatch.

    Returns:
        nu as a dict from states of ts to states of ts2, or None if the
        systems are not isomorphic under phi.
    """
    phi = _restrict_bijection(ts, ts2, phi)
    nu: Dict[str, str] = {ts.initial: ts2.initial}
    used = {ts2.initial}
    queue = deque([ts.initial])
    while queue:
        q = queue.popleft()
        here = _label_map(ts, q)
        there = _label_map(ts2, nu[q])
        if len(here) != len(there):
            return None
        for step, target in here.items():
            image = step.map_image(phi)
            if image not in there:
                return None
            target2 = there[image]
            if target in nu:
                if nu[target] != target2:
                    return None
            else:
                if target2 in used:
                    return None
                nu[target] = target2
                used.add(target2)
                queue.append(target)
    if len(nu) != len(ts.states) or len(used) != len(ts2.states):
        return None
    return nu
