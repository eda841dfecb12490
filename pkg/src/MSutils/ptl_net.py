# PT-nets with localities
#
# This file defines the PtlNet class: a place/transition net whose places and
# transitions carry a locality (membrane). Steps are executed under the free,
# max and lmax modes, and the concurrent reachability graph of the net can be
# explored for each mode.
#
# Requirements:
# * Python 3
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

from functools import partial
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

from MSutils.exceptions import NotEnabledError, UserInputError, ValidationError, Violation
from MSutils.exploration import explore
from MSutils.logger import get_logger
from MSutils.membrane_structure import MembraneStructure, Relation
from MSutils.modes import ExplorationLimits, Mode
from MSutils.multiset import EMPTY, Alphabet, Multiset, iter_fitting
from MSutils.transition_system import StepTransitionSystem

logger = get_logger(__name__)


class PtlNet:
    """A PTL-net (P, T, W, l, M0).

    The weight function is stored per transition: ``pre[t]`` is the multiset
    of places with W(p, t) > 0 and ``post[t]`` the multiset with W(t, p) > 0.
    ``location`` maps places and transitions to membranes; it may be partial
    (or empty) for nets used only under the free and max modes. When a
    membrane structure is attached, the location map must be total on it.
    """

    def __init__(
        self,
        places: Iterable[str],
        transitions: Iterable[str],
        pre: Mapping[str, Mapping[str, int]],
        post: Mapping[str, Mapping[str, int]],
        initial_marking: Mapping[str, int],
        location: Optional[Mapping[str, int]] = None,
        structure: Optional[MembraneStructure] = None,
    ) -> None:
        self.places = Alphabet("places", places)
        self.transitions = Alphabet("transitions", transitions)
        self.pre: Dict[str, Multiset] = {}
        self.post: Dict[str, Multiset] = {}
        for name, table in (("pre", pre), ("post", post)):
            unknown = [t for t in table if t not in self.transitions]
            if unknown:
                raise UserInputError(f"{name}-weights given for unknown transitions {unknown}.")
        for t in self.transitions:
            self.pre[t] = self.places.check(Multiset(pre.get(t, {})), f"pre-set of {t}")
            self.post[t] = self.places.check(Multiset(post.get(t, {})), f"post-set of {t}")
        self.initial_marking = self.places.check(Multiset(initial_marking), "initial marking")
        self.location: Dict[str, int] = dict(location or {})
        unknown = [x for x in self.location if x not in self.places and x not in self.transitions]
        if unknown:
            raise UserInputError(f"Locations given for unknown nodes {unknown}.")
        self.structure = structure

    def __repr__(self) -> str:
        return (
            f"PtlNet(places={len(self.places)}, transitions={len(self.transitions)}, "
            f"M0={self.initial_marking.canonical()})"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PtlNet):
            return NotImplemented
        return (
            self.places == other.places
            and self.transitions == other.transitions
            and self.pre == other.pre
            and self.post == other.post
            and self.initial_marking == other.initial_marking
            and self.location == other.location
        )

    def weight(self, source: str, target: str) -> int:
        """W(source, target) for place->transition or transition->place pairs."""
        if source in self.places and target in self.transitions:
            return self.pre[target][source]
        if source in self.transitions and target in self.places:
            return self.post[source][target]
        raise UserInputError(f"({source!r}, {target!r}) is not a place/transition pair.")

    def arcs(self) -> Iterator[Tuple[str, str, int]]:
        """All arcs (source, target, weight) with positive weight, in canonical order."""
        for t in self.transitions:
            for p, w in self.pre[t].items_sorted():
                yield p, t, w
            for p, w in self.post[t].items_sorted():
                yield t, p, w

    def locations_of(self, step: Multiset) -> FrozenSet[int]:
        return frozenset(self._location_of(t) for t in step)

    def _location_of(self, node: str) -> int:
        try:
            return self.location[node]
        except KeyError:
            raise UserInputError(
                f"{node!r} has no location.", hint="The lmax mode needs a location for every transition."
            )

    def validate(self) -> List[Violation]:
        """Check the net invariants (disjointness, input places, locations)."""
        violations: List[Violation] = []
        for x in sorted(self.places.symbols & self.transitions.symbols):
            violations.append(Violation("place-transition-overlap", x, "P and T must be disjoint"))
        for t in self.transitions:
            if self.pre[t].is_empty():
                violations.append(Violation("no-input-place", t, "every transition needs W(p,t) > 0 for some p"))
        if self.structure is not None:
            for x in list(self.places) + list(self.transitions):
                loc = self.location.get(x)
                if loc is None:
                    violations.append(Violation("location", x, "no location"))
                elif loc not in self.structure.membranes():
                    violations.append(
                        Violation("location", x, f"membrane {loc} is not in the structure")
                    )
        return violations

    def _require_steps_finite(self) -> None:
        empty = [t for t in self.transitions if self.pre[t].is_empty()]
        if empty:
            raise ValidationError(
                "Step enumeration needs every transition to consume a token",
                [Violation("no-input-place", t) for t in empty],
            )

    # step semantics

    def pre_post(self, step: Multiset) -> Tuple[Multiset, Multiset]:
        """The pre- and post-multisets of places of a step."""
        self.transitions.check(step, "step")
        pre, post = EMPTY, EMPTY
        for t, k in step.items():
            pre = pre + k * self.pre[t]
            post = post + k * self.post[t]
        return pre, post

    def is_enabled(self, marking: Multiset, step: Multiset, mode: Mode) -> bool:
        """Whether step is mode-enabled at marking.

        The empty step is always free- and lmax-enabled, and max-enabled only
        when no single transition is free-enabled.
        """
        mode = Mode.parse(mode)
        pre, _ = self.pre_post(step)
        if mode is Mode.LMAX:
            active = self.locations_of(step)
            candidates = [t for t in self.transitions if self._location_of(t) in active]
        else:
            candidates = list(self.transitions)
        if not pre <= marking:
            return False
        if mode is Mode.FREE:
            return True
        remaining = marking - pre
        return not any(self.pre[t] <= remaining for t in candidates)

    def iter_enabled_steps(self, marking: Multiset, mode: Mode) -> Iterator[Multiset]:
        mode = Mode.parse(mode)
        self._require_steps_finite()
        self.places.check(marking, "marking")
        for step, remaining in iter_fitting(list(self.transitions), self.pre, marking):
            if mode is Mode.FREE:
                yield step
                continue
            if mode is Mode.MAX:
                candidates = self.transitions
            else:
                active = self.locations_of(step)
                candidates = [t for t in self.transitions if self._location_of(t) in active]
            if not any(self.pre[t] <= remaining for t in candidates):
                yield step

    def enabled_steps(self, marking: Multiset, mode: Mode) -> FrozenSet[Multiset]:
        """All nonempty mode-enabled steps at marking."""
        return frozenset(self.iter_enabled_steps(marking, mode))

    def execute(self, marking: Multiset, step: Multiset) -> Multiset:
        """M' = M - pre(U) + post(U) for a free-enabled step U."""
        pre, post = self.pre_post(step)
        if not pre <= marking:
            raise NotEnabledError(
                f"Step {step.canonical()} is not free-enabled at {marking.canonical()}."
            )
        return (marking - pre) + post

    def reachability_graph(
        self,
        mode: Mode,
        limits: Optional[ExplorationLimits] = None,
        n_jobs: int = 1,
    ) -> Tuple[StepTransitionSystem, bool]:
        """Build CRG_mode of the net by breadth-first exploration from M0.

        States are canonical marking strings (``Multiset.from_canonical``
        recovers the marking). Returns the graph and whether a limit cut it
        short; unexpanded frontier states have no outgoing arcs.
        """
        mode = Mode.parse(mode)
        limits = limits or ExplorationLimits()
        if mode is Mode.LMAX:
            for t in self.transitions:
                self._location_of(t)
        res = explore(
            self.initial_marking,
            Multiset.canonical,
            partial(_net_successors, self, mode),
            limits,
            n_jobs=n_jobs,
        )
        used = sorted({t for _, step, _ in res.arcs for t in step})
        ts = StepTransitionSystem(used, res.order, res.arcs, res.order[0])
        logger.info(
            f"CRG_{mode} of net: {len(ts.states)} states, {len(ts.arcs)} arcs"
            + (", truncated" if res.truncated else "")
        )
        if res.truncated:
            logger.warning(f"CRG_{mode} exploration hit its limits {limits}.")
        return ts, res.truncated

    def check_spanned(self, mu: MembraneStructure) -> List[Violation]:
        return check_spanned(self, mu)


def _net_successors(net: PtlNet, mode: Mode, marking: Multiset) -> Iterator[Tuple[Multiset, Multiset]]:
    for step in net.iter_enabled_steps(marking, mode):
        yield step, net.execute(marking, step)


def check_spanned(net: PtlNet, mu: MembraneStructure) -> List[Violation]:
    """Check that the net is spanned over mu.

    Inputs must stay inside the transition's membrane; outputs may go to the
    same membrane or across one parent/child edge.
    """
    violations: List[Violation] = []
    membranes = set(mu.membranes())
    for x in list(net.places) + list(net.transitions):
        loc = net.location.get(x)
        if loc not in membranes:
            violations.append(
                Violation("location", x, "missing" if loc is None else f"membrane {loc} not in the structure")
            )
    if violations:
        return violations
    for p, t, _ in net.arcs():
        if p in net.places:
            if net.location[p] != net.location[t]:
                violations.append(
                    Violation(
                        "input-locality",
                        f"{p}->{t}",
                        f"place in membrane {net.location[p]}, transition in {net.location[t]}",
                    )
                )
        else:
            t, p = p, t
            if mu.relation(net.location[t], net.location[p]) is Relation.UNRELATED:
                violations.append(
                    Violation(
                        "output-relation",
                        f"{t}->{p}",
                        f"membranes {net.location[t]} and {net.location[p]} are not adjacent",
                    )
                )
    return violations
