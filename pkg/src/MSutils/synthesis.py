# region-based synthesis of PTL-nets and basic membrane systems
#
# This file decides whether a step transition system is, up to isomorphism,
# the concurrent reachability graph of some PTL-net spanned over a given
# membrane structure (with given action locations and execution mode), and
# constructs such a net from witness regions when it is. The construction is
# certified by rebuilding the reachability graph of the net and comparing it
# with the input.
#
# Requirements:
# * Python 3
# * NumPy [https://numpy.org]
# * joblib (only when checking states in parallel)
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Set, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from MSutils.exceptions import UserInputError, Violation
from MSutils.logger import get_logger
from MSutils.membrane_structure import MembraneStructure
from MSutils.membrane_system import BasicMembraneSystem
from MSutils.modes import ExplorationLimits, Mode
from MSutils.multiset import Multiset
from MSutils.ptl_net import PtlNet
from MSutils.regions import (
    Region,
    build_system,
    extreme_rays,
    filter_compatible,
    locality_witnesses,
)
from MSutils.transition_system import StepTransitionSystem, check_isomorphic
from MSutils.translate import ptl_to_bms

logger = get_logger(__name__)

SEPARATION = "separation"
CLOSURE = "closure"
CERTIFICATE = "certificate"
INVALID = "invalid"


@dataclass
class SynthesisProblem:
    """Find a PTL-net over mu whose CRG in ``mode`` is isomorphic to ``ts``.

    ``loc`` gives the membrane of every action of ts.
    """

    ts: StepTransitionSystem
    mu: MembraneStructure
    loc: Mapping[str, int]
    mode: Mode = Mode.LMAX

    def __post_init__(self) -> None:
        self.mode = Mode.parse(self.mode)
        self.loc = dict(self.loc)

    def validate(self) -> List[Violation]:
        violations = list(self.ts.validate())
        violations += [
            Violation(v.kind, f"structure {v.subject}", v.detail) for v in self.mu.validate_tree()
        ]
        for a in self.ts.actions:
            if a not in self.loc:
                violations.append(Violation("location", str(a), "action has no location"))
            elif self.loc[a] not in self.mu.membranes():
                violations.append(
                    Violation("location", str(a), f"membrane {self.loc[a]} is not in the structure")
                )
        return violations


@dataclass
class SynthesisSuccess:
    """A solution net; ``witnesses[k]`` is the region behind place ``p{k}``."""

    net: PtlNet
    witnesses: List[Tuple[Region, str]]
    certificate: Dict[str, str]
    n_regions: int = 0

    ok = True

    def to_json(self) -> dict:
        return {
            "outcome": "success",
            "places": {
                f"p{k}": dict(region.to_json(), reason=reason)
                for k, (region, reason) in enumerate(self.witnesses)
            },
            "certificate": dict(sorted(self.certificate.items())),
            "compatible_regions": self.n_regions,
        }


@dataclass
class SynthesisFailure:
    """Why synthesis is impossible (or why the construction was rejected).

    For ``separation`` failures ``pair`` holds the two states no region tells
    apart; for ``closure`` failures ``state`` and ``step`` give a step in the
    symmetric difference of the region enabled and the specified steps.
    """

    cause: str
    detail: str
    pair: Optional[Tuple[str, str]] = None
    state: Optional[str] = None
    step: Optional[Multiset] = None
    violations: List[Violation] = field(default_factory=list)

    ok = False

    def to_json(self) -> dict:
        out: dict = {"outcome": "failure", "cause": self.cause, "detail": self.detail}
        if self.pair is not None:
            out["pair"] = list(self.pair)
        if self.state is not None:
            out["state"] = self.state
        if self.step is not None:
            out["step"] = self.step.to_json()
        if self.violations:
            out["violations"] = [str(v) for v in self.violations]
        return out


SynthesisOutcome = Union[SynthesisSuccess, SynthesisFailure]


def compatible_regions(problem: SynthesisProblem, backend: str = "dd") -> List[Region]:
    """The extreme rays of the region system that are compatible with mu, with locations."""
    rays = extreme_rays(build_system(problem.ts), backend=backend)
    regions = filter_compatible(rays, problem.ts, problem.mu, problem.loc)
    logger.info(f"{len(regions)} of {len(rays)} extreme rays are compatible with the membrane structure")
    return regions


def check_state_separation(
    problem: SynthesisProblem, regions: Sequence[Region]
) -> Tuple[Dict[Tuple[str, str], Region], Optional[Tuple[str, str]]]:
    """Find a region telling apart every pair of distinct states.

    Returns the witness of each pair (in state order) and the first pair
    without a witness, or None when all states are separated.
    """
    witnesses: Dict[Tuple[str, str], Region] = {}
    for q, r in combinations(problem.ts.states, 2):
        witness = next((g for g in regions if g.sigma[q] != g.sigma[r]), None)
        if witness is None:
            return witnesses, (q, r)
        witnesses[(q, r)] = witness
    return witnesses, None


def _blocker_tables(
    actions: Sequence[str], blockers: Sequence[Region], q: str
) -> Tuple[np.ndarray, np.ndarray]:
    weights = np.array(
        [[b.omega[a] for a in actions] for b in blockers], dtype=object
    ).reshape(len(blockers), len(actions))
    tokens = np.array([b.sigma[q] for b in blockers], dtype=object)
    return weights, tokens


def _region_steps(
    actions: Sequence[str], blockers: Sequence[Region], q: str, bound: int
) -> Tuple[FrozenSet[Multiset], Set[int]]:
    """RS_q and the indices of the blockers that cut a candidate step.

    Steps are grown breadth-first by size. Blocking is upward closed, so only
    unblocked steps are extended, each by actions no smaller than its last
    one in canonical order.
    """
    weights, tokens = _blocker_tables(actions, blockers, q)
    found: List[Multiset] = []
    used: Set[int] = set()
    level = [(Multiset(), np.zeros(len(blockers), dtype=object), 0)]
    for _ in range(bound):
        next_level = []
        for step, consumed, last in level:
            for k in range(last, len(actions)):
                total = consumed + weights[:, k]
                over = [b for b in range(len(blockers)) if total[b] > tokens[b]]
                if over:
                    used.add(over[0])
                    continue
                child = step.with_added(actions[k])
                found.append(child)
                next_level.append((child, total, k))
        level = next_level
        if not level:
            break
    return frozenset(found), used


def _blockers(problem: SynthesisProblem, regions: Sequence[Region]) -> List[Region]:
    return list(regions) + locality_witnesses(problem.ts, problem.mu, problem.loc)


def _step_bound(problem: SynthesisProblem) -> int:
    return problem.mu.degree * problem.ts.max_step_size()


def region_enabled_steps(
    problem: SynthesisProblem, regions: Sequence[Region], q: str
) -> FrozenSet[Multiset]:
    """RS_q: nonempty steps of size at most m*Max that no region blocks at q.

    A region blocks alpha at q when sigma(q) < omega(alpha). The locality
    witnesses are always added to ``regions``.
    """
    problem.ts.state_index(q)
    steps, _ = _region_steps(list(problem.ts.actions), _blockers(problem, regions), q, _step_bound(problem))
    return steps


def _expected_steps(problem: SynthesisProblem, steps: FrozenSet[Multiset]) -> FrozenSet[Multiset]:
    """The steps a net with region enabled steps ``steps`` would perform in the problem's mode."""
    if problem.mode is Mode.FREE:
        return steps
    actions = list(problem.ts.actions)
    kept = []
    for alpha in steps:
        if problem.mode is Mode.MAX:
            extenders = actions
        else:
            here = {problem.loc[a] for a in alpha}
            extenders = [a for a in actions if problem.loc[a] in here]
        if not any(alpha.with_added(a) in steps for a in extenders):
            kept.append(alpha)
    return frozenset(kept)


def _closure_at(
    problem: SynthesisProblem, blockers: Sequence[Region], q: str
) -> Tuple[Optional[Multiset], Set[int]]:
    steps, used = _region_steps(list(problem.ts.actions), blockers, q, _step_bound(problem))
    expected = _expected_steps(problem, steps)
    actual = problem.ts.enabled_steps(q)
    mismatch = sorted(expected ^ actual, key=lambda s: (s.size, s.canonical()))
    return (mismatch[0] if mismatch else None), used


def _check_closure(
    problem: SynthesisProblem, blockers: Sequence[Region], n_jobs: int
) -> Tuple[Optional[Tuple[str, Multiset]], Set[int]]:
    states = problem.ts.states
    if n_jobs == 1:
        results = [_closure_at(problem, blockers, q) for q in states]
    else:
        results = Parallel(n_jobs=n_jobs)(delayed(_closure_at)(problem, blockers, q) for q in states)
    used: Set[int] = set()
    for q, (step, used_here) in zip(states, results):
        if step is not None:
            return (q, step), used
        used |= used_here
    return None, used


def check_forward_closure(
    problem: SynthesisProblem, regions: Sequence[Region], n_jobs: int = 1
) -> Optional[Tuple[str, Multiset]]:
    """Compare the region enabled steps with the specified steps at every state.

    Under free the two sets must coincide, under max the specified steps
    must be the maximal region enabled steps, and under lmax those that
    cannot be extended by a co-located action. Returns None on success and
    otherwise the first state with a step in the symmetric difference.
    """
    failure, _ = _check_closure(problem, _blockers(problem, regions), n_jobs)
    return failure


def _build_net(problem: SynthesisProblem, places: Sequence[Region]) -> PtlNet:
    q0 = problem.ts.initial
    names = [f"p{k}" for k in range(len(places))]
    pre: Dict[str, Dict[str, int]] = {a: {} for a in problem.ts.actions}
    post: Dict[str, Dict[str, int]] = {a: {} for a in problem.ts.actions}
    for p, region in zip(names, places):
        for a, w in region.omega.items():
            pre[a][p] = w
        for a, w in region.iota.items():
            post[a][p] = w
    location: Dict[str, int] = {p: region.location for p, region in zip(names, places)}
    location.update({a: problem.loc[a] for a in problem.ts.actions})
    initial = {p: region.sigma[q0] for p, region in zip(names, places)}
    return PtlNet(names, problem.ts.actions, pre, post, initial, location=location, structure=problem.mu)


def _certify(problem: SynthesisProblem, net: PtlNet) -> Tuple[Optional[Dict[str, str]], str]:
    h = len(problem.ts.states)
    limits = ExplorationLimits(max_states=h + 1, max_depth=h + 1)
    crg, truncated = net.reachability_graph(problem.mode, limits)
    if truncated:
        return None, f"the net reaches more than {h} markings"
    if len(crg.states) != h:
        return None, f"the net reaches {len(crg.states)} markings, expected {h}"
    try:
        nu = check_isomorphic(crg, problem.ts, {a: a for a in problem.ts.actions})
    except UserInputError as e:
        return None, str(e)
    if nu is None:
        return None, "the reachability graph of the net is not isomorphic to the input"
    return nu, ""


def synthesize(problem: SynthesisProblem, backend: str = "dd", n_jobs: int = 1) -> SynthesisOutcome:
    """Solve the synthesis problem.

    On success the net has one place per witness region (separation
    witnesses, regions that blocked a candidate step, and the locality
    witnesses), deduplicated. The place of region (sigma, iota, omega)
    holds sigma(q0) tokens, has W(p, t) = omega(t) and W(t, p) = iota(t),
    and lives in the region's location.
    """
    violations = problem.validate()
    if violations:
        logger.warning(f"synthesis input is invalid: {len(violations)} violations")
        return SynthesisFailure(INVALID, "the synthesis problem is invalid", violations=violations)

    regions = compatible_regions(problem, backend=backend)
    separating, pair = check_state_separation(problem, regions)
    if pair is not None:
        logger.warning(f"no compatible region separates {pair[0]} and {pair[1]}")
        return SynthesisFailure(
            SEPARATION, f"no region separates states {pair[0]} and {pair[1]}", pair=pair
        )

    blockers = _blockers(problem, regions)
    failure, used = _check_closure(problem, blockers, n_jobs)
    if failure is not None:
        q, step = failure
        logger.warning(f"forward closure fails at {q} on step {step.canonical()}")
        return SynthesisFailure(
            CLOSURE,
            f"at state {q} the step {step.canonical()} is region enabled in mode "
            f"{problem.mode} but not specified, or vice versa",
            state=q,
            step=step,
        )

    candidates: List[Tuple[Region, str]] = [
        (region, f"separates {q} and {r}") for (q, r), region in separating.items()
    ]
    candidates += [(blockers[k], "blocks a step") for k in sorted(used)]
    candidates += [
        (region, f"locality of membrane {region.location}")
        for region in locality_witnesses(problem.ts, problem.mu, problem.loc)
    ]
    chosen: Dict[Tuple[Multiset, Multiset, Multiset], Tuple[Region, str]] = {}
    for region, reason in candidates:
        chosen.setdefault(region.key(), (region, reason))
    witnesses = list(chosen.values())
    net = _build_net(problem, [region for region, _ in witnesses])
    logger.info(f"constructed net with {len(net.places)} places from {len(regions)} compatible regions")

    nu, reason = _certify(problem, net)
    if nu is None:
        logger.warning(f"certificate check failed: {reason}")
        return SynthesisFailure(CERTIFICATE, reason)
    logger.info("certificate check passed: the net reproduces the transition system")
    return SynthesisSuccess(net, witnesses, nu, len(regions))


def synthesize_bms(
    problem: SynthesisProblem, backend: str = "dd", n_jobs: int = 1
) -> Union[BasicMembraneSystem, SynthesisFailure]:
    """Synthesize a net and turn it into a basic membrane system.

    Rules are named after the actions of the transition system, so the CRG
    of the system is isomorphic to ts under the identity on actions.
    """
    outcome = synthesize(problem, backend=backend, n_jobs=n_jobs)
    if not outcome.ok:
        return outcome
    bms, _ = ptl_to_bms(outcome.net, problem.mu)
    return bms
