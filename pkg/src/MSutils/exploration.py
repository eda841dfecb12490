# breadth-first state space exploration
#
# This file defines the explorer used to build concurrent reachability graphs
# of PTL-nets and basic membrane systems. States are identified by a canonical
# string key, so the graph does not depend on the order in which successors
# happen to be produced.
#
# Requirements:
# * Python 3
# * joblib (only when expanding levels in parallel)
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Tuple

from joblib import Parallel, delayed

from MSutils.logger import get_logger
from MSutils.modes import ExplorationLimits
from MSutils.multiset import Multiset

logger = get_logger(__name__)

Successors = Callable[[Any], Iterable[Tuple[Multiset, Any]]]


@dataclass
class ExplorationResult:
    """Raw output of an exploration, before it is wrapped in a transition system.

    ``order`` lists state keys in discovery order (initial state first),
    ``values`` maps keys back to markings/configurations and ``arcs`` holds
    (source key, step, target key) triples of all expanded states.
    """

    order: List[str] = field(default_factory=list)
    values: Dict[str, Any] = field(default_factory=dict)
    arcs: List[Tuple[str, Multiset, str]] = field(default_factory=list)
    expanded: int = 0
    truncated: bool = False


def _expand(successors: Successors, value: Any) -> List[Tuple[Multiset, Any]]:
    return list(successors(value))


def _has_successor(successors: Successors, value: Any) -> bool:
    for _ in successors(value):
        return True
    return False


def explore(
    initial: Any,
    key: Callable[[Any], str],
    successors: Successors,
    limits: ExplorationLimits,
    n_jobs: int = 1,
) -> ExplorationResult:
    """Explore the graph reachable from ``initial`` level by level.

    Every state of depth below ``limits.max_depth`` is expanded, unless
    ``limits.max_states`` states are already known when its turn comes.
    Once that many states are known, newly discovered states are dropped
    together with the arcs leading to them. The result is truncated when a
    state was dropped or some unexpanded state has a successor.
    """
    res = ExplorationResult()
    k0 = key(initial)
    res.order.append(k0)
    res.values[k0] = initial
    level = [k0]
    depth = 0
    unexpanded: List[str] = []
    dropped = False
    while level:
        if depth >= limits.max_depth:
            unexpanded.extend(level)
            break
        if n_jobs == 1:
            expansions = [_expand(successors, res.values[k]) for k in level]
        else:
            expansions = Parallel(n_jobs=n_jobs)(
                delayed(_expand)(successors, res.values[k]) for k in level
            )
        next_level: List[str] = []
        for i, (source, succ) in enumerate(zip(level, expansions)):
            if len(res.values) >= limits.max_states:
                unexpanded.extend(level[i:])
                break
            res.expanded += 1
            for step, value in succ:
                target = key(value)
                if target not in res.values:
                    if len(res.values) >= limits.max_states:
                        # new states beyond the cap are dropped with their arcs
                        dropped = True
                        continue
                    res.values[target] = value
                    res.order.append(target)
                    next_level.append(target)
                res.arcs.append((source, step, target))
        else:
            level = next_level
            depth += 1
            continue
        unexpanded.extend(next_level)
        break
    res.truncated = dropped or any(_has_successor(successors, res.values[k]) for k in unexpanded)
    return res
