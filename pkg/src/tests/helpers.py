# random models shared by the property tests

from typing import Dict, List, Tuple

from MSutils.multiset import Multiset
from MSutils.ptl_net import PtlNet
from MSutils.transition_system import StepTransitionSystem


def random_step(rng, actions: List[str], max_size: int) -> Multiset:
    size = int(rng.integers(1, max_size + 1))
    return Multiset([actions[int(rng.integers(len(actions)))] for _ in range(size)])


def random_ts(rng, max_states: int = 4, max_actions: int = 3, max_size: int = 2) -> StepTransitionSystem:
    """A deterministic, fully reachable step transition system."""
    h = int(rng.integers(1, max_states + 1))
    n = int(rng.integers(1, max_actions + 1))
    states = [f"q{k}" for k in range(h)]
    actions = [chr(ord("a") + k) for k in range(n)]
    out: Dict[str, Dict[Multiset, str]] = {q: {} for q in states}

    def add(source: str, target: str) -> None:
        for _ in range(10):
            step = random_step(rng, actions, max_size)
            if step not in out[source]:
                out[source][step] = target
                return

    for k in range(1, h):
        add(states[int(rng.integers(k))], states[k])
    for _ in range(int(rng.integers(0, h + 2))):
        add(states[int(rng.integers(h))], states[int(rng.integers(h))])
    arcs: List[Tuple[str, Multiset, str]] = [
        (q, step, target) for q in states for step, target in out[q].items()
    ]
    return StepTransitionSystem(actions, states, arcs, "q0")


def random_net(rng, max_places: int = 4, max_transitions: int = 4, degree: int = 2) -> Tuple[PtlNet, Multiset]:
    """A net with located transitions, every transition consuming a token, and a random marking."""
    places = [f"p{k}" for k in range(int(rng.integers(2, max_places + 1)))]
    transitions = [f"t{k}" for k in range(int(rng.integers(2, max_transitions + 1)))]
    pre, post = {}, {}
    for t in transitions:
        inputs = rng.choice(len(places), size=int(rng.integers(1, 3)), replace=False)
        pre[t] = {places[int(k)]: int(rng.integers(1, 3)) for k in inputs}
        post[t] = {p: int(rng.integers(0, 3)) for p in places if rng.random() < 0.5}
    location = {t: int(rng.integers(1, degree + 1)) for t in transitions}
    marking = Multiset({p: int(rng.integers(0, 4)) for p in places})
    return PtlNet(places, transitions, pre, post, marking, location=location), marking
