# translations between membrane systems and PTL-nets
#
# This file converts a basic membrane system into a PTL-net spanned over its
# membrane structure and back. Each translation returns, next to the model, a
# TranslationMaps object holding the action correspondence (transition <->
# rule) and the place correspondence (place <-> object in a membrane), which
# convert markings to configurations and steps to vector multi-rules.
#
# Requirements:
# * Python 3
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from MSutils.exceptions import ParseError, UserInputError, ValidationError
from MSutils.logger import get_logger
from MSutils.membrane_structure import MembraneStructure, Relation
from MSutils.membrane_system import (
    BasicMembraneSystem,
    Configuration,
    EvolutionRule,
    IndexedObject,
    VectorMultiRule,
)
from MSutils.multiset import Multiset
from MSutils.ptl_net import PtlNet, check_spanned

logger = get_logger(__name__)


def place_name(obj: str, membrane: int) -> str:
    return f"p^{obj}_{membrane}"


def transition_name(rule: str, membrane: int) -> str:
    return f"t^{rule}_{membrane}"


@dataclass
class TranslationMaps:
    """Correspondence between a PTL-net and a basic membrane system.

    Attributes:
        action_map: transition -> rule name (bijective).
        places: place -> (object, membrane); a marking M corresponds to the
            configuration with w_j(a) = M(p) for places(p) = (a, j).
        action_locations: transition -> membrane of its rule.
        degree: degree of the membrane structure.
    """

    action_map: Dict[str, str]
    places: Dict[str, Tuple[str, int]]
    action_locations: Dict[str, int]
    degree: int
    _place_of: Dict[Tuple[str, int], str] = field(init=False, repr=False)
    _transition_of: Dict[str, str] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._place_of = {pair: p for p, pair in self.places.items()}
        self._transition_of = {r: t for t, r in self.action_map.items()}
        if len(self._place_of) != len(self.places):
            raise UserInputError("Place map is not injective.")
        if len(self._transition_of) != len(self.action_map):
            raise UserInputError("Action map is not injective.")

    @property
    def inverse_action_map(self) -> Dict[str, str]:
        return dict(self._transition_of)

    def marking_to_config(self, marking: Multiset) -> Configuration:
        parts: List[Dict[str, int]] = [{} for _ in range(self.degree)]
        for p, k in marking.items():
            if p not in self.places:
                raise UserInputError(f"Place {p!r} has no counterpart object.")
            obj, j = self.places[p]
            parts[j - 1][obj] = k
        return Configuration(tuple(Multiset(w) for w in parts))

    def config_to_marking(self, config: Configuration) -> Multiset:
        if config.degree != self.degree:
            raise UserInputError(f"Configuration has {config.degree} components, expected {self.degree}.")
        counts: Dict[str, int] = {}
        for j, w in enumerate(config, start=1):
            for obj, k in w.items():
                try:
                    counts[self._place_of[(obj, j)]] = k
                except KeyError:
                    raise UserInputError(f"Object {obj!r} of membrane {j} has no counterpart place.")
        return Multiset(counts)

    def step_to_vector(self, step: Multiset) -> VectorMultiRule:
        parts: List[Dict[str, int]] = [{} for _ in range(self.degree)]
        for t, k in step.items():
            if t not in self.action_map:
                raise UserInputError(f"Transition {t!r} has no counterpart rule.")
            parts[self.action_locations[t] - 1][self.action_map[t]] = k
        return VectorMultiRule(tuple(Multiset(r) for r in parts))

    def vector_to_step(self, vector: VectorMultiRule) -> Multiset:
        try:
            return vector.flatten().map_image(self._transition_of)
        except UserInputError:
            raise UserInputError(f"Vector multi-rule {vector.canonical()} names an unknown rule.")

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "phi": dict(sorted(self.action_map.items())),
            "locations": dict(sorted(self.action_locations.items())),
            "places": {p: {"object": a, "membrane": j} for p, (a, j) in sorted(self.places.items())},
        }

    @classmethod
    def from_json(cls, obj: dict, path: Optional[str] = None) -> "TranslationMaps":
        try:
            return cls(
                action_map={str(t): str(r) for t, r in obj["phi"].items()},
                places={str(p): (str(v["object"]), int(v["membrane"])) for p, v in obj["places"].items()},
                action_locations={str(t): int(i) for t, i in obj["locations"].items()},
                degree=int(obj["degree"]),
            )
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise ParseError(f"malformed translation maps ({e!r})", path=path)


def marking_to_config(maps: TranslationMaps, marking: Multiset) -> Configuration:
    return maps.marking_to_config(marking)


def config_to_marking(maps: TranslationMaps, config: Configuration) -> Multiset:
    return maps.config_to_marking(config)


def step_to_vector(maps: TranslationMaps, step: Multiset) -> VectorMultiRule:
    return maps.step_to_vector(step)


def vector_to_step(maps: TranslationMaps, vector: VectorMultiRule) -> Multiset:
    return maps.vector_to_step(vector)


def bms_to_ptl(bms: BasicMembraneSystem) -> Tuple[PtlNet, TranslationMaps]:
    """Translate a basic membrane system into a PTL-net spanned over its structure.

    Every object a and membrane j give a place p^a_j located in j, and every
    rule r of membrane i gives a transition t^r_i located in i. The input
    weights are the left-hand side of r on the places of membrane i; the
    output weights route each indexed object of the right-hand side to the
    place of its destination membrane.
    """
    violations = bms.validate()
    if violations:
        raise ValidationError("Cannot translate an invalid membrane system", violations)
    mu = bms.structure
    places: Dict[str, Tuple[str, int]] = {
        place_name(a, j): (a, j) for j in mu.membranes() for a in bms.objects
    }
    location: Dict[str, int] = {p: j for p, (_, j) in places.items()}
    pre: Dict[str, Dict[str, int]] = {}
    post: Dict[str, Dict[str, int]] = {}
    action_map: Dict[str, str] = {}
    action_locations: Dict[str, int] = {}
    for rule in bms.rules():
        i = rule.membrane
        t = transition_name(rule.name, i)
        action_map[t] = rule.name
        action_locations[t] = i
        location[t] = i
        pre[t] = {place_name(a, i): k for a, k in rule.lhs.items()}
        out: Dict[str, int] = {}
        for symbol, k in rule.rhs.items():
            p = place_name(symbol.obj, bms.destination(i, symbol))
            out[p] = out.get(p, 0) + k
        post[t] = out
    initial = {
        place_name(a, j): k for j, w in enumerate(bms.initial, start=1) for a, k in w.items()
    }
    net = PtlNet(places, action_map, pre, post, initial, location=location, structure=mu)
    maps = TranslationMaps(action_map, places, action_locations, mu.degree)
    logger.debug(f"translated {bms} into {net}")
    return net, maps


def ptl_to_bms(net: PtlNet, mu: MembraneStructure) -> Tuple[BasicMembraneSystem, TranslationMaps]:
    """Translate a PTL-net spanned over mu into a basic membrane system.

    The places become the objects. A transition t located in membrane i
    becomes the rule t of membrane i consuming its input places and sending
    each output place p here, out or in, depending on where p is located
    relative to i.
    """
    violations = check_spanned(net, mu) + [v for v in net.validate() if v.kind != "location"]
    if violations:
        raise ValidationError("Net is not spanned over the membrane structure", violations)
    rules: List[EvolutionRule] = []
    for t in net.transitions:
        i = net.location[t]
        rhs: Dict[IndexedObject, int] = {}
        for p, k in net.post[t].items():
            j = net.location[p]
            rel = mu.relation(i, j)
            if rel is Relation.SAME:
                symbol = IndexedObject.here(p)
            elif rel is Relation.CHILD_OF:
                symbol = IndexedObject.out(p)
            else:
                symbol = IndexedObject.into(p, j)
            rhs[symbol] = k
        rules.append(EvolutionRule(t, i, net.pre[t], Multiset(rhs)))
    places = {p: (p, net.location[p]) for p in net.places}
    parts: List[Dict[str, int]] = [{} for _ in mu.membranes()]
    for p, k in net.initial_marking.items():
        parts[net.location[p] - 1][p] = k
    bms = BasicMembraneSystem(
        net.places, mu, Configuration(tuple(Multiset(w) for w in parts)), rules
    )
    maps = TranslationMaps(
        {t: t for t in net.transitions},
        places,
        {t: net.location[t] for t in net.transitions},
        mu.degree,
    )
    logger.debug(f"translated {net} into {bms}")
    return bms, maps
