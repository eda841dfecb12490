# model files
#
# Readers and writers for the JSON model files: step transition systems
# (.sts), PTL-nets (.ptl), basic membrane systems (.bms), membrane structures,
# location maps, action maps and translation maps. Readers report malformed
# documents as ParseError with the path and the position inside the document
# (a JSON path such as ``arcs[3].step`` or a line/column for syntax errors).
# Writers emit sorted keys so that equal models give identical files.
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

import json
from collections import Counter
from typing import Any, Dict, List, Mapping, Optional, Union

from MSutils.exceptions import MSError, ParseError
from MSutils.logger import get_logger
from MSutils.membrane_structure import MembraneStructure
from MSutils.membrane_system import BasicMembraneSystem, EvolutionRule, IndexedObject
from MSutils.multiset import Multiset
from MSutils.ptl_net import PtlNet
from MSutils.transition_system import StepTransitionSystem
from MSutils.translate import TranslationMaps

logger = get_logger(__name__)

Model = Union[StepTransitionSystem, PtlNet, BasicMembraneSystem]


def read_json(path: str) -> Any:
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, path=path, location=f"line {e.lineno} column {e.colno}")
    except OSError as e:
        raise ParseError(f"cannot read file ({e.strerror})", path=path)


def write_json(path: str, obj: Any) -> None:
    with open(path, "w") as f:
        json.dump(obj, f, indent=2, sort_keys=True)
        f.write("\n")


def _field(obj: Any, key: str, where: str, kind: type) -> Any:
    if not isinstance(obj, dict):
        raise ParseError("expected an object", location=where or "document")
    if key not in obj:
        raise ParseError(f"missing key {key!r}", location=where or "document")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ParseError(f"expected {kind.__name__}, got {type(value).__name__}", location=_join(where, key))
    return value


def _join(where: str, key: Union[str, int]) -> str:
    if isinstance(key, int):
        return f"{where}[{key}]"
    return f"{where}.{key}" if where else key


def _located(fn, path: Optional[str], obj: Any):
    try:
        return fn(obj)
    except ParseError as e:
        if path and e.path is None:
            raise ParseError(e.reason, path=path, location=e.location)
        raise
    except MSError as e:
        raise ParseError(str(e), path=path)


# step transition systems


def ts_to_json(ts: StepTransitionSystem) -> dict:
    return {
        "actions": [str(a) for a in ts.actions],
        "states": list(ts.states),
        "initial": ts.initial,
        "arcs": [
            {"from": arc.source, "step": arc.step.to_json(), "to": arc.target} for arc in ts.arcs
        ],
    }


def ts_from_json(obj: Any) -> StepTransitionSystem:
    actions = _field(obj, "actions", "", list)
    states = _field(obj, "states", "", list)
    initial = _field(obj, "initial", "", str)
    arcs = []
    for k, arc in enumerate(_field(obj, "arcs", "", list)):
        where = _join("arcs", k)
        step = Multiset.from_json(_field(arc, "step", where, dict), _join(where, "step"))
        arcs.append((_field(arc, "from", where, str), step, _field(arc, "to", where, str)))
    return StepTransitionSystem(actions, states, arcs, initial)


# membrane structures


def structure_to_json(mu: MembraneStructure) -> dict:
    return mu.to_json()


def structure_from_json(obj: Any, where: str = "") -> MembraneStructure:
    degree = _field(obj, "degree", where, int)
    parents = obj.get("parents", {})
    if not isinstance(parents, dict):
        raise ParseError("expected an object", location=_join(where, "parents"))
    table = {}
    for child, parent in parents.items():
        if not str(child).isdigit() or isinstance(parent, bool) or not isinstance(parent, int):
            raise ParseError(f"bad parent entry {child!r}: {parent!r}", location=_join(where, "parents"))
        table[int(child)] = parent
    return MembraneStructure(degree, table)


# PTL-nets


def ptl_to_json(net: PtlNet) -> dict:
    out = {
        "places": [{"id": p, "location": net.location.get(p)} for p in net.places],
        "transitions": [{"id": t, "location": net.location.get(t)} for t in net.transitions],
        "arcs": [{"from": s, "to": t, "weight": w} for s, t, w in net.arcs()],
        "initial_marking": net.initial_marking.to_json(),
    }
    if net.structure is not None:
        out["structure"] = structure_to_json(net.structure)
    return out


def _nodes(obj: Any, key: str, location: Dict[str, int]) -> List[str]:
    ids = []
    for k, node in enumerate(_field(obj, key, "", list)):
        where = _join(key, k)
        name = _field(node, "id", where, str)
        loc = node.get("location")
        if loc is not None:
            if isinstance(loc, bool) or not isinstance(loc, int):
                raise ParseError("location must be an integer or null", location=_join(where, "location"))
            location[name] = loc
        ids.append(name)
    return ids


def ptl_from_json(obj: Any) -> PtlNet:
    location: Dict[str, int] = {}
    places = _nodes(obj, "places", location)
    transitions = _nodes(obj, "transitions", location)
    pre: Dict[str, Dict[str, int]] = {}
    post: Dict[str, Dict[str, int]] = {}
    place_set, transition_set = set(places), set(transitions)
    for k, arc in enumerate(_field(obj, "arcs", "", list)):
        where = _join("arcs", k)
        source = _field(arc, "from", where, str)
        target = _field(arc, "to", where, str)
        weight = _field(arc, "weight", where, int)
        if weight <= 0:
            raise ParseError("weight must be positive", location=_join(where, "weight"))
        if source in place_set and target in transition_set:
            table, t, p = pre, target, source
        elif source in transition_set and target in place_set:
            table, t, p = post, source, target
        else:
            raise ParseError(f"{source!r} -> {target!r} is not a place/transition arc", location=where)
        table.setdefault(t, {})
        table[t][p] = table[t].get(p, 0) + weight
    marking = Multiset.from_json(_field(obj, "initial_marking", "", dict), "initial_marking")
    structure = structure_from_json(obj["structure"], "structure") if "structure" in obj else None
    return PtlNet(places, transitions, pre, post, marking, location=location, structure=structure)


# basic membrane systems


def _target_to_json(symbol: IndexedObject) -> Union[str, dict]:
    return {"in": symbol.child} if symbol.target == "in" else symbol.target


def bms_to_json(bms: BasicMembraneSystem) -> dict:
    rules: Dict[str, list] = {}
    for i in bms.structure.membranes():
        rules[str(i)] = [
            {
                "name": rule.name,
                "lhs": rule.lhs.to_json(),
                "rhs": [
                    {"object": s.obj, "target": _target_to_json(s), "count": k}
                    for s, k in rule.rhs.items_sorted()
                ],
            }
            for rule in bms.rules(i)
        ]
    return {
        "objects": [str(a) for a in bms.objects],
        "structure": structure_to_json(bms.structure),
        "initial": bms.initial.to_json(),
        "rules": rules,
    }


def _indexed(entry: Any, where: str) -> IndexedObject:
    obj = _field(entry, "object", where, str)
    target = entry.get("target", "here")
    if target in ("here", "out"):
        return IndexedObject(obj, target)
    if isinstance(target, dict) and "in" in target and isinstance(target["in"], int):
        return IndexedObject.into(obj, target["in"])
    raise ParseError(f"bad target {target!r}", location=_join(where, "target"))


def bms_from_json(obj: Any) -> BasicMembraneSystem:
    objects = _field(obj, "objects", "", list)
    mu = structure_from_json(_field(obj, "structure", "", dict), "structure")
    initial = {}
    for i, w in _field(obj, "initial", "", dict).items():
        if not str(i).isdigit():
            raise ParseError(f"bad membrane id {i!r}", location="initial")
        initial[int(i)] = Multiset.from_json(w, _join("initial", str(i)))

    raw = []
    for i, entries in _field(obj, "rules", "", dict).items():
        if not str(i).isdigit() or not isinstance(entries, list):
            raise ParseError(f"bad rule list for membrane {i!r}", location="rules")
        for k, entry in enumerate(entries):
            where = _join(_join("rules", str(i)), k)
            name = _field(entry, "name", where, str)
            lhs = Multiset.from_json(_field(entry, "lhs", where, dict), _join(where, "lhs"))
            rhs: Dict[IndexedObject, int] = {}
            for n, item in enumerate(_field(entry, "rhs", where, list)):
                item_where = _join(_join(where, "rhs"), n)
                symbol = _indexed(item, item_where)
                count = item.get("count", 1)
                if isinstance(count, bool) or not isinstance(count, int) or count <= 0:
                    raise ParseError("count must be a positive integer", location=_join(item_where, "count"))
                rhs[symbol] = rhs.get(symbol, 0) + count
            raw.append((name, int(i), lhs, Multiset(rhs)))

    # rule names shared between membranes are qualified with the membrane id
    clashes = {name for name, n in Counter(name for name, *_ in raw).items() if n > 1}
    rules = []
    for name, i, lhs, rhs in raw:
        if name in clashes:
            logger.warning(f"rule name {name} occurs in several membranes; renamed to {name}@{i}")
            name = f"{name}@{i}"
        rules.append(EvolutionRule(name, i, lhs, rhs))
    return BasicMembraneSystem(objects, mu, initial, rules)


# maps


def locations_from_json(obj: Any) -> Dict[str, int]:
    if not isinstance(obj, dict):
        raise ParseError("expected an object mapping actions to membranes", location="document")
    for a, i in obj.items():
        if isinstance(i, bool) or not isinstance(i, int):
            raise ParseError("membrane must be an integer", location=str(a))
    return dict(obj)


def phi_from_json(obj: Any) -> Dict[str, str]:
    if not isinstance(obj, dict):
        raise ParseError("expected an object mapping actions to actions", location="document")
    for a, b in obj.items():
        if not isinstance(b, str):
            raise ParseError("image must be a string", location=str(a))
    return dict(obj)


# files

_READERS = {
    "sts": ts_from_json,
    "ptl": ptl_from_json,
    "bms": bms_from_json,
    "structure": structure_from_json,
    "locations": locations_from_json,
    "phi": phi_from_json,
    "maps": TranslationMaps.from_json,
}


def detect_kind(obj: Any) -> str:
    """Guess the model kind of a parsed document from its keys."""
    if isinstance(obj, dict):
        if "rules" in obj:
            return "bms"
        if "transitions" in obj:
            return "ptl"
        if "states" in obj:
            return "sts"
    raise ParseError("cannot tell whether this is a .bms, .ptl or .sts document", location="document")


def read(path: str, kind: Optional[str] = None) -> Any:
    """Read a file of the given kind; models (.sts/.ptl/.bms) are detected when kind is None."""
    obj = read_json(path)
    kind = kind or _located(detect_kind, path, obj)
    if kind not in _READERS:
        raise ParseError(f"unknown document kind {kind!r}", path=path)
    value = _located(_READERS[kind], path, obj)
    logger.debug(f"read {kind} from {path}")
    return value


def to_json(model: Union[Model, MembraneStructure, TranslationMaps, Mapping]) -> Any:
    if isinstance(model, StepTransitionSystem):
        return ts_to_json(model)
    if isinstance(model, PtlNet):
        return ptl_to_json(model)
    if isinstance(model, BasicMembraneSystem):
        return bms_to_json(model)
    if isinstance(model, (MembraneStructure, TranslationMaps)):
        return model.to_json()
    if isinstance(model, Mapping):
        return dict(model)
    raise TypeError(f"cannot serialise {type(model).__name__}")


def write(path: str, model: Union[Model, MembraneStructure, TranslationMaps, Mapping]) -> None:
    write_json(path, to_json(model))
    logger.debug(f"wrote {type(model).__name__} to {path}")
