# basic membrane systems
#
# This file defines the BasicMembraneSystem class together with its evolution
# rules, configurations and vector multi-rules. Vector multi-rules are checked
# for enabledness in the free, max and lmax modes, executed through the
# evolution equation (with objects routed out to the parent membrane or in to
# a child membrane), and the concurrent reachability graph of a system can be
# explored for each mode.
#
# Requirements:
# * Python 3
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

import itertools
import re
from dataclasses import dataclass
from functools import partial
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple, Union

from MSutils.exceptions import NotEnabledError, ParseError, UserInputError, ValidationError, Violation
from MSutils.exploration import explore
from MSutils.logger import get_logger
from MSutils.membrane_structure import MembraneStructure
from MSutils.modes import ExplorationLimits, Mode
from MSutils.multiset import EMPTY, Alphabet, Multiset, iter_fitting
from MSutils.transition_system import StepTransitionSystem

logger = get_logger(__name__)

HERE = "here"
OUT = "out"
IN = "in"


class IndexedObject(NamedTuple):
    """A right-hand side symbol: an object with its routing target.

    ``target`` is ``here`` (stay), ``out`` (to the parent membrane) or ``in``
    (to the child membrane ``child``).
    """

    obj: str
    target: str = HERE
    child: int = 0

    def __str__(self) -> str:
        if self.target == OUT:
            return f"{self.obj}_out"
        if self.target == IN:
            return f"{self.obj}_in{self.child}"
        return self.obj

    @classmethod
    def here(cls, obj: str) -> "IndexedObject":
        return cls(obj, HERE, 0)

    @classmethod
    def out(cls, obj: str) -> "IndexedObject":
        return cls(obj, OUT, 0)

    @classmethod
    def into(cls, obj: str, child: int) -> "IndexedObject":
        return cls(obj, IN, int(child))


@dataclass(frozen=True)
class EvolutionRule:
    """An evolution rule ``name: lhs -> rhs`` of membrane ``membrane``."""

    name: str
    membrane: int
    lhs: Multiset
    rhs: Multiset

    def __post_init__(self) -> None:
        object.__setattr__(self, "lhs", Multiset(self.lhs))
        rhs = Multiset(self.rhs)
        bad = [s for s in rhs if not isinstance(s, IndexedObject)]
        if bad:
            raise UserInputError(f"Right-hand side of rule {self.name} holds non-indexed symbols {bad}.")
        if any(s.target not in (HERE, OUT, IN) for s in rhs):
            raise UserInputError(f"Rule {self.name} has an unknown routing target.")
        object.__setattr__(self, "rhs", rhs)

    def __str__(self) -> str:
        lhs = ",".join(str(s) for s in self.lhs.elements())
        rhs = ",".join(str(s) for s in self.rhs.elements())
        return f"{self.name}: {{{lhs}}} -> {{{rhs}}}"


def _component(value: Union[Multiset, Mapping]) -> Multiset:
    return value if isinstance(value, Multiset) else Multiset(value)


@dataclass(frozen=True)
class Configuration:
    """C = (w_1, ..., w_m); ``C[i]`` is the multiset of objects in membrane i."""

    components: Tuple[Multiset, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(_component(w) for w in self.components))

    @classmethod
    def from_mapping(cls, degree: int, contents: Mapping[int, Mapping[str, int]]) -> "Configuration":
        unknown = [i for i in contents if not 1 <= int(i) <= degree]
        if unknown:
            raise UserInputError(f"Configuration names membranes {unknown} outside 1..{degree}.")
        by_id = {int(i): w for i, w in contents.items()}
        return cls(tuple(_component(by_id.get(i, {})) for i in range(1, degree + 1)))

    @property
    def degree(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> Multiset:
        if not 1 <= i <= len(self.components):
            raise UserInputError(f"Membrane {i!r} is out of range 1..{len(self.components)}.")
        return self.components[i - 1]

    def __iter__(self) -> Iterator[Multiset]:
        return iter(self.components)

    def size(self) -> int:
        return sum(w.size for w in self.components)

    def canonical(self) -> str:
        """Canonical text form, membranes in order: ``({a:1,b:1},{c:2},{})``."""
        return "(" + ",".join(w.canonical() for w in self.components) + ")"

    @classmethod
    def from_canonical(cls, text: str) -> "Configuration":
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ParseError(f"Not a canonical configuration: {text!r}")
        parts = re.findall(r"\{[^{}]*\}", text[1:-1])
        if not parts:
            raise ParseError(f"Configuration {text!r} has no membranes")
        return cls(tuple(Multiset.from_canonical(p) for p in parts))

    def to_json(self) -> Dict[str, Dict[str, int]]:
        return {str(i): w.to_json() for i, w in enumerate(self.components, start=1)}


@dataclass(frozen=True)
class VectorMultiRule:
    """r = (r_1, ..., r_m), a multiset of rule names per membrane."""

    components: Tuple[Multiset, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(_component(r) for r in self.components))

    def __getitem__(self, i: int) -> Multiset:
        if not 1 <= i <= len(self.components):
            raise UserInputError(f"Membrane {i!r} is out of range 1..{len(self.components)}.")
        return self.components[i - 1]

    def is_empty(self) -> bool:
        return all(r.is_empty() for r in self.components)

    def flatten(self) -> Multiset:
        """r_1 + ... + r_m; rule names are globally unique so nothing is lost."""
        total = EMPTY
        for r in self.components:
            total = total + r
        return total

    def canonical(self) -> str:
        return "<" + ",".join(r.canonical() for r in self.components) + ">"


class BasicMembraneSystem:
    """A basic membrane system BMS = (V, mu, w_1^0, ..., w_m^0, R_1, ..., R_m).

    Rules are given as one iterable; each rule carries its membrane and rule
    names must be unique across the whole system, so that a flat multiset of
    rule names identifies a vector multi-rule.
    """

    def __init__(
        self,
        objects: Iterable[str],
        structure: MembraneStructure,
        initial: Union[Configuration, Mapping[int, Mapping[str, int]]],
        rules: Iterable[EvolutionRule],
    ) -> None:
        self.objects = Alphabet("objects", objects)
        self.structure = structure
        m = structure.degree
        if not isinstance(initial, Configuration):
            initial = Configuration.from_mapping(m, initial)
        if initial.degree != m:
            raise UserInputError(f"Initial configuration has {initial.degree} components, structure has degree {m}.")
        for i, w in enumerate(initial, start=1):
            self.objects.check(w, f"initial contents of membrane {i}")
        self.initial = initial

        self._rules: Dict[str, EvolutionRule] = {}
        per_membrane: Dict[int, List[EvolutionRule]] = {i: [] for i in structure.membranes()}
        for rule in rules:
            if rule.name in self._rules:
                raise UserInputError(
                    f"Rule name {rule.name!r} is used twice.",
                    hint="Rule names must be unique across membranes.",
                )
            if rule.membrane not in per_membrane:
                raise UserInputError(f"Rule {rule.name} lives in unknown membrane {rule.membrane}.")
            self._rules[rule.name] = rule
            per_membrane[rule.membrane].append(rule)
        self.rule_names = Alphabet("rules", self._rules)
        self._by_membrane: Dict[int, Tuple[EvolutionRule, ...]] = {
            i: tuple(sorted(rs, key=lambda r: r.name)) for i, rs in per_membrane.items()
        }

    def __repr__(self) -> str:
        return (
            f"BasicMembraneSystem(degree={self.degree}, objects={len(self.objects)}, "
            f"rules={len(self._rules)}, C0={self.initial.canonical()})"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BasicMembraneSystem):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.structure == other.structure
            and self.initial == other.initial
            and self._rules == other._rules
        )

    @property
    def degree(self) -> int:
        return self.structure.degree

    def rules(self, membrane: Optional[int] = None) -> Tuple[EvolutionRule, ...]:
        """R_i for the given membrane, or all rules in membrane order."""
        if membrane is None:
            return tuple(r for i in self.structure.membranes() for r in self._by_membrane[i])
        self.structure.children(membrane)
        return self._by_membrane[membrane]

    def rule(self, name: str) -> EvolutionRule:
        try:
            return self._rules[name]
        except KeyError:
            raise UserInputError(f"Unknown rule {name!r}.")

    def validate(self) -> List[Violation]:
        return validate(self)

    # vector multi-rules

    def vector_from_step(self, step: Multiset) -> VectorMultiRule:
        """Group a flat multiset of rule names by membrane."""
        parts: Dict[int, Dict[str, int]] = {i: {} for i in self.structure.membranes()}
        for name, k in step.items():
            parts[self.rule(name).membrane][name] = k
        return VectorMultiRule(tuple(Multiset(parts[i]) for i in self.structure.membranes()))

    def empty_vector(self) -> VectorMultiRule:
        return VectorMultiRule(tuple(EMPTY for _ in self.structure.membranes()))

    def _check_vector(self, r: VectorMultiRule) -> None:
        if len(r.components) != self.degree:
            raise UserInputError(f"Vector multi-rule has {len(r.components)} components, expected {self.degree}.")
        for i, r_i in enumerate(r.components, start=1):
            for name in r_i:
                if self.rule(name).membrane != i:
                    raise UserInputError(f"Rule {name} is not a rule of membrane {i}.")

    def _check_configuration(self, config: Configuration) -> None:
        if config.degree != self.degree:
            raise UserInputError(f"Configuration has {config.degree} components, expected {self.degree}.")

    def accumulate(self, r: VectorMultiRule) -> Dict[int, Tuple[Multiset, Multiset]]:
        """lhs_i^r and rhs_i^r, the weighted sums of the rule sides per membrane."""
        self._check_vector(r)
        out: Dict[int, Tuple[Multiset, Multiset]] = {}
        for i, r_i in enumerate(r.components, start=1):
            lhs, rhs = EMPTY, EMPTY
            for name, k in r_i.items():
                rule = self._rules[name]
                lhs = lhs + k * rule.lhs
                rhs = rhs + k * rule.rhs
            out[i] = (lhs, rhs)
        return out

    def is_enabled(self, config: Configuration, r: VectorMultiRule, mode: Mode) -> bool:
        mode = Mode.parse(mode)
        self._check_configuration(config)
        sides = self.accumulate(r)
        if not all(sides[i][0] <= config[i] for i in sides):
            return False
        if mode is Mode.FREE:
            return True
        for i, (lhs, _) in sides.items():
            if mode is Mode.LMAX and r[i].is_empty():
                continue
            remaining = config[i] - lhs
            if any(rule.lhs <= remaining for rule in self._by_membrane[i]):
                return False
        return True

    def destination(self, i: int, symbol: IndexedObject) -> int:
        if symbol.target == HERE:
            return i
        if symbol.target == OUT:
            parent = self.structure.parent(i)
            if parent is None:
                raise ValidationError(
                    "Cannot route out of the skin membrane",
                    [Violation("root-out", str(symbol), f"membrane {i} is the root")],
                )
            return parent
        if symbol.child not in self.structure.children(i):
            raise ValidationError(
                "Cannot route into a non-child membrane",
                [Violation("in-target", str(symbol), f"{symbol.child} is not a child of {i}")],
            )
        return symbol.child

    def evolve(self, config: Configuration, r: VectorMultiRule) -> Configuration:
        """Apply a free-enabled vector multi-rule through the evolution equation."""
        self._check_configuration(config)
        sides = self.accumulate(r)
        for i, (lhs, _) in sides.items():
            if not lhs <= config[i]:
                raise NotEnabledError(
                    f"Vector multi-rule {r.canonical()} is not free-enabled at {config.canonical()} "
                    f"(membrane {i})."
                )
        added: Dict[int, Dict[str, int]] = {i: {} for i in sides}
        for i, (_, rhs) in sides.items():
            for symbol, k in rhs.items():
                bucket = added[self.destination(i, symbol)]
                bucket[symbol.obj] = bucket.get(symbol.obj, 0) + k
        return Configuration(
            tuple((config[i] - sides[i][0]) + Multiset(added[i]) for i in self.structure.membranes())
        )

    def _membrane_options(self, i: int, contents: Multiset, mode: Mode) -> List[Multiset]:
        rules = self._by_membrane[i]
        lhs = {rule.name: rule.lhs for rule in rules}
        order = [rule.name for rule in rules]
        idle_is_maximal = not any(rule.lhs <= contents for rule in rules)
        options = [EMPTY] if mode is not Mode.MAX or idle_is_maximal else []
        for r_i, remaining in iter_fitting(order, lhs, contents):
            if mode is Mode.FREE or not any(rule.lhs <= remaining for rule in rules):
                options.append(r_i)
        return options

    def iter_enabled_vector_rules(self, config: Configuration, mode: Mode) -> Iterator[VectorMultiRule]:
        mode = Mode.parse(mode)
        self._check_configuration(config)
        empty = [rule.name for rule in self._rules.values() if rule.lhs.is_empty()]
        if empty:
            raise ValidationError(
                "Vector multi-rule enumeration needs nonempty left-hand sides",
                [Violation("empty-lhs", name) for name in sorted(empty)],
            )
        per_membrane = [
            self._membrane_options(i, config[i], mode) for i in self.structure.membranes()
        ]
        for combo in itertools.product(*per_membrane):
            r = VectorMultiRule(tuple(combo))
            if not r.is_empty():
                yield r

    def enabled_vector_rules(self, config: Configuration, mode: Mode) -> FrozenSet[VectorMultiRule]:
        """All vector multi-rules with some nonempty component that are mode-enabled at config."""
        return frozenset(self.iter_enabled_vector_rules(config, mode))

    def reachability_graph(
        self,
        mode: Mode,
        limits: Optional[ExplorationLimits] = None,
        n_jobs: int = 1,
    ) -> Tuple[StepTransitionSystem, bool]:
        """Build CRG_mode of the system; arcs carry flattened vector multi-rules.

        States are canonical configuration strings, see
        ``Configuration.from_canonical``.
        """
        mode = Mode.parse(mode)
        limits = limits or ExplorationLimits()
        res = explore(
            self.initial,
            Configuration.canonical,
            partial(_bms_successors, self, mode),
            limits,
            n_jobs=n_jobs,
        )
        used = sorted({name for _, step, _ in res.arcs for name in step})
        ts = StepTransitionSystem(used, res.order, res.arcs, res.order[0])
        logger.info(
            f"CRG_{mode} of membrane system: {len(ts.states)} states, {len(ts.arcs)} arcs"
            + (", truncated" if res.truncated else "")
        )
        if res.truncated:
            logger.warning(f"CRG_{mode} exploration hit its limits {limits}.")
        return ts, res.truncated


def _bms_successors(
    bms: BasicMembraneSystem, mode: Mode, config: Configuration
) -> Iterator[Tuple[Multiset, Configuration]]:
    for r in bms.iter_enabled_vector_rules(config, mode):
        yield r.flatten(), bms.evolve(config, r)


def validate(bms: BasicMembraneSystem) -> List[Violation]:
    """Check the well-formedness of the structure and of every rule."""
    violations = [
        Violation(v.kind, f"structure {v.subject}", v.detail) for v in bms.structure.validate_tree()
    ]
    for rule in bms.rules():
        i = rule.membrane
        if rule.lhs.is_empty():
            violations.append(Violation("empty-lhs", rule.name, "left-hand side must be nonempty"))
        for obj in rule.lhs:
            if obj not in bms.objects:
                violations.append(Violation("unknown-object", rule.name, f"{obj} in left-hand side"))
        for symbol in rule.rhs:
            if symbol.obj not in bms.objects:
                violations.append(Violation("unknown-object", rule.name, f"{symbol.obj} in right-hand side"))
            if symbol.target == OUT and bms.structure.parent(i) is None:
                violations.append(Violation("root-out", rule.name, f"{symbol} in the skin membrane {i}"))
            if symbol.target == IN and symbol.child not in bms.structure.children(i):
                violations.append(
                    Violation("in-target", rule.name, f"{symbol}: {symbol.child} is not a child of {i}")
                )
    return violations
