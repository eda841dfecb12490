# multiset algebra
#
# This file defines the Multiset class, an immutable finite map from symbols to
# positive integer counts, and the Alphabet class which scopes the symbols of a
# model (places, transitions, objects, rule names). Multisets are used for
# markings, steps, rule sides and the components of configurations.
#
# Requirements:
# * Python 3
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

from numbers import Integral
from typing import (
    Callable,
    Dict,
    Hashable,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from MSutils.exceptions import ParseError, UserInputError

Symbol = Hashable


def symbol_key(symbol: Symbol) -> str:
    """Sort key of a symbol; symbols are ordered by their string form."""
    return str(symbol)


def _as_count(symbol: Symbol, value: object) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise UserInputError(
            f"Multiplicity of {symbol!r} must be an integer, got {value!r}."
        )
    value = int(value)
    if value < 0:
        raise UserInputError(f"Multiplicity of {symbol!r} is negative ({value}).")
    return value


class Multiset(Mapping[Symbol, int]):
    """An immutable multiset over hashable symbols.

    Absent symbols have count 0 and zero entries are never stored, so two
    multisets are equal exactly when their stored entries are equal. Counts
    are Python integers and hence of arbitrary precision.

    A multiset may be created from a mapping ``{symbol: count}`` or from an
    iterable of symbols listed with repetitions::

        Multiset({"y": 2, "z": 1}) == Multiset(["y", "y", "z"])

    Indexing an absent symbol returns 0, while ``in`` tests membership of the
    support.
    """

    __slots__ = ("_counts", "_hash")

    def __init__(
        self, entries: Union[None, Mapping[Symbol, int], Iterable[Symbol]] = None
    ) -> None:
        counts: Dict[Symbol, int] = {}
        if entries is None:
            pass
        elif isinstance(entries, Mapping):
            for symbol, value in entries.items():
                n = _as_count(symbol, value)
                if n:
                    counts[symbol] = n
        else:
            for symbol in entries:
                counts[symbol] = counts.get(symbol, 0) + 1
        self._counts = counts
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, counts: Dict[Symbol, int]) -> "Multiset":
        # counts are already canonical
        ms = cls.__new__(cls)
        ms._counts = counts
        ms._hash = None
        return ms

    # Mapping protocol

    def __getitem__(self, symbol: Symbol) -> int:
        return self._counts.get(symbol, 0)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._counts

    def __iter__(self) -> Iterator[Symbol]:
        return iter(sorted(self._counts, key=symbol_key))

    def __len__(self) -> int:
        """Number of distinct symbols in the support (use ``size`` for |θ|)."""
        return len(self._counts)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Multiset):
            return self._counts == other._counts
        if isinstance(other, Mapping):
            return self == Multiset(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    def __reduce__(self):
        # the cached hash depends on the interpreter's hash seed
        return (Multiset, (dict(self._counts),))

    def __repr__(self) -> str:
        return f"Multiset({self.canonical()})"

    def __bool__(self) -> bool:
        return bool(self._counts)

    # algebra

    def __add__(self, other: "Multiset") -> "Multiset":
        if not isinstance(other, Multiset):
            return NotImplemented
        if not other._counts:
            return self
        counts = dict(self._counts)
        for symbol, n in other._counts.items():
            counts[symbol] = counts.get(symbol, 0) + n
        return Multiset._raw(counts)

    def __sub__(self, other: "Multiset") -> "Multiset":
        """Truncated difference: max(a(x) - b(x), 0) pointwise."""
        if not isinstance(other, Multiset):
            return NotImplemented
        if not other._counts:
            return self
        counts = {}
        for symbol, n in self._counts.items():
            rest = n - other._counts.get(symbol, 0)
            if rest > 0:
                counts[symbol] = rest
        return Multiset._raw(counts)

    def __mul__(self, k: int) -> "Multiset":
        k = _as_count("scalar", k)
        if k == 0:
            return EMPTY
        return Multiset._raw({s: k * n for s, n in self._counts.items()})

    __rmul__ = __mul__

    def __le__(self, other: "Multiset") -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        get = other._counts.get
        return all(n <= get(s, 0) for s, n in self._counts.items())

    def __lt__(self, other: "Multiset") -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self <= other and self != other

    def __ge__(self, other: "Multiset") -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return other <= self

    def __gt__(self, other: "Multiset") -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return other < self

    @property
    def size(self) -> int:
        """|θ|, the sum of all counts."""
        return sum(self._counts.values())

    @property
    def support(self) -> frozenset:
        return frozenset(self._counts)

    def is_empty(self) -> bool:
        return not self._counts

    def elements(self) -> Iterator[Symbol]:
        """Iterate over the symbols with repetitions, in canonical order."""
        for symbol in self:
            for _ in range(self._counts[symbol]):
                yield symbol

    def restrict(self, zone: Iterable[Symbol]) -> "Multiset":
        zone = zone if isinstance(zone, (set, frozenset)) else set(zone)
        return Multiset._raw(
            {s: n for s, n in self._counts.items() if s in zone}
        )

    def map_image(self, f: Union[Callable[[Symbol], Symbol], Mapping]) -> "Multiset":
        """f(θ)(y) = sum of θ(x) over the fibre f^-1(y)."""
        lookup = f.__getitem__ if isinstance(f, Mapping) else f
        counts: Dict[Symbol, int] = {}
        for symbol, n in self._counts.items():
            try:
                image = lookup(symbol)
            except KeyError:
                raise UserInputError(
                    f"Map is undefined on symbol {symbol!r} of the multiset."
                )
            counts[image] = counts.get(image, 0) + n
        return Multiset._raw(counts)

    def with_added(self, symbol: Symbol, k: int = 1) -> "Multiset":
        counts = dict(self._counts)
        counts[symbol] = counts.get(symbol, 0) + k
        return Multiset._raw(counts)

    def items_sorted(self) -> Tuple[Tuple[Symbol, int], ...]:
        return tuple((s, self._counts[s]) for s in self)

    # serialisation

    def canonical(self) -> str:
        """Canonical text form, symbols sorted lexicographically: ``{a:2,b:1}``."""
        return "{" + ",".join(f"{s}:{n}" for s, n in self.items_sorted()) + "}"

    @classmethod
    def from_canonical(cls, text: str) -> "Multiset":
        """Parse the output of ``canonical`` (string symbols only)."""
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise ParseError(f"Not a canonical multiset: {text!r}")
        body = text[1:-1]
        counts: Dict[Symbol, int] = {}
        if body:
            for entry in body.split(","):
                symbol, sep, count = entry.rpartition(":")
                if not sep or not count.isdigit():
                    raise ParseError(f"Bad multiset entry {entry!r} in {text!r}")
                counts[symbol] = int(count)
        return cls(counts)

    def to_json(self) -> Dict[str, int]:
        return {str(s): n for s, n in self.items_sorted()}

    @classmethod
    def from_json(cls, obj: object, location: str = "") -> "Multiset":
        if not isinstance(obj, dict):
            raise ParseError("expected an object mapping symbols to counts", location=location)
        for symbol, value in obj.items():
            if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
                raise ParseError(
                    f"count of {symbol!r} must be a positive integer, got {value!r}",
                    location=f"{location}.{symbol}" if location else symbol,
                )
        return cls(obj)


EMPTY = Multiset()


# functional forms of the operations


def add(a: Multiset, b: Multiset) -> Multiset:
    """The sum a + b."""
    return a + b


def scalar_mul(k: int, a: Multiset) -> Multiset:
    return k * a


def difference(a: Multiset, b: Multiset) -> Multiset:
    return a - b


def leq(a: Multiset, b: Multiset, strict: bool = False) -> bool:
    return a < b if strict else a <= b


def restrict(a: Multiset, zone: Iterable[Symbol]) -> Multiset:
    return a.restrict(zone)


def map_image(f: Union[Callable[[Symbol], Symbol], Mapping], a: Multiset) -> Multiset:
    return a.map_image(f)


class Alphabet:
    """A finite, named set of symbols scoping the multisets of one model.

    Models keep one alphabet per kind of symbol (places and transitions of a
    net, objects and rule names of a membrane system) and check every incoming
    multiset against it, so a step can never be confused with a marking.
    """

    __slots__ = ("name", "_symbols", "_order")

    def __init__(self, name: str, symbols: Iterable[Symbol]) -> None:
        self.name = name
        self._symbols = frozenset(symbols)
        self._order = tuple(sorted(self._symbols, key=symbol_key))

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._symbols

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self._order)

    def __len__(self) -> int:
        return len(self._symbols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self._symbols == other._symbols

    def __hash__(self) -> int:
        return hash(self._symbols)

    def __repr__(self) -> str:
        return f"Alphabet({self.name!r}, {list(self._order)!r})"

    @property
    def symbols(self) -> frozenset:
        return self._symbols

    def index(self, symbol: Symbol) -> int:
        return self._order.index(symbol)

    def check(self, ms: Multiset, what: str = "multiset") -> Multiset:
        """Return ms unchanged, or raise if it mentions a foreign symbol."""
        foreign = [s for s in ms if s not in self._symbols]
        if foreign:
            raise UserInputError(
                f"{what} mentions unknown {self.name}: "
                + ", ".join(str(s) for s in foreign)
            )
        return ms


def iter_fitting(
    order: Sequence[Symbol], cost: Mapping[Symbol, Multiset], budget: Multiset
) -> Iterator[Tuple[Multiset, Multiset]]:
    """Enumerate the nonempty multisets U over ``order`` with sum of cost <= budget.

    Each result comes with its leftover ``budget - cost(U)``. Symbols are
    added in the given order and never before the last one added, so every
    multiset is produced exactly once; a branch stops as soon as the next
    symbol's cost does not fit the leftover. Every cost must be nonempty,
    otherwise the enumeration would not terminate.
    """
    stack: List[Tuple[int, Multiset, Multiset]] = [(0, EMPTY, budget)]
    while stack:
        start, chosen, remaining = stack.pop()
        children = []
        for k in range(start, len(order)):
            symbol = order[k]
            if cost[symbol] <= remaining:
                children.append((k, chosen.with_added(symbol), remaining - cost[symbol]))
        for _, child, rest in children:
            yield child, rest
        stack.extend(reversed(children))
