# regions of step transition systems
#
# This file builds the homogeneous linear system whose nonnegative integer
# solutions are the regions of a step transition system, computes a finite
# generating set of extreme rays of its solution cone with exact integer
# arithmetic, and decides which regions are compatible with a membrane
# structure (assigning each such region a location).
#
# Variables are ordered as x[q] for the states (initial state first, then the
# state order of the transition system), followed by y[a] and then z[a] for
# the actions in canonical order. A region (sigma, iota, omega) corresponds to
# the vector (sigma(q)..., iota(a)..., omega(a)...).
#
# Requirements:
# * Python 3
# * NumPy [https://numpy.org]
# * pycddlib [https://pycddlib.readthedocs.io] (optional, backend="cdd")
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from MSutils.exceptions import UserInputError
from MSutils.logger import get_logger
from MSutils.membrane_structure import MembraneStructure
from MSutils.multiset import Multiset
from MSutils.transition_system import StepTransitionSystem

try:
    import cdd
except ImportError:  # pragma: no cover
    cdd = None

logger = get_logger(__name__)

Ray = Tuple[int, ...]
BACKENDS = ("dd", "cdd")


def weight(weights: Multiset, step: Multiset) -> int:
    """The weight of a step, sum over t of step(t) * weights(t)."""
    return sum(k * weights[t] for t, k in step.items())


@dataclass(frozen=True)
class Region:
    """A region (sigma, iota, omega) with an optional assigned location.

    sigma counts tokens per state, iota and omega are the output and input
    weights per action. All three are multisets so absent entries are 0.
    """

    sigma: Multiset
    iota: Multiset
    omega: Multiset
    location: Optional[int] = None

    def __post_init__(self) -> None:
        for name in ("sigma", "iota", "omega"):
            value = getattr(self, name)
            if not isinstance(value, Multiset):
                object.__setattr__(self, name, Multiset(value))

    def scaled(self, k: int) -> "Region":
        return Region(k * self.sigma, k * self.iota, k * self.omega, self.location)

    def __add__(self, other: "Region") -> "Region":
        if not isinstance(other, Region):
            return NotImplemented
        location = self.location if self.location == other.location else None
        return Region(self.sigma + other.sigma, self.iota + other.iota, self.omega + other.omega, location)

    def with_location(self, location: Optional[int]) -> "Region":
        return Region(self.sigma, self.iota, self.omega, location)

    def key(self) -> Tuple[Multiset, Multiset, Multiset]:
        """Identity of the region regardless of its location."""
        return self.sigma, self.iota, self.omega

    def vector(self, ts: StepTransitionSystem) -> Ray:
        actions = list(ts.actions)
        return (
            tuple(self.sigma[q] for q in ts.states)
            + tuple(self.iota[a] for a in actions)
            + tuple(self.omega[a] for a in actions)
        )

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma.to_json(),
            "iota": self.iota.to_json(),
            "omega": self.omega.to_json(),
            "location": self.location,
        }


@dataclass(frozen=True)
class Cone:
    """{v >= 0 : E v = 0, A v >= 0} with integer matrices E and A.

    The matrices are numpy arrays of Python integers (``dtype=object``) so
    that no entry or product ever overflows.
    """

    variables: Tuple[str, ...]
    equalities: np.ndarray
    inequalities: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.variables)

    def contains(self, vector: Sequence[int]) -> bool:
        v = np.asarray(list(vector), dtype=object)
        if len(v) != self.dimension:
            raise UserInputError(f"Vector has {len(v)} entries, cone dimension is {self.dimension}.")
        if any(x < 0 for x in v):
            return False
        return all(x == 0 for x in self.equalities.dot(v)) and all(
            x >= 0 for x in self.inequalities.dot(v)
        )


def _matrix(rows: List[List[int]], d: int) -> np.ndarray:
    if not rows:
        return np.zeros((0, d), dtype=object)
    return np.array(rows, dtype=object).reshape(len(rows), d)


def variables(ts: StepTransitionSystem) -> Tuple[str, ...]:
    actions = list(ts.actions)
    return (
        tuple(f"x[{q}]" for q in ts.states)
        + tuple(f"y[{a}]" for a in actions)
        + tuple(f"z[{a}]" for a in actions)
    )


def build_system(ts: StepTransitionSystem) -> Cone:
    """The linear system whose solutions are the regions of ts.

    Every arc q_i --alpha--> q_j with a nonempty step contributes the
    inequality x_i - alpha.z >= 0 and the equality
    x_j - x_i - alpha.(y - z) = 0.
    """
    names = variables(ts)
    d = len(names)
    n_states = len(ts.states)
    actions = list(ts.actions)
    y = {a: n_states + k for k, a in enumerate(actions)}
    z = {a: n_states + len(actions) + k for k, a in enumerate(actions)}
    equalities, inequalities = [], []
    for arc in ts.arcs:
        if arc.step.is_empty():
            continue
        i, j = ts.state_index(arc.source), ts.state_index(arc.target)
        ineq = [0] * d
        eq = [0] * d
        ineq[i] += 1
        eq[j] += 1
        eq[i] -= 1
        for a, k in arc.step.items():
            ineq[z[a]] -= k
            eq[y[a]] -= k
            eq[z[a]] += k
        inequalities.append(ineq)
        equalities.append(eq)
    return Cone(names, _matrix(equalities, d), _matrix(inequalities, d))


def _primitive(vector: Sequence[int]) -> Ray:
    g = reduce(gcd, vector, 0)
    if g <= 1:
        return tuple(int(x) for x in vector)
    return tuple(int(x) // g for x in vector)


def _adjacent(p: int, n: int, common: int, zeros: List[int]) -> bool:
    # p and n span a 2-face iff no third ray is tight on all their common constraints
    for k, z in enumerate(zeros):
        if k != p and k != n and z & common == common:
            return False
    return True


def _intersect(
    rays: List[Ray], zeros: List[int], row: np.ndarray, bit: Optional[int]
) -> Tuple[List[Ray], List[int]]:
    """One double description step: meet the cone with row.v >= 0 (or = 0 if bit is None)."""
    if not rays:
        return rays, zeros
    values = np.array(rays, dtype=object).dot(row)
    positive = [k for k, v in enumerate(values) if v > 0]
    negative = [k for k, v in enumerate(values) if v < 0]
    tight = [k for k, v in enumerate(values) if v == 0]
    mark = 0 if bit is None else 1 << bit
    new_rays: List[Ray] = []
    new_zeros: List[int] = []
    if bit is not None:
        new_rays.extend(rays[k] for k in positive)
        new_zeros.extend(zeros[k] for k in positive)
    new_rays.extend(rays[k] for k in tight)
    new_zeros.extend(zeros[k] | mark for k in tight)
    for p in positive:
        for n in negative:
            common = zeros[p] & zeros[n]
            if not _adjacent(p, n, common, zeros):
                continue
            vp, vn = values[p], values[n]
            new_rays.append(_primitive([vp * b - vn * a for a, b in zip(rays[p], rays[n])]))
            new_zeros.append(common | mark)
    return new_rays, new_zeros


def _double_description(cone: Cone) -> List[Ray]:
    d = cone.dimension
    full = (1 << d) - 1
    # start from the nonnegative orthant: unit rays, tight on all other coordinates
    rays: List[Ray] = [tuple(int(i == k) for i in range(d)) for k in range(d)]
    zeros = [full ^ (1 << k) for k in range(d)]
    for row in cone.equalities:
        rays, zeros = _intersect(rays, zeros, row, None)
    for bit, row in enumerate(cone.inequalities, start=d):
        rays, zeros = _intersect(rays, zeros, row, bit)
        logger.debug(f"double description: {len(rays)} rays after constraint {bit - d + 1}")
    return sorted(set(rays))


def _integral(row: Sequence[object]) -> Ray:
    fractions = [Fraction(v) for v in row]
    scale = reduce(lambda a, b: a * b // gcd(a, b), (f.denominator for f in fractions), 1)
    return _primitive([int(f * scale) for f in fractions])


def _cdd_rays(cone: Cone) -> List[Ray]:
    if cdd is None:
        raise UserInputError("The cdd backend needs pycddlib.", hint="Install pycddlib or use backend='dd'.")
    d = cone.dimension
    inequalities = [[0] + [int(v) for v in row] for row in cone.inequalities]
    inequalities += [[0] + [int(i == k) for i in range(d)] for k in range(d)]
    equalities = [[0] + [int(v) for v in row] for row in cone.equalities]
    if hasattr(cdd, "Matrix"):
        mat = cdd.Matrix(inequalities, number_type="fraction")
        if equalities:
            mat.extend(equalities, linear=True)
        mat.rep_type = cdd.RepType.INEQUALITY
        generators = cdd.Polyhedron(mat).get_generators()
        rows = [generators[i] for i in range(generators.row_size)]
    else:
        import cdd.gmp

        mat = cdd.gmp.matrix_from_array(
            inequalities + equalities,
            lin_set=set(range(len(inequalities), len(inequalities) + len(equalities))),
            rep_type=cdd.RepType.INEQUALITY,
        )
        rows = cdd.gmp.copy_generators(cdd.gmp.polyhedron_from_matrix(mat)).array
    rays = set()
    for row in rows:
        if Fraction(row[0]) != 0:
            continue
        ray = _integral(row[1:])
        if any(ray):
            rays.add(ray)
    return sorted(rays)


def extreme_rays(cone: Cone, backend: str = "dd") -> List[Ray]:
    """A finite generating set of the cone: primitive integer rays, sorted.

    Every solution of the cone is a nonnegative rational combination of the
    returned rays. ``backend`` selects the native double description
    (``dd``) or pycddlib with exact fractions (``cdd``).
    """
    if backend == "dd":
        rays = _double_description(cone)
    elif backend == "cdd":
        rays = _cdd_rays(cone)
    else:
        raise UserInputError(f"Unknown ray backend {backend!r}.", hint=f"Use one of {', '.join(BACKENDS)}.")
    logger.info(f"{len(rays)} extreme rays in dimension {cone.dimension} ({backend})")
    return rays


def decode_ray(ts: StepTransitionSystem, ray: Sequence[int]) -> Region:
    actions = list(ts.actions)
    h, n = len(ts.states), len(actions)
    if len(ray) != h + 2 * n:
        raise UserInputError(f"Ray has {len(ray)} entries, expected {h + 2 * n}.")
    return Region(
        Multiset({q: int(ray[i]) for i, q in enumerate(ts.states)}),
        Multiset({a: int(ray[h + k]) for k, a in enumerate(actions)}),
        Multiset({a: int(ray[h + n + k]) for k, a in enumerate(actions)}),
    )


def is_region(ts: StepTransitionSystem, region: Region) -> bool:
    """Whether sigma(q) >= omega(alpha) and sigma(q') = sigma(q) - omega(alpha) + iota(alpha) on every arc."""
    foreign = [q for q in region.sigma if q not in set(ts.states)]
    foreign += [a for a in region.iota.support | region.omega.support if a not in ts.actions]
    if foreign:
        raise UserInputError(f"Region mentions unknown states or actions {sorted(map(str, foreign))}.")
    for arc in ts.arcs:
        if arc.step.is_empty():
            continue
        tokens = region.sigma[arc.source]
        consumed = weight(region.omega, arc.step)
        if tokens < consumed:
            return False
        if region.sigma[arc.target] != tokens - consumed + weight(region.iota, arc.step):
            return False
    return True


def assign_location(
    region: Region, mu: MembraneStructure, loc: Mapping[str, int]
) -> Optional[int]:
    """The membrane a region's place can live in, or None if there is none.

    An action consuming from the place forces the place into its membrane.
    Otherwise the place goes to the membrane closest to the root (smallest id
    on ties) among those adjacent to every action producing into it.
    """
    for a in region.iota.support | region.omega.support:
        if a not in loc:
            raise UserInputError(f"Action {a!r} has no location.")
    forced = {loc[a] for a in region.omega}
    producers = {loc[a] for a in region.iota}
    if len(forced) > 1:
        return None
    if forced:
        (place,) = forced
        return place if all(mu.adjacent(i, place) for i in producers) else None
    admissible = [j for j in mu.membranes() if all(mu.adjacent(i, j) for i in producers)]
    if not admissible:
        return None
    return min(admissible, key=lambda j: (mu.depth(j), j))


def filter_compatible(
    rays: Sequence[Sequence[int]],
    ts: StepTransitionSystem,
    mu: MembraneStructure,
    loc: Mapping[str, int],
) -> List[Region]:
    """Decode rays into regions with a location, dropping incompatible ones and duplicates."""
    kept: Dict[Tuple[Multiset, Multiset, Multiset], Region] = {}
    for ray in rays:
        region = decode_ray(ts, ray)
        location = assign_location(region, mu, loc)
        if location is None:
            logger.debug(f"ray {tuple(ray)} is not compatible with the membrane structure")
            continue
        kept.setdefault(region.key(), region.with_location(location))
    return list(kept.values())


def locality_witnesses(
    ts: StepTransitionSystem, mu: MembraneStructure, loc: Mapping[str, int]
) -> List[Region]:
    """One region per membrane i: sigma = Max everywhere, iota = omega = 1 on the actions of i.

    Max is the largest step size of ts, so these regions only block steps
    with more than Max actions located in a single membrane.
    """
    bound = ts.max_step_size()
    sigma = Multiset({q: bound for q in ts.states})
    witnesses = []
    for i in mu.membranes():
        local = Multiset({a: 1 for a in ts.actions if loc[a] == i})
        witnesses.append(Region(sigma, local, local, i))
    return witnesses


def dump_rays(ts: StepTransitionSystem, rays: Sequence[Sequence[int]]) -> str:
    """Text dump: a header naming the variables, then one ray per line."""
    lines = ["# " + " ".join(variables(ts))]
    lines += [" ".join(str(int(v)) for v in ray) for ray in rays]
    return "\n".join(lines) + "\n"
