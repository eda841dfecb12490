# execution modes and exploration limits
#
# Shared by the PTL-net and membrane system simulators.
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

from dataclasses import dataclass
from enum import Enum
from typing import Union

from MSutils.exceptions import UserInputError

DEFAULT_MAX_STATES = 10000
DEFAULT_MAX_DEPTH = 50


class Mode(str, Enum):
    """Step enabling disciplines.

    free: any resource-feasible step; max: steps that cannot be extended by
    any transition (rule); lmax: steps that cannot be extended by a transition
    co-located with one already in the step.
    """

    FREE = "free"
    MAX = "max"
    LMAX = "lmax"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, value: Union[str, "Mode"]) -> "Mode":
        if isinstance(value, Mode):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise UserInputError(
                f"Unknown mode {value!r}.", hint="Use one of free, max, lmax."
            )


@dataclass(frozen=True)
class ExplorationLimits:
    """Bounds on breadth-first exploration of a concurrent reachability graph.

    States at depth ``max_depth`` are kept but not expanded; once
    ``max_states`` states are known, newly discovered states are dropped and
    the graph is reported as truncated.
    """

    max_states: int = DEFAULT_MAX_STATES
    max_depth: int = DEFAULT_MAX_DEPTH

    def __post_init__(self) -> None:
        for name in ("max_states", "max_depth"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
                raise UserInputError(f"{name} must be a positive integer, got {value!r}.")
