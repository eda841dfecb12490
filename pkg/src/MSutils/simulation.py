# simulation functions
#
# This file defines a Simulation class used to run step sequences on PTL-nets
# and basic membrane systems: either a given sequence of steps (or vector
# multi-rules, written as flat multisets of rule names) or a random run that
# picks one mode-enabled step per stage with a seeded random number generator.
#
# Requirements:
# * Python 3
# * NumPy [https://numpy.org]
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

from typing import Iterable, List, Optional, Union

from numpy.random import default_rng

from MSutils.exceptions import NotEnabledError, UserInputError
from MSutils.logger import get_logger
from MSutils.membrane_system import BasicMembraneSystem, Configuration
from MSutils.modes import Mode
from MSutils.multiset import Multiset
from MSutils.ptl_net import PtlNet

logger = get_logger(__name__)

Model = Union[PtlNet, BasicMembraneSystem]


class Simulation:
    """
    The Simulation class runs a model for at most Nsim steps and records the
    visited states, the executed steps and whether each step was enabled in
    the chosen mode.
    """

    def __init__(self, Nsim: int) -> None:
        if isinstance(Nsim, bool) or not isinstance(Nsim, int) or Nsim < 0:
            raise UserInputError(f"Nsim must be a nonnegative integer, got {Nsim!r}.")
        self.Nsim = Nsim
        self.model: Optional[Model] = None
        self.mode = Mode.LMAX
        self.rand_seed: Optional[int] = None

    def load_model(self, model: Model, mode: Union[str, Mode] = Mode.LMAX, rand_seed: Optional[int] = None) -> None:
        if not isinstance(model, (PtlNet, BasicMembraneSystem)):
            raise UserInputError(f"Cannot simulate a {type(model).__name__}.")
        self.model = model
        self.mode = Mode.parse(mode)
        self.rand_seed = rand_seed

    # model-independent views of a state

    def _initial(self):
        if isinstance(self.model, PtlNet):
            return self.model.initial_marking
        return self.model.initial

    def _is_enabled(self, state, step: Multiset) -> bool:
        if isinstance(self.model, PtlNet):
            return self.model.is_enabled(state, step, self.mode)
        return self.model.is_enabled(state, self.model.vector_from_step(step), self.mode)

    def _execute(self, state, step: Multiset):
        if isinstance(self.model, PtlNet):
            return self.model.execute(state, step)
        return self.model.evolve(state, self.model.vector_from_step(step))

    def _enabled(self, state) -> List[Multiset]:
        if isinstance(self.model, PtlNet):
            steps = list(self.model.iter_enabled_steps(state, self.mode))
        else:
            steps = [r.flatten() for r in self.model.iter_enabled_vector_rules(state, self.mode)]
        return sorted(steps, key=lambda s: (s.size, s.canonical()))

    @staticmethod
    def _describe(state) -> str:
        return state.canonical()

    def run(self, steps: Optional[Iterable[Multiset]] = None, strict: bool = True) -> dict:
        """
        Run the loaded model. With ``steps`` the given steps are executed in
        order (at most Nsim of them); a step that is free-enabled but not
        enabled in the mode raises NotEnabledError when ``strict`` and is
        executed and flagged otherwise. Without ``steps`` a random run is made,
        which stops early at a state without enabled steps.

        Returns a dict with the lists ``states`` (canonical strings, initial
        state first), ``steps``, ``enabled`` and the flag ``deadlock``.
        """
        if self.model is None:
            raise UserInputError("No model loaded. Please load one with the load_model method.")

        state = self._initial()
        sim = {"mode": str(self.mode), "states": [self._describe(state)], "steps": [], "enabled": [], "deadlock": False}
        if steps is not None:
            for k, step in enumerate(steps):
                if k >= self.Nsim:
                    logger.warning(f"step sequence is longer than Nsim={self.Nsim}; the rest is ignored")
                    break
                step = step if isinstance(step, Multiset) else Multiset(step)
                enabled = self._is_enabled(state, step)
                if not enabled and strict:
                    raise NotEnabledError(
                        f"Step {k} ({step.canonical()}) is not {self.mode}-enabled at {self._describe(state)}."
                    )
                state = self._execute(state, step)
                sim["steps"].append(step.canonical())
                sim["enabled"].append(enabled)
                sim["states"].append(self._describe(state))
            return sim

        # use the same seed for reproducible runs
        rng = default_rng() if self.rand_seed is None else default_rng(self.rand_seed)
        for k in range(self.Nsim):
            choices = self._enabled(state)
            if not choices:
                sim["deadlock"] = True
                logger.info(f"no enabled step after {k} steps")
                break
            step = choices[int(rng.integers(len(choices)))]
            state = self._execute(state, step)
            sim["steps"].append(step.canonical())
            sim["enabled"].append(True)
            sim["states"].append(self._describe(state))
        return sim

    def final_state(self, sim: dict):
        """The last state of a run as a marking or configuration."""
        last = sim["states"][-1]
        if isinstance(self.model, PtlNet):
            return Multiset.from_canonical(last)
        return Configuration.from_canonical(last)
