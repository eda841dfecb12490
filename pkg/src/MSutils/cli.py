# command line front end
#
# Subcommands:
#   validate    check a .bms/.ptl/.sts file and list its violations
#   simulate    run a step sequence (or a seeded random run) on a .bms/.ptl file
#   crg         build the concurrent reachability graph of a .bms/.ptl file
#   translate   convert a .bms file into a .ptl file or back, with a maps sidecar
#   synthesize  synthesize a PTL-net (and optionally a membrane system) from a .sts file
#   check-iso   decide whether two .sts files are isomorphic under an action map
#   dot         render a .bms/.ptl/.sts file as DOT
#
# Defaults come from config/run_info.py. Exit codes are listed there as well.
#
# Requirements:
# * Python 3
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from config.run_info import get_limits, get_run_info
from MSutils import model_io
from MSutils import plot_utils as pu
from MSutils.exceptions import MSError, UserInputError
from MSutils.logger import get_logger, set_package_level
from MSutils.membrane_structure import MembraneStructure
from MSutils.membrane_system import BasicMembraneSystem
from MSutils.modes import ExplorationLimits, Mode
from MSutils.multiset import Multiset
from MSutils.ptl_net import PtlNet
from MSutils.simulation import Simulation
from MSutils.synthesis import SynthesisProblem, synthesize
from MSutils.transition_system import StepTransitionSystem, check_isomorphic
from MSutils.translate import bms_to_ptl, ptl_to_bms

logger = get_logger(__name__)


@dataclass
class CommandConfig:
    """Parsed command line, layered over the defaults of ``get_run_info``."""

    command: str
    mode: Mode
    limits: ExplorationLimits
    n_jobs: int
    backend: str
    exit_codes: Dict[str, int]
    palette: Sequence[str]
    options: Dict[str, object] = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CommandConfig":
        run_info = get_run_info(
            mode=getattr(args, "mode", None),
            max_states=getattr(args, "max_states", None),
            max_depth=getattr(args, "max_depth", None),
            n_jobs=getattr(args, "n_jobs", None),
            backend=getattr(args, "backend", None),
        )
        options = {k: v for k, v in vars(args).items() if k not in _SHARED}
        return cls(
            command=args.command,
            mode=Mode.parse(run_info["mode"]),
            limits=get_limits(run_info),
            n_jobs=run_info["n_jobs"],
            backend=run_info["backend"],
            exit_codes=run_info["exit_codes"],
            palette=run_info["dot_palette"],
            options=options,
        )


_SHARED = {"command", "mode", "max_states", "max_depth", "n_jobs", "backend", "verbose", "quiet"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="run_synth",
        description="Simulate, translate and synthesize basic membrane systems and PTL-nets.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug messages")
    parser.add_argument("-q", "--quiet", action="store_true", help="log warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_mode(p: argparse.ArgumentParser) -> None:
        p.add_argument("--mode", choices=[str(m) for m in Mode], help="execution mode (default lmax)")

    def with_limits(p: argparse.ArgumentParser) -> None:
        p.add_argument("--max-states", type=int, dest="max_states")
        p.add_argument("--max-depth", type=int, dest="max_depth")
        p.add_argument("--n-jobs", type=int, dest="n_jobs")

    p = sub.add_parser("validate", help="check a model file")
    p.add_argument("path")

    p = sub.add_parser("simulate", help="run steps on a .bms or .ptl file")
    p.add_argument("path")
    with_mode(p)
    p.add_argument(
        "--step", action="append", default=None, dest="steps",
        help="a step as comma separated transition or rule names, e.g. t1,t1,t2 (repeatable)",
    )
    p.add_argument("--random", type=int, default=None, help="make a random run of at most this many steps")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lenient", action="store_true", help="execute steps that are not enabled in the mode")
    p.add_argument("--out", help="write the trace as JSON")

    p = sub.add_parser("crg", help="concurrent reachability graph of a .bms or .ptl file")
    p.add_argument("--in", dest="path", required=True)
    with_mode(p)
    with_limits(p)
    p.add_argument("--out", help="write the graph as .sts (default: standard output)")
    p.add_argument("--dot", help="also write the graph as DOT")

    p = sub.add_parser("translate", help="translate .bms to .ptl or .ptl to .bms")
    p.add_argument("--in", dest="path", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--maps", help="write the translation maps as JSON")
    p.add_argument("--structure", help="membrane structure of a net that carries none")

    p = sub.add_parser("synthesize", help="synthesize a PTL-net from a .sts file")
    with_mode(p)
    p.add_argument("--ts", required=True)
    p.add_argument("--structure", required=True)
    p.add_argument("--locations", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--bms", help="also write the membrane system of the net")
    p.add_argument("--certificate", help="write the synthesis report as JSON")
    p.add_argument("--backend", choices=["dd", "cdd"])
    p.add_argument("--n-jobs", type=int, dest="n_jobs")

    p = sub.add_parser("check-iso", help="compare two .sts files")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--phi", required=True, help="JSON object mapping actions of the first to the second")

    p = sub.add_parser("dot", help="render a model file as DOT")
    p.add_argument("--in", dest="path", required=True)
    p.add_argument("--out", help="default: standard output")

    return parser


def parse_step(text: str) -> Multiset:
    names = [name.strip() for name in text.split(",") if name.strip()]
    if not names:
        raise UserInputError(f"Empty step {text!r}.")
    return Multiset(names)


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _read_model(path: str, kinds: Sequence[str]):
    model = model_io.read(path)
    if not isinstance(model, tuple(_MODEL_TYPES[k] for k in kinds)):
        raise UserInputError(f"{path} is not a {'/'.join('.' + k for k in kinds)} file.")
    return model


_MODEL_TYPES = {"bms": BasicMembraneSystem, "ptl": PtlNet, "sts": StepTransitionSystem}


# subcommands


def cmd_validate(cfg: CommandConfig) -> int:
    model = _read_model(cfg.options["path"], ("bms", "ptl", "sts"))
    violations = model.validate()
    for v in violations:
        print(v)
    if violations:
        logger.warning(f"{len(violations)} violations in {cfg.options['path']}")
        return cfg.exit_codes["violations"]
    print("valid")
    return cfg.exit_codes["ok"]


def cmd_simulate(cfg: CommandConfig) -> int:
    model = _read_model(cfg.options["path"], ("bms", "ptl"))
    steps = [parse_step(s) for s in cfg.options["steps"] or []]
    if steps and cfg.options["random"] is not None:
        raise UserInputError("Give either --step or --random, not both.")
    sim = Simulation(len(steps) if steps else cfg.options["random"] or 0)
    sim.load_model(model, cfg.mode, rand_seed=cfg.options["seed"])
    trace = sim.run(steps if steps else None, strict=not cfg.options["lenient"])
    for k, step in enumerate(trace["steps"]):
        flag = "" if trace["enabled"][k] else f"  (not {cfg.mode}-enabled)"
        print(f"{trace['states'][k]} --{step}--> {trace['states'][k + 1]}{flag}")
    print(trace["states"][-1])
    if cfg.options["out"]:
        model_io.write_json(cfg.options["out"], trace)
    return cfg.exit_codes["ok"]


def cmd_crg(cfg: CommandConfig) -> int:
    model = _read_model(cfg.options["path"], ("bms", "ptl"))
    ts, truncated = model.reachability_graph(cfg.mode, cfg.limits, n_jobs=cfg.n_jobs)
    if truncated:
        print(
            f"warning: the reachability graph was truncated at {cfg.limits.max_states} states "
            f"or depth {cfg.limits.max_depth}; frontier states have no outgoing arcs",
            file=sys.stderr,
        )
    doc = model_io.ts_to_json(ts)
    doc["mode"] = str(cfg.mode)
    doc["truncated"] = truncated
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", cfg.options["out"])
    if cfg.options["dot"]:
        pu.write_dot(ts, cfg.options["dot"])
    return cfg.exit_codes["ok"]


def cmd_translate(cfg: CommandConfig) -> int:
    model = _read_model(cfg.options["path"], ("bms", "ptl"))
    if isinstance(model, BasicMembraneSystem):
        result, maps = bms_to_ptl(model)
    else:
        mu = model.structure
        if cfg.options["structure"]:
            mu = model_io.read(cfg.options["structure"], "structure")
        if mu is None:
            raise UserInputError("The net carries no membrane structure.", hint="Pass one with --structure.")
        result, maps = ptl_to_bms(model, mu)
    model_io.write(cfg.options["out"], result)
    if cfg.options["maps"]:
        model_io.write(cfg.options["maps"], maps)
    logger.info(f"wrote {cfg.options['out']}")
    return cfg.exit_codes["ok"]


def cmd_synthesize(cfg: CommandConfig) -> int:
    ts = _read_model(cfg.options["ts"], ("sts",))
    mu: MembraneStructure = model_io.read(cfg.options["structure"], "structure")
    loc = model_io.read(cfg.options["locations"], "locations")
    problem = SynthesisProblem(ts, mu, loc, cfg.mode)
    outcome = synthesize(problem, backend=cfg.backend, n_jobs=cfg.n_jobs)
    if cfg.options["certificate"]:
        model_io.write_json(cfg.options["certificate"], outcome.to_json())
    if not outcome.ok:
        print(f"synthesis failed ({outcome.cause}): {outcome.detail}", file=sys.stderr)
        for v in outcome.violations:
            print(f"  {v}", file=sys.stderr)
        return cfg.exit_codes[outcome.cause]
    model_io.write(cfg.options["out"], outcome.net)
    if cfg.options["bms"]:
        bms, _ = ptl_to_bms(outcome.net, mu)
        model_io.write(cfg.options["bms"], bms)
    print(f"synthesized a net with {len(outcome.net.places)} places")
    return cfg.exit_codes["ok"]


def cmd_check_iso(cfg: CommandConfig) -> int:
    ts = _read_model(cfg.options["first"], ("sts",))
    ts2 = _read_model(cfg.options["second"], ("sts",))
    phi = model_io.read(cfg.options["phi"], "phi")
    nu = check_isomorphic(ts, ts2, phi)
    if nu is None:
        print("not isomorphic")
        return cfg.exit_codes["not_isomorphic"]
    print(json.dumps(nu, indent=2, sort_keys=True))
    return cfg.exit_codes["ok"]


def cmd_dot(cfg: CommandConfig) -> int:
    model = _read_model(cfg.options["path"], ("bms", "ptl", "sts"))
    kwargs = {} if isinstance(model, StepTransitionSystem) else {"palette": cfg.palette}
    _emit(pu.to_dot(model, **kwargs), cfg.options["out"])
    return cfg.exit_codes["ok"]


COMMANDS = {
    "validate": cmd_validate,
    "simulate": cmd_simulate,
    "crg": cmd_crg,
    "translate": cmd_translate,
    "synthesize": cmd_synthesize,
    "check-iso": cmd_check_iso,
    "dot": cmd_dot,
}


def run(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    run_info = get_run_info()
    set_package_level(run_info["log_level"])
    if args.verbose:
        set_package_level("DEBUG")
    elif args.quiet:
        set_package_level("WARNING")
    exit_codes = run_info["exit_codes"]
    try:
        cfg = CommandConfig.from_args(args)
        return COMMANDS[cfg.command](cfg)
    except MSError as e:
        print(f"error: {e}", file=sys.stderr)
        return exit_codes["invalid"]
