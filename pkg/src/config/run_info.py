# run options
#
# Default options of the command line tool: exploration limits, execution
# mode, parallelism, logging level, DOT colours and exit codes.
#
# Requirements:
# * Python 3
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

from MSutils.exceptions import UserInputError
from MSutils.modes import DEFAULT_MAX_DEPTH, DEFAULT_MAX_STATES, ExplorationLimits, Mode
from MSutils.plot_utils import Palette

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')

def get_run_info(**overrides):

    max_states = DEFAULT_MAX_STATES # states kept by a reachability graph exploration
    max_depth = DEFAULT_MAX_DEPTH # states at this depth are kept but not expanded
    mode = 'lmax' # execution mode (free, max or lmax)
    n_jobs = 1 # joblib workers for exploration and synthesis (-1 for all cores)
    log_level = 'INFO'
    backend = 'dd' # extreme ray backend ('dd' native, 'cdd' pycddlib)
    dot_palette = Palette # fill colour per membrane, cycled

    # exit codes of the command line tool
    exit_codes = {
        'ok': 0,
        'violations': 1,
        'not_isomorphic': 1,
        'separation': 2,
        'closure': 3,
        'invalid': 4,
        'certificate': 5,
    }

    run_info = {}
    run_info['max_states'] = max_states
    run_info['max_depth'] = max_depth
    run_info['mode'] = mode
    run_info['n_jobs'] = n_jobs
    run_info['log_level'] = log_level
    run_info['backend'] = backend
    run_info['dot_palette'] = dot_palette
    run_info['exit_codes'] = exit_codes

    return modify_run_info(run_info, **overrides)

def modify_run_info(run_info, **changes):

    unknown = [k for k in changes if k not in run_info]
    if unknown:
        raise UserInputError(f"Unknown run options {unknown}.")

    run_info = dict(run_info) # work on a copy
    for key, value in changes.items():
        if value is not None:
            run_info[key] = value

    # checks raise on bad values
    ExplorationLimits(run_info['max_states'], run_info['max_depth'])
    run_info['mode'] = str(Mode.parse(run_info['mode']))
    if run_info['n_jobs'] == 0:
        raise UserInputError("n_jobs must be nonzero.")
    if str(run_info['log_level']).upper() not in LOG_LEVELS:
        raise UserInputError(f"Unknown log level {run_info['log_level']!r}.")

    return run_info

def get_limits(run_info):
    return ExplorationLimits(max_states=run_info['max_states'], max_depth=run_info['max_depth'])
