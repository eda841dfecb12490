'''
main script to simulate, translate and synthesize basic membrane systems and
PTL-nets from the command line

Examples (run from the src folder):
    python run_synth.py crg --mode lmax --in trials/bms0.bms --max-depth 2
    python run_synth.py translate --in trials/bms0.bms --out bms0.ptl --maps bms0_maps.json
    python run_synth.py synthesize --mode lmax --ts trials/toggle_lmax.sts \
        --structure trials/toggle_structure.json --locations trials/toggle_locations.json \
        --out toggle.ptl --bms toggle.bms --certificate toggle_report.json

Requirements:
* Python 3
* see requirements.txt in the root folder of the package

This file is under the MIT License. A copy of this license is included in the
download of the entire code package (within the root folder of the package).
'''

# import Python packages
import sys
sys.dont_write_bytecode = True
# import custom packages
from MSutils.cli import run

if __name__ == '__main__':
    sys.exit(run(sys.argv[1:]))
