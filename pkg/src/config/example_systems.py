# example systems
#
# The worked examples used throughout the tests and the trials folder: a three
# membrane structure (membranes 2 and 3 inside the skin membrane 1), the basic
# membrane system BMS0 over it, and a bounded two membrane system whose
# reachability graphs are finite in every mode.
#
# Requirements:
# * Python 3
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).

from MSutils.membrane_structure import MembraneStructure
from MSutils.membrane_system import BasicMembraneSystem, EvolutionRule, IndexedObject
from MSutils.multiset import Multiset
from MSutils.translate import bms_to_ptl

here = IndexedObject.here
out = IndexedObject.out
into = IndexedObject.into

def get_three_membrane_structure():
    return MembraneStructure(3, {2: 1, 3: 1})

def get_bms0():

    mu = get_three_membrane_structure()
    objects = ['a', 'b', 'c']

    # initial configuration (membrane 3 starts empty)
    initial = {
        1: {'a': 1, 'b': 1},
        2: {'a': 1, 'b': 1, 'c': 2},
        3: {},
    }

    rules = [
        EvolutionRule('r11', 1, Multiset(['b']), Multiset([here('a')])),
        EvolutionRule('r12', 1, Multiset(['a']), Multiset([here('b'), into('c', 2), into('a', 3)])),
        EvolutionRule('r13', 1, Multiset(['b']), Multiset([here('c'), into('a', 3)])),
        EvolutionRule('r21', 2, Multiset(['a', 'c']), Multiset([here('b')])),
        EvolutionRule('r22', 2, Multiset(['b']), Multiset([here('a')])),
        EvolutionRule('r31', 3, Multiset(['a']), Multiset([here('a'), here('a'), here('c'), out('c')])),
    ]

    return BasicMembraneSystem(objects, mu, initial, rules)

def get_bms0_net():
    '''
    returns the PTL-net of BMS0 and the translation maps
    '''
    return bms_to_ptl(get_bms0())

def get_two_membrane_system():

    mu = MembraneStructure(2, {2: 1})
    objects = ['a', 'b', 'c']
    initial = {1: {'a': 1}, 2: {'a': 1, 'c': 1}}

    # objects never leave their membrane, so both membranes just toggle
    rules = [
        EvolutionRule('r11', 1, Multiset(['b']), Multiset([here('a')])),
        EvolutionRule('r12', 1, Multiset(['a']), Multiset([here('b')])),
        EvolutionRule('r21', 2, Multiset(['a', 'c']), Multiset([here('b')])),
        EvolutionRule('r22', 2, Multiset(['b']), Multiset([here('a'), here('c')])),
    ]

    return BasicMembraneSystem(objects, mu, initial, rules)
