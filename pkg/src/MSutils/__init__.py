# MSutils: membrane system and PTL-net utilities
#
# Simulation of basic membrane systems and PTL-nets, translations between the
# two models, and synthesis of nets (and hence membrane systems) from step
# transition systems using regions.
#
# This file is under the MIT License. A copy of this license is included in the
# download of the entire code package (within the root folder of the package).
