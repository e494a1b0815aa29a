"""
PWHLAB
======
Power-controlled Hamiltonian systems: shifted passivity, equilibria,
region-of-attraction certificates and their validation by simulation.
"""

__version__ = "0.1.0"
