"""Lie-Hamilton systems on T*R^3 with sp(6,R) and su(3) symmetry.

Subpackages and modules:

* :mod:`lhsp6.polyring` exact polynomials and the Poisson bracket
* :mod:`lhsp6.liealg` structure constants, Jacobi checks, su(3) embedding
* :mod:`lhsp6.realization` linear Hamiltonian vector fields and their lifts
* :mod:`lhsp6.invariants` Casimirs and constants of the prolonged motion
* :mod:`lhsp6.dynamics` coefficient functions and numerical integration
* :mod:`lhsp6.superposition` reconstruction from particular solutions
* :mod:`lhsp6.presets` electromagnetic, oscillator and su(3) presets
* :mod:`lhsp6.cli` the ``lhsp6`` command
"""

__version__ = "0.1.0"
