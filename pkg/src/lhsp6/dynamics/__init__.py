"""Coefficient functions, system matrices and numerical integration."""

from .coefficients import (
    CoefficientFunction,
    Constant,
    ExpIntegral,
    Exponential,
    Harmonic,
    PolynomialInT,
    Product,
    Quotient,
    Sampled,
    Sum,
    as_coefficient,
    from_json,
    random_coefficient,
    simplify,
)
from .integrator import IntegrationError, SolverStats, dopri5
from .system import (
    ALGEBRAS,
    LHSystemSpec,
    Trajectory,
    basis_matrices,
    hamiltonian_value,
    integrate,
    integrate_prolonged,
    random_spec,
    system_matrix,
)
