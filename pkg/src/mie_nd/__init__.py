"""Exact bound states of ``-A/r + B/r^2 + C`` in N dimensions, with numerical cross-checks."""
from .errors import (
    ConvergenceError,
    DomainError,
    EmptyGrid,
    FamilyError,
    MieError,
    NonPositiveCoupling,
    NonPositiveMass,
    PreconditionError,
    ResolutionError,
    UnphysicalChannel,
)
from .ladder import LadderFamily, apply_lower, apply_raise, matrix_elements
from .model import Channel, KratzerForm, KratzerVariant, PotentialParams, derive, from_kratzer, make_params
from .numoracle import FdProblem, fd_eigenvalues, fd_problem, ode_residual
from .observables import expect_inv_r, expect_inv_r2, virial
from .quadrature import expect_power, gauss_laguerre, norm, radial_inner_product
from .report import SweepConfig, VerificationReport, build_report
from .spectrum import degeneracy, energy
from .wavefunction import RadialState, radial_state

__all__ = [
    "Channel", "ConvergenceError", "DomainError", "EmptyGrid", "FamilyError", "FdProblem",
    "KratzerForm", "KratzerVariant", "LadderFamily", "MieError", "NonPositiveCoupling",
    "NonPositiveMass", "PotentialParams", "PreconditionError", "RadialState", "ResolutionError",
    "SweepConfig", "UnphysicalChannel", "VerificationReport", "apply_lower", "apply_raise",
    "build_report", "degeneracy", "derive", "energy", "expect_inv_r", "expect_inv_r2",
    "expect_power", "fd_eigenvalues", "fd_problem", "from_kratzer", "gauss_laguerre",
    "make_params", "matrix_elements", "norm", "ode_residual", "radial_inner_product",
    "radial_state", "virial",
]
