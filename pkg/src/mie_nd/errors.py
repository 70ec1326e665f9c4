"""Exception hierarchy shared by every module of the package."""


class MieError(Exception):
    """Base class for all errors raised by :mod:`mie_nd`."""


class DomainError(MieError, ValueError):
    """An argument lies outside the domain of the function."""


class NonPositiveCoupling(DomainError):
    """The Coulomb-like coupling ``A`` must be strictly positive."""


class NonPositiveMass(DomainError):
    """The reduced mass and ``hbar`` must be strictly positive."""


class UnphysicalChannel(DomainError):
    """The effective-angular-momentum radicand is not positive."""


class PreconditionError(DomainError):
    """A named specialisation was called with parameters it does not cover."""


class EmptyGrid(DomainError):
    pass


class FamilyError(MieError):
    """A ladder operation was given a state that is not a fixed-epsilon family member."""


class ConvergenceError(MieError, RuntimeError):
    pass


class ResolutionError(MieError, RuntimeError):
    """The finite-difference grid cannot resolve the requested bound state."""
