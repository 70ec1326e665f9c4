"""Independent numerical checks: a finite-difference eigensolver for the
reduced radial equation and pointwise residuals of the radial ODE.

Nothing here uses the closed-form energies or wavefunctions, so the
closed forms can be tested against it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .errors import ConvergenceError, DomainError, ResolutionError
from .model import PotentialParams
from .wavefunction import RadialState, derivatives, standard_grid


def centrifugal_numerator(N, ell) -> float:
    """``ell(ell+N-2) + (N-1)(N-3)/4``; equals ``(2ell+N-1)(2ell+N-3)/4``."""
    return ell * (ell + N - 2) + (N - 1) * (N - 3) / 4


def effective_potential(params: PotentialParams, N, ell, r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("effective potential is defined for r > 0 only")
    kin = params.hbar**2 / (2 * params.mu)
    out = -params.A / r + params.B / r**2 + params.C + kin * centrifugal_numerator(N, ell) / r**2
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class FdProblem:
    params: PotentialParams
    N: int
    ell: int
    r_max: float
    grid_points: int

    def __post_init__(self):
        if self.grid_points < 100:
            raise DomainError("need at least 100 interior grid points")
        if not self.r_max > 0:
            raise DomainError("r_max must be > 0")

    @property
    def spacing(self) -> float:
        return self.r_max / (self.grid_points + 1)

    def refined(self) -> "FdProblem":
        """Same box, spacing halved."""
        return FdProblem(self.params, self.N, self.ell, self.r_max, 2 * self.grid_points + 1)

    def matrix(self):
        """Diagonal and off-diagonal of the three-point Hamiltonian (Dirichlet ends)."""
        h = self.spacing
        r = h * np.arange(1, self.grid_points + 1)
        kin = self.params.hbar**2 / (2 * self.params.mu)
        diag = 2 * kin / h**2 + effective_potential(self.params, self.N, self.ell, r)
        off = np.full(self.grid_points - 1, -kin / h**2)
        return diag, off


def sturm_count(diag, off, x) -> int:
    """Number of eigenvalues of the symmetric tridiagonal matrix below ``x``."""
    count = 0
    q = 1.0
    prev_off2 = 0.0
    for i in range(len(diag)):
        q = diag[i] - x - (prev_off2 / q if i else 0.0)
        if q == 0.0:
            q = 1e-300
        if q < 0:
            count += 1
        if i < len(off):
            prev_off2 = off[i] ** 2
    return count


def fd_raw_eigenvalues(problem: FdProblem, k: int) -> np.ndarray:
    """The ``k`` lowest eigenvalues on one grid, by Sturm-sequence bisection."""
    if not 1 <= k <= 10:
        raise DomainError("k must be in [1, 10]")
    diag, off = problem.matrix()
    return eigvalsh_tridiagonal(diag, off, select="i", select_range=(0, k - 1), lapack_driver="stebz")


def fd_eigenvalues(problem: FdProblem, k: int) -> np.ndarray:
    """``k`` lowest bound energies, Richardson-extrapolated from spacings h and h/2."""
    coarse = fd_raw_eigenvalues(problem, k)
    fine = fd_raw_eigenvalues(problem.refined(), k)
    p = problem.params
    if np.any(fine >= p.C):
        raise ResolutionError(f"only {int(np.sum(fine < p.C))} of {k} states are bound on this grid")
    decay = np.sqrt(2 * p.mu * (p.C - fine)) / p.hbar
    if problem.r_max < 20 / decay[-1]:
        raise ResolutionError(f"r_max={problem.r_max} is too small for a state decaying at {decay[-1]:.3g}")
    return (4 * fine - coarse) / 3


def fd_problem(params: PotentialParams, N: int, ell: int, k: int = 3,
               points_per_length: float = 250.0, box_decays: float = 40.0) -> FdProblem:
    """Choose a box and grid for the ``k`` lowest states from a coarse pre-solve.

    Lengths are measured in ``hbar^2 / (mu A)``; the box spans ``box_decays``
    decay lengths of the k-th state as estimated on a coarse grid.
    """
    a0 = params.bohr_radius
    r_max = 50.0 * a0 * (1 + ell + N / 2 + k) ** 2 / 4
    for _ in range(12):
        coarse = FdProblem(params, N, ell, r_max, 4000)
        e = fd_raw_eigenvalues(coarse, k)
        if e[-1] < params.C:
            decay = math.sqrt(2 * params.mu * (params.C - e[-1])) / params.hbar
            if r_max >= box_decays / decay:
                r_max = box_decays / decay
                break
        r_max *= 2
    else:
        raise ConvergenceError("could not find a box holding the requested bound states")
    points = max(100, int(round(r_max / a0 * points_per_length)))
    return FdProblem(params, N, ell, r_max, points)


def fd_convergence_ratio(problem: FdProblem, k: int = 1) -> np.ndarray:
    """``(E_h - E_h/2) / (E_h/2 - E_h/4)``; close to 4 for second-order convergence."""
    e1 = fd_raw_eigenvalues(problem, k)
    p2 = problem.refined()
    e2 = fd_raw_eigenvalues(p2, k)
    e3 = fd_raw_eigenvalues(p2.refined(), k)
    return (e1 - e2) / (e2 - e3)


def ode_residual(state: RadialState, energy: float, r_grid=None) -> float:
    """Relative residual of the N-dimensional radial equation.

    Every term is evaluated analytically; the result is the largest
    ``|sum of terms|`` divided by the largest single term on the grid.
    """
    r = standard_grid(state.epsilon) if r_grid is None else np.asarray(r_grid, dtype=float)
    p, N, ell = state.params, state.N, state.channel.ell
    R, dR, d2R = (np.asarray(a) for a in derivatives(state, r))
    k = 2 * p.mu / p.hbar**2
    terms = np.array([
        d2R,
        (N - 1) / r * dR,
        -ell * (ell + N - 2) / r**2 * R,
        k * energy * R,
        k * p.A / r * R,
        -k * p.B / r**2 * R,
        -k * p.C * R,
    ])
    scale = np.max(np.abs(terms))
    return float(np.max(np.abs(terms.sum(axis=0))) / scale)
