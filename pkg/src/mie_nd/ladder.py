"""SU(1,1) ladder operators on fixed-epsilon radial families.

The operators are first order in ``D = r d/dr`` and know the index of the
state they act on:

    L-  = -D - eps r + (n + v - (N-3)/2)
    L+  =  D - eps r + (n + v + (N+1)/2)
    L0  =  n + v + 1

They shift ``n`` by one *within a family sharing eps*; physical eigenstates
with different ``n`` carry different decay rates and are not connected.

The literal creation operator constant, ``n + v - (N-1)/2``,
is available as ``convention="printed"``.  It differs from the laddering
one by exactly ``N`` and maps ``R_n`` to ``l+ R_{n+1} - N R_n``.

Operators are applied to analytic jets ``(f, Df, D^2 f)`` built from the
Laguerre derivative identities, so residuals carry no discretisation error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError, FamilyError, MieError
from .model import Channel, PotentialParams, derive, make_params
from .quadrature import integrate_power_exp
from .wavefunction import RadialState, derivatives, laguerre_part, radial_state, standard_grid

CONVENTIONS = ("laddering", "printed")


@dataclass(frozen=True)
class LadderCoeffs:
    ell_minus: float
    ell_plus: float
    ell_zero: float


def coeffs(ch: Channel, v: float) -> LadderCoeffs:
    return ladder_coeffs(ch.n_r, v)


def ladder_coeffs(n: int, v: float) -> LadderCoeffs:
    if n < 0:
        raise DomainError("n_r must be >= 0")
    lower = n * (n + v) * (n + 2 * v + 1) / (n + v + 1)
    upper = (n + 1) * (n + v + 2) * (n + 2 * v + 2) / (n + v + 1)
    if not v > -1 or lower < 0 or upper < 0:
        raise DomainError(f"ladder coefficients undefined for v={v!r}")
    return LadderCoeffs(math.sqrt(lower), math.sqrt(upper), n + v + 1)


def lowering_constant(n, v, N) -> float:
    return n + v - (N - 3) / 2


def raising_constant(n, v, N, convention="laddering") -> float:
    if convention == "laddering":
        return n + v + (N + 1) / 2
    if convention == "printed":
        return n + v - (N - 1) / 2
    raise ValueError(f"unknown convention {convention!r}")


@dataclass(frozen=True)
class LadderFamily:
    """Radial functions ``R_n`` with a common decay rate ``epsilon``."""

    params: PotentialParams
    N: int
    ell: int
    epsilon: float

    def __post_init__(self):
        derive(self.params, Channel(self.N, self.ell, 0))
        if not self.epsilon > 0:
            raise DomainError("family epsilon must be > 0")

    @classmethod
    def physical(cls, params: PotentialParams, N: int, ell: int, n_r: int = 0) -> "LadderFamily":
        """Family sharing the physical decay rate of level ``n_r``."""
        return cls(params, N, ell, derive(params, Channel(N, ell, n_r)).epsilon)

    @classmethod
    def from_v(cls, N: int, v: float, epsilon: float = 1.0) -> "LadderFamily":
        """Family with a prescribed ``v`` (ell = 0, mu = hbar = A = 1, B chosen to match)."""
        B = ((2 * v + 1) ** 2 - (N - 2) ** 2) / 8
        return cls(make_params(1.0, B, 0.0), N, 0, epsilon)

    @property
    def v(self) -> float:
        return derive(self.params, Channel(self.N, self.ell, 0)).v

    def state(self, n_r: int) -> RadialState:
        return radial_state(self.params, Channel(self.N, self.ell, n_r), epsilon=self.epsilon)

    def grid(self, n: int = 400) -> np.ndarray:
        return standard_grid(self.epsilon, n)


def family_of(state: RadialState) -> LadderFamily:
    if state.epsilon_override is None:
        raise FamilyError("state is a physical eigenstate; build it with a fixed epsilon")
    ch = state.channel
    return LadderFamily(state.params, ch.N, ch.ell, state.epsilon_override)


def _jet(state: RadialState, r):
    """``(f, D f, D^2 f)`` with ``D = r d/dr``."""
    R, dR, d2R = derivatives(state, r)
    return np.asarray(R), r * dR, r * dR + r * r * d2R


def _apply(sign, const, eps, r, jet):
    """Apply ``sign * D - eps r + const`` to a jet, dropping one order."""
    f, Df = jet[0], jet[1]
    out = sign * Df - eps * r * f + const * f
    if len(jet) < 3:
        return (out,)
    D2f = jet[2]
    Dout = sign * D2f - eps * (r * f + r * Df) + const * Df
    return out, Dout


def _lower(n, v, N, eps, r, jet):
    return _apply(-1.0, lowering_constant(n, v, N), eps, r, jet)


def _raise(n, v, N, eps, r, jet, convention="laddering"):
    return _apply(1.0, raising_constant(n, v, N, convention), eps, r, jet)


@dataclass(frozen=True)
class OperatorApplication:
    source: RadialState
    target_index: int
    coefficient: float
    residual: float
    scale: float
    grid: np.ndarray = field(repr=False)
    output: np.ndarray = field(repr=False)

    @property
    def relative_residual(self) -> float:
        return self.residual / self.scale


def apply_lower(state: RadialState, r_grid=None) -> OperatorApplication:
    fam = family_of(state)
    r = fam.grid() if r_grid is None else np.asarray(r_grid, dtype=float)
    n, v, N = state.n_r, state.v, state.N
    out = _lower(n, v, N, fam.epsilon, r, _jet(state, r))[0]
    c = ladder_coeffs(n, v).ell_minus
    if n == 0:
        scale = float(np.max(np.abs(state(r))))
        return OperatorApplication(state, -1, 0.0, float(np.max(np.abs(out))), scale, r, out)
    target = np.asarray(fam.state(n - 1)(r))
    res = float(np.max(np.abs(out - c * target)))
    return OperatorApplication(state, n - 1, c, res, float(np.max(np.abs(target))), r, out)


def apply_raise(state: RadialState, r_grid=None, convention="laddering") -> OperatorApplication:
    fam = family_of(state)
    r = fam.grid() if r_grid is None else np.asarray(r_grid, dtype=float)
    n, v, N = state.n_r, state.v, state.N
    out = _raise(n, v, N, fam.epsilon, r, _jet(state, r), convention)[0]
    c = ladder_coeffs(n, v).ell_plus
    target = np.asarray(fam.state(n + 1)(r))
    res = float(np.max(np.abs(out - c * target)))
    return OperatorApplication(state, n + 1, c, res, float(np.max(np.abs(target))), r, out)


def _measured_eigenvalue(values, ref):
    lam = float(np.dot(values, ref) / np.dot(ref, ref))
    resid = float(np.max(np.abs(values - lam * ref)) / np.max(np.abs(ref)))
    return lam, resid


def raise_then_lower(family: LadderFamily, n_r: int, r_grid=None):
    """``L- (L+ R_n)`` pointwise."""
    r = family.grid() if r_grid is None else np.asarray(r_grid, dtype=float)
    v, N, eps = family.v, family.N, family.epsilon
    up = _raise(n_r, v, N, eps, r, _jet(family.state(n_r), r))
    return _lower(n_r + 1, v, N, eps, r, up)[0]


def lower_then_raise(family: LadderFamily, n_r: int, r_grid=None):
    """``L+ (L- R_n)`` pointwise; zero for ``n_r = 0``."""
    r = family.grid() if r_grid is None else np.asarray(r_grid, dtype=float)
    v, N, eps = family.v, family.N, family.epsilon
    down = _lower(n_r, v, N, eps, r, _jet(family.state(n_r), r))
    return _raise(n_r - 1, v, N, eps, r, down)[0]


def commutator_check(family: LadderFamily, n_r: int, r_grid=None) -> float:
    """Eigenvalue of ``[L-, L+]`` on ``R_n`` measured pointwise (expect ``2 l0``)."""
    r = family.grid() if r_grid is None else np.asarray(r_grid, dtype=float)
    comm = raise_then_lower(family, n_r, r) - lower_then_raise(family, n_r, r)
    lam, resid = _measured_eigenvalue(comm, np.asarray(family.state(n_r)(r)))
    if resid > 1e-8:
        raise MieError(f"[L-, L+] R_{n_r} is not proportional to R_{n_r} (residual {resid:.2e})")
    return lam


def su11_identities(family: LadderFamily, n_r: int) -> dict:
    """Deviations of the SU(1,1) relations written as coefficient identities."""
    v = family.v
    c = ladder_coeffs(n_r, v)
    up = ladder_coeffs(n_r + 1, v)
    dn = ladder_coeffs(n_r - 1, v) if n_r > 0 else None
    comm = c.ell_plus * up.ell_minus - (c.ell_minus * dn.ell_plus if dn else 0.0)
    return {
        "[L-,L+]-2L0": comm - 2 * c.ell_zero,
        "[L0,L-]+L-": (dn.ell_zero - c.ell_zero + 1) if dn else 0.0,
        "[L0,L+]-L+": up.ell_zero - c.ell_zero - 1,
    }


def casimir_orderings(family: LadderFamily, n_r: int, r_grid=None):
    """Casimir measured pointwise as ``L0(L0-1) - L+L-`` and ``L0(L0+1) - L-L+``."""
    r = family.grid() if r_grid is None else np.asarray(r_grid, dtype=float)
    R = np.asarray(family.state(n_r)(r))
    l0 = n_r + family.v + 1
    first = l0 * (l0 - 1) * R - lower_then_raise(family, n_r, r)
    second = l0 * (l0 + 1) * R - raise_then_lower(family, n_r, r)
    return _measured_eigenvalue(first, R)[0], _measured_eigenvalue(second, R)[0]


def casimir_eigenvalue(family: LadderFamily, n_r: int = 0, r_grid=None) -> float:
    a, b = casimir_orderings(family, n_r, r_grid)
    if abs(a - b) > 1e-9 * max(1.0, abs(a)):
        raise MieError(f"Casimir orderings disagree: {a!r} vs {b!r}")
    return a


def casimir_from_coefficients(v: float, n_r: int) -> float:
    c = ladder_coeffs(n_r, v)
    prev = ladder_coeffs(n_r - 1, v).ell_plus if n_r > 0 else 0.0
    return c.ell_zero * (c.ell_zero - 1) - prev * c.ell_minus


def hamiltonian_via_l0(params: PotentialParams, ch: Channel) -> float:
    l0 = ladder_coeffs(ch.n_r, derive(params, ch).v).ell_zero
    return params.C - (params.mu * params.A**2 / (2 * params.hbar**2)) / l0**2


@dataclass(frozen=True)
class IdentityCheck:
    residuals: dict
    passing: Optional[str]
    operators: str

    @property
    def sign_convention(self) -> Optional[str]:
        return self.passing

    @property
    def max_residual(self) -> float:
        return self.residuals[self.passing] if self.passing else min(self.residuals.values())


def _pointwise_parts(family, n_r, r, operators):
    v, N, eps = family.v, family.N, family.epsilon
    jet = _jet(family.state(n_r), r)
    lo = _lower(n_r, v, N, eps, r, jet[:2])[0]
    up = _raise(n_r, v, N, eps, r, jet[:2], operators)[0]
    return jet, lo, up


def _verdict(residuals, tol):
    passing = [k for k, val in residuals.items() if val < tol]
    return passing[0] if passing else None


def operator_identity_r(family: LadderFamily, n_r: int, r_grid=None, operators="printed",
                        tol=1e-10) -> IdentityCheck:
    """``r R = (1/2eps) [2 L0 - (L+ + L-)] R + offset R``.

    Candidate offsets: ``-N/(2eps)`` (as printed) and ``0``.  With the printed
    operators the printed offset holds; with the laddering operators the
    offset vanishes.
    """
    r = family.grid() if r_grid is None else np.asarray(r_grid, dtype=float)
    jet, lo, up = _pointwise_parts(family, n_r, r, operators)
    R, eps = jet[0], family.epsilon
    l0 = n_r + family.v + 1
    core = (2 * l0 * R - (up + lo)) / (2 * eps)
    lhs = r * R
    scale = np.max(np.abs(lhs))
    offsets = {"-N/(2eps)": -family.N / (2 * eps), "none": 0.0}
    residuals = {k: float(np.max(np.abs(lhs - core - c * R)) / scale) for k, c in offsets.items()}
    return IdentityCheck(residuals, _verdict(residuals, tol), operators)


def operator_identity_r_ddr(family: LadderFamily, n_r: int, r_grid=None, operators="printed",
                            tol=1e-10) -> IdentityCheck:
    """``r R' = (1/2)(L+ - L-) R + offset R`` for offsets ``+1/2``, ``-1/2``, ``-(N-1)/2``."""
    r = family.grid() if r_grid is None else np.asarray(r_grid, dtype=float)
    jet, lo, up = _pointwise_parts(family, n_r, r, operators)
    R, DR = jet[0], jet[1]
    core = 0.5 * (up - lo)
    scale = np.max(np.abs(DR))
    offsets = {"+1/2": 0.5, "-1/2": -0.5, "-(N-1)/2": -(family.N - 1) / 2}
    residuals = {k: float(np.max(np.abs(DR - core - c * R)) / scale) for k, c in offsets.items()}
    return IdentityCheck(residuals, _verdict(residuals, tol), operators)


@dataclass(frozen=True)
class MatrixElements:
    """Matrices of ``r`` and ``r d/dr`` in a fixed-epsilon family.

    Row ``n`` holds the expansion coefficients of the operator applied to
    ``R_n``: ``op R_n = sum_m M[n, m] R_m``.  ``*_quad`` are the same
    coefficients obtained by quadrature projection under ``r^(N-2) dr``,
    the measure in which the family is orthogonal.  ``gram_*`` and
    ``raw_*`` are the plain inner products under both measures.
    """

    M_r: np.ndarray
    M_rddr: np.ndarray
    M_r_printed: np.ndarray
    M_rddr_printed: np.ndarray
    M_r_quad: np.ndarray
    M_rddr_quad: np.ndarray
    gram: dict
    raw_r: dict

    @staticmethod
    def _rel(a, b):
        return float(np.max(np.abs(a - b)) / np.max(np.abs(b)))

    @property
    def r_agreement(self) -> float:
        return self._rel(self.M_r, self.M_r_quad)

    @property
    def rddr_agreement(self) -> float:
        return self._rel(self.M_rddr, self.M_rddr_quad)

    @property
    def r_printed_agreement(self) -> float:
        return self._rel(self.M_r_printed, self.M_r_quad)

    @property
    def rddr_printed_agreement(self) -> float:
        return self._rel(self.M_rddr_printed, self.M_rddr_quad)


def _ladder_matrices(family: LadderFamily, n_max: int):
    v, N, eps = family.v, family.N, family.epsilon
    size = n_max + 1
    M_r = np.zeros((size, size))
    M_d = np.zeros((size, size))
    for n in range(size):
        c = ladder_coeffs(n, v)
        M_r[n, n] = c.ell_zero / eps
        M_d[n, n] = -(N - 1) / 2
        if n + 1 < size:
            M_r[n, n + 1] = -c.ell_plus / (2 * eps)
            M_d[n, n + 1] = c.ell_plus / 2
        if n > 0:
            M_r[n, n - 1] = -c.ell_minus / (2 * eps)
            M_d[n, n - 1] = -c.ell_minus / 2
    M_r_printed = M_r - np.eye(size) * N / (2 * eps)
    M_d_printed = M_d + np.eye(size) * ((N - 1) / 2 - 0.5)
    return M_r, M_d, M_r_printed, M_d_printed


def _family_integral(fa: RadialState, fb: RadialState, extra_power: int, measure: int, ddr: bool):
    """``int R_a (op R_b) r^measure dr`` with op = ``r^extra_power`` or ``r d/dr``."""
    s, eps = fb.power, fb.epsilon

    def poly(r):
        La = laguerre_part(fa, r)
        if ddr:
            x = 2 * eps * r
            Lb = (s - eps * r) * laguerre_part(fb, r) + x * laguerre_part(fb, r, 1)
        else:
            Lb = laguerre_part(fb, r)
        return La * Lb

    exponent = fa.power + fb.power + measure + (0 if ddr else extra_power)
    return integrate_power_exp(poly, exponent, fa.epsilon + fb.epsilon, fa.log_norm + fb.log_norm)


def matrix_elements(family: LadderFamily, n_max: int) -> MatrixElements:
    if not 0 <= n_max <= 50:
        raise DomainError("n_max must be in [0, 50]")
    N = family.N
    states = [family.state(n) for n in range(n_max + 1)]
    M_r, M_d, M_r_p, M_d_p = _ladder_matrices(family, n_max)
    size = n_max + 1
    gram = {m: np.zeros((size, size)) for m in (N - 1, N - 2)}
    raw = {m: np.zeros((size, size)) for m in (N - 1, N - 2)}
    proj_r = np.zeros((size, size))
    proj_d = np.zeros((size, size))
    for a in range(size):
        for b in range(size):
            for m in (N - 1, N - 2):
                gram[m][a, b] = _family_integral(states[a], states[b], 0, m, False)
                raw[m][a, b] = _family_integral(states[a], states[b], 1, m, False)
            proj_r[b, a] = raw[N - 2][a, b]
            proj_d[b, a] = _family_integral(states[a], states[b], 0, N - 2, True)
    norms = np.diag(gram[N - 2])
    proj_r /= norms[None, :]
    proj_d /= norms[None, :]
    return MatrixElements(M_r, M_d, M_r_p, M_d_p, proj_r, proj_d, gram, raw)
