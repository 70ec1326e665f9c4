"""Mie-type potential parameters and the per-channel quantities derived from them.

The exactly solvable family is

    V(r) = -A/r + B/r**2 + C

with ``A > 0``.  A channel ``(N, ell, n_r)`` fixes the dimension, the
hyperspherical angular momentum and the number of radial nodes; everything
downstream (energies, wavefunctions, ladder coefficients) is expressed
through :class:`DerivedParams`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonPositiveCoupling, NonPositiveMass, UnphysicalChannel


@dataclass(frozen=True)
class PotentialParams:
    A: float
    B: float
    C: float = 0.0
    mu: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.A > 0:
            raise NonPositiveCoupling(f"A must be > 0, got {self.A!r}")
        if not (self.mu > 0 and self.hbar > 0):
            raise NonPositiveMass(f"mu and hbar must be > 0, got mu={self.mu!r}, hbar={self.hbar!r}")
        for name in ("A", "B", "C", "mu", "hbar"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")

    @property
    def bohr_radius(self) -> float:
        """Natural length scale ``hbar**2 / (mu * A)``."""
        return self.hbar**2 / (self.mu * self.A)


def make_params(A, B, C=0.0, mu=1.0, hbar=1.0) -> PotentialParams:
    return PotentialParams(float(A), float(B), float(C), float(mu), float(hbar))


class KratzerVariant(enum.Enum):
    KRATZER_FUES = "kratzer-fues"
    MODIFIED_KRATZER = "modified-kratzer"


@dataclass(frozen=True)
class KratzerForm:
    kappa: float
    r_e: float
    variant: KratzerVariant = KratzerVariant.KRATZER_FUES

    def __post_init__(self):
        if not (self.kappa > 0 and self.r_e > 0):
            raise DomainError(f"kappa and r_e must be > 0, got {self.kappa!r}, {self.r_e!r}")

    def __call__(self, r):
        """Evaluate the Kratzer expression directly, without going through (A, B, C)."""
        r = np.asarray(r, dtype=float)
        if self.variant is KratzerVariant.KRATZER_FUES:
            return -self.kappa * (2 * self.r_e / r - self.r_e**2 / r**2)
        # well-shaped convention: zero at r_e, +kappa at infinity
        return self.kappa * ((r - self.r_e) / r) ** 2


def from_kratzer(form: KratzerForm, mu=1.0, hbar=1.0) -> PotentialParams:
    k, re = form.kappa, form.r_e
    if form.variant is KratzerVariant.KRATZER_FUES:
        return make_params(2 * k * re, k * re**2, 0.0, mu, hbar)
    return make_params(2 * k * re, k * re**2, k, mu, hbar)


def modified_kratzer_printed_mapping(kappa, r_e):
    """Literal (A, B, C) mapping for the modified Kratzer form.

    Kept only so the verification report can show that it reproduces neither
    sign convention of the modified Kratzer potential.
    """
    return kappa * r_e, kappa * r_e**2, kappa


def modified_kratzer_literal(kappa, r_e, r):
    """The literal ``-kappa*((r - r_e)/r)**2`` form, whose A would be negative."""
    r = np.asarray(r, dtype=float)
    return -kappa * ((r - r_e) / r) ** 2


def evaluate_potential(params: PotentialParams, r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("potential is defined for r > 0 only")
    out = -params.A / r + params.B / r**2 + params.C
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Channel:
    N: int
    ell: int
    n_r: int

    def __post_init__(self):
        for name in ("N", "ell", "n_r"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise DomainError(f"{name} must be an integer, got {value!r}")
        if self.N < 2:
            raise DomainError(f"dimension N must be >= 2, got {self.N}")
        if self.ell < 0 or self.n_r < 0:
            raise DomainError("ell and n_r must be non-negative")

    def with_n_r(self, n_r: int) -> "Channel":
        return Channel(self.N, self.ell, n_r)


@dataclass(frozen=True)
class DerivedParams:
    radicand: float
    v: float
    nu: float
    epsilon: float
    alpha: float
    K: float


def radicand(params: PotentialParams, N, ell) -> float:
    """``(2 ell + N - 2)**2 + 8 mu B / hbar**2``; ``ell`` may be real."""
    return (2 * ell + N - 2) ** 2 + 8 * params.mu * params.B / params.hbar**2


def level_denominator(params: PotentialParams, N, ell, n_r) -> float:
    """``K = 2 n_r + 1 + sqrt(radicand)``, equal to ``2 n_r + 2 nu + N - 1``.

    Arguments may be real so that energies can be differentiated with
    respect to ``ell`` or ``B``.
    """
    lam2 = radicand(params, N, ell)
    if not lam2 > 0:
        raise UnphysicalChannel(f"radicand {lam2!r} <= 0 for N={N}, ell={ell}, B={params.B}")
    return 2 * n_r + 1 + math.sqrt(lam2)


def binding(params: PotentialParams, K: float) -> float:
    """``C - E`` for a level with denominator ``K``."""
    return 2 * params.mu * params.A**2 / (params.hbar**2 * K**2)


def derive(params: PotentialParams, ch: Channel) -> DerivedParams:
    lam2 = radicand(params, ch.N, ch.ell)
    if not lam2 > 0:
        raise UnphysicalChannel(f"radicand {lam2!r} <= 0 for {ch} with B={params.B}")
    lam = math.sqrt(lam2)
    v = (lam - 1) / 2
    nu = v - (ch.N - 3) / 2
    K = 2 * ch.n_r + 1 + lam
    gap = binding(params, K)  # C - E_n
    mu, hb = params.mu, params.hbar
    epsilon = math.sqrt(2 * mu * gap) / hb
    alpha = params.A * math.sqrt(mu / (2 * hb**2 * gap))
    return DerivedParams(radicand=lam2, v=v, nu=nu, epsilon=epsilon, alpha=alpha, K=K)


def epsilon_printed(params: PotentialParams, ch: Channel) -> float:
    """Literal decay-rate expression; twice the physical value."""
    lam = math.sqrt(radicand(params, ch.N, ch.ell))
    return 4 * params.mu * params.A / (params.hbar**2 * (2 * ch.n_r + 1 + lam))


def alpha_printed(params: PotentialParams, gap: float) -> float:
    """``alpha`` with ``hbar`` (not ``hbar**2``) under the root, as printed."""
    return params.A * math.sqrt(params.mu / (2 * params.hbar * gap))
