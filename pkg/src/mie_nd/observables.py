"""Hellmann-Feynman expectation values and the Mie-type virial relation.

Closed forms follow from differentiating the level energy with respect to
a Hamiltonian parameter: ``A`` gives <1/r>, ``B`` (or ``ell``) gives
<1/r^2> and ``mu`` gives the virial relation with its B-dependent ``beta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .model import Channel, PotentialParams, binding, derive, level_denominator, radicand
from .quadrature import kinetic_expectation, potential_expectation
from .wavefunction import radial_state


@dataclass(frozen=True)
class HftValues:
    inv_r: float
    inv_r2: float
    beta: float
    kinetic: float
    potential: float
    virial_lhs: float
    virial_rhs: float

    @property
    def virial_residual(self) -> float:
        return abs(self.virial_lhs - self.virial_rhs) / abs(self.potential)


def _sqrt_radicand(params, ch):
    derive(params, ch)  # raises UnphysicalChannel
    return math.sqrt(radicand(params, ch.N, ch.ell))


def expect_inv_r(params: PotentialParams, ch: Channel) -> float:
    lam = _sqrt_radicand(params, ch)
    return 4 * params.mu * params.A / (params.hbar**2 * (2 * ch.n_r + 1 + lam) ** 2)


def expect_inv_r2(params: PotentialParams, ch: Channel) -> float:
    lam = _sqrt_radicand(params, ch)
    mu, hb = params.mu, params.hbar
    return 16 * mu**2 * params.A**2 / (hb**4 * lam * (2 * ch.n_r + 1 + lam) ** 3)


def beta(params: PotentialParams, ch: Channel) -> float:
    lam = _sqrt_radicand(params, ch)
    return 8 * params.mu * params.B / (params.hbar**2 * lam * (2 * ch.n_r + 1 + lam))


def level_energy(params: PotentialParams, N, ell, n_r) -> float:
    """Level energy with ``ell`` allowed to be real (for differentiation in ell)."""
    return params.C - binding(params, level_denominator(params, N, ell, n_r))


def energy_derivative(params: PotentialParams, ch: Channel, name: str, h: float = 1e-4) -> float:
    """Richardson-extrapolated central difference of E in ``A``, ``B``, ``mu`` or ``ell``."""

    def central(step):
        if name == "ell":
            up = level_energy(params, ch.N, ch.ell + step, ch.n_r)
            dn = level_energy(params, ch.N, ch.ell - step, ch.n_r)
        else:
            x = getattr(params, name)
            up = level_energy(replace(params, **{name: x + step}), ch.N, ch.ell, ch.n_r)
            dn = level_energy(replace(params, **{name: x - step}), ch.N, ch.ell, ch.n_r)
        return (up - dn) / (2 * step)

    scale = 1.0 if name == "ell" else max(abs(getattr(params, name)), 1.0)
    d1, d2 = central(h * scale), central(h * scale / 2)
    return (4 * d2 - d1) / 3


def virial(params: PotentialParams, ch: Channel, shift_constant: bool = True) -> HftValues:
    """Both sides of ``-(2 - beta) <T> = (1 - beta) <V - C>``.

    ``<T>`` and ``<V>`` come from quadrature of the normalised state.  The
    constant ``C`` does not scale with ``mu`` and so drops out of the relation;
    pass ``shift_constant=False`` to compare against the unshifted ``<V>``.
    """
    state = radial_state(params, ch)
    t = kinetic_expectation(state)
    v = potential_expectation(state)
    b = beta(params, ch)
    rhs_v = v - params.C if shift_constant else v
    return HftValues(
        inv_r=expect_inv_r(params, ch),
        inv_r2=expect_inv_r2(params, ch),
        beta=b,
        kinetic=t,
        potential=v,
        virial_lhs=-(2 - b) * t,
        virial_rhs=(1 - b) * rhs_v,
    )
