"""Closed-form bound-state energies and level degeneracies in N dimensions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .errors import DomainError, PreconditionError
from .model import Channel, PotentialParams, binding, derive


@dataclass(frozen=True)
class EnergyLevel:
    channel: Channel
    energy: float
    principal_n: float
    K: float


def energy(params: PotentialParams, ch: Channel) -> EnergyLevel:
    """``E = C - 2 mu A^2 / (hbar^2 K^2)`` with ``K = 2 n_r + 2 nu + N - 1``."""
    d = derive(params, ch)
    return EnergyLevel(ch, params.C - binding(params, d.K), ch.n_r + d.nu + 1, d.K)


def energy_kratzer_fues(params: PotentialParams, ch: Channel) -> EnergyLevel:
    if params.C != 0:
        raise PreconditionError("Kratzer-Fues levels need C == 0")
    return energy(params, ch)


def energy_coulomb(params: PotentialParams, ch: Channel) -> EnergyLevel:
    if params.B != 0 or params.C != 0:
        raise PreconditionError("Coulomb levels need B == 0 and C == 0")
    K = 2 * ch.n_r + 2 * ch.ell + ch.N - 1
    e = -2 * params.mu * params.A**2 / (params.hbar**2 * K**2)
    return EnergyLevel(ch, e, ch.n_r + ch.ell + 1, float(K))


def energy_principal(params: PotentialParams, ch: Channel) -> float:
    """Same level written through the principal number ``n = n_r + nu + 1``."""
    d = derive(params, ch)
    n = ch.n_r + d.nu + 1
    return params.C - params.mu * params.A**2 / (2 * params.hbar**2 * (n + (ch.N - 3) / 2) ** 2)


def multiplicity(nu: int, N: int) -> int:
    """Number of hyperspherical harmonics of degree ``nu`` on the (N-1)-sphere."""
    if nu < 0 or N < 2:
        raise DomainError("multiplicity needs nu >= 0 and N >= 2")
    if N == 2:
        return 1 if nu == 0 else 2
    num = (2 * nu + N - 2) * math.factorial(nu + N - 3)
    den = math.factorial(nu) * math.factorial(N - 2)
    q, rem = divmod(num, den)
    assert rem == 0
    return q


def _check_degeneracy_args(n, N):
    for name, value in (("n", n), ("N", N)):
        if isinstance(value, bool) or not isinstance(value, int):
            raise DomainError(f"{name} must be an integer, got {value!r}")
    if n < 1 or N < 3:
        raise DomainError(f"degeneracy is defined for n >= 1 and N >= 3, got n={n}, N={N}")


def degeneracy(n: int, N: int) -> int:
    """Total multiplicity of the integer principal level ``n`` in ``N`` dimensions."""
    _check_degeneracy_args(n, N)
    return sum(multiplicity(nu, N) for nu in range(n))


def harmonic_labels(nu: int, N: int) -> Iterator[tuple[int, ...]]:
    """Yield every chain ``nu >= m_1 >= ... >= m_{N-3} >= |m_{N-2}|``."""

    def chain(bound, depth):
        if depth == 1:
            for m in range(-bound, bound + 1):
                yield (m,)
            return
        for m in range(bound + 1):
            for rest in chain(m, depth - 1):
                yield (m,) + rest

    yield from chain(nu, N - 2)


def degeneracy_enumerated(n: int, N: int) -> int:
    """Count hyperspherical labels one by one; small ranges only."""
    _check_degeneracy_args(n, N)
    if not (3 <= N <= 10 and 1 <= n <= 6):
        raise DomainError("enumeration is limited to 3 <= N <= 10, 1 <= n <= 6")
    return sum(1 for nu in range(n) for _ in harmonic_labels(nu, N))


@dataclass(frozen=True)
class DegeneracyTable:
    N: int
    rows: tuple[tuple[int, int], ...]


def degeneracy_table(N: int, n_max: int = 5) -> DegeneracyTable:
    return DegeneracyTable(N, tuple((n, degeneracy(n, N)) for n in range(1, n_max + 1)))
