"""Normalised radial eigenfunctions

    R(r) = C_n r**(v - (N-3)/2) exp(-eps r) L_n^{2v+1}(2 eps r)

and the fixed-epsilon families they generate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, EmptyGrid
from .model import Channel, DerivedParams, PotentialParams, derive
from .specfun import laguerre_derivative, laguerre_value, log_gamma


def log_normalization(n_r: int, v: float, epsilon: float) -> float:
    """Log of ``sqrt(n! (2 eps)^(2v+3) / (2 (n+v+1) Gamma(n+2v+2)))``."""
    if not 2 * v + 3 > 0:
        raise DomainError(f"normalisation diverges for v={v!r}")
    if not epsilon > 0:
        raise DomainError(f"epsilon must be > 0, got {epsilon!r}")
    return 0.5 * (
        log_gamma(n_r + 1)
        + (2 * v + 3) * math.log(2 * epsilon)
        - math.log(2 * (n_r + v + 1))
        - log_gamma(n_r + 2 * v + 2)
    )


def normalization_constant(params: PotentialParams, ch: Channel) -> float:
    d = derive(params, ch)
    return math.exp(log_normalization(ch.n_r, d.v, d.epsilon))


@dataclass(frozen=True)
class RadialState:
    channel: Channel
    params: PotentialParams
    derived: DerivedParams
    log_norm: float
    epsilon_override: Optional[float] = None

    @property
    def norm_const(self) -> float:
        return math.exp(self.log_norm)

    @property
    def epsilon(self) -> float:
        return self.derived.epsilon if self.epsilon_override is None else self.epsilon_override

    @property
    def v(self) -> float:
        return self.derived.v

    @property
    def N(self) -> int:
        return self.channel.N

    @property
    def n_r(self) -> int:
        return self.channel.n_r

    @property
    def power(self) -> float:
        """Exponent of r in front of the exponential, ``v - (N-3)/2``."""
        return self.derived.v - (self.channel.N - 3) / 2

    @property
    def laguerre_alpha(self) -> float:
        return 2 * self.derived.v + 1

    def __call__(self, r):
        return evaluate(self, r)


def radial_state(params: PotentialParams, ch: Channel, epsilon: Optional[float] = None) -> RadialState:
    """Build the normalised state; ``epsilon`` pins a fixed-epsilon family member."""
    d = derive(params, ch)
    eps = d.epsilon if epsilon is None else float(epsilon)
    return RadialState(ch, params, d, log_normalization(ch.n_r, d.v, eps), None if epsilon is None else eps)


def _radii(r):
    r = np.asarray(r, dtype=float)
    if np.any(~(r > 0)):
        raise DomainError("radial functions are evaluated at r > 0 only")
    return r


def envelope(state: RadialState, r):
    """``C_n r^power exp(-eps r)`` evaluated in log space."""
    r = _radii(r)
    return np.exp(state.log_norm + state.power * np.log(r) - state.epsilon * r)


def laguerre_part(state: RadialState, r, order=0):
    """d^order/dx^order of ``L_n^{2v+1}(x)`` at ``x = 2 eps r``."""
    x = 2 * state.epsilon * np.asarray(r, dtype=float)
    if order == 0:
        return laguerre_value(state.n_r, state.laguerre_alpha, x)
    return laguerre_derivative(state.n_r, state.laguerre_alpha, x, order)


def _out(a):
    return float(a) if np.ndim(a) == 0 else a


def evaluate(state: RadialState, r):
    r = _radii(r)
    return _out(envelope(state, r) * laguerre_part(state, r))


def derivatives(state: RadialState, r):
    """Analytic ``(R, R', R'')`` at ``r`` through Laguerre derivative identities."""
    r = _radii(r)
    s, eps = state.power, state.epsilon
    env = envelope(state, r)
    L0 = laguerre_part(state, r)
    L1 = 2 * eps * laguerre_part(state, r, 1)
    L2 = 4 * eps**2 * laguerre_part(state, r, 2)
    g = s / r - eps  # (log envelope)'
    R = env * L0
    dR = env * (g * L0 + L1)
    d2R = env * ((g * g - s / r**2) * L0 + 2 * g * L1 + L2)
    return _out(R), _out(dR), _out(d2R)


def reduced_u(state: RadialState, r):
    """``U(r) = r^((N-1)/2) R(r)``, the one-dimensional reduced function."""
    r = _radii(r)
    return _out(np.exp((state.N - 1) / 2 * np.log(r)) * evaluate(state, r))


@dataclass(frozen=True)
class GridFunction:
    nodes: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if len(self.nodes) != len(self.values):
            raise DomainError("nodes and values differ in length")


def _check_nodes(nodes):
    nodes = np.asarray(nodes, dtype=float).ravel()
    if nodes.size == 0:
        raise EmptyGrid("grid has no nodes")
    if np.any(nodes <= 0) or np.any(np.diff(nodes) <= 0):
        raise DomainError("grid nodes must be positive and strictly increasing")
    return nodes


def eval_grid(state: RadialState, nodes) -> GridFunction:
    nodes = _check_nodes(nodes)
    return GridFunction(nodes, np.asarray(evaluate(state, nodes)))


def count_nodes(values) -> int:
    """Sign changes of a sampled function, ignoring exact zeros."""
    s = np.sign(np.asarray(values))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def standard_grid(epsilon: float, n: int = 400, lo: float = 0.05, hi: float = 30.0) -> np.ndarray:
    """Linear grid on ``[lo/eps, hi/eps]`` used for pointwise residual checks."""
    return np.linspace(lo / epsilon, hi / epsilon, n)
