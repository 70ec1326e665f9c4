"""Generalised Gauss-Laguerre rules and the mapped radial integrals built on them.

Every radial integrand in this package has the shape
``r**e * exp(-sigma r) * (polynomial in r)``, so after ``z = sigma r`` a
Gauss-Laguerre rule with weight exponent ``e`` integrates it essentially
exactly.  Orders are escalated 64 -> 128 -> 256 until two agree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .errors import ConvergenceError, DomainError
from .model import binding
from .wavefunction import RadialState, laguerre_part

ORDERS = (64, 128, 256)
RTOL = 1e-11
_BIG = 1e150


@dataclass(frozen=True)
class QuadratureRule:
    alpha: float
    order: int
    nodes: np.ndarray
    weights: np.ndarray
    log_weights: np.ndarray

    def integrate(self, f) -> float:
        """Approximate ``int_0^inf x^alpha e^-x f(x) dx``."""
        return float(np.dot(self.weights, f(self.nodes)))


def _orthonormal_recurrence(alpha, n, x, dtype=float):
    """Run the orthonormal Laguerre recurrence up to degree ``n`` at nodes ``x``.

    Returns ``(p_n, p_n', log_scale, sum_sq)`` where the true values are
    ``p * exp(log_scale)`` and ``sum_sq * exp(2 log_scale)`` is
    ``sum_{k<n} p_k(x)^2``.  Rescaling keeps everything finite for large x.
    """
    x = np.asarray(x, dtype=dtype)
    log_scale = np.full_like(x, -0.5 * math.lgamma(alpha + 1))
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    dp_prev = np.zeros_like(x)
    dp = np.zeros_like(x)
    sum_sq = np.zeros_like(x)
    sqrt_b = dtype(0)
    for k in range(n):
        sum_sq += p * p
        a_k = dtype(2 * k + 1) + dtype(alpha)
        sqrt_b_next = np.sqrt(dtype(k + 1) * (dtype(k + 1) + dtype(alpha)))
        p_next = ((x - a_k) * p - sqrt_b * p_prev) / sqrt_b_next
        dp_next = (p + (x - a_k) * dp - sqrt_b * dp_prev) / sqrt_b_next
        p_prev, p, dp_prev, dp, sqrt_b = p, p_next, dp, dp_next, sqrt_b_next
        big = np.abs(p) > _BIG
        if np.any(big):
            f = np.where(big, 1.0 / _BIG, 1.0)
            p, p_prev, dp, dp_prev = p * f, p_prev * f, dp * f, dp_prev * f
            sum_sq = sum_sq * f * f
            log_scale = log_scale - np.log(f)
    return p, dp, log_scale, sum_sq


@lru_cache(maxsize=512)
def gauss_laguerre(alpha: float, order: int) -> QuadratureRule:
    """Nodes and weights for ``int_0^inf x^alpha e^-x f(x) dx``.

    Initial node guesses are the eigenvalues of the Jacobi matrix; each is
    then polished independently by Newton iteration on the recurrence, and
    the weights come from the Christoffel function ``1 / sum_k p_k(x)^2``.
    """
    alpha = float(alpha)
    if not alpha > -1:
        raise DomainError(f"alpha must be > -1, got {alpha!r}")
    if isinstance(order, bool) or not 1 <= order <= 400:
        raise DomainError(f"order must be in [1, 400], got {order!r}")
    k = np.arange(order)
    diag = 2 * k + alpha + 1
    off = np.sqrt((k[1:]) * (k[1:] + alpha))
    x = eigvalsh_tridiagonal(diag, off) if order > 1 else diag.astype(float)

    # polish in extended precision so small nodes reach full double accuracy
    x = x.astype(np.longdouble)
    last = math.inf
    for _ in range(100):
        p, dp, _, _ = _orthonormal_recurrence(alpha, order, x, np.longdouble)
        step = p / dp
        x = x - step
        size = float(np.max(np.abs(step) / np.abs(x)))
        # stop at the rounding floor: tiny steps that no longer shrink quadratically
        if size < 1e-15 or (size < 1e-12 and size > 0.5 * last):
            break
        last = size
    else:
        raise ConvergenceError(f"Newton polish did not converge for alpha={alpha}, order={order}")
    x = x.astype(float)
    if np.any(x <= 0) or np.any(np.diff(x) <= 0):
        raise ConvergenceError("Newton polish produced non-distinct or non-positive nodes")

    _, _, log_scale, sum_sq = _orthonormal_recurrence(alpha, order, x)
    log_w = -(np.log(sum_sq) + 2 * log_scale)
    x.setflags(write=False)
    log_w.setflags(write=False)
    w = np.exp(log_w)
    w.setflags(write=False)
    return QuadratureRule(alpha, order, x, w, log_w)


def integrate_power_exp(poly, exponent: float, rate: float, log_prefactor: float = 0.0,
                        orders=ORDERS, rtol=RTOL) -> float:
    """``exp(log_prefactor) * int_0^inf r^exponent exp(-rate r) poly(r) dr``.

    ``poly`` is a vectorised callable, smooth and of at most polynomial
    growth.  Raises DomainError if the integral diverges at the origin.
    """
    if not exponent > -1:
        raise DomainError(f"integrand ~ r^{exponent} diverges at the origin")
    if not rate > 0:
        raise DomainError("decay rate must be > 0")
    pref = math.exp(log_prefactor - (exponent + 1) * math.log(rate))
    previous = None
    for order in orders:
        rule = gauss_laguerre(exponent, order)
        terms = rule.weights * poly(rule.nodes / rate)
        value = float(np.sum(terms)) * pref
        # cancelling integrands (orthogonality) converge to rounding noise, not zero
        floor = 1e-13 * float(np.sum(np.abs(terms))) * pref
        if previous is not None and abs(value - previous) <= max(rtol * max(abs(value), abs(previous)), floor):
            return value
        previous = value
    raise ConvergenceError(f"quadrature did not settle after orders {orders}")


def radial_inner_product(f: RadialState, g: RadialState, power: int = 0,
                         measure_exponent=None) -> float:
    """``int_0^inf f(r) g(r) r^power r^measure_exponent dr``.

    ``measure_exponent`` defaults to ``N - 1`` and may also be ``N - 2``.
    """
    if f.N != g.N:
        raise DomainError("states live in different dimensions")
    N = f.N
    if measure_exponent is None:
        measure_exponent = N - 1
    if measure_exponent not in (N - 1, N - 2):
        raise DomainError("measure_exponent must be N-1 or N-2")
    if power < -2:
        raise DomainError("power must be >= -2")
    exponent = f.power + g.power + power + measure_exponent

    def poly(r):
        return laguerre_part(f, r) * laguerre_part(g, r)

    return integrate_power_exp(poly, exponent, f.epsilon + g.epsilon, f.log_norm + g.log_norm)


def norm(state: RadialState) -> float:
    return radial_inner_product(state, state)


def expect_power(state: RadialState, power: int) -> float:
    return radial_inner_product(state, state, power)


def potential_expectation(state: RadialState) -> float:
    p = state.params
    return -p.A * expect_power(state, -1) + p.B * expect_power(state, -2) + p.C


def kinetic_expectation(state: RadialState) -> float:
    """``<T> = E - <V>``, with E the level of the state's own channel."""
    p = state.params
    e = p.C - binding(p, state.derived.K)
    return e - potential_expectation(state)
