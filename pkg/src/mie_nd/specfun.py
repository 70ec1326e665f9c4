"""Associated Laguerre polynomials and overflow-safe log-factorials."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_LOG_FACTORIAL_TABLE = tuple(math.log(math.factorial(k)) for k in range(21))


def _check_args(n, alpha, x):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    if not alpha > -1:
        raise DomainError(f"alpha must be > -1, got {alpha!r}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(~np.isfinite(x)):
        raise DomainError("x must be finite and >= 0")
    return x


def laguerre_value(n, alpha, x):
    """L_n^alpha(x) by forward three-term recurrence; returns 0 for n < 0.

    No argument checking; ``x`` may be any array.
    """
    x = np.asarray(x, dtype=float)
    if n < 0:
        return np.zeros_like(x)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def laguerre_derivative(n, alpha, x, order=1):
    """d^order/dx^order L_n^alpha(x) = (-1)^order L_{n-order}^{alpha+order}(x)."""
    return (-1) ** order * laguerre_value(n - order, alpha + order, x)


@dataclass(frozen=True)
class LaguerreEval:
    n: int
    alpha: float
    x: object
    value: object
    derivative: object


def laguerre(n, alpha, x) -> LaguerreEval:
    """Evaluate L_n^alpha and its x-derivative at scalar or array ``x``."""
    xa = _check_args(n, alpha, x)
    value = laguerre_value(n, alpha, xa)
    deriv = laguerre_derivative(n, alpha, xa)
    if xa.ndim == 0:
        return LaguerreEval(n, alpha, float(xa), float(value), float(deriv))
    return LaguerreEval(n, alpha, xa, value, deriv)


def laguerre_lower_identity(n, alpha, x):
    """Both sides of ``x L' = n L_n - (n + alpha) L_{n-1}``."""
    if n < 1:
        raise DomainError("the lowering identity needs n >= 1")
    xa = _check_args(n, alpha, x)
    lhs = xa * laguerre_derivative(n, alpha, xa)
    rhs = n * laguerre_value(n, alpha, xa) - (n + alpha) * laguerre_value(n - 1, alpha, xa)
    return _scalarize(lhs), _scalarize(rhs)


def laguerre_raise_identity(n, alpha, x):
    """Both sides of ``x L' = (n + 1) L_{n+1} - (n + alpha + 1 - x) L_n``."""
    xa = _check_args(n, alpha, x)
    lhs = xa * laguerre_derivative(n, alpha, xa)
    rhs = (n + 1) * laguerre_value(n + 1, alpha, xa) - (n + alpha + 1 - xa) * laguerre_value(n, alpha, xa)
    return _scalarize(lhs), _scalarize(rhs)


def recurrence_residual(n, alpha, x):
    """Relative residual of the three-term recurrence at degree ``n >= 1``."""
    xa = np.asarray(x, dtype=float)
    t1 = (n + 1) * laguerre_value(n + 1, alpha, xa)
    t2 = (2 * n + alpha + 1 - xa) * laguerre_value(n, alpha, xa)
    t3 = (n + alpha) * laguerre_value(n - 1, alpha, xa)
    scale = np.maximum.reduce([np.abs(t1), np.abs(t2), np.abs(t3)])
    scale = np.where(scale == 0, 1.0, scale)
    return _scalarize(np.abs(t1 - t2 + t3) / scale)


def _scalarize(a):
    a = np.asarray(a)
    return float(a) if a.ndim == 0 else a


def log_factorial(k) -> float:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
        raise DomainError(f"log_factorial needs a non-negative integer, got {k!r}")
    if k < len(_LOG_FACTORIAL_TABLE):
        return _LOG_FACTORIAL_TABLE[k]
    return math.lgamma(k + 1)


def log_gamma(x) -> float:
    """ln Gamma(x) for x > 0; this is how non-integer factorials are continued."""
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x!r}")
    return math.lgamma(x)
