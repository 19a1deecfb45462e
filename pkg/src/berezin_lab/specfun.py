"""Scalar special functions: Gamma, Beta, integer-order Bessel J, Bessel zeros.

Gamma and Beta wrap the C library's gamma/lgamma; Beta goes through
log-Gamma so large arguments do not overflow, and its symmetry in (a, b) is
exact by construction.

The Bessel evaluator combines the ascending series (small argument) with
trapezoidal quadrature of the cosine integral representation

    J_m(x) = (1/pi) * int_0^pi cos(m*theta - x*sin(theta)) dtheta.

The integrand extends to a smooth even 2*pi-periodic function, so the
trapezoidal rule is spectrally accurate; aliasing leaves an error of order
J_{2n-m}(x), which is negligible once 2n - m clears the turning point x by a
few transition widths x^(1/3).

Zeros are bracketed by a unit-step sign scan (consecutive zeros of J_m are
more than one apart for every m) and refined by Newton steps using
J_m' = (J_{m-1} - J_{m+1})/2, falling back to bisection whenever a step
would leave the bracket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import ConvergenceError

__all__ = [
    "Accuracy",
    "DEFAULT_ACCURACY",
    "gamma",
    "log_gamma",
    "beta",
    "bessel_j",
    "bessel_zero",
    "bessel_zeros_below",
]


@dataclass(frozen=True)
class Accuracy:
    """Tolerance budget for iterative refinement."""

    abs_tol: float = 1e-13
    rel_tol: float = 1e-13
    max_iter: int = 100

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0.0 and self.rel_tol > 0.0):
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


DEFAULT_ACCURACY = Accuracy()


def gamma(x: float) -> float:
    """Gamma function for positive real x."""
    if not x > 0.0:
        raise ValueError(f"gamma requires x > 0, got {x!r}")
    try:
        return math.gamma(x)
    except OverflowError as exc:
        raise OverflowError(f"gamma({x}) exceeds the double-precision range") from exc


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for positive real x."""
    if not x > 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def beta(a: float, b: float) -> float:
    """Euler Beta function via log-Gamma."""
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f"beta requires positive arguments, got {a!r}, {b!r}")
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


# Above this the ascending series starts losing digits to cancellation.
_SERIES_LIMIT = 6.0


def _check_order(m: int) -> None:
    if not (isinstance(m, (int, np.integer)) and not isinstance(m, bool) and m >= 0):
        raise ValueError(f"order must be a nonnegative integer, got {m!r}")


def bessel_j(m: int, x: float) -> float:
    """Bessel function of the first kind, integer order m >= 0, x >= 0."""
    _check_order(m)
    if not (x >= 0.0 and math.isfinite(x)):
        raise ValueError(f"bessel_j requires finite x >= 0, got {x!r}")
    if x <= _SERIES_LIMIT:
        return _j_series(int(m), x)
    return _j_quadrature(int(m), x)


def _j_series(m: int, x: float) -> float:
    if x == 0.0:
        return 1.0 if m == 0 else 0.0
    q = 0.25 * x * x
    term = math.exp(m * math.log(0.5 * x) - math.lgamma(m + 1.0))
    total = term
    for k in range(1, 80):
        term *= -q / (k * (k + m))
        total += term
        if abs(term) <= 1e-17 * (abs(total) + 1e-300):
            break
    return total


def _j_quadrature(m: int, x: float) -> float:
    span = m + x + 14.0 * (0.5 * x) ** (1.0 / 3.0) + 20.0
    n = int(math.ceil(0.5 * span))
    theta = np.linspace(0.0, math.pi, n + 1)
    vals = np.cos(m * theta - x * np.sin(theta))
    return float((0.5 * (vals[0] + vals[-1]) + vals[1:-1].sum()) / n)


def _j_derivative(m: int, x: float) -> float:
    if m == 0:
        return -bessel_j(1, x)
    return 0.5 * (bessel_j(m - 1, x) - bessel_j(m + 1, x))


def _mcmahon(m: int, k: int) -> float:
    """Asymptotic guess for the k-th positive zero of J_m."""
    b = (k + 0.5 * m - 0.25) * math.pi
    mu = 4.0 * m * m
    e = 8.0 * b
    return (
        b
        - (mu - 1.0) / e
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e**3)
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e**5)
    )


def _bracket_scan(m: int, max_steps: int = 1_000_000) -> Iterator[tuple[float, float]]:
    """Yield unit brackets around consecutive zeros of J_m, in order.

    J_m is positive on (0, j_{m,1}) and zeros are separated by more than one,
    so scanning with step one cannot skip a sign change.
    """
    x = float(m)
    f = bessel_j(m, x)
    for _ in range(max_steps):
        x2 = x + 1.0
        f2 = bessel_j(m, x2)
        if f2 == 0.0:
            yield (x2 - 0.5, x2 + 0.5)
        elif f * f2 < 0.0:
            yield (x, x2)
        x, f = x2, f2
    raise ConvergenceError(f"zero scan for order {m} exceeded {max_steps} steps")


def _refine(m: int, lo: float, hi: float, guess: float, acc: Accuracy) -> float:
    f_lo = bessel_j(m, lo)
    x = guess if lo < guess < hi else 0.5 * (lo + hi)
    for _ in range(acc.max_iter):
        fx = bessel_j(m, x)
        if fx == 0.0:
            return x
        if (fx > 0.0) == (f_lo > 0.0):
            lo = x
        else:
            hi = x
        d = _j_derivative(m, x)
        x_new = x - fx / d if d != 0.0 else math.nan
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= acc.abs_tol + acc.rel_tol * abs(x_new):
            return x_new
        x = x_new
    raise ConvergenceError(
        f"zero refinement for order {m} stalled after {acc.max_iter} iterations"
    )


def bessel_zero(m: int, k: int, acc: Accuracy = DEFAULT_ACCURACY) -> float:
    """k-th positive zero of J_m (k >= 1), guaranteed-bracket Newton."""
    _check_order(m)
    if not (isinstance(k, (int, np.integer)) and k >= 1):
        raise ValueError(f"zero index must be a positive integer, got {k!r}")
    count = 0
    for lo, hi in _bracket_scan(int(m)):
        count += 1
        if count == k:
            return _refine(int(m), lo, hi, _mcmahon(int(m), int(k)), acc)
    raise ConvergenceError("unreachable")  # pragma: no cover


def bessel_zeros_below(
    m: int, x_max: float, acc: Accuracy = DEFAULT_ACCURACY
) -> list[float]:
    """All positive zeros of J_m strictly below x_max, ascending."""
    _check_order(m)
    if not (x_max > 0.0 and math.isfinite(x_max)):
        raise ValueError(f"x_max must be positive and finite, got {x_max!r}")
    zeros: list[float] = []
    k = 0
    for lo, hi in _bracket_scan(int(m)):
        if lo >= x_max:
            break
        k += 1
        z = _refine(int(m), lo, hi, _mcmahon(int(m), k), acc)
        if z >= x_max:
            break
        zeros.append(z)
    return zeros
