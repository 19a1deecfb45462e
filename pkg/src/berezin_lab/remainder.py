"""Remainder function of one-dimensional Dirichlet Riesz means and its minimum.

f_mu(A) is the gap between the semiclassical value and the lattice sum of
(1 - k^2/A^2)_+^mu over a section of scaled length A; its infimum over
A >= 1 sizes the negative boundary correction the improved bounds can carry.
f_mu has kinks at integer A (a new lattice term enters), so the minimizer is
located by a coarse scan refined with golden-section searches whose brackets
never straddle an integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import TailGuardError
from .specfun import beta

__all__ = ["RemainderResult", "f_mu", "epsilon_mu", "nu_bounds"]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_SCAN_STEP = 1e-3
DEFAULT_SCAN_UPPER = 60.0
DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class RemainderResult:
    mu: float
    epsilon: float
    argmin_a: float
    scan_upper: float
    tol: float


def _check_mu(mu: float) -> None:
    if not (math.isfinite(mu) and mu > 0.0):
        raise ValueError(f"mu must be finite and > 0, got {mu!r}")


def f_mu(mu: float, a: float) -> float:
    """Remainder at scaled length a >= 1; tends to 1/2 as a grows."""
    _check_mu(mu)
    if not a >= 1.0:
        raise ValueError(f"f_mu requires A >= 1, got {a!r}")
    return 0.5 * a * beta(1.0 + mu, 0.5) - _lattice_sum(mu, a)


def _lattice_sum(mu: float, a: float) -> float:
    kmax = int(math.floor(a))
    if kmax >= 512:
        k = np.arange(1, kmax + 1, dtype=float)
        t = 1.0 - (k / a) ** 2
        np.maximum(t, 0.0, out=t)
        return float(np.sum(t**mu))
    total = 0.0
    inv = 1.0 / (a * a)
    for k in range(1, kmax + 1):
        t = 1.0 - k * k * inv
        if t > 0.0:
            total += t**mu
    return total


def _f_grid(mu: float, a: np.ndarray) -> np.ndarray:
    out = 0.5 * a * beta(1.0 + mu, 0.5)
    kmax = int(math.floor(float(a.max())))
    aa = a * a
    for k in range(1, kmax + 1):
        t = 1.0 - (k * k) / aa
        np.maximum(t, 0.0, out=t)
        out -= t**mu
    return out


def _golden_min(
    fn: Callable[[float], float], lo: float, hi: float, tol: float
) -> tuple[float, float]:
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc, fd = fn(c), fn(d)
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _GOLDEN * (hi - lo)
            fc = fn(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _GOLDEN * (hi - lo)
            fd = fn(d)
    x = 0.5 * (lo + hi)
    return x, fn(x)


@lru_cache(maxsize=128)
def epsilon_mu(
    mu: float, scan_upper: float = DEFAULT_SCAN_UPPER, tol: float = DEFAULT_TOL
) -> RemainderResult:
    """Global minimum of f_mu over [1, scan_upper], with a tail guard.

    The guard verifies that f_mu stays above the located minimum out to
    4 * scan_upper and raises TailGuardError otherwise, so a minimum hiding
    beyond the scan cannot be reported silently.
    """
    _check_mu(mu)
    if not scan_upper >= 2.0:
        raise ValueError(f"scan_upper must be >= 2, got {scan_upper!r}")
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol!r}")

    best_f = math.inf
    best_x = math.nan
    seg = 1.0
    while seg < scan_upper:
        s0, s1 = seg, min(seg + 1.0, scan_upper)
        npts = max(int(math.ceil((s1 - s0) / _SCAN_STEP)) + 1, 3)
        grid = np.linspace(s0, s1, npts)
        vals = _f_grid(mu, grid)
        i = int(np.argmin(vals))
        if float(vals[i]) < best_f:
            best_f, best_x = float(vals[i]), float(grid[i])
        lo = float(grid[max(i - 1, 0)])
        hi = float(grid[min(i + 1, npts - 1)])
        x, fx = _golden_min(lambda t: f_mu(mu, t), lo, hi, tol)
        if fx < best_f:
            best_f, best_x = fx, x
        seg += 1.0

    tail = np.linspace(scan_upper, 4.0 * scan_upper, 257)
    if float(np.min(_f_grid(mu, tail))) <= best_f:
        raise TailGuardError(
            f"f_mu minimum for mu={mu} may lie beyond scan_upper={scan_upper}"
        )
    return RemainderResult(
        mu=float(mu),
        epsilon=best_f,
        argmin_a=best_x,
        scan_upper=float(scan_upper),
        tol=float(tol),
    )


def nu_bounds(sigma: float, dim: int, scan_upper: float = DEFAULT_SCAN_UPPER,
              tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Guaranteed bracket for the boundary-correction weight at (sigma, dim)."""
    if not sigma >= 1.5:
        raise ValueError("nu_bounds requires sigma >= 3/2")
    if not (isinstance(dim, int) and not isinstance(dim, bool) and dim >= 2):
        raise ValueError("nu_bounds requires integer dim >= 2")
    mu = sigma + 0.5 * (dim - 1)
    res = epsilon_mu(mu, scan_upper, tol)
    upper = 2.0 * min(1.0, beta(1.0 + mu, 0.5))
    return 4.0 * res.epsilon, upper
