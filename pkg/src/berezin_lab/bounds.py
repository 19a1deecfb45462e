"""Right-hand sides of the spectral estimates.

Collects the classical phase-space quantities, the per-section sliced upper
bound for Riesz means, the corrected two-term upper bound with an explicit
negative boundary term, and the lower bounds on eigenvalue sums. Everything
here is a closed-form or quadrature evaluation; verdicts live in harness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import SemiclassicalParams, c_const, lt_value
from .errors import UnsupportedDomainError
from .geometry import (
    AxisBox,
    BoxUnion,
    Disk,
    Domain,
    GenericSliced,
    _box_cross_area,
    _midpoint_grid,
    critical_length,
)

__all__ = [
    "BoundInputs",
    "phase_space_eta",
    "s_classical",
    "sum_classical",
    "improved_rhs",
    "sliced_bound",
    "li_yau_rhs",
    "melas_rhs",
    "eigenvalue_lower",
    "two_term_counting",
    "two_term_riesz",
    "two_term_sum",
]

_GL_NODES = 48
_gl_x, _gl_w = np.polynomial.legendre.leggauss(_GL_NODES)
# Nodes mapped to [0, pi/2] once; reused by every disk evaluation.
_gl_phi = 0.25 * math.pi * (_gl_x + 1.0)
_gl_wphi = 0.25 * math.pi * _gl_w
_gl_cos = np.cos(_gl_phi)
_gl_cos2 = _gl_cos**2
_gl_sin2 = np.sin(_gl_phi) ** 2


@dataclass(frozen=True)
class BoundInputs:
    """Bundle of evaluation inputs for bound right-hand sides.

    Only the fields a given bound consumes need to be present. exploratory
    permits parameter values outside the guaranteed regime; reports flag the
    rows produced that way.
    """

    params: SemiclassicalParams
    lam: float | None = None
    n: int | None = None
    vol: float | None = None
    surf: float | None = None
    vol_omega_lambda: float | None = None
    d_lambda: float | None = None
    nu: float | None = None
    moment_j: float | None = None
    melas_m: float | None = None
    exploratory: bool = False


def _check_lam(lam: float) -> float:
    if not (math.isfinite(lam) and lam >= 0.0):
        raise ValueError(f"lambda must be finite and >= 0, got {lam!r}")
    return float(lam)


def _check_positive(name: str, v: float) -> float:
    if not (math.isfinite(v) and v > 0.0):
        raise ValueError(f"{name} must be positive and finite, got {v!r}")
    return float(v)


def phase_space_eta(d: int, vol: float, lam: float) -> float:
    """First Weyl term of the counting function."""
    _check_positive("vol", vol)
    _check_lam(lam)
    return lt_value(0.0, d) * vol * lam ** (0.5 * d)


def s_classical(p: SemiclassicalParams, vol: float, lam: float) -> float:
    """First Weyl term of the Riesz mean of order sigma."""
    _check_positive("vol", vol)
    _check_lam(lam)
    return lt_value(p.sigma, p.dim) * vol * lam ** (p.sigma + 0.5 * p.dim)


def sum_classical(p: SemiclassicalParams, vol: float, n: int) -> float:
    """Leading asymptotics of the sum of the lowest n eigenvalue powers."""
    if not p.sigma > 0.0:
        raise ValueError("sum_classical requires sigma > 0")
    _check_positive("vol", vol)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    return c_const(p) * vol ** (-2.0 * p.sigma / p.dim) * float(n) ** (
        1.0 + 2.0 * p.sigma / p.dim
    )


def improved_rhs(inputs: BoundInputs) -> float:
    """Two-term upper bound: classical term minus a boundary-layer correction.

    The correction is proportional to the cross measure of long sections and
    carries the weight nu; the guaranteed regime is sigma >= 3/2, dim >= 2.
    """
    p = inputs.params
    if not inputs.exploratory:
        if p.sigma < 1.5:
            raise ValueError("improved_rhs requires sigma >= 3/2 (or exploratory=True)")
    if p.dim < 2:
        raise ValueError("improved_rhs requires dim >= 2")
    if inputs.lam is None or inputs.vol_omega_lambda is None or inputs.d_lambda is None:
        raise ValueError("improved_rhs needs lam, vol_omega_lambda, and d_lambda")
    if inputs.nu is None or not math.isfinite(inputs.nu):
        raise ValueError("improved_rhs needs a finite nu")
    lam = _check_lam(inputs.lam)
    main = lt_value(p.sigma, p.dim) * inputs.vol_omega_lambda * lam ** (p.sigma + 0.5 * p.dim)
    corr = (
        0.25
        * inputs.nu
        * lt_value(p.sigma, p.dim - 1)
        * inputs.d_lambda
        * lam ** (p.sigma + 0.5 * (p.dim - 1))
    )
    return main - corr


def sliced_bound(
    dom: Domain, p: SemiclassicalParams, lam: float, quad_points: int | None = None
) -> float:
    """Per-section Riesz-mean upper bound, integrated over the cross variables.

    Exact for boxes and box unions (piecewise-constant sections); the disk
    uses per-term Gauss-Legendre in a trigonometric substitution that makes
    each piece smooth; GenericSliced falls back to the midpoint rule.
    """
    if p.sigma < 1.5:
        raise ValueError("sliced_bound requires sigma >= 3/2")
    if p.dim != dom.dim:
        raise ValueError("params dimension must match the domain dimension")
    lam = _check_positive("lambda", lam)
    e = p.sigma + 0.5 * (p.dim - 1)
    l_crit = critical_length(lam)
    pref = lam**e * lt_value(p.sigma, p.dim - 1)

    if isinstance(dom, (AxisBox, BoxUnion)):
        boxes = dom.boxes if isinstance(dom, BoxUnion) else (dom,)
        axis = dom.slicing_axis
        total = 0.0
        for b in boxes:
            t = b.sides[axis - 1]
            r = t / l_crit
            if r <= 1.0:
                continue
            s = 0.0
            jmax = int(math.floor(r))
            for j in range(1, jmax + 1):
                base = 1.0 - (j / r) ** 2
                if base > 0.0:
                    s += base**e
            total += _box_cross_area(b, axis) * s
        return pref * total

    if isinstance(dom, Disk):
        r_dom = dom.radius
        jmax = int(math.floor(2.0 * r_dom / l_crit))
        if jmax < 1:
            return 0.0
        js = np.arange(1, jmax + 1, dtype=float)
        uj2 = r_dom * r_dom - (0.5 * js * l_crit) ** 2
        np.maximum(uj2, 0.0, out=uj2)
        uj = np.sqrt(uj2)
        num = uj2[:, None] * _gl_cos2[None, :]
        den = r_dom * r_dom - uj2[:, None] * _gl_sin2[None, :]
        integrand = (num / den) ** e * _gl_cos[None, :]
        pieces = uj * (integrand @ _gl_wphi)
        return pref * 2.0 * float(np.sum(pieces))

    if isinstance(dom, GenericSliced):
        total = 0.0
        for xp, w in _midpoint_grid(dom, quad_points):
            for t0, t1 in dom.section_fn(xp):
                r = (t1 - t0) / l_crit
                if r <= 1.0:
                    continue
                s = 0.0
                for j in range(1, int(math.floor(r)) + 1):
                    base = 1.0 - (j / r) ** 2
                    if base > 0.0:
                        s += base**e
                total += s * w
        return pref * total

    raise UnsupportedDomainError(f"unknown domain class {type(dom).__name__}")


def li_yau_rhs(d: int, vol: float, n: int) -> float:
    """Berezin-Li-Yau lower bound for the sum of the lowest n eigenvalues."""
    return sum_classical(SemiclassicalParams(1.0, d), vol, n)


def melas_rhs(d: int, vol: float, moment_j: float, n: int, melas_m: float | None) -> float:
    """Li-Yau plus the moment correction; the constant must be supplied."""
    if melas_m is None:
        raise ValueError(
            "the Melas correction needs an explicit dimensional constant melas_m"
        )
    _check_positive("moment_j", moment_j)
    _check_positive("vol", vol)
    return li_yau_rhs(d, vol, n) + float(melas_m) * (vol / moment_j) * float(n)


def eigenvalue_lower(d: int, vol: float, n: int) -> float:
    """Li-Yau-type lower bound for the n-th eigenvalue itself."""
    _check_positive("vol", vol)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    return (
        d
        / (2.0 + d)
        * (lt_value(0.0, d) * vol) ** (-2.0 / d)
        * float(n) ** (2.0 / d)
    )


def two_term_counting(d: int, vol: float, surf: float, lam: float) -> float:
    """Two-term Weyl approximation of the counting function (not a bound).

    Valid down to d = 1, where surf counts the interval endpoints.
    """
    if d < 1:
        raise ValueError("two_term_counting requires dim >= 1")
    _check_positive("vol", vol)
    _check_positive("surf", surf)
    lam = _check_lam(lam)
    return phase_space_eta(d, vol, lam) - 0.25 * lt_value(0.0, d - 1) * surf * lam ** (
        0.5 * (d - 1)
    )


def two_term_riesz(p: SemiclassicalParams, vol: float, surf: float, lam: float) -> float:
    """Two-term Weyl approximation of the Riesz mean (not a bound)."""
    if not p.sigma > 0.0:
        raise ValueError("two_term_riesz requires sigma > 0")
    _check_positive("vol", vol)
    _check_positive("surf", surf)
    lam = _check_lam(lam)
    return s_classical(p, vol, lam) - 0.25 * lt_value(p.sigma, p.dim - 1) * surf * lam ** (
        p.sigma + 0.5 * (p.dim - 1)
    )


def two_term_sum(p: SemiclassicalParams, vol: float, surf: float, n: int) -> float:
    """Two-term asymptotics of the eigenvalue power sum (not a bound)."""
    if not p.sigma > 0.0:
        raise ValueError("two_term_sum requires sigma > 0")
    _check_positive("vol", vol)
    _check_positive("surf", surf)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    expo = 1.0 + (2.0 * p.sigma - 1.0) / p.dim
    coef = (
        lt_value(p.sigma, p.dim - 1)
        * lt_value(p.sigma, p.dim) ** (-expo)
        / (4.0 * (0.5 * (p.dim - 1) + p.sigma))
    )
    second = coef * p.sigma * surf / vol**expo * float(n) ** expo
    return sum_classical(p, vol, n) + second
