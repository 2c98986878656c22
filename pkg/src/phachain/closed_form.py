"""Closed-form chain solutions for short periods and Painlevé IV/V residuals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .chain import ChainParams, ChainSolution
from .ratfun import Poly, RatFun, X, as_fraction

__all__ = [
    "P4Params",
    "P5Params",
    "pha0_solution",
    "pha1_solution",
    "pha1_unhalved",
    "pha2_f2f3_from_f1",
    "painleve4_residual",
    "painleve4_residual_ratfun",
    "fit_painleve4_params",
    "painleve5_residual",
    "g_from_f1",
]


@dataclass(frozen=True)
class P4Params:
    b0: Fraction
    b1: Fraction

    def __post_init__(self):
        object.__setattr__(self, "b0", as_fraction(self.b0))
        object.__setattr__(self, "b1", as_fraction(self.b1))


@dataclass(frozen=True)
class P5Params:
    c1: float
    c2: float
    c3: float
    c4: float


def _line(lam, c0) -> RatFun:
    return RatFun(Poly((as_fraction(c0), as_fraction(lam))))


def pha0_solution(lam, c=0, eps1=0) -> ChainSolution:
    """Period-1 chain: f_1' = lambda, so f_1 = lambda*x + c."""
    return ChainSolution(ChainParams(1, lam, (eps1,), c), (_line(lam, c),))


def pha1_solution(lam, c0, eps1, eps2) -> ChainSolution:
    """Period-2 chain with t = lambda*x + c0 and A = 2(eps2 - eps1) + lambda.

    f_1 = (t + A/t)/2 and f_2 = (t - A/t)/2, which makes f_1 + f_2 = t and
    f_1**2 - f_2**2 = A.
    """
    lam = as_fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    t = _line(lam, c0)
    a = 2 * (as_fraction(eps2) - as_fraction(eps1)) + lam
    half = Fraction(1, 2)
    f1 = (t + a / t) * half
    f2 = (t - a / t) * half
    return ChainSolution(ChainParams(2, lam, (eps1, eps2), c0), (f1, f2))


def pha1_unhalved(lam, c0, eps1, eps2) -> ChainSolution:
    """The literal variant f_1 = t + A/t, f_2 = t - f_1 (kept for comparison; not a solution)."""
    lam = as_fraction(lam)
    t = _line(lam, c0)
    a = 2 * (as_fraction(eps2) - as_fraction(eps1)) + lam
    f1 = t + a / t
    return ChainSolution(ChainParams(2, lam, (eps1, eps2), c0), (f1, t - f1))


def pha2_f2f3_from_f1(f1, lam, c0, eps2, eps3):
    """Recover f_2, f_3 of a period-3 chain from f_1.

    With u = lambda*x + c0 - f_1 and r = (f_1' + 2(eps2 - eps3) - lambda)/u:
    f_2 = (u - r)/2, f_3 = (u + r)/2.  Accepts a :class:`RatFun` or a
    tuple ``(xs, f1_values, f1_derivative_values)`` of float arrays.
    """
    lam, c0 = as_fraction(lam), as_fraction(c0)
    shift = 2 * (as_fraction(eps2) - as_fraction(eps3)) - lam
    if isinstance(f1, RatFun):
        u = _line(lam, c0) - f1
        if u.is_zero():
            raise ZeroDivisionError("lambda*x + c0 - f_1 vanishes identically")
        r = (f1.derivative() + shift) / u
        half = Fraction(1, 2)
        return (u - r) * half, (u + r) * half
    xs, v, dv = (np.asarray(a, dtype=float) for a in f1)
    u = float(lam) * xs + float(c0) - v
    if np.any(u == 0):
        raise ZeroDivisionError("lambda*x + c0 - f_1 vanishes on the grid")
    r = (dv + float(shift)) / u
    return (u - r) / 2, (u + r) / 2


def g_from_f1(f1: RatFun, lam, c0) -> RatFun:
    """Painlevé IV variable from the substitution f_1 = g - lambda*x + c0."""
    return f1 + _line(lam, -as_fraction(c0))


def painleve4_residual_ratfun(g: RatFun, p: P4Params) -> RatFun:
    """g'' - [g'^2/(2g) + 3/2 g^3 + 4x g^2 + 2(x^2 - b0) g + b1/g], exactly."""
    if g.is_zero():
        raise ZeroDivisionError("g vanishes identically")
    dg = g.derivative()
    d2g = dg.derivative()
    x = X
    rhs = (dg * dg) / (g * 2) + g * g * g * Fraction(3, 2) + x * g * g * 4 \
        + (x * x - p.b0) * g * 2 + RatFun.const(p.b1) / g
    return d2g - rhs


def _p4_numeric(g: Callable, xs: np.ndarray, p: P4Params, h: float) -> np.ndarray:
    v = np.asarray(g(xs), dtype=float)
    if np.any(v == 0):
        raise ZeroDivisionError("g has a zero on the grid")
    vp, vm = g(xs + h), g(xs - h)
    vp2, vm2 = g(xs + 2 * h), g(xs - 2 * h)
    d1 = (vm2 - 8 * vm + 8 * vp - vp2) / (12 * h)
    d2 = (-vm2 + 16 * vm - 30 * v + 16 * vp - vp2) / (12 * h * h)
    b0, b1 = float(p.b0), float(p.b1)
    return d2 - (d1**2 / (2 * v) + 1.5 * v**3 + 4 * xs * v**2 + 2 * (xs**2 - b0) * v + b1 / v)


def painleve4_residual(g, p: P4Params, grid=None, *, h: float = 1e-3):
    """Painlevé IV residual.

    For a :class:`RatFun` without ``grid`` returns the exact residual
    rational function.  With a grid returns ``(xs, residual values)``; a
    callable ``g`` is differentiated by 5-point central differences.
    """
    if isinstance(g, RatFun):
        res = painleve4_residual_ratfun(g, p)
        if grid is None:
            return res
        xs = np.asarray(grid, dtype=float)
        if np.any(g.eval_array(xs) == 0):
            raise ZeroDivisionError("g has a zero on the grid")
        return xs, res.eval_array(xs)
    if grid is None:
        raise ValueError("a grid is required for callable input")
    xs = np.asarray(grid, dtype=float)
    return xs, _p4_numeric(g, xs, p, h)


def fit_painleve4_params(g: RatFun, points=(Fraction(1, 3), Fraction(5, 7))):
    """Find (b0, b1) making ``g`` a Painlevé IV solution, if any exist.

    The residual is affine in (b0, b1): R = R0 + 2 b0 g - b1/g.  The two
    unknowns are solved exactly at two sample points; the result is then
    checked as an identity.  Returns ``(P4Params | None, residual)``.
    """
    r0 = painleve4_residual_ratfun(g, P4Params(0, 0))
    rows = []
    for x0 in points:
        gv = g.eval(x0)
        rows.append((2 * gv, -1 / gv, -r0.eval(x0)))
    (a11, a12, y1), (a21, a22, y2) = rows
    det = a11 * a22 - a12 * a21
    if det == 0:
        return None, r0
    b0 = (y1 * a22 - a12 * y2) / det
    b1 = (a11 * y2 - a21 * y1) / det
    params = P4Params(b0, b1)
    res = painleve4_residual_ratfun(g, params)
    return (params if res.is_zero() else None), res


def painleve5_residual(w: Callable, p: P5Params, zs, *, dw: Callable | None = None,
                       d2w: Callable | None = None, h: float = 1e-3) -> np.ndarray:
    """Pointwise Painlevé V residual w'' - RHS on ``zs``.

    Derivatives come from ``dw``/``d2w`` when given, else from 5-point
    central differences with step ``h``.
    """
    z = np.asarray(zs, dtype=float)
    v = np.asarray(w(z), dtype=float) * np.ones_like(z)
    if np.any(z == 0) or np.any(v == 0) or np.any(v == 1):
        raise ZeroDivisionError("singular point (z = 0, w = 0 or w = 1) on the grid")
    if dw is None or d2w is None:
        vp, vm = w(z + h), w(z - h)
        vp2, vm2 = w(z + 2 * h), w(z - 2 * h)
        d1 = (vm2 - 8 * vm + 8 * vp - vp2) / (12 * h)
        d2 = (-vm2 + 16 * vm - 30 * v + 16 * vp - vp2) / (12 * h * h)
    else:
        d1 = np.asarray(dw(z), dtype=float) * np.ones_like(z)
        d2 = np.asarray(d2w(z), dtype=float) * np.ones_like(z)
    rhs = (
        (1 / (2 * v) + 1 / (v - 1)) * d1**2
        - d1 / z
        + (v - 1) ** 2 / z**2 * (p.c1 * v + p.c2 / v)
        + p.c3 * v / z
        + p.c4 * v * (v + 1) / (v - 1)
    )
    return d2 - rhs
