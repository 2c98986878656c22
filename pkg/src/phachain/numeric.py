"""Forward integration of odd-period chains and residuals of sampled chains."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import ChainParams, ChainSolution

__all__ = [
    "Grid",
    "SampledChain",
    "BlowUp",
    "explicit_derivatives",
    "rk4_integrate",
    "sampled_residuals",
    "fd_first",
    "fd_second",
    "sample_solution",
]


class BlowUp(RuntimeError):
    def __init__(self, x_last: float):
        super().__init__(f"solution exceeded 1e9 after x = {x_last}")
        self.x_last = x_last


@dataclass(frozen=True)
class Grid:
    x0: float
    x1: float
    steps: int

    def __post_init__(self):
        if not self.x1 > self.x0:
            raise ValueError("grid needs x1 > x0")
        if self.steps < 2:
            raise ValueError("grid needs at least 2 steps")

    @property
    def h(self) -> float:
        return (self.x1 - self.x0) / self.steps

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.x0, self.x1, self.steps + 1)


@dataclass
class SampledChain:
    grid: Grid
    f: np.ndarray  # shape (n, steps + 1)
    params: ChainParams

    @property
    def x(self) -> np.ndarray:
        return self.grid.points


def _float_params(params: ChainParams):
    eps = np.array([float(e) for e in params.eps])
    alpha = np.array([float(a) for a in params.alpha])
    return eps, alpha


def explicit_derivatives(f_values, params: ChainParams) -> np.ndarray:
    """Solve d_i + d_{i+1} = R_i for the derivatives of an odd-period chain.

    R_i = f_i**2 - f_{i+1}**2 + alpha_i.  The cyclic system is inverted in
    closed form: d_i = 1/2 * sum_k (-1)**k R_{i+k}.
    """
    n = params.n
    if n % 2 == 0:
        raise ValueError(f"period {n} is even: the cyclic system for f' is singular")
    f = np.asarray(f_values, dtype=float)
    _, alpha = _float_params(params)
    r = f**2 - np.roll(f, -1) ** 2 + alpha
    signs = (-1.0) ** np.arange(n)
    # row i of the circulant picks R_{i}, R_{i+1}, ... with alternating signs
    return 0.5 * np.array([np.dot(signs, np.roll(r, -i)) for i in range(n)])


def rk4_integrate(initial, params: ChainParams, grid: Grid, *, limit: float = 1e9) -> SampledChain:
    """Fixed-step classical RK4 over ``grid`` starting from ``initial`` at ``grid.x0``."""
    if params.n % 2 == 0:
        raise ValueError(f"period {params.n} is even; forward integration needs an odd period")
    y = np.asarray(initial, dtype=float).copy()
    if y.shape != (params.n,):
        raise ValueError(f"expected {params.n} initial values")
    h = grid.h
    out = np.empty((params.n, grid.steps + 1))
    out[:, 0] = y
    xs = grid.points
    rhs = lambda v: explicit_derivatives(v, params)  # noqa: E731 - autonomous system
    for k in range(grid.steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y)) or np.max(np.abs(y)) > limit:
            raise BlowUp(float(xs[k]))
        out[:, k + 1] = y
    return SampledChain(grid, out, params)


def fd_first(values: np.ndarray, h: float) -> np.ndarray:
    """5-point central first derivative; the two end points on each side are NaN."""
    v = np.asarray(values, dtype=float)
    d = np.full_like(v, np.nan)
    d[..., 2:-2] = (v[..., :-4] - 8 * v[..., 1:-3] + 8 * v[..., 3:-1] - v[..., 4:]) / (12 * h)
    return d


def fd_second(values: np.ndarray, h: float) -> np.ndarray:
    """5-point central second derivative; the two end points on each side are NaN."""
    v = np.asarray(values, dtype=float)
    d = np.full_like(v, np.nan)
    d[..., 2:-2] = (-v[..., :-4] + 16 * v[..., 1:-3] - 30 * v[..., 2:-2]
                    + 16 * v[..., 3:-1] - v[..., 4:]) / (12 * h * h)
    return d


def sampled_residuals(sc: SampledChain) -> np.ndarray:
    """Max |residual| of each cyclic equation, derivatives by 5-point differences."""
    if sc.grid.steps + 1 < 5:
        raise ValueError("need at least 5 grid points")
    _, alpha = _float_params(sc.params)
    f = sc.f
    df = fd_first(f, sc.grid.h)
    f_next, df_next = np.roll(f, -1, axis=0), np.roll(df, -1, axis=0)
    res = df + df_next - (f**2 - f_next**2 + alpha[:, None])
    return np.nanmax(np.abs(res), axis=1)


def sample_solution(sol: ChainSolution, grid: Grid) -> SampledChain:
    """Sample an exact solution on a pole-free grid."""
    return SampledChain(grid, sol.sample(grid.points), sol.params)
