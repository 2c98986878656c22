from fractions import Fraction

import numpy as np
import pytest

from phachain.chain import ChainParams, symmetric_seed
from phachain.numeric import (
    BlowUp,
    Grid,
    explicit_derivatives,
    rk4_integrate,
    sample_solution,
    sampled_residuals,
)
from phachain.weyl import apply_word, orbit


def cyclic_solve(r):
    """Oracle: solve d_i + d_{i+1} = r_i with a dense linear solve."""
    n = len(r)
    a = np.eye(n) + np.roll(np.eye(n), 1, axis=1)
    return np.linalg.solve(a, r)


def test_explicit_derivatives_period3():
    params = ChainParams(3, 1, (0, Fraction(1, 5), Fraction(-2, 7)))
    f = np.array([0.3, -1.2, 2.0])
    alpha = np.array([float(a) for a in params.alpha])
    r = f**2 - np.roll(f, -1) ** 2 + alpha
    d = explicit_derivatives(f, params)
    assert d[0] == pytest.approx((r[0] - r[1] + r[2]) / 2, abs=1e-15)
    assert np.allclose(d, cyclic_solve(r), atol=1e-14)


@pytest.mark.parametrize("n", [1, 3, 5, 7])
def test_explicit_derivatives_match_linear_solve(n):
    rng = np.random.default_rng(n)
    params = ChainParams(n, Fraction(3, 2), tuple(Fraction(int(v), 4) for v in rng.integers(-8, 8, n)))
    f = rng.normal(size=n)
    alpha = np.array([float(a) for a in params.alpha])
    r = f**2 - np.roll(f, -1) ** 2 + alpha
    d = explicit_derivatives(f, params)
    assert np.allclose(d, cyclic_solve(r), atol=1e-13)
    assert np.sum(d) == pytest.approx(1.5, abs=1e-13)


def test_explicit_derivatives_on_seed():
    seed = symmetric_seed(5, 2, 1)
    d = explicit_derivatives(seed.sample([0.7])[:, 0], seed.params)
    assert np.allclose(d, 2 / 5, atol=1e-15)


def test_even_period_rejected():
    with pytest.raises(ValueError):
        explicit_derivatives([1.0, 2.0], ChainParams(2, 1, (0, 0)))
    with pytest.raises(ValueError):
        rk4_integrate([1.0, 2.0], ChainParams(2, 1, (0, 0)), Grid(0, 1, 10))


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid(1, 1, 10)
    with pytest.raises(ValueError):
        Grid(0, 1, 1)


def test_rk4_seed():
    seed = symmetric_seed(3, 1, 0)
    sc = rk4_integrate(seed.sample([1.0])[:, 0], seed.params, Grid(1.0, 2.0, 1000))
    assert np.max(np.abs(sc.f[:, -1] - 2 / 3)) < 1e-8
    assert sampled_residuals(sc).max() < 1e-8


def test_rk4_conservation_on_perturbed_start():
    seed = symmetric_seed(3, 1, 0)
    sc = rk4_integrate([1 / 3 + 0.01, 1 / 3, 1 / 3], seed.params, Grid(1.0, 2.0, 200))
    for k in range(sc.f.shape[1]):
        assert abs(np.sum(explicit_derivatives(sc.f[:, k], seed.params)) - 1.0) < 1e-12


def test_rk4_fourth_order_on_nonlinear_member():
    sol = apply_word("s0", symmetric_seed(3, 1, 0))
    errs = []
    for steps in (20, 40):
        g = Grid(1.0, 2.0, steps)
        sc = rk4_integrate(sol.sample([1.0])[:, 0], sol.params, g)
        errs.append(np.max(np.abs(sc.f - sol.sample(g.points))))
    assert 12 <= errs[0] / errs[1] <= 20


def test_blow_up_detected():
    sol = apply_word("s0 s1", symmetric_seed(3, 1, 0))  # pole at sqrt(3/2)
    with pytest.raises(BlowUp) as exc:
        rk4_integrate(sol.sample([1.0])[:, 0], sol.params, Grid(1.0, 2.0, 100))
    assert 1.0 < exc.value.x_last < 1.5


def test_sampled_symbolic_members():
    g = Grid(2.0, 2.2, 2000)  # depth-2 poles all lie in |x| < 1.3
    for m in orbit(3, 2):
        assert sampled_residuals(sample_solution(m.solution, g)).max() < 1e-9


def test_sampled_even_period():
    g = Grid(1.0, 1.5, 2000)
    sol = apply_word("s0", symmetric_seed(4, 1, 0))
    assert sampled_residuals(sample_solution(sol, g)).max() < 1e-9


def test_numeric_symbolic_agreement():
    g = Grid(2.0, 2.2, 400)
    for m in orbit(3, 2):
        sol = m.solution
        sc = rk4_integrate(sol.sample([g.x0])[:, 0], sol.params, g)
        assert np.max(np.abs(sc.f[:, -1] - sol.sample([g.x1])[:, 0])) < 1e-6
