import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from numpy.polynomial import hermite as H
from scipy import special

from phachain.numeric import fd_first
from phachain.susy import (
    SeedSpec,
    SingularTransformation,
    hermite_psi,
    hyp1f1,
    ladder_polynomial,
    ladder_polynomial_from_roots,
    ladder_spectrum,
    missing_state,
    nonsingularity_check,
    partner_potential,
    schrodinger_residual,
    seed_u,
    transformed_state,
    wronskian,
)

F = Fraction
XS = np.linspace(-6, 6, 2001)
STEP = XS[1] - XS[0]


def psi_direct(n, x):
    c = np.zeros(n + 1)
    c[n] = 1
    return np.pi**-0.25 / math.sqrt(2**n * math.factorial(n)) * np.exp(-x * x / 2) * H.hermval(x, c)


def test_hermite_values():
    assert hermite_psi(0, 0.0)[0] == pytest.approx(np.pi**-0.25, rel=1e-15)
    assert hermite_psi(0, 0.0)[0] == pytest.approx(0.7511, abs=1e-4)
    assert hermite_psi(1, 1.0)[0] == pytest.approx(math.sqrt(2) * math.exp(-0.5) * np.pi**-0.25, rel=1e-14)
    assert hermite_psi(1, 1.0)[0] == pytest.approx(0.6443, abs=1e-4)
    for n in range(8):
        assert np.allclose(hermite_psi(n, XS)[0], psi_direct(n, XS), atol=1e-13)


def test_hermite_derivatives_and_norm():
    x = np.linspace(-5, 5, 4001)
    for n in range(5):
        st = hermite_psi(n, x, 2)
        assert np.allclose(st[1][2:-2], fd_first(st[0], x[1] - x[0])[2:-2], atol=1e-9)
        assert np.allclose(st[2], (x * x - 2 * n - 1) * st[0], atol=1e-12)
    y = np.linspace(-8, 8, 20001)
    assert np.trapezoid(hermite_psi(0, y)[0] ** 2, y) == pytest.approx(1, abs=1e-8)


@pytest.mark.parametrize("a,b", [(0.25, 0.5), (-0.75, 0.5), (1.3, 1.5), (-2.0, 0.5), (0.6, 2.5)])
def test_hyp1f1_against_scipy(a, b):
    z = np.linspace(0, 36, 37)
    assert np.allclose(hyp1f1(a, b, z), special.hyp1f1(a, b, z), rtol=1e-11, atol=1e-12)


def test_seed_examples():
    x = np.linspace(-3, 3, 13)
    assert np.allclose(seed_u(SeedSpec(0.5, 0), x, 0)[0], np.exp(-x * x / 2), rtol=1e-15)
    assert seed_u(SeedSpec(-0.5, 0), 1.0, 0)[0] == pytest.approx(math.exp(0.5), rel=1e-14)
    with pytest.raises(ValueError):
        seed_u(SeedSpec(-0.5, 0), 9.0)


def test_seed_bound_state():
    assert np.allclose(seed_u(SeedSpec.bound(3), XS, 2), hermite_psi(3, XS, 2))
    with pytest.raises(ValueError):
        SeedSpec(1.0, 0, 1)


def test_gamma_pole_coefficient_vanishes():
    # eps = 1/2: (1 - 2 eps)/4 = 0, the nu-term drops out
    x = np.linspace(-2, 2, 5)
    assert np.allclose(seed_u(SeedSpec(0.5, 3.0), x, 1), seed_u(SeedSpec(0.5, 0.0), x, 1))


def mp_seed(eps, nu, x):
    a = mpmath.mpf(1 - 2 * eps) / 4
    coef = mpmath.gamma(a + mpmath.mpf(1) / 2) * mpmath.rgamma(a) if nu else 0
    return mpmath.exp(-x * x / 2) * (mpmath.hyp1f1(a, 0.5, x * x) + 2 * nu * x * coef * mpmath.hyp1f1(a + 0.5, 1.5, x * x))


@pytest.mark.parametrize("eps,nu", [(-0.5, 0.0), (-1.2, 0.7), (0.3, -0.4), (1.1, 0.5), (-3.0, 2.0)])
def test_seed_solves_oscillator_equation(eps, nu):
    rng = np.random.default_rng(int(abs(eps * 10)) + 7)
    xs = rng.uniform(-4, 4, 40)
    mpmath.mp.dps = 40
    st = seed_u(SeedSpec(eps, nu), xs, 2)
    for i, x in enumerate(xs):
        xm = mpmath.mpf(float(x))
        u = mp_seed(eps, nu, xm)
        d1 = mpmath.diff(lambda t: mp_seed(eps, nu, t), xm)
        d2 = mpmath.diff(lambda t: mp_seed(eps, nu, t), xm, 2)
        scale = max(abs(u), abs(d1), mpmath.mpf(1e-300))
        assert abs(st[0][i] - u) <= 1e-9 * scale
        assert abs(st[1][i] - d1) <= 1e-9 * max(scale, abs(d1))
        # the defining equation u'' = (x^2 - 2 eps) u, checked against the high-precision u''
        assert abs(st[2][i] - d2) <= 1e-9 * max(abs(d2), scale)


def test_seed_ode_many_points():
    rng = np.random.default_rng(0)
    x = rng.uniform(-5, 5, 200)
    for spec in (SeedSpec(-0.5, 0.3), SeedSpec(-2.4, -0.9)):
        st = seed_u(spec, x, 3)
        # u''' from the recursion against d/dx of u'' = (x^2 - 2e) u
        assert np.allclose(st[3], 2 * x * st[0] + (x * x - 2 * spec.eps) * st[1], rtol=1e-12)


def test_wronskian_single():
    st = seed_u(SeedSpec(-0.5, 0.4), XS, 2)
    w, w1, w2 = wronskian([st])
    assert np.array_equal(w, st[0]) and np.array_equal(w1, st[1]) and np.array_equal(w2, st[2])


def test_wronskian_ground_and_first():
    w, w1, w2 = wronskian([hermite_psi(0, XS, 3), hermite_psi(1, XS, 3)])
    assert np.allclose(w, math.sqrt(2 / np.pi) * np.exp(-XS * XS), atol=1e-15)
    assert np.allclose(w1 / w, -2 * XS, atol=1e-9)
    assert np.allclose(w2[2:-2], fd_first(w1, STEP)[2:-2], atol=1e-9)


def test_wronskian_dependent_pair():
    st = seed_u(SeedSpec(-0.7, 0.2), XS, 3)
    w, _, _ = wronskian([st, 2 * st])
    assert np.max(np.abs(w)) < 1e-9 * np.max(np.abs(st[0])) ** 2


def test_partner_potential_ground_state():
    v = partner_potential([SeedSpec(0.5, 0)], XS)
    assert np.max(np.abs(v - (XS**2 / 2 + 1))) <= 1e-12
    assert np.array_equal(partner_potential([], XS), XS**2 / 2)


def test_partner_potential_node_raises():
    with pytest.raises(SingularTransformation) as exc:
        partner_potential([SeedSpec(-0.5, 2.0)], XS)
    a, b = exc.value.brackets[0]
    assert a <= special.erfinv(-0.5) <= b


def test_wronskian_antisymmetry():
    seeds = [SeedSpec(-0.6, 0.0), SeedSpec(-1.2, 2.0)]
    x = np.linspace(-4, 4, 101)
    w12 = wronskian([seed_u(s, x, 3) for s in seeds])[0]
    w21 = wronskian([seed_u(s, x, 3) for s in seeds[::-1]])[0]
    assert np.allclose(w12, -w21, rtol=1e-12)
    assert np.allclose(partner_potential(seeds, x), partner_potential(seeds[::-1], x), rtol=1e-10)


def test_nonsingularity_examples():
    assert nonsingularity_check([SeedSpec(0.5, 0)]).ok
    assert nonsingularity_check([SeedSpec(-0.5, 0)]).ok
    report = nonsingularity_check([SeedSpec(-0.5, 2)])
    assert not report.ok and len(report.nodes) == 1
    a, b = report.nodes[0]
    # u = exp(x^2/2)(1 + 2 erf x) vanishes where erf x = -1/2
    assert b - a < 1e-9 and a <= special.erfinv(-0.5) <= b


def test_transformed_state_identity():
    assert np.array_equal(transformed_state([], 3, XS), hermite_psi(3, XS)[0])


def test_ground_state_seed_annihilates_psi0():
    st = hermite_psi(0, XS, 1)
    assert np.max(np.abs(wronskian([st, st], derivatives=False))) < 1e-15  # rounding only
    with pytest.raises(ZeroDivisionError):
        transformed_state([SeedSpec.bound(0)], 0, XS)


def _max_residual(seeds, n):
    v = partner_potential(seeds, XS)
    phi = transformed_state(seeds, n, XS)
    return np.nanmax(np.abs(schrodinger_residual(phi, v, n + 0.5, STEP)))


@pytest.mark.parametrize("seeds", [
    [SeedSpec(-0.5, 0.0)],
    [SeedSpec(-1.5, 0.5)],
    [SeedSpec(-0.6, 0.0), SeedSpec(-1.2, 2.0)],
])
def test_transformed_states_solve_partner(seeds):
    for n in range(6):
        assert _max_residual(seeds, n) < 1e-6


def test_transformed_states_are_normalized():
    seeds = [SeedSpec(-0.6, 0.0), SeedSpec(-1.2, 2.0)]
    for n in (0, 2, 5):
        phi = transformed_state(seeds, n, XS)
        assert np.trapezoid(phi**2, XS) == pytest.approx(1, abs=1e-6)


def test_missing_state_solves_partner():
    seeds = [SeedSpec(-0.5, 0.0)]
    v = partner_potential(seeds, XS)
    phi = missing_state(seeds, 0, XS)
    res = schrodinger_residual(phi, v, -0.5, STEP)
    assert np.nanmax(np.abs(res)) < 1e-6


def test_ladder_oscillator():
    lp = ladder_polynomial([])
    assert lp.N.coeffs == (F(-1, 2), 1)
    assert lp.P.coeffs == (1,)


def test_ladder_single_seed():
    lp = ladder_polynomial([F(-1, 2)])
    # (E - 1/2)(E + 1/2)(E - 1/2) = E^3 - E^2/2 - E/4 + 1/8
    assert lp.N.coeffs == (F(1, 8), F(-1, 4), F(-1, 2), 1)
    assert lp.P.degree == 2 and lp.P.lead == 3


def test_ladder_generic_roots():
    lp = ladder_polynomial_from_roots([F(1, 3), F(-2)])
    assert lp.P.degree == 1 and lp.P.lead == 2


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_ladder_degree_property(k):
    rng = np.random.default_rng(k)
    eps = [F(int(a), int(b)) for a, b in zip(rng.integers(-20, 20, k), rng.integers(1, 9, k))]
    lp = ladder_polynomial(eps)
    assert lp.N.degree == 2 * k + 1
    assert lp.P.degree == 2 * k and lp.P.lead == 2 * k + 1
    for e in eps:
        assert lp.N.eval(e) == 0 and lp.N.eval(e + 1) == 0


def test_ladder_spectrum():
    out = ladder_spectrum([F(1, 2)], 4)
    assert out["ladders"] == [[F(1, 2), F(3, 2), F(5, 2), F(7, 2)]]
    out = ladder_spectrum([F(1, 2), F(-1, 2)], 3)
    assert out["ladders"][1] == [F(-1, 2), F(1, 2), F(3, 2)] and out["duplicates"] == []
    out = ladder_spectrum([F(1, 2), F(1, 2)], 2)
    assert len(out["ladders"]) == 2 and out["duplicates"] == [1]
    with pytest.raises(ValueError):
        ladder_spectrum([0], 0)
