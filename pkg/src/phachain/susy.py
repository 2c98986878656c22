"""SUSY partners of the harmonic oscillator H0 = -d^2/2 + x^2/2.

Seed solutions of H0 u = eps u are built from confluent hypergeometric
series; Wronskians of seeds give the partner potential
V1 = x^2/2 - (ln W)'' and the mapped eigenfunctions.  The ladder
polynomials N(E) and P(E) = N(E+1) - N(E) are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .ratfun import Poly, as_fraction

__all__ = [
    "SeedSpec",
    "SingularTransformation",
    "hyp1f1",
    "hermite_psi",
    "seed_u",
    "derivative_stack",
    "wronskian",
    "partner_potential",
    "nonsingularity_check",
    "NonsingularityReport",
    "transformed_state",
    "missing_state",
    "schrodinger_residual",
    "LadderPolynomial",
    "ladder_polynomial",
    "ladder_polynomial_from_roots",
    "ladder_spectrum",
]

X_MAX = 8.0
TERM_CAP = 400
SERIES_RTOL = 1e-18


class SingularTransformation(ArithmeticError):
    """The seed Wronskian vanishes somewhere in the domain."""

    def __init__(self, brackets):
        self.brackets = list(brackets)
        where = ", ".join(f"[{a:.6g}, {b:.6g}]" for a, b in self.brackets[:5])
        super().__init__(f"Wronskian has a node in {where}")


@dataclass(frozen=True)
class SeedSpec:
    """Factorization energy and mixing constant of one seed.

    ``hermite`` set to n >= 0 selects the bound state psi_n and then
    requires eps = n + 1/2.
    """

    eps: float
    nu: float = 0.0
    hermite: int | None = None

    def __post_init__(self):
        if self.hermite is not None:
            if self.hermite < 0:
                raise ValueError("Hermite index must be >= 0")
            if not math.isclose(float(self.eps), self.hermite + 0.5, abs_tol=1e-12):
                raise ValueError(f"hermite_bound({self.hermite}) requires eps = {self.hermite + 0.5}")

    @classmethod
    def bound(cls, n: int) -> "SeedSpec":
        return cls(n + 0.5, 0.0, n)


def hyp1f1(a: float, b: float, z, *, cap: int = TERM_CAP, rtol: float = SERIES_RTOL) -> np.ndarray:
    """Kummer 1F1(a; b; z) by its power series with the term-ratio recurrence."""
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(cap):
        term = term * ((a + k) / (b + k)) * z / (k + 1)
        total = total + term
        if np.all(np.abs(term) <= rtol * np.abs(total)):
            return total
    raise ArithmeticError(f"1F1({a}; {b}; z) series did not converge in {cap} terms")


def _check_range(x, x_max):
    if np.any(np.abs(x) > x_max):
        raise ValueError(f"|x| exceeds x_max = {x_max}; series evaluation not trusted there")


def derivative_stack(u, du, x, eps: float, order: int) -> np.ndarray:
    """Extend (u, u') to u^(0..order) using u'' = (x^2 - 2 eps) u and Leibniz."""
    x = np.asarray(x, dtype=float)
    stack = [np.asarray(u, dtype=float) * np.ones_like(x), np.asarray(du, dtype=float) * np.ones_like(x)]
    q = [x * x - 2 * eps, 2 * x, 2 * np.ones_like(x)]  # q, q', q''; higher vanish
    for j in range(order - 1):
        acc = np.zeros_like(x)
        for i in range(min(j, 2) + 1):
            acc = acc + math.comb(j, i) * q[i] * stack[j - i]
        stack.append(acc)
    return np.stack(stack[: order + 1])


def _hermite_values(n: int, x: np.ndarray):
    """Normalized psi_n and psi_n' by the three-term recurrence."""
    p_prev = np.zeros_like(x)
    p = np.pi ** -0.25 * np.exp(-x * x / 2)
    for k in range(n):
        p_prev, p = p, math.sqrt(2 / (k + 1)) * x * p - math.sqrt(k / (k + 1)) * p_prev
    # psi_n' = sqrt(n/2) psi_{n-1} - sqrt((n+1)/2) psi_{n+1} = sqrt(2n) psi_{n-1} - x psi_n
    dp = math.sqrt(2 * n) * p_prev - x * p
    return p, dp


def hermite_psi(n: int, x, order: int = 0) -> np.ndarray:
    """Oscillator eigenfunction psi_n and its derivatives up to ``order``.

    Returns an array of shape (order + 1,) + shape(x).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    x = np.asarray(x, dtype=float)
    p, dp = _hermite_values(n, x)
    return derivative_stack(p, dp, x, n + 0.5, max(order, 1))[: order + 1]


def _nu_coefficient(eps: float) -> float:
    a = (1 - 2 * eps) / 4
    b = (3 - 2 * eps) / 4
    if a <= 0 and a == int(a):
        return 0.0  # 1/Gamma at a pole
    return math.gamma(b) / math.gamma(a)


def seed_u(spec: SeedSpec, x, order: int = 1, *, x_max: float = X_MAX) -> np.ndarray:
    """Derivative stack (u, u', ..., u^(order)) of a seed at ``x``.

    u = exp(-x^2/2) [1F1((1-2e)/4; 1/2; x^2) + 2 nu x G 1F1((3-2e)/4; 3/2; x^2)]
    with G = Gamma((3-2e)/4) / Gamma((1-2e)/4).
    """
    if spec.hermite is not None:
        return hermite_psi(spec.hermite, x, order)
    x = np.asarray(x, dtype=float)
    _check_range(x, x_max)
    eps = float(spec.eps)
    a = (1 - 2 * eps) / 4
    z = x * x
    even = hyp1f1(a, 0.5, z)
    d_even = 4 * a * x * hyp1f1(a + 1, 1.5, z)
    big_f, d_big_f = even, d_even
    c = 2 * float(spec.nu) * _nu_coefficient(eps) if spec.nu else 0.0
    if c:
        odd = hyp1f1(a + 0.5, 1.5, z)
        d_odd = odd + x * (2 * x) * ((a + 0.5) / 1.5) * hyp1f1(a + 1.5, 2.5, z)
        big_f = big_f + c * x * odd
        d_big_f = d_big_f + c * d_odd
    gauss = np.exp(-z / 2)
    u = gauss * big_f
    du = gauss * (d_big_f - x * big_f)
    return derivative_stack(u, du, x, eps, max(order, 1))[: order + 1]


def _det_rows(stacks: np.ndarray, rows: Sequence[int]) -> np.ndarray:
    # stacks: (k functions, orders, npts) -> det over chosen derivative rows
    m = stacks[:, rows, :]  # (k, len(rows), npts)
    m = np.moveaxis(m, -1, 0)  # (npts, k cols, rows)
    return np.linalg.det(np.swapaxes(m, 1, 2))


def wronskian(stacks, *, derivatives: bool = True):
    """Wronskian W of k functions and, optionally, W' and W''.

    ``stacks`` holds one derivative stack per function, each with at least
    k + 2 rows (orders 0..k+1) when ``derivatives`` is true, k rows otherwise.
    Determinants use LU with partial pivoting (``numpy.linalg.det``).
    """
    st = np.asarray([np.atleast_2d(np.asarray(s, dtype=float).reshape(len(s), -1)) for s in stacks])
    k = st.shape[0]
    if k == 1:
        return (st[0, 0], st[0, 1], st[0, 2]) if derivatives else st[0, 0]
    base = list(range(k))
    w = _det_rows(st, base)
    if not derivatives:
        return w
    w1 = _det_rows(st, base[:-1] + [k])
    w2 = _det_rows(st, base[:-2] + [k - 1, k]) + _det_rows(st, base[:-1] + [k + 1])
    return w, w1, w2


def _shape_like(values, x):
    return values.reshape(np.shape(x)) if np.ndim(x) else values.reshape(()).item()


def _seed_wronskian(seeds: Sequence[SeedSpec], x, order_extra: int = 2):
    k = len(seeds)
    stacks = [seed_u(s, x, k + order_extra - 1) for s in seeds]
    return wronskian(stacks)


def _sign_brackets(xs: np.ndarray, w: np.ndarray):
    zero = np.nonzero(w == 0)[0]
    flips = np.nonzero(np.sign(w[:-1]) * np.sign(w[1:]) < 0)[0]
    out = [(xs[i], xs[i]) for i in zero]
    out += [(xs[i], xs[i + 1]) for i in flips]
    return sorted(out)


def partner_potential(seeds: Sequence[SeedSpec], x) -> np.ndarray | float:
    """V1 = x^2/2 - (W''/W - (W'/W)^2).

    On an array of points a sign change of W between neighbours raises
    :class:`SingularTransformation` with the bracket.
    """
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if not seeds:
        return _shape_like(xa * xa / 2, x)
    w, w1, w2 = _seed_wronskian(seeds, xa)
    brackets = _sign_brackets(xa, w)
    if brackets:
        raise SingularTransformation(brackets)
    v = xa * xa / 2 - (w2 / w - (w1 / w) ** 2)
    return _shape_like(v, x)


@dataclass
class NonsingularityReport:
    ok: bool
    min_abs_w: float
    nodes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "min_abs_w": self.min_abs_w, "nodes": [list(b) for b in self.nodes]}


def nonsingularity_check(seeds: Sequence[SeedSpec], grid=None, *, x_max: float = 6.0,
                         points: int = 2001, tol: float = 1e-12) -> NonsingularityReport:
    """Scan W for sign changes and shrink each bracket by bisection."""
    xs = np.linspace(-x_max, x_max, points) if grid is None else np.asarray(grid, dtype=float)
    if not seeds:
        return NonsingularityReport(True, 1.0, [])

    def w_at(p):
        return float(wronskian([seed_u(s, p, len(seeds)) for s in seeds], derivatives=False)[0])

    w = wronskian([seed_u(s, xs, len(seeds)) for s in seeds], derivatives=False)
    nodes = []
    for a, b in _sign_brackets(xs, w):
        if a != b:
            wa = w_at(a)
            for _ in range(200):
                if b - a <= tol:
                    break
                mid = 0.5 * (a + b)
                wm = w_at(mid)
                if wm == 0:
                    a = b = mid
                    break
                if np.sign(wm) == np.sign(wa):
                    a, wa = mid, wm
                else:
                    b = mid
        nodes.append((float(a), float(b)))
    return NonsingularityReport(not nodes, float(np.min(np.abs(w))), nodes)


def _energy_norm(seeds, energy) -> float:
    prod = 1.0
    for s in seeds:
        d = energy - float(s.eps)
        if d == 0:
            raise ZeroDivisionError(f"E = {energy} coincides with a factorization energy")
        prod *= d
    return math.sqrt(abs(prod))


def transformed_state(seeds: Sequence[SeedSpec], n: int, x):
    """phi_n = Q+ psi_n / sqrt(prod_j (E_n - eps_j)), E_n = n + 1/2.

    Q+ psi_n = 2^(-k/2) W(u_1..u_k, psi_n) / W(u_1..u_k), which makes phi_n
    unit-normalized when the transformation is nonsingular.
    """
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    k = len(seeds)
    energy = n + 0.5
    if k == 0:
        return _shape_like(hermite_psi(n, xa)[0], x)
    norm = _energy_norm(seeds, energy)
    stacks = [seed_u(s, xa, k) for s in seeds]
    w_seeds = wronskian([st[:k] for st in stacks], derivatives=False)
    brackets = _sign_brackets(xa, w_seeds)
    if brackets:
        raise SingularTransformation(brackets)
    w_full = wronskian(stacks + [hermite_psi(n, xa, k)], derivatives=False)
    phi = w_full / w_seeds / (2 ** (k / 2) * norm)
    return _shape_like(phi, x)


def missing_state(seeds: Sequence[SeedSpec], j: int, x):
    """Unnormalized eigenfunction at eps_j: W(seeds without u_j) / W(seeds)."""
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    k = len(seeds)
    w_all = wronskian([seed_u(s, xa, k) for s in seeds], derivatives=False)
    rest = [s for i, s in enumerate(seeds) if i != j]
    w_rest = wronskian([seed_u(s, xa, k) for s in rest], derivatives=False) if rest else np.ones_like(xa)
    return _shape_like(w_rest / w_all, x)


def schrodinger_residual(phi: np.ndarray, potential: np.ndarray, energy: float, h: float) -> np.ndarray:
    """-phi''/2 + (V - E) phi on a uniform grid, 5-point phi''; NaN at the 4 edge points."""
    from .numeric import fd_second

    return -0.5 * fd_second(phi, h) + (potential - energy) * phi


# -- ladder polynomials --------------------------------------------------

@dataclass(frozen=True)
class LadderPolynomial:
    """N(E) and its forward difference P(E) = N(E+1) - N(E)."""

    N: Poly
    P: Poly

    @classmethod
    def from_N(cls, N: Poly) -> "LadderPolynomial":
        shift = Poly((1, 1))
        # N(E + 1) by Horner composition
        shifted = Poly()
        for c in reversed(N.coeffs):
            shifted = shifted * shift + c
        return cls(N, shifted - N)

    @property
    def degree(self) -> int:
        return self.P.degree

    def to_dict(self) -> dict:
        return {
            "N": [f"{c.numerator}/{c.denominator}" for c in self.N.coeffs],
            "P": [f"{c.numerator}/{c.denominator}" for c in self.P.coeffs],
        }


def ladder_polynomial_from_roots(roots) -> LadderPolynomial:
    """N(E) = prod_i (E - r_i) for the extremal energies r_i."""
    return LadderPolynomial.from_N(Poly.from_roots(as_fraction(r) for r in roots))


def ladder_polynomial(seed_energies) -> LadderPolynomial:
    """Ladder polynomials of the k-step oscillator partner.

    N(E) = (E - 1/2) prod_j (E - eps_j)(E - eps_j - 1), degree 2k + 1.
    """
    roots = [Fraction(1, 2)]
    for e in seed_energies:
        e = as_fraction(e)
        roots += [e, e + 1]
    return ladder_polynomial_from_roots(roots)


def ladder_spectrum(extremal, count: int) -> dict:
    """Equidistant ladders E_i, E_i + 1, ... starting at each extremal energy."""
    if count < 1:
        raise ValueError("count must be >= 1")
    extremal = [as_fraction(e) if not isinstance(e, float) else e for e in extremal]
    ladders = [[e + k for k in range(count)] for e in extremal]
    seen, duplicates = set(), []
    for i, e in enumerate(extremal):
        if e in seen:
            duplicates.append(i)
        seen.add(e)
    return {"ladders": ladders, "duplicates": duplicates}
