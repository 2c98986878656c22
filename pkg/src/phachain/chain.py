"""Cyclic dressing chains.

A chain of period ``n`` is a tuple ``(f_0, ..., f_{n-1})`` satisfying

    f_i' + f_{i+1}' = f_i**2 - f_{i+1}**2 + alpha_i      (indices mod n)

with ``alpha_i = 2*(eps_i - eps_{i+1})`` and the closure
``eps_n = eps_0 - lambda``.  Arrays are 0-based throughout; position ``i``
here is position ``i+1`` in the usual 1-based write-up, so the constant of
equation ``i`` is exactly ``alpha_i``.

Index map (0-based -> 1-based):

    f[i]      -> f_{i+1}
    eps[i]    -> eps_{i+1}
    alpha[i]  -> alpha_i = 2(eps_{i+1} - eps_{i+2})
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .ratfun import Poly, RatFun, as_fraction

__all__ = [
    "ChainParams",
    "AlphaVector",
    "ChainSolution",
    "alpha_from_eps",
    "eps_from_alpha",
    "chain_residuals",
    "is_chain_solution",
    "symmetric_seed",
    "potential_from_f1",
    "sum_rule_check",
    "solution_to_json",
    "solution_from_json",
]


@dataclass(frozen=True)
class ChainParams:
    n: int
    lam: Fraction
    eps: tuple
    c0: Fraction = Fraction(0)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("chain period must be >= 1")
        object.__setattr__(self, "lam", as_fraction(self.lam))
        object.__setattr__(self, "c0", as_fraction(self.c0))
        eps = tuple(as_fraction(e) for e in self.eps)
        if len(eps) != self.n:
            raise ValueError(f"expected {self.n} factorization energies, got {len(eps)}")
        object.__setattr__(self, "eps", eps)
        if self.n >= 2 and self.lam == 0:
            raise ValueError("lambda must be nonzero for period >= 2")

    def eps_ext(self, i: int) -> Fraction:
        """eps_i for any integer i, continued by eps_{i+n} = eps_i - lambda."""
        q, r = divmod(i, self.n)
        return self.eps[r] - q * self.lam

    @property
    def alpha(self) -> "AlphaVector":
        return alpha_from_eps(self)


@dataclass(frozen=True)
class AlphaVector:
    alpha: tuple
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(as_fraction(a) for a in self.alpha))
        object.__setattr__(self, "lam", as_fraction(self.lam))

    def __len__(self):
        return len(self.alpha)

    def __getitem__(self, i):
        return self.alpha[i]

    def __iter__(self):
        return iter(self.alpha)

    def total(self) -> Fraction:
        return sum(self.alpha, Fraction(0))

    def is_consistent(self) -> bool:
        return self.total() == 2 * self.lam


@dataclass(frozen=True)
class ChainSolution:
    """Exact chain solution: parameters plus one :class:`RatFun` per link."""

    params: ChainParams
    f: tuple = field(default=())

    def __post_init__(self):
        f = tuple(fi if isinstance(fi, RatFun) else RatFun.const(as_fraction(fi)) for fi in self.f)
        if len(f) != self.params.n:
            raise ValueError(f"expected {self.params.n} functions, got {len(f)}")
        object.__setattr__(self, "f", f)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def alpha(self) -> AlphaVector:
        return alpha_from_eps(self.params)

    def key(self) -> tuple:
        """Exact hashable identity used for orbit deduplication."""
        return (self.alpha.alpha, tuple((fi.num.coeffs, fi.den.coeffs) for fi in self.f))

    def sample(self, xs) -> np.ndarray:
        """Float samples, shape (n, len(xs))."""
        return np.stack([fi.eval_array(xs) for fi in self.f])


def alpha_from_eps(params: ChainParams) -> AlphaVector:
    return AlphaVector(
        tuple(2 * (params.eps_ext(i) - params.eps_ext(i + 1)) for i in range(params.n)),
        params.lam,
    )


def eps_from_alpha(alpha: Sequence, lam, eps0=0) -> tuple:
    """Invert :func:`alpha_from_eps` keeping ``eps[0]`` fixed."""
    alpha = [as_fraction(a) for a in alpha]
    lam = as_fraction(lam)
    if sum(alpha, Fraction(0)) != 2 * lam:
        raise ValueError("alpha vector must sum to 2*lambda")
    eps = [as_fraction(eps0)]
    for a in alpha[:-1]:
        eps.append(eps[-1] - a / 2)
    return tuple(eps)


def chain_residuals(sol: ChainSolution) -> list[RatFun]:
    """Residual of every cyclic equation; all zero iff ``sol`` solves the chain."""
    f, n = sol.f, sol.n
    alpha = sol.alpha.alpha
    df = [fi.derivative() for fi in f]
    sq = [fi * fi for fi in f]
    out = []
    for i in range(n):
        j = (i + 1) % n
        out.append(df[i] + df[j] - (sq[i] - sq[j] + alpha[i]))
    return out


def is_chain_solution(sol: ChainSolution) -> bool:
    return all(r.is_zero() for r in chain_residuals(sol))


def symmetric_seed(n: int, lam=1, c0=0, eps0=0) -> ChainSolution:
    """Equal-component solution f_i = (lam*x + c0)/n, eps in lam/n steps."""
    lam, c0, eps0 = as_fraction(lam), as_fraction(c0), as_fraction(eps0)
    eps = tuple(eps0 - i * lam / n for i in range(n))
    fi = RatFun(Poly((c0 / n, lam / n)))
    return ChainSolution(ChainParams(n, lam, eps, c0), (fi,) * n)


def potential_from_f1(f1: RatFun, eps1, *, unscaled: bool = False) -> RatFun:
    """Potential of H_1 built from the first link.

    The default ``(f1' + f1**2)/2 + eps1`` follows from H = Q^-Q^+ + eps with
    Q^pm = (pm d/dx - f)/sqrt(2) and H = -d^2/2 + V.  ``unscaled=True``
    returns the variant without the 1/2, ``f1' + f1**2 + eps1``.
    """
    eps1 = as_fraction(eps1)
    core = f1.derivative() + f1 * f1
    if unscaled:
        return core + eps1
    return core * Fraction(1, 2) + eps1


def sum_rule_check(sol: ChainSolution) -> RatFun:
    """(f_0 + ... + f_{n-1})'; equals the constant lambda on any solution."""
    total = RatFun.const(0)
    for fi in sol.f:
        total = total + fi
    return total.derivative()


# -- JSON document ---------------------------------------------------------

def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def ratfun_to_dict(r: RatFun) -> dict:
    return {
        "num_coeffs": [_frac_str(c) for c in r.num.coeffs],
        "den_coeffs": [_frac_str(c) for c in r.den.coeffs],
    }


def ratfun_from_dict(d: dict) -> RatFun:
    return RatFun(Poly(d["num_coeffs"]), Poly(d["den_coeffs"]))


def solution_to_dict(sol: ChainSolution) -> dict:
    p = sol.params
    return {
        "n": p.n,
        "lambda": _frac_str(p.lam),
        "eps": [_frac_str(e) for e in p.eps],
        "c0": _frac_str(p.c0),
        "alpha": [_frac_str(a) for a in sol.alpha],
        "f": [ratfun_to_dict(fi) for fi in sol.f],
    }


def solution_from_dict(d: dict) -> ChainSolution:
    params = ChainParams(int(d["n"]), d["lambda"], tuple(d["eps"]), d.get("c0", "0"))
    return ChainSolution(params, tuple(ratfun_from_dict(fd) for fd in d["f"]))


def solution_to_json(sol: ChainSolution, **kw) -> str:
    return json.dumps(solution_to_dict(sol), **kw)


def solution_from_json(text: str) -> ChainSolution:
    return solution_from_dict(json.loads(text))
