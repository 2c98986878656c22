"""Polynomial Heisenberg algebras as cyclic dressing chains.

Exact rational-function chain solutions, their Bäcklund transformations
under the extended affine Weyl group of type A_m^(1), Painlevé IV/V
residuals, and SUSY partners of the harmonic oscillator.
"""

from .ratfun import Poly, RatFun, PoleError, X
from .chain import (
    AlphaVector,
    ChainParams,
    ChainSolution,
    alpha_from_eps,
    chain_residuals,
    is_chain_solution,
    potential_from_f1,
    sum_rule_check,
    symmetric_seed,
)
from .weyl import Generator, apply_pi, apply_s, apply_word, orbit, verify_relations
from .expr import parse_ratfun

__all__ = [
    "Poly", "RatFun", "PoleError", "X",
    "AlphaVector", "ChainParams", "ChainSolution", "alpha_from_eps", "chain_residuals",
    "is_chain_solution", "potential_from_f1", "sum_rule_check", "symmetric_seed",
    "Generator", "apply_pi", "apply_s", "apply_word", "orbit", "verify_relations",
    "parse_ratfun",
]

__version__ = "0.1.0"
