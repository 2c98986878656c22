"""Bäcklund transformations of the dressing chain as an extended affine Weyl group.

The group ``W(A_m^(1)) = <s_0, ..., s_m, pi>`` acts on a pair ``(f, alpha)``:

    s_j:  f_j     -> f_j     + alpha_j / (f_j + f_{j+1})
          f_{j+1} -> f_{j+1} - alpha_j / (f_j + f_{j+1})
          alpha_k -> alpha_k - a_kj * alpha_j        (a = Cartan matrix of A_m^(1))
    pi:   f_j -> f_{j+1},  alpha_j -> alpha_{j+1}

Words are applied left to right, so the word ``pi s_i`` means "pi first".
"""

from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .chain import ChainParams, ChainSolution, eps_from_alpha, is_chain_solution, symmetric_seed
from .ratfun import Poly, RatFun

log = logging.getLogger(__name__)

__all__ = [
    "Generator",
    "VanishingDenominator",
    "cartan_matrix",
    "parse_word",
    "format_word",
    "apply_s",
    "apply_pi",
    "apply_generator",
    "apply_word",
    "act",
    "verify_relations",
    "RelationReport",
    "orbit",
    "OrbitMember",
    "Orbit",
]


class VanishingDenominator(ArithmeticError):
    """``f_j + f_{j+1}`` is identically zero, so ``s_j`` is undefined."""

    def __init__(self, j: int, prefix: tuple = ()):
        self.j = j
        self.prefix = tuple(prefix)
        where = f" after prefix '{format_word(self.prefix)}'" if self.prefix else ""
        super().__init__(f"s_{j}: f_{j} + f_{j + 1} vanishes identically{where}")


@dataclass(frozen=True, order=True)
class Generator:
    kind: str  # "s", "pi" or "pi_inv"
    j: int = 0

    def __post_init__(self):
        if self.kind not in ("s", "pi", "pi_inv"):
            raise ValueError(f"unknown generator kind {self.kind!r}")

    @classmethod
    def s(cls, j: int) -> "Generator":
        return cls("s", j)

    def __str__(self):
        return {"s": f"s{self.j}", "pi": "pi", "pi_inv": "pi^-1"}[self.kind]


PI = Generator("pi")
PI_INV = Generator("pi_inv")

_TOKEN = re.compile(r"s_?(\d+)|pi\^-1|pi_inv|pi|π⁻¹|π")


def parse_word(text: str | Iterable) -> tuple[Generator, ...]:
    """Parse ``"s0 s1 pi pi^-1"`` (separators optional) into generators."""
    if not isinstance(text, str):
        return tuple(text)
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos] in " ,.*·":
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad generator at {text[pos:]!r}")
        tok = m.group(0)
        if m.group(1) is not None:
            out.append(Generator.s(int(m.group(1))))
        elif tok in ("pi^-1", "pi_inv", "π⁻¹"):
            out.append(PI_INV)
        else:
            out.append(PI)
        pos = m.end()
    return tuple(out)


def format_word(word: Sequence[Generator]) -> str:
    return " ".join(str(g) for g in word)


def cartan_matrix(m: int) -> np.ndarray:
    """Generalized Cartan matrix of A_m^(1), size (m+1) x (m+1)."""
    if m < 1:
        raise ValueError("A_m^(1) needs m >= 1")
    n = m + 1
    a = 2 * np.eye(n, dtype=int)
    if m == 1:
        a[0, 1] = a[1, 0] = -2
        return a
    for k in range(n):
        a[k, (k + 1) % n] = -1
        a[k, (k - 1) % n] = -1
    return a


# -- raw actions on (f, alpha) tuples; f may be None ------------------------

def _s_raw(j: int, f, alpha: tuple):
    n = len(alpha)
    aj = alpha[j]
    if aj == 0:
        return f, alpha
    new_alpha = list(alpha)
    new_alpha[j] = -aj
    if n == 2:
        k = 1 - j
        new_alpha[k] = alpha[k] + 2 * aj
    else:
        new_alpha[(j + 1) % n] += aj
        new_alpha[(j - 1) % n] += aj
    if f is None:
        return None, tuple(new_alpha)
    j1 = (j + 1) % n
    g = f[j] + f[j1]
    if g.is_zero():
        raise VanishingDenominator(j)
    shift = RatFun.const(aj) / g
    new_f = list(f)
    new_f[j] = f[j] + shift
    new_f[j1] = f[j1] - shift
    return tuple(new_f), tuple(new_alpha)


def _pi_raw(f, alpha: tuple, inverse: bool = False):
    k = -1 if inverse else 1
    alpha = alpha[k:] + alpha[:k]
    if f is not None:
        f = f[k:] + f[:k]
    return f, alpha


def act(gen: Generator, f, alpha: tuple):
    """Apply one generator to a raw ``(f, alpha)`` pair."""
    if gen.kind == "s":
        if not 0 <= gen.j < len(alpha):
            raise ValueError(f"s_{gen.j} out of range for {len(alpha)} links")
        return _s_raw(gen.j, f, alpha)
    return _pi_raw(f, alpha, inverse=gen.kind == "pi_inv")


def act_word(word: Sequence[Generator], f, alpha: tuple):
    for k, gen in enumerate(word):
        try:
            f, alpha = act(gen, f, alpha)
        except VanishingDenominator as exc:
            raise VanishingDenominator(exc.j, tuple(word[:k])) from None
    return f, alpha


# -- actions on ChainSolution ------------------------------------------------

def _rebuild(sol: ChainSolution, f, alpha) -> ChainSolution:
    p = sol.params
    eps = eps_from_alpha(alpha, p.lam, p.eps[0])
    return ChainSolution(ChainParams(p.n, p.lam, eps, p.c0), f)


def _check_weyl(sol: ChainSolution):
    if sol.n < 2:
        raise ValueError("the Weyl group acts on chains of period >= 2 only")


def apply_s(j: int, sol: ChainSolution) -> ChainSolution:
    _check_weyl(sol)
    f, alpha = _s_raw(j, sol.f, sol.alpha.alpha)
    return _rebuild(sol, f, alpha)


def apply_pi(sol: ChainSolution, inverse: bool = False) -> ChainSolution:
    _check_weyl(sol)
    f, alpha = _pi_raw(sol.f, sol.alpha.alpha, inverse)
    return _rebuild(sol, f, alpha)


def apply_generator(gen: Generator, sol: ChainSolution) -> ChainSolution:
    _check_weyl(sol)
    f, alpha = act(gen, sol.f, sol.alpha.alpha)
    return _rebuild(sol, f, alpha)


def apply_word(word, sol: ChainSolution) -> ChainSolution:
    """Left-to-right composition; failures carry the failing prefix."""
    _check_weyl(sol)
    f, alpha = act_word(parse_word(word), sol.f, sol.alpha.alpha)
    return _rebuild(sol, f, alpha)


# -- relation verification -------------------------------------------------

@dataclass
class RelationCheck:
    name: str
    status: str  # "ok", "violated" or "skipped"
    checked: int = 0
    witness: str | None = None


@dataclass
class RelationReport:
    m: int
    trials: int
    checks: list = field(default_factory=list)

    @property
    def violations(self) -> list:
        return [c for c in self.checks if c.status == "violated"]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "trials": self.trials,
            "ok": self.ok,
            "checks": [vars(c) for c in self.checks],
        }


def _relation_words(m: int):
    """(name, lhs, rhs) triples; rhs is the empty word for identities."""
    n = m + 1
    s = Generator.s
    rel = []
    for i in range(n):
        rel.append((f"s{i}^2 = 1", (s(i), s(i)), ()))
    for i in range(n):
        for j in range(i + 1, n):
            adjacent = (j - i) % n in (1, n - 1)
            if adjacent:
                rel.append((f"(s{i} s{j})^3 = 1", (s(i), s(j)) * 3, ()))
            else:
                rel.append((f"(s{i} s{j})^2 = 1", (s(i), s(j)) * 2, ()))
    for i in range(n):
        rel.append((f"pi s{i} = s{(i + 1) % n} pi", (PI, s(i)), (s((i + 1) % n), PI)))
    rel.append((f"pi^{n} = 1", (PI,) * n, ()))
    rel.append(("pi pi^-1 = 1", (PI, PI_INV), ()))
    return rel


def _random_fraction(rng: random.Random, bound: int = 9) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _random_alpha(rng: random.Random, n: int) -> tuple:
    return tuple(_random_fraction(rng) for _ in range(n))


def _random_f(rng: random.Random, n: int) -> tuple:
    # generic linear functions: the action is a field automorphism, no chain needed
    return tuple(RatFun(Poly((_random_fraction(rng), Fraction(rng.randint(1, 5), rng.randint(1, 5))))) for _ in range(n))


def verify_relations(m: int, trials: int = 50, *, seed: int = 0, f_trials: int | None = None) -> RelationReport:
    """Check the defining relations of W(A_m^(1)) exactly.

    ``trials`` random rational alpha-vectors are used for the parameter
    action; the first ``f_trials`` of them (default ``min(trials, 3)``) also
    carry random rational functions so the action on ``f`` is checked.
    """
    if m < 1:
        raise ValueError("relations are defined for m >= 1")
    n = m + 1
    rng = random.Random(seed)
    f_trials = min(trials, 3) if f_trials is None else f_trials
    report = RelationReport(m, trials)
    relations = _relation_words(m)
    status = {name: RelationCheck(name, "ok") for name, _, _ in relations}
    if m < 3:
        report.checks.append(RelationCheck("(s_i s_j)^2 = 1, non-adjacent", "skipped"))
    for t in range(trials):
        alpha = _random_alpha(rng, n)
        f = _random_f(rng, n) if t < f_trials else None
        for name, lhs, rhs in relations:
            check = status[name]
            if check.status == "violated":
                continue
            try:
                left = act_word(lhs, f, alpha)
                right = act_word(rhs, f, alpha)
            except VanishingDenominator as exc:
                log.info("relation %s: %s", name, exc)
                continue
            check.checked += 1
            if left != right:
                check.status = "violated"
                check.witness = f"alpha={[str(a) for a in alpha]}" + (
                    f", f={[str(x) for x in f]}" if f is not None else "")
    report.checks.extend(status.values())
    return report


# -- orbits ----------------------------------------------------------------

@dataclass
class OrbitMember:
    index: int
    word: tuple
    solution: ChainSolution

    @property
    def alpha(self):
        return self.solution.alpha


@dataclass
class Orbit:
    members: list
    edges: list  # (source index, generator, target index)
    skipped: list  # (source index, generator, reason)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def orbit(n: int, depth: int, lam=1, c0=0, *, generators: Sequence[Generator] | None = None,
          start: ChainSolution | None = None, verify: bool = True) -> Orbit:
    """Breadth-first closure of the symmetric seed under ``s_0..s_m`` and ``pi``.

    Members are deduplicated by exact structural equality of ``(alpha, f)``
    and keep the first (shortest) word that reached them.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    seed = start if start is not None else symmetric_seed(n, lam, c0)
    _check_weyl(seed)
    gens = list(generators) if generators is not None else [Generator.s(j) for j in range(seed.n)] + [PI]
    members = [OrbitMember(0, (), seed)]
    index = {seed.key(): 0}
    edges, skipped = [], []
    frontier = [0]
    for _ in range(depth):
        nxt = []
        for src in frontier:
            base = members[src]
            for gen in gens:
                try:
                    image = apply_generator(gen, base.solution)
                except VanishingDenominator as exc:
                    log.info("skipping %s after '%s': %s", gen, format_word(base.word), exc)
                    skipped.append((src, gen, str(exc)))
                    continue
                key = image.key()
                tgt = index.get(key)
                if tgt is None:
                    if verify and not is_chain_solution(image):
                        raise RuntimeError(f"word '{format_word(base.word + (gen,))}' broke the chain equations")
                    tgt = len(members)
                    index[key] = tgt
                    members.append(OrbitMember(tgt, base.word + (gen,), image))
                    nxt.append(tgt)
                edges.append((src, gen, tgt))
        frontier = nxt
    return Orbit(members, edges, skipped)
