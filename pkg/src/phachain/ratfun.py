"""Exact univariate polynomials and rational functions over Q.

Coefficients are :class:`fractions.Fraction` stored densely, index = power
of ``x``.  Rational functions are always kept reduced with a monic
denominator, so ``==`` is structural equality.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

__all__ = ["Poly", "RatFun", "PoleError", "as_fraction", "X"]


class PoleError(ZeroDivisionError):
    """Evaluation hit a zero of the denominator."""

    def __init__(self, point):
        super().__init__(f"pole at x = {point}")
        self.point = point


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions, floats and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        # exact binary value; callers wanting decimals should pass strings
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def _strip(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Dense polynomial with rational coefficients (immutable)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip([as_fraction(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs) -> "Poly":
        p = object.__new__(cls)
        p.coeffs = _strip(list(coeffs))
        return p

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots) -> "Poly":
        p = cls.const(1)
        for r in roots:
            p = p * cls((-as_fraction(r), 1))
        return p

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return _format_poly(self.coeffs)

    # -- arithmetic ----------------------------------------------------
    def __neg__(self):
        return Poly._raw(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = as_fraction(c)
        return Poly._raw(x * c for x in self.coeffs)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv = 1 / other.lead
        quot = [Fraction(0)] * max(len(rem) - db, 0)
        for k in range(len(rem) - db - 1, -1, -1):
            q = rem[k + db] * inv
            quot[k] = q
            if q:
                for i, c in enumerate(other.coeffs):
                    rem[k + i] -= q * c
        return Poly._raw(quot), Poly._raw(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_poly(other))[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lead)

    def derivative(self) -> "Poly":
        return Poly._raw(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self.coeffs:
            return Fraction(0)
        from math import gcd, lcm

        den = lcm(*(c.denominator for c in self.coeffs))
        num = gcd(*(c.numerator for c in self.coeffs))
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        return self.scale(1 / self.content()) if self.coeffs else self

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x):
        acc = 0 * x if not isinstance(x, Fraction) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, Fraction) else float(c))
        return acc

    def to_float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=float)


def _as_poly(obj):
    if isinstance(obj, Poly):
        return obj
    if isinstance(obj, (int, Fraction)):
        return Poly.const(obj)
    return NotImplemented


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by Euclid on primitive parts (zero if both are zero)."""
    a, b = a.primitive(), b.primitive()
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.monic()


def _format_poly(coeffs: Sequence[Fraction], var: str = "x") -> str:
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            if mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag}*{mono}"
            else:
                body = f"({mag})*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class RatFun:
    """Reduced quotient ``num/den`` of polynomials, ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = num if isinstance(num, Poly) else Poly(num) if isinstance(num, (list, tuple)) else Poly.const(num)
        if den is None:
            den = Poly.const(1)
        elif not isinstance(den, Poly):
            den = Poly(den) if isinstance(den, (list, tuple)) else Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.const(1)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
                lead = den.lead
                if lead != 1:
                    num, den = num.scale(1 / lead), den.scale(1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c) -> "RatFun":
        return cls(Poly.const(c), _reduced=True) if c else cls(Poly(), _reduced=True)

    @classmethod
    def x(cls) -> "RatFun":
        return cls(Poly((0, 1)), _reduced=True)

    @classmethod
    def from_coeffs(cls, num_coeffs, den_coeffs=(1,)) -> "RatFun":
        return cls(Poly(num_coeffs), Poly(den_coeffs))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def is_const(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"{self} is not constant")
        return self.num.lead

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        return f"RatFun({self})"

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        n = str(self.num)
        if len(self.num.coeffs) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"

    # -- field operations ----------------------------------------------
    def __neg__(self):
        return RatFun(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        if g.degree == 0:
            num = self.num * other.den + other.num * self.den
            return RatFun(num, self.den * other.den)
        d1, d2 = self.den // g, other.den // g
        return RatFun(self.num * d2 + other.num * d1, self.den * d2)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return other
        # cross-cancel first so intermediate degrees stay small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1, d2 = (self.num // g1, other.den // g1) if g1.degree > 0 else (self.num, other.den)
        n2, d1 = (other.num // g2, self.den // g2) if g2.degree > 0 else (other.num, self.den)
        return RatFun(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_ratfun(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFun(self.num**k, self.den**k, _reduced=True)

    def derivative(self) -> "RatFun":
        """Quotient rule, reduced."""
        n, d = self.num, self.den
        return RatFun(n.derivative() * d - n * d.derivative(), d * d)

    # -- evaluation ----------------------------------------------------
    def __call__(self, x0):
        return self.eval(x0)

    def eval(self, x0):
        """Exact value at a rational point; correctly rounded at a float.

        Raises :class:`PoleError` at a zero of the denominator.
        """
        exact = not isinstance(x0, float)
        q = as_fraction(x0)
        d = self.den.eval(q)
        if d == 0:
            raise PoleError(x0)
        v = self.num.eval(q) / d
        return v if exact else float(v)

    def eval_array(self, xs) -> np.ndarray:
        """Fast float evaluation on an array (Horner in double precision)."""
        xs = np.asarray(xs, dtype=float)
        num = np.polyval(self.num.to_float_coeffs()[::-1], xs) if self.num.coeffs else np.zeros_like(xs)
        den = np.polyval(self.den.to_float_coeffs()[::-1], xs)
        if np.any(den == 0):
            raise PoleError(float(xs[np.argmax(den == 0)]))
        return num / den

    def poles(self) -> np.ndarray:
        """Real zeros of the denominator (floating point)."""
        if self.den.degree < 1:
            return np.array([])
        r = np.roots(self.den.to_float_coeffs()[::-1])
        return np.sort(r[np.abs(r.imag) < 1e-9].real)


def _as_ratfun(obj):
    if isinstance(obj, RatFun):
        return obj
    if isinstance(obj, Poly):
        return RatFun(obj, _reduced=True)
    if isinstance(obj, (int, Fraction)):
        return RatFun.const(obj)
    return NotImplemented


X = RatFun.x()
