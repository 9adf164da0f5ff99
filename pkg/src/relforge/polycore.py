"""Dense univariate polynomials with arbitrary-precision integer coefficients.

Coefficients are stored low degree first, so ``coeffs[i]`` multiplies ``q**i``.
Evaluation points are exact rationals (:class:`fractions.Fraction`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

#: Degree reported for the zero polynomial. Compares below every integer.
ZERO_DEGREE = -math.inf


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True, init=False)
class Polynomial:
    """Immutable integer polynomial; the zero polynomial has no coefficients."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _trim(int(x) for x in coeffs)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def constant(cls, c: int) -> Polynomial:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> Polynomial:
        return cls([0] * k + [c])

    def degree(self):
        """Highest index with a nonzero coefficient; ``ZERO_DEGREE`` for zero."""
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        return pow_(self, e)

    def __call__(self, x) -> Fraction:
        return eval_rational(self, Fraction(x))

    def scale(self, c: int) -> Polynomial:
        return Polynomial(c * x for x in self.coeffs) if c else ZERO

    def shift(self, k: int) -> Polynomial:
        """Multiply by ``q**k``."""
        if not self.coeffs or k == 0:
            return self
        return Polynomial((0,) * k + self.coeffs)

    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
            if g == 1:
                break
        return g

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)})"

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> Polynomial:
        raw = obj["coeffs"]
        if not isinstance(raw, list) or not all(isinstance(c, str) for c in raw):
            raise ValueError("polynomial coeffs must be a list of decimal strings")
        coeffs = [int(c) for c in raw]
        if coeffs and coeffs[-1] == 0:
            raise ValueError("polynomial coeffs must not carry trailing zeros")
        return cls(coeffs)


ZERO = Polynomial()
ONE = Polynomial((1,))
Q = Polynomial((0, 1))
ONE_MINUS_Q = Polynomial((1, -1))


def add(p: Polynomial, s: Polynomial) -> Polynomial:
    a, b = p.coeffs, s.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return Polynomial(out)


def mul(p: Polynomial, s: Polynomial) -> Polynomial:
    """Schoolbook convolution."""
    a, b = p.coeffs, s.coeffs
    if not a or not b:
        return ZERO
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if y:
            for i, x in enumerate(a):
                out[i + j] += x * y
    return Polynomial(out)


def pow_(p: Polynomial, e: int) -> Polynomial:
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    result = ONE
    base = p
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def eval_homogeneous(coeffs: Sequence[int], num: int, den: int) -> int:
    """Return ``den**d * p(num/den)`` as an integer, ``d = len(coeffs) - 1``.

    ``den`` must be positive, so the result carries the sign of ``p(num/den)``.
    """
    if not coeffs:
        return 0
    acc = coeffs[-1]
    dpow = 1
    for c in reversed(coeffs[:-1]):
        dpow *= den
        acc = acc * num + c * dpow
    return acc


def eval_rational(p: Polynomial, x: Fraction) -> Fraction:
    """Exact value of ``p`` at the rational ``x`` (Horner on integers)."""
    x = Fraction(x)
    if not p.coeffs:
        return Fraction(0)
    d = len(p.coeffs) - 1
    return Fraction(eval_homogeneous(p.coeffs, x.numerator, x.denominator), x.denominator**d)


def clear_compose(F: Polynomial, S: Polynomial, R: Polynomial, m: int) -> Polynomial:
    """``R**m * F(S/R)`` with denominators cleared: ``sum F_i S**i R**(m-i)``."""
    if m < 1:
        raise ValueError("m must be positive")
    if F.degree() > m:
        raise ValueError(f"deg F = {F.degree()} exceeds m = {m}")
    if F.is_zero():
        return ZERO
    d = len(F.coeffs) - 1
    # homogeneous Horner: acc_i = acc_{i+1} * S + F_i * R**(d-i)
    acc = Polynomial.constant(F.coeffs[d])
    r_pow = ONE
    for i in range(d - 1, -1, -1):
        r_pow = mul(r_pow, R)
        acc = mul(acc, S)
        if F.coeffs[i]:
            acc = add(acc, r_pow.scale(F.coeffs[i]))
    return mul(acc, pow_(R, m - d))


def binomial_poly(n: int, sign: int = 1) -> Polynomial:
    """Coefficients of ``(1 + sign*q)**n``."""
    out = [1]
    c = 1
    for k in range(n):
        c = c * (n - k) // (k + 1)
        out.append(c * sign ** (k + 1))
    return Polynomial(out)


def from_subset_counts(counts: Sequence[int], m: int) -> Polynomial:
    """Expand ``sum_k counts[k] (1-q)**k q**(m-k)`` into integer coefficients."""
    out = [0] * (m + 1)
    for k, n_k in enumerate(counts):
        if not n_k:
            continue
        # (1-q)^k q^(m-k) = sum_j C(k,j) (-1)^j q^(m-k+j)
        c = 1
        for j in range(k + 1):
            out[m - k + j] += n_k * c
            c = -c * (k - j) // (j + 1)
    return Polynomial(out)
