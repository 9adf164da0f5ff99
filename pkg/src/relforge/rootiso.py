"""Certified real-root counting, isolation and refinement over rational intervals.

Two exact engines are available:

* Sturm chains (sign-corrected primitive pseudo-remainder sequence). Counts
  distinct roots, multiple roots included. Chain construction grows roughly
  like the fifth power of the degree, so it is the default only for small
  degree.
* Descartes' rule of signs on the interval mapped onto ``(0, inf)``, with
  bisection (Vincent-Collins-Akritas). A sign-variation count of 0 proves there
  is no root, a count of 1 proves exactly one simple root. Subdivision that
  fails to resolve within ``VCA_MAX_DEPTH`` levels (a multiple root in the
  window) hands the piece to the Sturm engine.

Roots at 0 and 1 lying outside the closed window are divided out first; all
reliability-type polynomials carry high powers of ``(1 - q)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from relforge import kernels
from relforge.polycore import Polynomial, eval_homogeneous

STURM_MAX_DEGREE = 80
VCA_MAX_DEPTH = 128


class EndpointRootError(ValueError):
    """An interval endpoint is a root; the caller must perturb the interval."""


@dataclass(frozen=True)
class IsolatingInterval:
    """Closed rational interval holding exactly one root of its polynomial."""

    lo: Fraction
    hi: Fraction
    sign_lo: int
    sign_hi: int

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def to_json(self) -> dict:
        return {
            "lo": rational_to_json(self.lo),
            "hi": rational_to_json(self.hi),
            "sign_lo": self.sign_lo,
            "sign_hi": self.sign_hi,
        }

    @classmethod
    def from_json(cls, obj: dict) -> IsolatingInterval:
        lo = rational_from_json(obj["lo"])
        hi = rational_from_json(obj["hi"])
        s_lo, s_hi = obj["sign_lo"], obj["sign_hi"]
        if s_lo not in (-1, 0, 1) or s_hi not in (-1, 0, 1) or isinstance(s_lo, bool) or isinstance(s_hi, bool):
            raise ValueError("interval signs must be -1, 0 or 1")
        if not lo < hi:
            raise ValueError("interval requires lo < hi")
        return cls(lo, hi, s_lo, s_hi)


def rational_to_json(x: Fraction) -> list[str]:
    return [str(x.numerator), str(x.denominator)]


def rational_from_json(obj) -> Fraction:
    if not (isinstance(obj, list) and len(obj) == 2 and all(isinstance(s, str) for s in obj)):
        raise ValueError("rational must be a [numerator, denominator] pair of decimal strings")
    num, den = int(obj[0]), int(obj[1])
    if den <= 0:
        raise ValueError("rational denominator must be positive")
    x = Fraction(num, den)
    if x.numerator != num or x.denominator != den:
        raise ValueError("rational must be in lowest terms")
    return x


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def sign_at(p: Polynomial, x) -> int:
    x = Fraction(x)
    return _sign(eval_homogeneous(p.coeffs, x.numerator, x.denominator))


def _csign(coeffs: Sequence[int], x: Fraction) -> int:
    return _sign(eval_homogeneous(coeffs, x.numerator, x.denominator))


# -- preprocessing ---------------------------------------------------------


def _primitive(c: list[int]) -> list[int]:
    g = 0
    for x in c:
        g = math.gcd(g, x)
        if g == 1:
            return c
    return [x // g for x in c] if g > 1 else c


def _deflate(p: Polynomial, lo: Fraction, hi: Fraction) -> list[int]:
    """Drop factors ``q`` and ``(q - 1)`` whose roots lie outside ``[lo, hi]``."""
    c = list(p.coeffs)
    if not (lo <= 0 <= hi):
        k = 0
        while k < len(c) - 1 and c[k] == 0:
            k += 1
        c = c[k:]
    if not (lo <= 1 <= hi):
        while len(c) > 1 and sum(c) == 0:
            # synthetic division by (q - 1), high to low
            out = [0] * (len(c) - 1)
            acc = 0
            for i in range(len(c) - 1, 0, -1):
                acc += c[i]
                out[i - 1] = acc
            c = out
    return _primitive(c)


def _validate(p: Polynomial, lo, hi) -> tuple[Fraction, Fraction]:
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated roots")
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError(f"empty interval: lo={lo} must be below hi={hi}")
    for end in (lo, hi):
        if sign_at(p, end) == 0:
            raise EndpointRootError(f"{end} is a root; shrink or perturb the interval")
    return lo, hi


# -- Sturm engine ----------------------------------------------------------


def _prem_sturm(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder of f by g scaled by a positive factor, so sign is kept."""
    f = list(f)
    dg = len(g) - 1
    lc = g[-1]
    alc = abs(lc)
    sg = 1 if lc > 0 else -1
    while f and len(f) - 1 >= dg:
        shift = len(f) - 1 - dg
        c = sg * f[-1]
        if alc != 1:
            f = [alc * x for x in f]
        for i, y in enumerate(g):
            f[i + shift] -= c * y
        f.pop()
        while f and f[-1] == 0:
            f.pop()
    return f


@lru_cache(maxsize=64)
def _sturm_chain_cached(coeffs: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    f = _primitive(list(coeffs))
    seq = [f]
    if len(f) > 1:
        seq.append(_primitive([i * x for i, x in enumerate(f)][1:]))
        while True:
            r = _prem_sturm(seq[-2], seq[-1])
            if not r:
                break
            seq.append(_primitive([-x for x in r]))
    return tuple(tuple(s) for s in seq)


def sturm_chain(p: Polynomial) -> list[Polynomial]:
    """Sturm sequence of ``p`` up to positive scalar factors.

    The last element is ``gcd(p, p')``; variation counts therefore give
    distinct roots without dividing the gcd out first.
    """
    return [Polynomial(s) for s in _sturm_chain_cached(p.coeffs)]


def _variations_at(chain, x: Fraction) -> int:
    signs = [_csign(s, x) for s in chain]
    return kernels.sign_variations(signs)


def _sturm_count(coeffs: list[int], lo: Fraction, hi: Fraction) -> int:
    chain = _sturm_chain_cached(tuple(coeffs))
    return _variations_at(chain, lo) - _variations_at(chain, hi)


# -- Descartes engine ------------------------------------------------------


def _restrict(c: list[int], lo: Fraction, hi: Fraction) -> list[int]:
    """Integer polynomial ``Q`` with ``Q(x) = k * p(lo + (hi - lo) x)``, ``k > 0``."""
    d = len(c) - 1
    den = lo.denominator * hi.denominator // math.gcd(lo.denominator, hi.denominator)
    a = lo.numerator * (den // lo.denominator)
    b = hi.numerator * (den // hi.denominator)
    out = list(c)
    if den != 1:
        dp = 1
        for i in range(d, -1, -1):
            out[i] *= dp
            dp *= den
    kernels.taylor_shift(out, a)
    w = b - a
    if w != 1:
        wp = 1
        for i in range(1, d + 1):
            wp *= w
            out[i] *= wp
    return _primitive(out)


def _descartes_unit(qc: list[int]) -> int:
    """Sign variations bounding the roots of ``qc`` in the open unit interval."""
    t = qc[::-1]
    kernels.taylor_shift(t, 1)
    return kernels.sign_variations(t)


def descartes_bound(p: Polynomial, lo, hi) -> int:
    """Descartes bound for roots of ``p`` in ``(lo, hi)``, counted with multiplicity.

    Exact when it returns 0 or 1; otherwise an upper bound of the same parity.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if p.is_zero() or not lo < hi:
        raise ValueError("need a nonzero polynomial and lo < hi")
    c = _deflate(p, lo, hi)
    if len(c) == 1:
        return 0
    return _descartes_unit(_restrict(c, lo, hi))


_SPLITS = [Fraction(1, 2)] + [
    s for k in range(1, 64) for s in (Fraction(k, 2 * k + 1), Fraction(k + 1, 2 * k + 1))
]


def _split_point(qc: list[int]) -> Fraction:
    for s in _SPLITS:
        if eval_homogeneous(qc, s.numerator, s.denominator) != 0:
            return s
    raise RuntimeError("no root-free split point found")  # more roots than candidates


def _isolate_vca(c: list[int], lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
    out = []
    stack = [(lo, hi, _restrict(c, lo, hi), 0)]
    while stack:
        a, b, qc, depth = stack.pop()
        v = _descartes_unit(qc)
        if v == 0:
            continue
        if v == 1:
            out.append((a, b))
            continue
        if depth >= VCA_MAX_DEPTH:
            out.extend(_isolate_sturm(c, a, b))
            continue
        s = _split_point(qc)
        m = a + (b - a) * s
        if s == Fraction(1, 2):
            d = len(qc) - 1
            left = list(qc)
            dp = 1
            for i in range(d, -1, -1):
                left[i] *= dp
                dp *= 2
            right = kernels.taylor_shift(list(left), 1)
            left, right = _primitive(left), _primitive(right)
        else:
            left = _restrict(qc, Fraction(0), s)
            right = _restrict(qc, s, Fraction(1))
        stack.append((m, b, right, depth + 1))
        stack.append((a, m, left, depth + 1))
    out.sort()
    return out


def _isolate_sturm(c: list[int], lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
    chain = _sturm_chain_cached(tuple(c))
    out = []
    stack = [(lo, hi, _variations_at(chain, lo), _variations_at(chain, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        for s in _SPLITS:
            m = a + (b - a) * s
            if _csign(c, m) != 0:
                break
        vm = _variations_at(chain, m)
        stack.append((m, b, vm, vb))
        stack.append((a, m, va, vm))
    out.sort()
    return out


def _pick_method(c: list[int], method: str) -> str:
    if method == "auto":
        return "sturm" if len(c) - 1 <= STURM_MAX_DEGREE else "descartes"
    if method not in ("sturm", "descartes"):
        raise ValueError(f"unknown method {method!r}")
    return method


def count_roots(p: Polynomial, lo, hi, method: str = "auto") -> int:
    """Exact number of distinct real roots of ``p`` in the open interval ``(lo, hi)``."""
    lo, hi = _validate(p, lo, hi)
    c = _deflate(p, lo, hi)
    if len(c) == 1:
        return 0
    if _pick_method(c, method) == "sturm":
        return _sturm_count(c, lo, hi)
    return len(_isolate_vca(c, lo, hi))


def isolate_roots(p: Polynomial, lo, hi, method: str = "auto") -> list[IsolatingInterval]:
    """Disjoint isolating intervals, left to right, one per distinct root in ``(lo, hi)``."""
    lo, hi = _validate(p, lo, hi)
    c = _deflate(p, lo, hi)
    if len(c) == 1:
        return []
    if _pick_method(c, method) == "sturm":
        pieces = _isolate_sturm(c, lo, hi)
    else:
        pieces = _isolate_vca(c, lo, hi)
    return [IsolatingInterval(a, b, sign_at(p, a), sign_at(p, b)) for a, b in pieces]


def refine(p: Polynomial, iv: IsolatingInterval, eps) -> IsolatingInterval:
    """Shrink ``iv`` by exact bisection until its width is at most ``eps``."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    lo, hi = iv.lo, iv.hi
    s_lo, s_hi = sign_at(p, lo), sign_at(p, hi)
    odd = s_lo * s_hi < 0
    c = None if odd else _deflate(p, lo, hi)
    while hi - lo > eps:
        mid = (lo + hi) / 2
        s_mid = sign_at(p, mid)
        if s_mid == 0:
            # the unique root is exactly mid
            r = min(eps, hi - lo) / 4
            lo, hi = mid - r, mid + r
            s_lo, s_hi = sign_at(p, lo), sign_at(p, hi)
            break
        if odd:
            if s_mid == s_lo:
                lo, s_lo = mid, s_mid
            else:
                hi, s_hi = mid, s_mid
        elif _sturm_count(c, lo, mid) == 1:
            hi, s_hi = mid, s_mid
        else:
            lo, s_lo = mid, s_mid
    return IsolatingInterval(lo, hi, s_lo, s_hi)
