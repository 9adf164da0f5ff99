"""Reliability engines.

Brute-force subset oracles, deletion-contraction, the closed recurrences for
``C_n = Rel(K_n)``, ``R_n = Rel(H_n)`` and ``S_n`` (split reliability of
``H_n``), F-polynomials, the substitution identity and the virtual edge
interaction ``yhat_n = (R_n + S_n) / S_n``.

Certifying ``yhat_n < -1`` on ``[lo, hi]``: where ``S_n != 0``,
``yhat_n < -1  <=>  R_n / S_n < -2  <=>  (R_n + 2 S_n) / S_n < 0``, i.e.
``sign(S_n) * (R_n + 2 S_n) < 0``. If neither ``S_n`` nor ``R_n + 2 S_n`` has
a root in the closed interval both keep their endpoint signs throughout, so
checking the product sign at one endpoint settles the whole interval.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from relforge import kernels
from relforge.graphcore import Gadget, Multigraph, gadget_hn, is_connected
from relforge.polycore import (
    ONE,
    Polynomial,
    binomial_poly,
    clear_compose,
    eval_rational,
    from_subset_counts,
    mul,
    pow_,
)
from relforge.rootiso import count_roots, rational_from_json, rational_to_json, sign_at

MAX_ORACLE_EDGES = 25


class OracleGuardError(ValueError):
    """Brute-force enumeration refused: too many edges."""


def _guard(m: int, force: bool) -> None:
    if m > MAX_ORACLE_EDGES and not force and os.environ.get("RELFORGE_GUARD_OVERRIDE") != "1":
        raise OracleGuardError(
            f"{m} edges exceeds the brute-force limit of {MAX_ORACLE_EDGES} "
            "(set RELFORGE_GUARD_OVERRIDE=1 to lift it)"
        )


def _profile(g: Multigraph, u: int = -1, v: int = -1):
    ea, eb = g.endpoint_lists()
    return kernels.subset_profile(g.n_vertices, ea, eb, u, v)


def rel_bruteforce(g: Multigraph, force: bool = False) -> Polynomial:
    """Rel(g; q) summed over every connected spanning edge subset."""
    _guard(g.n_edges, force)
    connected, _ = _profile(g)
    return from_subset_counts(connected, g.n_edges)


def split_bruteforce(h: Gadget, force: bool = False) -> Polynomial:
    """Split reliability: subsets leaving exactly two components, one per terminal."""
    _guard(h.graph.n_edges, force)
    _, split = _profile(h.graph, h.u, h.v)
    return from_subset_counts(split, h.graph.n_edges)


def f_polynomial(g: Multigraph, force: bool = False) -> Polynomial:
    """F(G, z): coefficient i counts i-edge deletions that keep ``g`` connected."""
    _guard(g.n_edges, force)
    connected, _ = _profile(g)
    m = g.n_edges
    return Polynomial(connected[m - i] for i in range(m + 1))


def f_bundle_cycle(n: int, b: int) -> Polynomial:
    """Closed form ``B**n + n z**b B**(n-1)`` with ``B = (1+z)**b - z**b``."""
    if n < 2 or b < 1:
        raise ValueError("bundle_cycle needs n >= 2 and b >= 1")
    zb = Polynomial.monomial(b)
    bundle = binomial_poly(b) - zb
    return pow_(bundle, n) + mul(zb.scale(n), pow_(bundle, n - 1))


# -- deletion-contraction --------------------------------------------------


def _bundles(g: Multigraph) -> tuple:
    counts: dict[tuple[int, int], int] = {}
    for e in g.edges:
        counts[e] = counts.get(e, 0) + 1
    return tuple(sorted(counts.items()))


def _dc_connected(n: int, bundles) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for (a, b), _ in bundles:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    return comps == 1


def _contract(bundles, a: int, b: int):
    merged: dict[tuple[int, int], int] = {}
    for (x, y), t in bundles:
        x = a if x == b else x
        y = a if y == b else y
        x -= x > b
        y -= y > b
        if x == y:
            continue
        key = (x, y) if x < y else (y, x)
        merged[key] = merged.get(key, 0) + t
    return tuple(sorted(merged.items()))


def rel_delcon(g: Multigraph) -> Polynomial:
    """Deletion-contraction on parallel-edge bundles, lowest bundle first.

    A bundle of ``t`` edges survives with probability ``1 - q**t``:
    ``Rel(G) = (1 - q**t) Rel(G / ab) + q**t Rel(G - bundle)``, the second term
    dropped when the bundle is a bridge.
    """
    if not is_connected(g):
        raise ValueError("deletion-contraction needs a connected graph")
    memo: dict = {}

    def rec(n: int, bundles) -> Polynomial:
        if n == 1:
            return ONE
        key = (n, bundles)
        hit = memo.get(key)
        if hit is not None:
            return hit
        (a, b), t = bundles[0]
        qt = Polynomial.monomial(t)
        result = mul(ONE - qt, rec(n - 1, _contract(bundles, a, b)))
        rest = bundles[1:]
        if _dc_connected(n, rest):
            result = result + mul(qt, rec(n, rest))
        memo[key] = result
        return result

    return rec(g.n_vertices, _bundles(g))


# -- recurrences -----------------------------------------------------------

_lock = threading.RLock()
_C: dict[int, Polynomial] = {1: ONE}
_S: dict[int, Polynomial] = {}
_R: dict[int, Polynomial] = {}


def _accumulate(acc: list[int], p: Polynomial, shift: int, factor: int) -> None:
    need = shift + len(p.coeffs)
    if len(acc) < need:
        acc.extend([0] * (need - len(acc)))
    for i, c in enumerate(p.coeffs):
        acc[shift + i] += factor * c


def recurrence_C(n: int) -> Polynomial:
    """Rel(K_n; q) from ``C_n = 1 - sum_a C(n-1, a-1) C_a q**(a(n-a))``."""
    if n < 1:
        raise ValueError("C_n needs n >= 1")
    with _lock:
        for k in range(2, n + 1):
            if k in _C:
                continue
            acc = [1]
            for a in range(1, k):
                _accumulate(acc, _C[a], a * (k - a), -comb(k - 1, a - 1))
            _C[k] = Polynomial(acc)
        return _C[n]


def recurrence_S(n: int) -> Polynomial:
    """Split reliability of ``H_n``; ``S_2 = 1``."""
    if n < 2:
        raise ValueError("S_n needs n >= 2")
    with _lock:
        hit = _S.get(n)
        if hit is not None:
            return hit
        recurrence_C(n - 1)
        acc: list[int] = []
        for a in range(1, n // 2 + 1):
            b = n - a
            # terms a and n-a coincide
            factor = comb(n - 2, a - 1) * (1 if a == b else 2)
            _accumulate(acc, mul(_C[a], _C[b]), a * b - 1, factor)
        _S[n] = Polynomial(acc)
        return _S[n]


def recurrence_R(n: int) -> Polynomial:
    """Rel(H_n; q); ``R_2 = 0``."""
    if n < 2:
        raise ValueError("R_n needs n >= 2")
    with _lock:
        for k in range(2, n + 1):
            if k in _R:
                continue
            recurrence_C(k - 1)
            acc = [1]
            for a in range(1, k):
                _accumulate(acc, _C[a], a * (k - a) - 1, -comb(k - 2, a - 1))
            for a in range(3, k):
                _accumulate(acc, _R[a], a * (k - a), -comb(k - 2, a - 2))
            _R[k] = Polynomial(acc)
        return _R[n]


@dataclass(frozen=True)
class GadgetPolys:
    n: int
    R: Polynomial
    S: Polynomial

    @property
    def yhat_num(self) -> Polynomial:
        return self.R + self.S

    @property
    def yhat_den(self) -> Polynomial:
        return self.S

    def to_json(self) -> dict:
        return {"n": self.n, "R": self.R.to_json(), "S": self.S.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> GadgetPolys:
        return cls(int(obj["n"]), Polynomial.from_json(obj["R"]), Polynomial.from_json(obj["S"]))


def gadget_polys(n: int) -> GadgetPolys:
    return GadgetPolys(n, recurrence_R(n), recurrence_S(n))


def yhat_eval(n: int, x) -> Fraction:
    """Exact ``yhat_n(x) = R_n(x)/S_n(x) + 1``; ZeroDivisionError where ``S_n(x) = 0``."""
    if n < 3:
        raise ValueError("yhat_n is used for n >= 3")
    x = Fraction(x)
    s = eval_rational(recurrence_S(n), x)
    if s == 0:
        raise ZeroDivisionError(f"S_{n} vanishes at {x}; yhat is undefined there")
    return eval_rational(recurrence_R(n), x) / s + 1


def _gadget_rs(h: Gadget, force: bool) -> tuple[Polynomial, Polynomial]:
    k = h.graph.n_vertices
    if k >= 3 and h == gadget_hn(k):
        return recurrence_R(k), recurrence_S(k)
    return rel_bruteforce(h.graph, force), split_bruteforce(h, force)


def rel_substitution(g: Multigraph, h: Gadget, F: Polynomial | None = None, force: bool = False) -> Polynomial:
    """Rel(G[H]) = Rel(H)**m F(G, S(H)/Rel(H)), denominators cleared."""
    if not is_connected(g):
        raise ValueError("host graph must be connected")
    if not is_connected(h.graph):
        raise ValueError("gadget graph must be connected")
    rel_h, split_h = _gadget_rs(h, force)
    if F is None:
        F = f_polynomial(g, force)
    return clear_compose(F, split_h, rel_h, g.n_edges)


def bundle_cycle_rel(n: int, b: int) -> Polynomial:
    """Closed form ``(1 - q**b)**(n-1) (1 + (n-1) q**b)``."""
    qb = Polynomial.monomial(b)
    return mul(pow_(ONE - qb, n - 1), ONE + qb.scale(n - 1))


# -- certification ---------------------------------------------------------


@dataclass(frozen=True)
class BelowCertificate:
    """Evidence (or failed attempt) that ``yhat_n < -1`` on ``[lo, hi]``.

    ``s_roots`` / ``p_roots`` are exact root counts of ``S_n`` and
    ``R_n + 2 S_n`` in the open interval, ``None`` when not computed.
    """

    n: int
    lo: Fraction
    hi: Fraction
    success: bool
    reason: str
    s_sign_lo: int
    s_sign_hi: int
    p_sign_lo: int
    p_sign_hi: int
    s_roots: int | None = None
    p_roots: int | None = None

    def __bool__(self) -> bool:
        return self.success

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lo": rational_to_json(self.lo),
            "hi": rational_to_json(self.hi),
            "success": self.success,
            "reason": self.reason,
            "S_sign_lo": self.s_sign_lo,
            "S_sign_hi": self.s_sign_hi,
            "S_roots": self.s_roots,
            "P_sign_lo": self.p_sign_lo,
            "P_sign_hi": self.p_sign_hi,
            "P_roots": self.p_roots,
        }

    @classmethod
    def from_json(cls, obj: dict) -> BelowCertificate:
        return cls(
            n=int(obj["n"]),
            lo=rational_from_json(obj["lo"]),
            hi=rational_from_json(obj["hi"]),
            success=bool(obj["success"]),
            reason=str(obj["reason"]),
            s_sign_lo=int(obj["S_sign_lo"]),
            s_sign_hi=int(obj["S_sign_hi"]),
            p_sign_lo=int(obj["P_sign_lo"]),
            p_sign_hi=int(obj["P_sign_hi"]),
            s_roots=None if obj["S_roots"] is None else int(obj["S_roots"]),
            p_roots=None if obj["P_roots"] is None else int(obj["P_roots"]),
        )


def certify_below(n: int, lo, hi) -> BelowCertificate:
    """Try to prove ``yhat_n(q) < -1`` for every ``q`` in ``[lo, hi]``.

    Failure is returned, not raised.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not (-1 < lo < hi < 0):
        raise ValueError("need -1 < lo < hi < 0")
    if n < 3:
        raise ValueError("certification runs for n >= 3")
    S = recurrence_S(n)
    P = recurrence_R(n) + S.scale(2)
    s_lo, s_hi = sign_at(S, lo), sign_at(S, hi)
    p_lo, p_hi = sign_at(P, lo), sign_at(P, hi)

    def done(ok, reason, s_roots=None, p_roots=None):
        return BelowCertificate(n, lo, hi, ok, reason, s_lo, s_hi, p_lo, p_hi, s_roots, p_roots)

    if s_lo == 0 or s_hi == 0:
        return done(False, "S_n vanishes at an endpoint")
    if s_lo != s_hi:
        return done(False, "S_n changes sign on the interval")
    if s_lo * p_lo >= 0 or s_hi * p_hi >= 0:
        return done(False, "yhat_n >= -1 at an endpoint")
    s_roots = count_roots(S, lo, hi)
    if s_roots:
        return done(False, "S_n has a root in the interval", s_roots)
    p_roots = count_roots(P, lo, hi)
    if p_roots:
        return done(False, "yhat_n = -1 inside the interval", s_roots, p_roots)
    return done(True, "certified", s_roots, p_roots)


# -- convergence diagnostics -----------------------------------------------


def diagnostics_row(n: int, q) -> dict:
    """Exact values of ``C_n``, ``R_n``, ``q**(2-n) S_n`` and ``2 q**(n-2) yhat_n`` at ``q``."""
    q = Fraction(q)
    c = eval_rational(recurrence_C(n), q)
    r = eval_rational(recurrence_R(n), q)
    s = eval_rational(recurrence_S(n), q)
    scaled_s = s * q ** (2 - n)
    yhat_scaled = None if s == 0 else 2 * q ** (n - 2) * (r / s + 1)
    return {"n": n, "C": c, "R": r, "qS": scaled_s, "yhat": yhat_scaled}


def diagnostics(q, n_max: int, n_min: int = 2) -> list[dict]:
    return [diagnostics_row(n, q) for n in range(n_min, n_max + 1)]

