"""Certified placement of a reliability root of a simple graph inside a given interval.

Pipeline for an open interval ``I`` in ``(-1, 0)``:

1. ``K`` = middle half of ``I``.
2. Smallest odd ``N`` with ``yhat_N < -1`` certified on ``K``.
3. Smallest odd ``b`` and then smallest integer ``k >= 2`` with ``k**(1/b)``
   strictly between ``|yhat_N|`` at the two ends of ``K``. The bundle-cycle
   ``bundle_cycle(k+1, b)`` has the reliability root ``-k**(-1/b)``.
4. Witness ``W = (R_N + S_N)**b + k S_N**b``. On ``K``, ``S_N != 0`` and
   ``W / S_N**b = yhat_N**b + k``, so the roots of ``W`` in ``K`` are exactly the
   points with ``yhat_N = -k**(1/b)``. Each such point is a reliability root of
   ``bundle_cycle(k+1, b)[H_N]``; it cannot be a root of ``H_N`` because there
   ``yhat_N`` would equal 1.
5. Isolate the leftmost sign-changing root of ``W`` in ``K`` and refine it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from relforge.graphcore import n_edges_hn
from relforge.polycore import Polynomial, pow_
from relforge.relcalc import (
    BelowCertificate,
    certify_below,
    recurrence_R,
    recurrence_S,
    yhat_eval,
)
from relforge.rootiso import (
    EndpointRootError,
    IsolatingInterval,
    count_roots,
    isolate_roots,
    rational_from_json,
    rational_to_json,
    refine,
    sign_at,
)

CERT_VERSION = 1
DEFAULT_EPS = Fraction(1, 10**6)
DEFAULT_MAX_N = 41
DEFAULT_MAX_B = 9
MAX_SHRINKS = 8


class NotFound(Exception):
    """A pipeline stage could not produce its object within the configured caps."""

    def __init__(self, stage: str, message: str, diagnostics=None):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
        self.message = message
        self.diagnostics = diagnostics or []

    def to_json(self) -> dict:
        return {"stage": self.stage, "message": self.message, "diagnostics": self.diagnostics}


class CertificateFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ForgeRequest:
    lo: Fraction
    hi: Fraction
    eps: Fraction = DEFAULT_EPS
    max_n: int = DEFAULT_MAX_N
    max_b: int = DEFAULT_MAX_B
    K: tuple[Fraction, Fraction] | None = None

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        object.__setattr__(self, "eps", Fraction(self.eps))
        if not (-1 < self.lo < self.hi < 0):
            raise ValueError(f"interval must satisfy -1 < lo < hi < 0, got ({self.lo}, {self.hi})")
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if self.max_n < 3 or self.max_b < 1:
            raise ValueError("max_n must be >= 3 and max_b >= 1")
        if self.K is not None:
            k_lo, k_hi = Fraction(self.K[0]), Fraction(self.K[1])
            if not (self.lo < k_lo < k_hi < self.hi):
                raise ValueError("pinned K must lie strictly inside the interval")
            object.__setattr__(self, "K", (k_lo, k_hi))


@dataclass(frozen=True)
class ForgeCertificate:
    interval: tuple[Fraction, Fraction]
    K: tuple[Fraction, Fraction]
    N: int
    k: int
    b: int
    W: Polynomial
    enclosure: IsolatingInterval
    below_cert: BelowCertificate
    eps: Fraction
    enclosure_roots: dict
    graph: dict

    def to_json(self) -> dict:
        return {
            "version": CERT_VERSION,
            "interval": _pair_json(self.interval),
            "K": _pair_json(self.K),
            "N": self.N,
            "k": self.k,
            "b": self.b,
            "eps": rational_to_json(self.eps),
            "W": self.W.to_json(),
            "enclosure": self.enclosure.to_json(),
            "enclosure_roots": dict(self.enclosure_roots),
            "below_cert": self.below_cert.to_json(),
            "graph": dict(self.graph),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, obj) -> ForgeCertificate:
        if not isinstance(obj, dict):
            raise CertificateFormatError("certificate must be a JSON object")
        if obj.get("version") != CERT_VERSION:
            raise CertificateFormatError(f"unsupported certificate version {obj.get('version')!r}")
        try:
            roots = obj["enclosure_roots"]
            graph = obj["graph"]
            for name, val in (("N", obj["N"]), ("k", obj["k"]), ("b", obj["b"])):
                if not isinstance(val, int) or isinstance(val, bool):
                    raise CertificateFormatError(f"{name} must be an integer")
            return cls(
                interval=_pair_from_json(obj["interval"]),
                K=_pair_from_json(obj["K"]),
                N=obj["N"],
                k=obj["k"],
                b=obj["b"],
                W=Polynomial.from_json(obj["W"]),
                enclosure=IsolatingInterval.from_json(obj["enclosure"]),
                below_cert=BelowCertificate.from_json(obj["below_cert"]),
                eps=rational_from_json(obj["eps"]),
                enclosure_roots={"W": int(roots["W"]), "S": int(roots["S"])},
                graph={"vertices": int(graph["vertices"]), "edges": int(graph["edges"])},
            )
        except CertificateFormatError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateFormatError(f"malformed certificate: {exc!r}") from None

    @classmethod
    def loads(cls, text: str) -> ForgeCertificate:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CertificateFormatError(f"not valid JSON: {exc}") from None
        return cls.from_json(obj)


def _pair_json(pair) -> dict:
    return {"lo": rational_to_json(pair[0]), "hi": rational_to_json(pair[1])}


def _pair_from_json(obj) -> tuple[Fraction, Fraction]:
    return rational_from_json(obj["lo"]), rational_from_json(obj["hi"])


def choose_k(req: ForgeRequest) -> tuple[Fraction, Fraction]:
    """Middle half of the requested interval, unless pinned on the request."""
    if req.K is not None:
        return req.K
    return shrink(req.lo, req.hi)


def shrink(lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Move both ends a quarter of the width toward the center."""
    w = hi - lo
    return lo + w / 4, hi - w / 4


def find_n(K, max_n: int = DEFAULT_MAX_N, start: int = 3) -> tuple[int, BelowCertificate]:
    """Smallest odd ``N >= start`` with ``yhat_N < -1`` certified on ``K``."""
    lo, hi = K
    failures = []
    n = start if start % 2 else start + 1
    while n <= max_n:
        cert = certify_below(n, lo, hi)
        if cert.success:
            return n, cert
        failures.append({"N": n, "reason": cert.reason})
        n += 2
    raise NotFound("find_n", f"no odd N <= {max_n} certifies yhat_N < -1 on K", failures)


def choose_target(N: int, K, max_b: int = DEFAULT_MAX_B) -> tuple[int, int]:
    """Smallest odd ``b``, then smallest ``k >= 2``, with ``k`` strictly between the
    ``b``-th powers of ``|yhat_N|`` at the ends of ``K``."""
    t1 = -yhat_eval(N, K[0])
    t2 = -yhat_eval(N, K[1])
    if t1 == t2:
        raise NotFound("choose_target", "yhat_N takes equal values at both ends of K")
    lo_t, hi_t = min(t1, t2), max(t1, t2)
    tried = []
    for b in range(1, max_b + 1, 2):
        a, c = lo_t**b, hi_t**b
        k = max(a.numerator // a.denominator + 1, 2)
        if k < c:
            return k, b
        tried.append({"b": b, "lo": float(a), "hi": float(c)})
    raise NotFound("choose_target", f"no integer target for odd b <= {max_b}", tried)


def build_witness(N: int, k: int, b: int) -> Polynomial:
    """``(R_N + S_N)**b + k S_N**b``; vanishes exactly where ``yhat_N**b = -k``."""
    if b < 1 or b % 2 == 0:
        raise ValueError("b must be a positive odd integer")
    S = recurrence_S(N)
    return pow_(recurrence_R(N) + S, b) + pow_(S, b).scale(k)


def graph_summary(N: int, k: int, b: int) -> dict:
    """Size of ``bundle_cycle(k+1, b)[H_N]``."""
    host_edges = (k + 1) * b
    return {"vertices": (k + 1) + host_edges * (N - 2), "edges": host_edges * n_edges_hn(N)}


def forge(req: ForgeRequest) -> ForgeCertificate:
    K = choose_k(req)
    last_error = None
    for _ in range(MAX_SHRINKS + 1):
        try:
            return _forge_on(req, K)
        except _Perturb as exc:
            last_error = exc
            K = shrink(*K)
    raise NotFound("forge", f"gave up after {MAX_SHRINKS} interval shrinks: {last_error}")


class _Perturb(Exception):
    pass


def _forge_on(req: ForgeRequest, K) -> ForgeCertificate:
    start = 3
    skipped = []
    while True:
        try:
            N, below = find_n(K, req.max_n, start)
        except NotFound as exc:
            exc.diagnostics = skipped + exc.diagnostics
            raise
        try:
            k, b = choose_target(N, K, req.max_b)
            break
        except NotFound as exc:
            if "equal values" in exc.message:
                raise _Perturb(exc.message) from None
            skipped.append({"N": N, "reason": exc.message})
            start = N + 2

    W = build_witness(N, k, b)
    try:
        candidates = isolate_roots(W, K[0], K[1])
    except EndpointRootError as exc:
        raise _Perturb(str(exc)) from None
    changing = [iv for iv in candidates if iv.sign_lo * iv.sign_hi < 0]
    if not changing:
        raise NotFound("isolate", "witness has no sign-changing root in K")
    enclosure = refine(W, changing[0], req.eps)
    S = recurrence_S(N)
    roots = {
        "W": count_roots(W, enclosure.lo, enclosure.hi),
        "S": count_roots(S, enclosure.lo, enclosure.hi),
    }
    return ForgeCertificate(
        interval=(req.lo, req.hi),
        K=K,
        N=N,
        k=k,
        b=b,
        W=W,
        enclosure=enclosure,
        below_cert=below,
        eps=req.eps,
        enclosure_roots=roots,
        graph=graph_summary(N, k, b),
    )


@dataclass(frozen=True)
class VerifyResult:
    valid: bool
    reasons: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.valid


def verify(cert: ForgeCertificate) -> VerifyResult:
    """Re-derive every claim of ``cert`` from the recurrences and exact root counting."""
    reasons = []

    def check(ok, reason):
        if not ok:
            reasons.append(reason)
        return ok

    N, k, b = cert.N, cert.k, cert.b
    i_lo, i_hi = cert.interval
    k_lo, k_hi = cert.K
    enc = cert.enclosure
    structural = all(
        [
            check(N >= 3 and N % 2 == 1, "N must be odd and >= 3"),
            check(k >= 2, "k must be >= 2"),
            check(b >= 1 and b % 2 == 1, "b must be odd and positive"),
            check(-1 < i_lo < i_hi < 0, "interval must lie in (-1, 0)"),
            check(i_lo < k_lo < k_hi < i_hi, "containment: K must lie inside the interval"),
            check(k_lo <= enc.lo < enc.hi <= k_hi, "containment: enclosure must lie inside K"),
            check(i_lo < enc.lo and enc.hi < i_hi, "containment: enclosure must lie inside the interval"),
            check(cert.eps > 0 and enc.width <= cert.eps, "enclosure wider than eps"),
        ]
    )
    if not structural:
        return VerifyResult(False, tuple(reasons))

    W = build_witness(N, k, b)
    check(W == cert.W, "witness polynomial does not match (R_N+S_N)^b + k S_N^b")
    s_lo, s_hi = sign_at(W, enc.lo), sign_at(W, enc.hi)
    sign_ok = check(s_lo != 0 and s_hi != 0 and s_lo != s_hi, "endpoint sign mismatch: W does not change sign")
    check((s_lo, s_hi) == (enc.sign_lo, enc.sign_hi), "endpoint sign mismatch: recorded signs differ")
    if sign_ok:
        w_roots = count_roots(W, enc.lo, enc.hi)
        check(w_roots == 1, f"W has {w_roots} roots in the enclosure, expected 1")
        check(cert.enclosure_roots.get("W") == w_roots, "recorded W root count differs")

    S = recurrence_S(N)
    S_k_ok = check(sign_at(S, k_lo) != 0 and sign_at(S, k_hi) != 0, "S_N vanishes at an end of K")
    if S_k_ok:
        check(count_roots(S, k_lo, k_hi) == 0, "S_N has a root in K")
        check(sign_at(S, enc.lo) != 0 and sign_at(S, enc.hi) != 0, "S_N vanishes at an enclosure end")
        if sign_at(S, enc.lo) and sign_at(S, enc.hi):
            s_enc = count_roots(S, enc.lo, enc.hi)
            check(s_enc == 0 and cert.enclosure_roots.get("S") == 0, "S_N has a root in the enclosure")

    below = certify_below(N, k_lo, k_hi)
    check(below.success, f"yhat_N < -1 not certified on K: {below.reason}")
    check(below == cert.below_cert, "recorded below_cert evidence differs from recomputation")
    check(cert.graph == graph_summary(N, k, b), "graph summary does not match N, k, b")
    return VerifyResult(not reasons, tuple(reasons))
