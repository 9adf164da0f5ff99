import dataclasses
import json
from fractions import Fraction

import pytest

from relforge import forge as fm
from relforge.forge import (
    CertificateFormatError,
    ForgeCertificate,
    ForgeRequest,
    NotFound,
    build_witness,
    choose_k,
    choose_target,
    find_n,
    forge,
    graph_summary,
    verify,
)
from relforge.graphcore import bundle_cycle, edge_substitute, gadget_hn
from relforge.polycore import ONE_MINUS_Q, Polynomial, mul
from relforge.relcalc import recurrence_R, recurrence_S, rel_bruteforce, yhat_eval
from relforge.rootiso import IsolatingInterval, count_roots, sign_at

F = Fraction
I_DEFAULT = (F(-1, 2), F(-3, 10))
K_PINNED = (F(-2, 5), F(-7, 20))


@pytest.fixture(scope="module")
def pinned_cert():
    return forge(ForgeRequest(*I_DEFAULT, K=K_PINNED))


@pytest.fixture(scope="module")
def default_cert():
    return forge(ForgeRequest(*I_DEFAULT))


def test_request_validation():
    with pytest.raises(ValueError):
        ForgeRequest(F(-1, 25), F(-1, 20))
    with pytest.raises(ValueError):
        ForgeRequest(F(-1), F(-1, 2))
    with pytest.raises(ValueError):
        ForgeRequest(F(-1, 2), F(-1, 3), eps=0)
    with pytest.raises(ValueError):
        ForgeRequest(F(-1, 2), F(-1, 3), K=(F(-1, 2), F(-2, 5)))
    ForgeRequest(F(-1, 20), F(-1, 25))


def test_choose_k():
    assert choose_k(ForgeRequest(*I_DEFAULT)) == (F(-9, 20), F(-7, 20))
    assert choose_k(ForgeRequest(F(-2, 5), F(-7, 20))) == (F(-31, 80), F(-29, 80))
    assert choose_k(ForgeRequest(*I_DEFAULT, K=K_PINNED)) == K_PINNED


def test_find_n():
    n, cert = find_n(K_PINNED)
    assert n == 5 and cert.success
    with pytest.raises(NotFound) as exc:
        find_n(K_PINNED, max_n=3)
    assert exc.value.stage == "find_n"
    assert exc.value.diagnostics == [{"N": 3, "reason": "yhat_n >= -1 at an endpoint"}]


def test_find_n_near_minus_one_is_not_found_at_default_cap():
    # yhat_n stays above -1 on [-19/20, -9/10] for every odd n up to the default cap
    with pytest.raises(NotFound):
        find_n((F(-19, 20), F(-9, 10)))


def test_choose_target_pinned_k():
    # exact endpoint values -5139/944 and -12298507/1476272 bracket 6, 7 and 8
    assert choose_target(5, K_PINNED) == (6, 1)
    t_lo, t_hi = -yhat_eval(5, K_PINNED[0]), -yhat_eval(5, K_PINNED[1])
    assert t_lo < 6 < 7 < 8 < t_hi


def test_choose_target_needs_cube(monkeypatch):
    values = {F(-1, 2): F(-12, 5), F(-2, 5): F(-5, 2)}
    monkeypatch.setattr(fm, "yhat_eval", lambda n, x: values[x])
    assert choose_target(5, (F(-1, 2), F(-2, 5))) == (14, 3)
    with pytest.raises(NotFound):
        choose_target(5, (F(-1, 2), F(-2, 5)), max_b=1)
    values[F(-2, 5)] = F(-12, 5)
    with pytest.raises(NotFound):
        choose_target(5, (F(-1, 2), F(-2, 5)))


def test_build_witness():
    W = build_witness(5, 7, 1)
    assert W == recurrence_R(5) + recurrence_S(5).scale(8)
    assert W[0] == 1
    assert build_witness(3, 2, 1) == mul(ONE_MINUS_Q, Polynomial([1, 5]))
    assert build_witness(5, 2, 3).degree() == 3 * 9
    with pytest.raises(ValueError):
        build_witness(5, 2, 2)


def test_pinned_k_regression(pinned_cert):
    c = pinned_cert
    assert (c.N, c.k, c.b) == (5, 6, 1)
    assert c.enclosure == IsolatingInterval(F(-507909, 1310720), F(-126977, 327680), -1, 1)
    assert c.graph == {"vertices": 28, "edges": 63}
    assert verify(c)


def test_default_interval(default_cert):
    c = default_cert
    assert c.K == (F(-9, 20), F(-7, 20))
    assert (c.N, c.k, c.b) == (5, 4, 1)
    assert c.enclosure == IsolatingInterval(F(-587823, 1310720), F(-293911, 655360), -1, 1)
    assert c.graph == graph_summary(5, 4, 1) == {"vertices": 20, "edges": 45}
    assert verify(c)


def test_near_quarter():
    c = forge(ForgeRequest(F(-1, 4) - F(1, 1000), F(-1, 4) + F(1, 1000)))
    assert (c.N, c.k, c.b) == (3, 17, 7)
    assert abs(c.enclosure.lo - F(-1, 4)) < F(1, 500) and abs(c.enclosure.hi - F(-1, 4)) < F(1, 500)
    assert verify(c)


def test_small_certificate_matches_explicit_graph():
    c = forge(ForgeRequest(F(-21, 100), F(-19, 100)))
    assert (c.N, c.k, c.b) == (3, 2, 1)
    g = edge_substitute(bundle_cycle(c.k + 1, c.b), gadget_hn(c.N))
    assert (g.n_vertices, g.n_edges) == (c.graph["vertices"], c.graph["edges"])
    rel = rel_bruteforce(g)
    assert sign_at(rel, c.enclosure.lo) * sign_at(rel, c.enclosure.hi) < 0


def test_soundness_claims(default_cert):
    c = default_cert
    W, S = c.W, recurrence_S(c.N)
    assert sign_at(W, c.enclosure.lo) != sign_at(W, c.enclosure.hi)
    assert count_roots(W, c.enclosure.lo, c.enclosure.hi) == 1
    assert count_roots(S, c.enclosure.lo, c.enclosure.hi) == 0
    assert c.enclosure_roots == {"W": 1, "S": 0}


def test_tampered_k_rejected(default_cert):
    bad = dataclasses.replace(default_cert, k=default_cert.k + 1)
    res = verify(bad)
    assert not res
    assert any("witness" in r for r in res.reasons)
    # rebuilt with the tampered k, the witness no longer changes sign on the enclosure
    bad2 = dataclasses.replace(bad, W=build_witness(bad.N, bad.k, bad.b), graph=graph_summary(bad.N, bad.k, bad.b))
    res2 = verify(bad2)
    assert not res2
    assert any("endpoint sign mismatch" in r for r in res2.reasons)


def test_enclosure_outside_interval_rejected(default_cert):
    enc = IsolatingInterval(F(-1, 2) - F(1, 10**7), F(-1, 2) + F(1, 10**7), 1, -1)
    res = verify(dataclasses.replace(default_cert, enclosure=enc))
    assert not res and any(r.startswith("containment") for r in res.reasons)


def test_other_tampering_rejected(default_cert):
    for change in (
        {"b": 2},
        {"N": 4},
        {"graph": {"vertices": 1, "edges": 1}},
        {"eps": F(1, 10**9)},
        {"enclosure_roots": {"W": 2, "S": 0}},
    ):
        assert not verify(dataclasses.replace(default_cert, **change)), change


def test_json_round_trip_and_determinism(default_cert):
    text = default_cert.dumps()
    again = ForgeCertificate.loads(text)
    assert again == default_cert and again.dumps() == text
    assert forge(ForgeRequest(*I_DEFAULT)).dumps() == text
    assert list(json.loads(text)) == [
        "version", "interval", "K", "N", "k", "b", "eps", "W", "enclosure", "enclosure_roots", "below_cert", "graph",
    ]


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(version=2),
        lambda d: d.pop("W"),
        lambda d: d.update(N="5"),
        lambda d: d["enclosure"].update(lo=["1", "0"]),
        lambda d: d.update(interval=[1, 2]),
    ],
)
def test_schema_violations(default_cert, mutate):
    d = json.loads(default_cert.dumps())
    mutate(d)
    with pytest.raises(CertificateFormatError):
        ForgeCertificate.from_json(d)


def test_loads_rejects_truncated(default_cert):
    with pytest.raises(CertificateFormatError):
        ForgeCertificate.loads(default_cert.dumps()[:100])


def test_not_found_carries_stage():
    with pytest.raises(NotFound) as exc:
        forge(ForgeRequest(F(-99, 100), F(-97, 100), max_n=5))
    assert exc.value.stage == "find_n"
    assert [d["N"] for d in exc.value.diagnostics] == [3, 5]
