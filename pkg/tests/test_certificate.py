import dataclasses
import json

import pytest

from diambound.bounds import BoundParams
from diambound.certificate import Certificate, FailureReport, loads, replay_certificate
from diambound.checker import BaseCaseChecker
from diambound.records import Witness

P20 = BoundParams(2, 0)


@pytest.fixture(scope="module")
def cert_2_0():
    return BaseCaseChecker(P20).run(7)


@pytest.fixture(scope="module")
def cert_4_0():
    return BaseCaseChecker(BoundParams(4, 0)).run(37)


def test_transcript_lines(cert_2_0):
    lines = cert_2_0.transcript_lines()
    assert lines[:6] == ["- n_L(7) = 46", "(B0) OK", "- n_L(8) = 47", "- n_L(9) = 51", "(B1) OK",
                         "- # pairs (10,n) checked = 22"]
    assert lines[-4:] == ["- # pairs (31,n) checked = 1", "(B2) OK", "", "****** SUCCESS ******"]


def test_transcript_with_empty_step1(cert_4_0):
    lines = cert_4_0.transcript_lines()
    assert lines[:4] == ["- n_L(37) = 42946", "(B0) OK", "(B1) OK", "- # pairs (38,n) checked = 474"]


def test_failure_transcript():
    rep = BaseCaseChecker(P20).run(6)
    lines = rep.transcript_lines()
    assert lines == ["Error: f ∈ [97.62, 97.63] [Ours] < 98 [tilde] (6,24)", "", "****** FAILURE ******"]


def test_serialization_is_json_lines_with_string_integers(cert_4_0):
    lines = cert_4_0.dumps().splitlines()
    objs = [json.loads(s) for s in lines]
    assert objs[0]["type"] == "certificate" and objs[1]["type"] == "sturm"
    nl = [o for o in objs if o["type"] == "nl"]
    assert nl[0]["n_L"] == "42946"
    w = [o for o in objs if o["type"] == "witness"]
    assert all(isinstance(o["V"], str) and "/" in o["q"] for o in w)


def test_round_trip(cert_2_0, cert_4_0):
    for cert in (cert_2_0, cert_4_0):
        again = loads(cert.dumps())
        assert isinstance(again, Certificate)
        assert again.dumps() == cert.dumps()
        assert again.nl_records == cert.nl_records and again.witnesses == cert.witnesses


def test_deterministic_apart_from_duration():
    a = BaseCaseChecker(P20).run(7)
    b = BaseCaseChecker(P20).run(7)
    strip = lambda c: dataclasses.replace(c, duration=0.0).dumps()
    assert strip(a) == strip(b)


def test_failure_round_trip():
    rep = BaseCaseChecker(BoundParams(4, 0)).run(36)
    again = loads(rep.dumps())
    assert isinstance(again, FailureReport)
    assert again.pair == (36, 6928) and again.tilde == 1469922992914
    assert again.transcript_lines() == rep.transcript_lines()


def test_replay_accepts(cert_2_0, cert_4_0):
    for cert in (cert_2_0, cert_4_0):
        res = replay_certificate(loads(cert.dumps()))
        assert res.ok, res.problems
        assert res.comparisons > 0
        assert replay_certificate(cert, recompute_table=True).ok


def _tamper(cert, **changes):
    return dataclasses.replace(cert, **changes)


def test_replay_rejects_tampering(cert_2_0):
    # wrong n_L
    nl = [dataclasses.replace(r, n_L=r.n_L - 1) if r.d == 8 else r for r in cert_2_0.nl_records]
    assert not replay_certificate(_tamper(cert_2_0, nl_records=nl))
    # a dropped witness leaves a hole in the tiling
    ws = [w for w in cert_2_0.witnesses if not (w.kind == "tilde" and w.step == "B2" and w.d == 20)]
    assert not replay_certificate(_tamper(cert_2_0, witnesses=ws))
    # a block threshold above f
    ws = [dataclasses.replace(w, V=10**9) if (w.kind == "tilde" and w.d == 7) else w for w in cert_2_0.witnesses]
    assert not replay_certificate(_tamper(cert_2_0, witnesses=ws))
    # an unsound threshold
    assert not replay_certificate(_tamper(cert_2_0, d_ab=9))
    # l not superlinear
    assert not replay_certificate(_tamper(cert_2_0, l=4))


def test_recompute_catches_table_lie(cert_2_0):
    # shrink one block bound below the table: comparisons still pass, the table check does not
    ws = []
    for w in cert_2_0.witnesses:
        if w.kind == "tilde" and w.step == "B1" and w.d == 8 and w.n_hi > w.n_lo:
            w = Witness(w.kind, w.step, w.d, w.n_lo, w.n_hi, 0, w.q)
        ws.append(w)
    bad = _tamper(cert_2_0, witnesses=ws)
    assert replay_certificate(bad).ok
    assert not replay_certificate(bad, recompute_table=True).ok


def test_partial_certificate_flags():
    cert = BaseCaseChecker(BoundParams(8, 16), b2_max_dim=12).run(4)
    again = loads(cert.dumps())
    assert again.complete is False and again.b2_max_dim == 12
    assert any("partial" in s for s in again.transcript_lines())
    assert replay_certificate(again).ok
