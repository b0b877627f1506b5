from fractions import Fraction

import pytest

import bobw


def test_impossibility_repro():
    status, body = bobw.repro("impossibility")
    assert status == 0
    assert body["count"] == 4
    assert not body["sdef_mixture"]["feasible"]
    assert body["sdef_mixture"]["certificate_valid"]


def test_example_ratio_is_exact():
    status, body = bobw.repro("example-4-1", epsilon="1/1000")
    assert status == 0
    eps = Fraction(1, 1000)
    assert Fraction(body["ratio_1_2"]) == (432 + 5808 * eps) / (576 + 528 * eps)


def test_utse_on_identical_rankings():
    status, body = bobw.solve("FIX-D", "utse")
    assert status == 0
    assert len(body["distribution"]["support"]) == 2
    assert all(a["pass"] for a in body["audits"])


def test_charity_round_trip_through_verify():
    status, body = bobw.solve("FIX-E", "charity", seed=7)
    assert status == 0
    status, report = bobw.verify("FIX-E", body, "efx-with-charity")
    assert status == 0
    assert report["audits"][0]["pass"]


def test_failing_audit_has_witness():
    status, report = bobw.verify("FIX-A", {"bundles": [[0, 1], [], [2, 3]]}, "efx")
    assert status == 2
    w = report["audits"][0]["witness"]
    assert (w["envier"], w["envied"], w["removed"]) == (1, 0, 1)


def test_dict_instance_and_validation():
    inst = {"n": 2, "m": 2, "valuations": [{"kind": "additive", "values": [1, "1/2"]},
                                           {"kind": "lexicographic", "ranking": [1, 0]}]}
    status, body = bobw.validate(inst)
    assert status == 0 and body["valid"]
    assert bobw.instance(inst)["m"] == 2


def test_samplers_need_a_seed():
    with pytest.raises(bobw.PreconditionError):
        bobw.solve("FIX-C", "depround-k2")
    with pytest.raises(ValueError):
        bobw.solve("FIX-A", "no-such-algorithm")


def test_sampling_is_deterministic():
    a = bobw.sample("FIX-C", "depround-k2", seed=11, count=5)
    b = bobw.sample("FIX-C", "depround-k2", seed=11, count=5)
    assert a == b
    assert a[0] == 0


def test_estimate_reports_pairs():
    status, body = bobw.estimate("FIX-E", "charity", samples=2000, seed=3)
    assert status == 0
    assert len(body["pairs"]) == 2
    assert body["min_pair"]["ratio"] >= 0.5 - 3 * body["min_pair"]["sigma"]


def test_step_cap_raises():
    with pytest.raises(bobw.ResourceCapError):
        bobw.solve("FIX-E", "bounded-charity", seed=1, step_cap=0)
