import json

import pytest
from hypothesis import given, strategies as st

from hassett.conditions import (cond_dagger, cond_hilb, cond_moduli, cond_star, cond_twisted,
                                implication_violations, verdict)
from hassett.intfactor import factorize


def hilb_oracle(d, a_max, k_max=2000):
    """Brute force over k and a, no discriminant trick."""
    for a in range(1, a_max + 1):
        for k in range(0, k_max):
            v = 2 * k * k + 2 * k + 2
            if v == d * a * a:
                return k, a
            if v > d * a * a:
                break
    return None


@pytest.mark.parametrize("d, expected", [(8, True), (6, False), (64, False), (12, True),
                                         (14, True), (7, False), (20, True), (200, True)])
def test_cond_star(d, expected):
    assert cond_star(d) is expected


def test_cond_hilb_examples():
    r = cond_hilb(14)
    assert (r.satisfied, r.k, r.a) == (True, 2, 1)
    r = cond_hilb(42)
    assert (r.satisfied, r.k, r.a) == (True, 4, 1)
    r = cond_hilb(8, a_max=100)
    assert not r.satisfied and r.a_max == 100
    assert r.to_json()["status"] == "unsatisfied-within-bound"


def test_cond_hilb_matches_brute_force():
    for d in range(1, 400):
        got = cond_hilb(d, a_max=6)
        want = hilb_oracle(d, 6)
        assert (got.k, got.a) == (want if want else (None, None)), d


def test_cond_hilb_witnesses_verify():
    for d in range(7, 3000):
        r = cond_hilb(d, 20)
        if r.satisfied:
            assert 2 * r.k**2 + 2 * r.k + 2 == d * r.a**2


@pytest.mark.parametrize("d, expected", [(14, True), (8, False), (18, False), (10, False),
                                         (26, True), (42, True)])
def test_cond_moduli(d, expected):
    assert cond_moduli(d) is expected


@pytest.mark.parametrize("d, expected", [(8, True), (12, False), (200, True), (14, True),
                                         (18, True), (20, False), (64, False), (416, True)])
def test_cond_twisted(d, expected):
    assert cond_twisted(d) is expected


def test_cond_twisted_odd_is_false_not_error():
    assert cond_twisted(15) is False
    assert cond_twisted(0) is False


@pytest.mark.parametrize("d, expected", [(20, True), (14, False), (18, False), (12, True),
                                         (6, False)])
def test_cond_dagger(d, expected):
    assert cond_dagger(d) is expected


def test_twisted_iff_no_odd_2mod3_prime():
    for d in range(2, 10001, 2):
        odd_exp = any(p % 3 == 2 and e % 2 for p, e in factorize(d // 2).factors)
        assert cond_twisted(d) != odd_exp


def test_implication_chain():
    assert implication_violations(7, 10000, 100) == []


@given(st.integers(1, 5000))
def test_verdict_invariants(d):
    v = verdict(d, 30)
    assert v.dagger == (v.star and not v.twisted)
    if v.hilb.satisfied:
        assert v.moduli
    if v.twisted:
        assert v.star or d <= 6
    if v.star and v.moduli:
        assert v.twisted


def test_verdict_json():
    out = json.loads(json.dumps(verdict(14).to_json()))
    assert out["schema"] == 1
    assert out["hilb"] == {"status": "satisfied", "k": 2, "a": 1, "a_max": 100}
    assert out["evidence"]["d_over_2"] == {"value": 7, "factors": [[7, 1]]}
    v20 = verdict(20).to_json()
    assert v20["evidence"]["primes_2mod3_with_odd_exponent"] == [2, 5]
    assert verdict(15).diagnostic
