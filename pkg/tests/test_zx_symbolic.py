import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperlab.kernel import build_template_zx_mod, ideal_generate
from hyperlab.zx_symbolic import (
    bounded_claim_check,
    in_principal,
    is_counterexample,
    zx_power,
    zx_power_times,
    zx_product,
)


def test_exact_powers():
    assert zx_power(2, 2, {2, 3}) == {8, 12}
    assert zx_power(1, 3, {2, 4}) == {4, 8, 16}
    assert zx_power_times(2, 3, 3, {2, 3}) == {192, 288, 432, 648}
    assert zx_product({1}, {1}, {2, 3}) == {2, 3}


def test_errors():
    with pytest.raises(ValueError):
        in_principal(0, {0})
    with pytest.raises(ValueError):
        zx_power(2, 0, {1})
    with pytest.raises(ValueError):
        zx_product(set(), {1}, {1})
    with pytest.raises(ValueError):
        bounded_claim_check("bogus", 4, {1}, 1, 1)


def test_prime_counterexample_eight():
    v = bounded_claim_check("prime", 8, {2, 4}, 4, 3, bound=20)
    assert v.first == (1, 1)
    assert is_counterexample("prime", 8, {2, 4}, 4, 3, 1, 1)
    assert is_counterexample("prime", 8, {2, 4}, 4, 3, 1, 4)
    assert (1, 4) in v.counterexamples


def test_weakly_counterexample_six():
    v = bounded_claim_check("weakly", 6, {2, 3}, 3, 2, bound=20)
    assert v.first == (2, 3)
    assert is_counterexample("weakly", 6, {2, 3}, 3, 2, 2, 3)


def test_closed_has_no_counterexample():
    v = bounded_claim_check("closed", 6, {2, 3}, 3, 2, bound=300)
    assert v.no_counterexample and "evidence" in v.summary()


def test_closed_refuted_for_eight():
    # 1^4 lies in 8Z while 1^3 = {4,8,16} does not
    v = bounded_claim_check("closed", 8, {2, 4}, 4, 3, bound=10)
    assert v.first == (1,)
    assert is_counterexample("closed", 8, {2, 4}, 4, 3, 1)


def test_every_reported_counterexample_is_exact():
    for claim, m, X, a, b in [("prime", 8, {2, 4}, 4, 3), ("weakly", 6, {2, 3}, 3, 2), ("prime", 12, {2, 3}, 2, 1)]:
        for pair in bounded_claim_check(claim, m, X, a, b, bound=15).counterexamples:
            assert is_counterexample(claim, m, X, a, b, *pair)


@given(st.integers(-30, 30), st.integers(1, 4), st.sampled_from([4, 6, 8, 12]), st.sets(st.integers(1, 5), min_size=1, max_size=3))
def test_reduction_agrees_with_finite_template(x, k, n, X):
    H = build_template_zx_mod(n, [s % n for s in X], check=False)
    assert {v % n for v in zx_power(x, k, X)} == set(H.power(x % n, k))


@given(st.integers(1, 59), st.sets(st.integers(1, 7), min_size=1, max_size=2))
def test_principal_ideal_is_multiples(m, X):
    H = build_template_zx_mod(60, sorted(X), check=False)
    g = math.gcd(m, 60)
    assert list(ideal_generate(H, [m])) == list(range(0, 60, g))


@given(st.sampled_from(["prime", "weakly"]), st.sampled_from([4, 6, 8, 9]), st.integers(1, 4), st.integers(1, 4))
def test_bounded_scan_matches_exact_check(claim, m, a, b):
    X = {2, 3}
    v = bounded_claim_check(claim, m, X, a, b, bound=6, max_counterexamples=10**6)
    exact = {(x, y) for x in range(-6, 7) for y in range(-6, 7) if is_counterexample(claim, m, X, a, b, x, y)}
    assert set(v.counterexamples) == exact
