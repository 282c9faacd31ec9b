import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kodaira.factor import (
    FactorizationError,
    factorize,
    is_prime,
    prime_divisors,
    small_primes,
    trial_bound,
)

sympy = pytest.importorskip("sympy")


def test_small_primes_prefix():
    assert small_primes(30) == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


@pytest.mark.parametrize("n", [0, 1, -1])
def test_is_prime_trivial(n):
    assert not is_prime(n)


def test_is_prime_carmichael_and_strong_pseudoprimes():
    for n in (561, 1105, 3215031751, 3825123056546413051, 318665857834031151167461):
        assert not is_prime(n)
    assert is_prime(2**61 - 1) and is_prime(2**89 - 1)


def test_factorize_small_cases():
    assert factorize(14450) == {2: 1, 5: 2, 17: 2}
    assert factorize(-432) == {2: 4, 3: 3}
    assert factorize(1) == {}
    assert factorize(-1) == {}


def test_factorize_needs_rho():
    p, q = 1000003, 998244353
    assert factorize(p * q * q, bound=100) == {p: 1, q: 2}


def test_factorize_zero_rejected():
    with pytest.raises(ValueError):
        factorize(0)


def test_trial_bound_env(monkeypatch):
    monkeypatch.setenv("KODAIRA_FACTOR_BOUND", "1234")
    assert trial_bound() == 1234
    monkeypatch.delenv("KODAIRA_FACTOR_BOUND")
    assert trial_bound() == 10**6


def test_unfactored_cofactor_reported(monkeypatch):
    import kodaira.factor as f

    monkeypatch.setattr(f, "_brent_rho", lambda n, c: None)
    n = 1000000007 * 1000000009 * 1000000021
    with pytest.raises(FactorizationError) as exc:
        factorize(n, bound=10)
    assert str(n) in str(exc.value)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=-(10**24), max_value=10**24).filter(lambda n: n != 0))
def test_factorize_matches_sympy(n):
    got = factorize(n)
    assert got == {int(p): e for p, e in sympy.factorint(abs(n)).items()}
    assert math.prod(p**e for p, e in got.items()) == abs(n)
    assert prime_divisors(n) == sorted(got)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=2, max_value=10**30))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == bool(sympy.isprime(n))
