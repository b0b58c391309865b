import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainforge.arithmetic import (
    binary_ones, congruence_class, distinct_prime_factors, exact_root, factorize, is_prime, omega,
    pm3_13_mod40, prime_power,
)


def trial_factor(n):
    out, d = [], 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def test_small_primes_match_trial_division():
    for n in range(0, 5000):
        assert is_prime(n) == (n > 1 and trial_factor(n) == [(n, 1)]), n


def test_factorize_examples():
    assert factorize(24).as_pairs() == [(2, 3), (3, 1)]
    assert factorize(2186).as_pairs() == [(2, 1), (1093, 1)]
    assert factorize(1).as_pairs() == []
    assert factorize(2186).render() == "2*1093"
    assert factorize(72).render() == "2^3*3^2"


def test_large_values():
    # Mersenne primes either side of the trial bound, and a semiprime of two of them
    assert is_prime(2**61 - 1) and is_prime(2**89 - 1)
    n = (2**61 - 1) * (2**31 - 1)
    assert factorize(n).as_pairs() == [(2**31 - 1, 1), (2**61 - 1, 1)]
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert omega(2**100) == 100


def test_zero_and_bad_input():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        omega(0)
    with pytest.raises(ValueError):
        is_prime(-3)
    with pytest.raises(TypeError):
        omega(2.0)


@settings(max_examples=300)
@given(st.integers(1, 10**9))
def test_factorize_matches_trial_division(n):
    f = factorize(n)
    assert f.as_pairs() == trial_factor(n)
    assert f.value() == n
    assert f.omega == omega(n) == sum(e for _, e in trial_factor(n))
    assert f.primes == distinct_prime_factors(n)


@settings(max_examples=500)
@given(st.integers(1, 10**15), st.integers(1, 10**15))
def test_omega_additive(a, b):
    assert omega(a * b) == omega(a) + omega(b)


@given(st.integers(0, 10**18))
def test_binary_ones_recurrences(n):
    assert binary_ones(2 * n) == binary_ones(n)
    assert binary_ones(2 * n + 1) == binary_ones(n) + 1


def test_binary_ones_examples():
    assert [binary_ones(n) for n in (0, 1, 7, 8, 255)] == [0, 1, 3, 1, 8]


def test_congruences():
    assert congruence_class(43, 40, ["±3", "±13"])
    assert congruence_class(37, 40, ["±3"])
    assert not congruence_class(41, 40, ["±3", "±13"])
    assert [p for p in (3, 13, 27, 37, 43, 53, 67, 77) if pm3_13_mod40(p)] == [3, 13, 27, 37, 43, 53, 67, 77]
    assert not pm3_13_mod40(41)
    with pytest.raises(ValueError):
        congruence_class(5, 1, [0])


def test_prime_power_and_roots():
    assert prime_power(125) == (5, 3)
    assert prime_power(2187) == (3, 7)
    assert prime_power(12) is None
    assert prime_power(1) is None
    assert exact_root(2187, 7) == 3
    assert exact_root(2186, 7) is None


@given(st.integers(2, 10**6), st.integers(1, 6))
def test_prime_power_round_trip(base, k):
    p = base
    if not is_prime(p):
        return
    assert prime_power(p**k) == (p, k)
