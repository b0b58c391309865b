import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chainforge import primes
from chainforge.arithmetic import is_prime, omega, pm3_13_mod40
from chainforge.primes import (
    And, Context, IsPrime, OmegaCmp, P_PLUS, Poly, QUOTIENT_24, omega_segment, primes_in, search,
    shard_bounds,
)


def test_sieve_matches_is_prime():
    got = primes_in(2, 20_000).tolist()
    assert got == [n for n in range(2, 20_000) if is_prime(n)]
    assert primes_in(10**6, 10**6 + 200).tolist() == [n for n in range(10**6, 10**6 + 200) if is_prime(n)]


@settings(max_examples=30)
@given(st.integers(1, 10**7), st.integers(1, 3000))
def test_omega_segment(lo, width):
    seg = omega_segment(lo, lo + width)
    assert isinstance(seg, np.ndarray)
    for i in range(0, width, 97):
        assert seg[i] == omega(lo + i)


def test_first_ten():
    assert search("table5-row1", 2000) == [13, 43, 67, 173, 283, 317, 653, 787, 907, 1867]


def test_first_ten_brute_force():
    brute = [p for p in range(7, 2000) if is_prime(p)
             and max(omega(p - 1), omega(p + 1)) == 3 and pm3_13_mod40(p)]
    assert search("table5-row1", 2000) == brute


@pytest.mark.parametrize("name,limit,prefix", [
    ("omega-2-4", 600, [23, 59, 83, 227, 347, 563]),
    ("p5-l8", 1200, [3, 7, 23, 83, 263, 1187]),
    ("p3-l7", 30_000, [7, 11, 83, 1523, 20507, 28163]),
    ("u3-l9", 4000, [173, 317, 653, 2693, 3413, 3677]),
])
def test_proof_lists(name, limit, prefix):
    assert search(name, limit)[: len(prefix)] == prefix


def test_u3_family_below_100_is_empty():
    assert primes.u3_length9_family(100) == []


def test_p3_list_brute_force():
    brute = [p for p in range(2, 30_000) if is_prime(p) and omega(p**3 - 1) == 4 and omega(p**3 + 1) <= 6]
    assert search("p3-l7", 30_000) == brute


@pytest.mark.parametrize("shards", [1, 2, 7, 16])
def test_sharded_equals_unsharded(shards):
    whole = search("appendix", 300_000, shards=1)
    assert search("appendix", 300_000, shards=shards) == whole


def test_parallel_equals_serial():
    assert search("omega-2-4", 200_000, jobs=4) == search("omega-2-4", 200_000, jobs=1)


def test_shard_bounds_cover_range():
    for limit in (2, 10, 1000, 12345):
        for k in (1, 3, 8):
            bounds = shard_bounds(limit, k)
            assert bounds[0][0] <= 2
            assert bounds[-1][1] == limit + 1
            assert all(a[1] == b[0] for a, b in zip(bounds, bounds[1:]))


def test_appendix_properties():
    fam = primes.appendix_family(10**6)
    assert len(fam) >= 40
    for m in fam:
        assert m.p % 72 == 5 and is_prime(m.p)
        assert m.omega_total == m.omega_quarter + m.omega_sixth <= 7
        assert m.max_omega_pm1 <= 8 and m.divisible_by_24
        assert m.gcds == (4, 6)


def test_custom_condition_tree():
    half = Poly("(p-1)/2", lambda p: (p - 1) // 2)
    cond = IsPrime(half) & OmegaCmp(P_PLUS, "<=", 3)
    assert isinstance(cond, And)
    got = search(cond, 500)
    assert got == [p for p in range(3, 501) if is_prime(p) and is_prime((p - 1) // 2) and omega(p + 1) <= 3]


def test_context_uses_parts():
    # (p^2-1)/24 splits as (p-1)/4 times (p+1)/6 for p = 5 mod 72
    ctx = Context(149)
    assert ctx.omega(QUOTIENT_24) == omega((149**2 - 1) // 24)


def test_exports():
    rows = [json.loads(line) for line in primes.to_jsonl("table5-row1", [13, 43]).splitlines()]
    assert rows[0] == {"p": "13", "witnesses": {"p-1": "2^2*3", "p+1": "2*7"}}
    text = primes.to_csv("table5-row1", [13, 43])
    assert text.splitlines() == ["p,p-1,p+1", "13,2^2*3,2*7", "43,2*3*7,2^2*11"]


def test_bad_inputs():
    with pytest.raises(KeyError):
        search("no-such-family", 100)
    with pytest.raises(ValueError):
        search("appendix", 1)
