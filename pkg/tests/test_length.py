import pytest

import oracle_corpus
from chainforge.arithmetic import is_prime, omega, pm3_13_mod40, prime_power
from chainforge.catalog import (
    Alternating, Cyclic, E8, LinearL, Product, Ree3, Sporadic, Suzuki, borel_order, parse_group_id,
    prime_powers,
)
from chainforge.length import (
    NotCovered, length_L2, length_L3_even, length_Sz, length_U3_even, length_alternating, length_of,
)

FIXED_L2 = {4: 4, 5: 4, 7: 5, 8: 5, 9: 5, 11: 5, 19: 5, 27: 5, 29: 5, 25: 6, 125: 6,
            16: 7, 32: 7, 49: 7, 121: 7, 169: 7, 81: 9, 128: 9, 2187: 9}


def table_length_L2(q):
    """Length of L2(q) read off the classification of simple groups of length at most 9, else None."""
    if q in FIXED_L2:
        return FIXED_L2[q]
    p, k = prime_power(q)
    a, b = omega(q - 1), omega(q + 1)
    if k == 1:
        m = max(a, b)
        if m == 3 and pm3_13_mod40(q):
            return 4
        return m + 1 if 4 <= m <= 8 else None
    rows = {
        2: [(8, a == 6 and b <= 7), (9, (a == 7 and b <= 8) or (a == 6 and b == 8))],
        3: [(7, a == 4 and b <= 6), (8, (a == 5 and b <= 7) or (a <= 4 and b == 7)),
            (9, (a == 6 and b <= 8) or (a <= 5 and b == 8))],
        5: [(8, a == 3 and b <= 7), (9, (a == 4 and b <= 8) or (a == 3 and b == 8))],
    }
    for l, hit in rows.get(k, []):
        if hit:
            return l
    return None


@pytest.mark.parametrize("n,l", [(5, 4), (7, 6), (8, 9)])
def test_alternating(n, l):
    assert length_alternating(n).value.value == l


@pytest.mark.parametrize("q,l", [(8, 5), (16, 7), (13, 4), (2187, 9), (7, 5), (9, 5), (25, 6)])
def test_l2_examples(q, l):
    assert length_L2(q).value.value == l


def test_l2_matches_length_table_up_to_1e5():
    # the formula and the classification table are independent routes
    for q in prime_powers(4, 10**5):
        expect = table_length_L2(q)
        got = length_L2(q).value
        assert got.exact, q
        if expect is None:
            assert got.value > 9, q
        else:
            assert got.value == expect, q


def test_l2_prime_bound():
    for p in range(7, 10**4):
        if is_prime(p):
            assert length_L2(p).value.value <= 1 + max(4, omega(p - 1), omega(p + 1))


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9, 11, 13])
def test_l2_matches_oracle(q):
    assert length_L2(q).value.value == oracle_corpus.report(f"L(2,{q})").l


def test_even_l2_borel_form():
    for f in range(2, 20):
        q = 2**f
        assert length_L2(q).value.value == omega(borel_order(LinearL(2, q))) + 1


def test_lie_type_formulas():
    assert length_U3_even(4).value.value == 9
    assert length_U3_even(8).value.value == 12
    # Omega(1023) = 3 and the Borel subgroup contributes 15 from q^3
    assert length_U3_even(32).value.value == 18
    assert length_L3_even(4).value.value == 9
    assert length_L3_even(2).value.value == 5
    assert length_L3_even(16).value.value == 17
    assert length_Sz(8).value.value == 8
    assert length_Sz(32).value.value == 12
    # Omega(127) + 2*7 + 1
    assert length_Sz(128).value.value == 16


def test_borel_rules():
    r = length_of(E8(2))
    assert r.value.exact and r.value.value == 128
    r = length_of(Ree3(27)).value
    assert r.low == 12 and r.high is None


def test_known_and_additive():
    assert length_of(Sporadic("J1")).value.value == 6
    assert length_of(Sporadic("M11")).value.value == 7
    assert length_of(parse_group_id("U(3,13)")).value.value == 9
    assert length_of(Product((Alternating(5), Cyclic(2)))).value.value == 5
    assert length_of(LinearL(2, 9)).value.value == 5


def test_not_covered():
    with pytest.raises(NotCovered):
        length_of(Sporadic("M24"))


def test_soluble_is_omega_of_order():
    for n in range(2, 200):
        assert length_of(Cyclic(n)).value.value == omega(n)


def test_simple_lengths_at_least_four():
    for q in prime_powers(4, 2000):
        assert length_L2(q).value.low >= 4
    for g in (Suzuki(8), Suzuki(32), Alternating(9)):
        assert length_of(g).value.low >= 4
