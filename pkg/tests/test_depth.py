import pytest

import oracle_corpus
from chainforge.arithmetic import is_prime, omega, pm3_13_mod40
from chainforge.catalog import (
    Alternating, Cyclic, LinearL, Sporadic, Suzuki, is_soluble, parse_group_id, simple_ids,
)
from chainforge.depth import (
    depth3_simple, depth_L2_pcubed, depth_L2_prime, depth_of, quasisimple_depth4, table3_membership,
    table4_membership,
)
from chainforge.length import NotCovered


@pytest.mark.parametrize("p,d", [(13, 3), (41, 4), (23, 3)])
def test_l2_prime_dichotomy(p, d):
    assert depth_L2_prime(p).value.value == d


@pytest.mark.parametrize("p,d", [(3, 3), (5, 4), (433373, 4)])
def test_l2_pcubed_dichotomy(p, d):
    assert depth_L2_pcubed(p).value.value == d


def test_433373_is_the_first_prime_with_both_sides_large():
    # Omega(p +- 1) >= 3 holds, but the prime is 13 mod 40, so the dichotomy puts it at depth 4
    p = 433373
    assert min(omega(p - 1), omega(p + 1)) >= 3
    assert p % 40 == 13 and pm3_13_mod40(p)


def test_dichotomy_domain():
    with pytest.raises(ValueError):
        depth_L2_prime(11)
    with pytest.raises(ValueError):
        depth_L2_prime(15)
    with pytest.raises(ValueError):
        depth_L2_pcubed(2)


def test_depth3_examples():
    assert depth3_simple(LinearL(2, 8))
    assert not depth3_simple(Alternating(7))
    assert depth3_simple(Sporadic("M23"))
    with pytest.raises(ValueError):
        depth3_simple(Cyclic(6))


def test_quasisimple_examples():
    assert quasisimple_depth4(parse_group_id("2.Sz(8)"))
    assert not quasisimple_depth4(parse_group_id("2.A(7)"))
    assert quasisimple_depth4(parse_group_id("SL(2,13)"))


def test_extension_examples():
    assert table3_membership(Alternating(6), parse_group_id("PGL(2,9)"))
    assert table3_membership(LinearL(2, 29), 2)
    assert not table3_membership(LinearL(2, 13), 2)


def test_soluble_maximal_examples():
    assert table4_membership(Alternating(13)) == ["13:6"]
    assert table4_membership(Sporadic("J1")) == ["7:6", "11:10", "19:6", "2^3:7:3"]
    assert table4_membership(Suzuki(8)) == []


@pytest.mark.parametrize("text,d", [("C(12)", 3), ("L(2,9)", 4), ("M11", 4), ("M23", 3), ("B", 3),
                                    ("M", 4), ("TF4(2)'", 4), ("A(5)xC(2)", 4)])
def test_pinned_depths(text, d):
    r = depth_of(parse_group_id(text)).value
    assert r.exact and r.value == d


def test_open_cases_are_ranges():
    # A6.2 may be S6 (depth 5) or PGL2(9), M10 (depth 4)
    r = depth_of(parse_group_id("A(6).2")).value
    assert (r.low, r.high) == (4, 5)
    r = depth_of(parse_group_id("U(3,5)")).value
    assert (r.low, r.high) == (4, 5)
    with pytest.raises(NotCovered):
        depth_of(Sporadic("HS"))


def test_depth3_list_matches_depth_engine():
    for g in simple_ids(q_max=3000, n_max=60):
        try:
            r = depth_of(g).value
        except NotCovered:
            continue
        assert depth3_simple(g) == (r.exact and r.value == 3), g.render()


def test_prime_dichotomy_matches_depth3_clauses():
    for p in range(13, 10**4):
        if not is_prime(p):
            continue
        d = depth_L2_prime(p).value.value
        assert d in (3, 4)
        clause = is_prime((p + 1) // 2) or is_prime((p - 1) // 2) or pm3_13_mod40(p)
        assert (d == 3) == clause, p


def test_cyclic_depth_is_omega():
    for n in range(2, 500):
        assert depth_of(Cyclic(n)).value.value == omega(n)


def test_insoluble_depth_at_least_three():
    for g in simple_ids(q_max=500, n_max=40):
        try:
            assert depth_of(g).value.low >= 3, g.render()
        except NotCovered:
            pass


@pytest.mark.parametrize("text", ["A(5)", "A(6)", "S(4)", "L(2,7)", "L(2,8)", "L(2,11)", "C(6)", "D(12)"])
def test_depth_matches_oracle(text):
    r = depth_of(parse_group_id(text)).value
    assert r.exact and r.value == oracle_corpus.report(text).lam


def test_products_with_prime_factors():
    # each prime-order direct factor adds one
    for n in (2, 3, 4, 6, 12):
        r = depth_of(parse_group_id(f"A(5)xC({n})")).value
        assert r.value == 3 + omega(n)
    assert oracle_corpus.report("A(5)xC(4)").lam == 5
    assert not is_soluble(parse_group_id("A(5)xC(4)"))
