import pytest
from hypothesis import given
from hypothesis import strategies as st

from chainforge.catalog import (
    Alternating, GroupIdError, LinearL, Sporadic, Suzuki, ValueOrRange, borel_order, is_lie_type, is_simple,
    is_soluble, normalize, order, parse_group_id, render, simple_ids, twisted_rank,
)

ROUND_TRIP = ["A(5)", "S(6)", "C(12)", "D(12)", "L(2,7)", "L(3,4)", "U(3,5)", "Sz(8)", "R(27)", "G2(4)",
              "PSp(4,3)", "M24", "J1", "TF4(2)'", "SL(2,5)", "2.A(5)", "PGL(2,9)", "A(6).2", "A(5)xC(2)"]


@pytest.mark.parametrize("text", ROUND_TRIP)
def test_parse_render_round_trip(text):
    g = parse_group_id(text)
    assert render(g) == text
    assert parse_group_id(render(g)) == g


@pytest.mark.parametrize("text,n", [
    ("A(5)", 60), ("L(2,7)", 168), ("Sz(8)", 29120), ("M11", 7920), ("J1", 175560),
    ("U(3,5)", 126000), ("A(5)xC(2)", 120), ("SL(2,5)", 120), ("TF4(2)'", 17971200),
])
def test_orders(text, n):
    assert order(parse_group_id(text)) == n


def test_borel_orders():
    assert borel_order(Suzuki(8)) == 448
    assert borel_order(parse_group_id("R(27)")) == 27**3 * 26
    assert borel_order(parse_group_id("G2(4)")) == 4**6 * 9
    assert twisted_rank(parse_group_id("G2(4)")) == 2


def test_borel_divides_order():
    for g in simple_ids(q_max=64, n_max=5, families={"L2", "L", "U", "Sz", "R"}):
        if is_lie_type(g):
            assert order(g) % borel_order(g) == 0, render(g)


def test_aliases():
    assert normalize(LinearL(2, 4)) == Alternating(5)
    assert normalize(LinearL(2, 5)) == Alternating(5)
    assert normalize(LinearL(2, 9)) == Alternating(6)
    assert normalize(LinearL(4, 2)) == Alternating(8)
    assert normalize(parse_group_id("PSp(4,3)")) == LinearL(4, 2, "-")
    assert normalize(parse_group_id("2.A(5)")) == parse_group_id("SL(2,5)")


@pytest.mark.parametrize("text", ["Sz(4)", "Sz(2)", "R(9)", "L(2,6)", "A(4", "foo", "M25", ""])
def test_rejects_bad_ids(text):
    with pytest.raises(GroupIdError):
        parse_group_id(text)


def test_simplicity_flags():
    assert is_simple(Alternating(5)) and not is_soluble(Alternating(5))
    assert is_soluble(parse_group_id("S(4)")) and not is_simple(parse_group_id("S(4)"))
    assert is_simple(Sporadic("M24"))


def test_simple_ids_unique_and_canonical():
    ids = list(simple_ids(q_max=200, n_max=20))
    assert len(ids) == len(set(ids))
    assert all(normalize(g) == g and is_simple(g) for g in ids)
    orders = [order(g) for g in ids if order(g) <= 10**6]
    # only A8 = L4(2) and L3(4) share an order below 10^6, and they are different groups
    assert orders.count(20160) == 2


@given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50), st.integers(0, 50))
def test_range_addition(a, b, c, d):
    x = ValueOrRange(min(a, b), max(a, b))
    y = ValueOrRange(min(c, d), max(c, d))
    s = x + y
    assert s.contains(a + c) and s.contains(b + d)
    assert (ValueOrRange(a, None) + y).high is None
