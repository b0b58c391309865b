from fractions import Fraction

import pytest

import oracle_corpus
from chainforge import chains
from chainforge.catalog import (
    Alternating, Cyclic, LinearL, Sporadic, order, parse_group_id, prime_powers, simple_ids,
)
from chainforge.length import NotCovered


def test_cd1_examples():
    assert chains.cd1_simple(LinearL(2, 4))
    assert chains.cd1_simple(LinearL(2, 13))
    assert not chains.cd1_simple(Alternating(7))


def test_cd2_examples():
    assert chains.cd2_simple(LinearL(2, 125))
    assert chains.cd2_simple(LinearL(2, 23))
    assert not chains.cd2_simple(LinearL(2, 13))
    assert chains.cd2_simple(Alternating(7)) and chains.cd2_simple(Sporadic("J1"))


def test_cr_equality_examples():
    assert chains.cr5over4_equality(LinearL(2, 9))
    assert not chains.cr5over4_equality(LinearL(2, 13))
    assert not chains.cr5over4_equality(Sporadic("J1"))


@pytest.mark.parametrize("text,l,d,cd,cr", [("L(2,7)", 5, 3, 2, Fraction(5, 3)), ("A(6)", 5, 4, 1, Fraction(5, 4)),
                                            ("C(30)", 3, 3, 0, Fraction(1))])
def test_report_examples(text, l, d, cd, cr):
    r = chains.report(parse_group_id(text))
    assert (r.length.value, r.depth.value, r.cd.value) == (l, d, cd)
    assert r.cr.exact and r.cr.low == cr


def test_supersoluble_report():
    r = chains.report(Cyclic(30))
    assert r.supersoluble and r.cd.value == 0
    assert not chains.report(parse_group_id("S(4)")).supersoluble


def test_ranges_propagate():
    r = chains.report(parse_group_id("U(3,5)"))
    assert not r.depth.exact and not r.cd.exact
    assert r.cd.contains(2) and r.cd.contains(3)


def test_cd_predicates_disjoint_and_consistent():
    for q in prime_powers(4, 5000):
        g = LinearL(2, q)
        a, b = chains.cd1_simple(g), chains.cd2_simple(g)
        assert not (a and b), q
        r = chains.report(g)
        if r.exact:
            assert a == (r.cd.value == 1) and b == (r.cd.value == 2), q


def test_cd2_set_matches_classification():
    # every exact cd = 2 simple group of order at most 10^8 is predicted, and conversely
    for g in simple_ids(q_max=10**4, n_max=12):
        if order(g) > 10**8:
            continue
        try:
            r = chains.report(g)
        except NotCovered:
            continue
        if r.cd.exact:
            assert (r.cd.value == 2) == chains.cd2_simple(g), g.render()


def test_inequality_suite_on_engine_reports():
    reports = [chains.report(parse_group_id(t)) for t in ("L(2,13)", "A(6)", "L(2,7)", "J1", "A(7)")]
    results = chains.inequality_suite(reports)
    assert not [r for r in results if r.status == "fail"]
    eq = [r for r in results if r.group == "A(6)" and r.check == "l<=5cd"]
    assert eq[0].status == "pass" and eq[0].operands["l"] == 5 * eq[0].operands["cd"]


def test_inequality_suite_with_oracle_facts():
    rep = oracle_corpus.report("S(4)")
    facts = {"S(4)": {"l": rep.l, "depth": rep.lam, "factor_cd_sum": 0}}
    results = chains.inequality_suite([chains.report(parse_group_id("S(4)"))], facts)
    by = {r.check: r for r in results}
    assert by["cd>=sum cd(T_i)"].status == "pass"
    assert not [r for r in results if r.status == "fail"]


def test_composition_factors():
    names = [g.render() for g in chains.composition_factors(parse_group_id("A(5)xC(6)"))]
    assert sorted(names) == ["A(5)", "C(2)", "C(3)"]
