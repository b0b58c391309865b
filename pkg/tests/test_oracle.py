import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle_corpus
from chainforge.arithmetic import is_prime, omega
from chainforge.catalog import order, parse_group_id, render, simple_ids
from chainforge.oracle import (
    CapExceeded, Perm, PermGroup, construct, lattice_dot, lattice_json, quotient_group, structure,
    subgroup_lattice, subgroup_lattice_naive, verify_against_engines, wreath_cyclic,
)
from chainforge.oracle.construct import alternating, cyclic, direct_product, symmetric
from chainforge.oracle.lattice import chain_tables, covering_edges_naive, indices_of, is_subset
from chainforge.oracle.structure import (
    SIMPLE_BY_ORDER, chief_series, is_soluble_subgroup, normal_chain_lengths, radical,
)


def test_perm_basics():
    a = Perm.from_cycles(4, [(0, 1, 2)])
    b = Perm.from_cycles(4, [(0, 1)])
    assert a.order() == 3 and b.order() == 2
    assert (a * a.inverse()).is_identity()
    G = PermGroup([a, b], degree=4)
    assert G.order == 6 and G.elements[0] == (0, 1, 2, 3)
    T = G.table
    for i in range(G.order):
        assert T[0, i] == i and T[i, G.inverses[i]] == 0


def test_table_is_associative():
    G = symmetric(4)
    T = G.table
    for a in range(0, 24, 5):
        for b in range(24):
            assert (T[T[a, b], :] == T[a, T[b, :]]).all()


def test_caps():
    with pytest.raises(CapExceeded):
        alternating(8)
    with pytest.raises(CapExceeded):
        construct(parse_group_id("A(9)"))


@pytest.mark.parametrize("text,n", [("A(4)", 10), ("A(5)", 59), ("S(4)", 30), ("D(12)", 16), ("C(6)", 4),
                                    ("C(30)", 8), ("S(5)", 156), ("L(2,7)", 179), ("A(6)", 501)])
def test_subgroup_counts(text, n):
    assert oracle_corpus.report(text).n_subgroups == n


@pytest.mark.parametrize("text", ["S(4)", "A(5)", "D(12)", "L(2,7)", "A(4)xC(2)"])
def test_class_route_matches_naive_route(text):
    G = construct(parse_group_id(text))
    L = subgroup_lattice(G)
    naive = subgroup_lattice_naive(G)
    assert L.subgroups == naive
    assert set(L.maximal_in) == covering_edges_naive(naive)


@pytest.mark.parametrize("text,l,lam", [("S(4)", 4, 3), ("A(5)", 4, 3), ("D(12)", 3, 3), ("C(6)", 2, 2),
                                        ("S(5)", 5, 4), ("L(2,7)", 5, 3), ("L(2,8)", 5, 3), ("A(6)", 5, 4),
                                        ("SL(2,5)", 5, 4), ("PGL(2,5)", 5, 4)])
def test_chain_extremes(text, l, lam):
    r = oracle_corpus.report(text)
    assert (r.l, r.lam) == (l, lam)


def test_structure_examples():
    s4 = oracle_corpus.report("S(4)")
    assert s4.chief_length == 3 and s4.soluble and not s4.supersoluble
    assert s4.radical_order == 24 and s4.socle_order == 4
    assert sorted(s4.composition_factors) == ["C(2)", "C(2)", "C(2)", "C(3)"]
    a5 = oracle_corpus.report("A(5)")
    assert a5.chief_length == 1 and not a5.soluble and a5.radical_order == 1
    assert a5.composition_factors == ("A(5)",)
    c30 = oracle_corpus.report("C(30)")
    assert c30.supersoluble and c30.cd == 0 and c30.chief_length == 3


def test_quotients():
    rep, L = oracle_corpus.oracle("S(4)")
    v4 = [i for i in L.normal_subgroups() if L.orders[i] == 4][0]
    Q = quotient_group(L.group, L.subgroups[v4])
    assert Q.order == 6 and not Q.is_abelian()
    rep, L = oracle_corpus.oracle("A(5)xC(2)")
    centre = [i for i in L.normal_subgroups() if L.orders[i] == 2][0]
    Q = quotient_group(L.group, L.subgroups[centre])
    assert Q.order == 60 and structure(Q).l == 4
    non_normal = [i for i in range(len(L)) if L.orders[i] == 2 and not L.is_normal(i)][0]
    with pytest.raises(ValueError):
        quotient_group(L.group, L.subgroups[non_normal])


def test_simple_orders_table():
    simple = {order(g): render(g) for g in simple_ids(q_max=100, n_max=8) if order(g) <= 5000}
    assert {k: render(v) for k, v in SIMPLE_BY_ORDER.items()} == simple


def test_huppert_matches_cyclic_chief_factors():
    for text in ["C(12)", "C(30)", "S(4)", "A(4)", "D(12)", "S(3)xS(3)", "C(2)xC(2)xC(2)"]:
        rep, L = oracle_corpus.oracle(text)
        series = chief_series(L)
        cyclic_chief = all(is_prime(L.orders[a] // L.orders[b]) for a, b in zip(series, series[1:]))
        assert rep.supersoluble == cyclic_chief, text


@pytest.mark.parametrize("text", oracle_corpus.CORPUS)
def test_corpus_invariants(text):
    rep, L = oracle_corpus.oracle(text)
    assert rep.l >= rep.lam
    if rep.soluble:
        assert rep.l == omega(rep.order) and rep.lam == rep.chief_length
    else:
        assert rep.lam >= rep.chief_length + 2 and rep.lam >= 3
    assert (rep.cd == 0) == rep.supersoluble
    # depth is monotone over quotients and subadditive over normal series
    longest, shortest = chain_tables(L)
    for n in L.normal_subgroups():
        if n in (L.top, L.bottom):
            continue
        q = structure(quotient_group(L.group, L.subgroups[n]))
        assert q.lam <= rep.lam <= shortest[n] + q.lam, (text, L.orders[n])
        assert longest[n] + q.l == rep.l


@pytest.mark.parametrize("whole,left,right", oracle_corpus.PRODUCTS)
def test_length_additive_on_products(whole, left, right):
    r = oracle_corpus.report
    assert r(whole).l == r(left).l + r(right).l


@pytest.mark.parametrize("g", ["A(5)", "S(4)", "D(12)", "A(4)", "L(2,7)"])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_depth_grows_by_one_with_prime_factor(g, p):
    r = oracle_corpus.report
    assert r(f"{g}xC({p})").lam == r(g).lam + 1


def test_wreath_depth_bound():
    for m, p in [(2, 2), (3, 3), (2, 3)]:
        rep = structure(wreath_cyclic(m, p))
        assert rep.order == m**p * p
        assert rep.lam >= oracle_corpus.report(f"C({m})").lam + 2


def test_radical_quotient_bound():
    for text in ["S(4)", "A(5)xC(2)", "D(12)xA(5)"]:
        rep, L = oracle_corpus.oracle(text)
        R = radical(L)
        assert L.orders[R] > 1 and is_soluble_subgroup(L, R)
        q = structure(quotient_group(L.group, L.subgroups[R]))
        assert q.l <= 10 * rep.cd


def test_automorphism_length_bound():
    assert oracle_corpus.report("S(5)").l <= 2 * oracle_corpus.report("A(5)").l


@pytest.mark.parametrize("text", oracle_corpus.CORPUS + ["D(12)xA(5)"])
def test_engines_agree(text):
    v = verify_against_engines(parse_group_id(text), oracle_corpus.report(text))
    assert v.ok, v.as_dict()
    assert not v.uncovered


def test_normal_chain_lengths():
    rep, L = oracle_corpus.oracle("S(4)")
    lengths = normal_chain_lengths(L)
    assert sorted(L.orders[n] for n in lengths) == [1, 4, 12, 24]
    assert lengths[L.top] == 3


def test_exports_are_string_valued():
    rep, L = oracle_corpus.oracle("S(4)")
    data = json.loads(lattice_json(L))
    assert data["order"] == "24" and len(data["subgroups"]) == 30
    assert all(isinstance(v, str) for s in data["subgroups"] for v in s.values())
    dot = lattice_dot(L)
    assert dot.startswith('digraph') and dot.count("->") == len(L.maximal_in)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 5, 6]), min_size=1, max_size=3))
def test_abelian_products_are_supersoluble(ns):
    G = direct_product([cyclic(n) for n in ns])
    L = subgroup_lattice(G)
    rep = structure(G, L)
    assert rep.supersoluble and rep.l == rep.lam == omega(G.order)
    for i in range(len(L)):
        assert L.is_normal(i)
        assert all(is_subset(L.subgroups[h], L.subgroups[k]) for h, k in L.maximal_in)
    assert len(indices_of(L.subgroups[L.top], G.order)) == G.order
