"""Payload builders shared by the command line and the HTTP service.

Every number leaves this module as a decimal string.
"""
from __future__ import annotations

import csv
import io
import json
import math
from importlib import resources
from typing import Iterable

from . import chains, depth, length, primes
from .arithmetic import factorize, is_prime
from .catalog import (
    Alternating, Central, GroupId, LinearL, SpecialLinear, Suzuki, Sporadic, l2_parameter, normalize,
    order, out_order, parse_group_id, prime_powers, simple_ids,
)

RULES: dict[str, str] = {
    "formula-an": "closed form for alternating groups from n and its binary digit sum",
    "formula-L2-even": "closed form for L2(q) with q even",
    "formula-L2-odd": "closed form for L2(q) with q an odd prime power",
    "formula-L2-prime": "closed form for L2(p) from Omega(p-1), Omega(p+1) and the S4/A5 congruences",
    "formula-U3-even": "closed form for U3(q) with q even",
    "formula-L3-even": "closed form for L3(q) with q even",
    "formula-Sz": "closed form for Suzuki groups",
    "tabulated": "value known for this specific group",
    "borel-p2-exact": "Borel subgroup count plus rank, exact in characteristic 2",
    "borel-lower-bound": "Borel subgroup count plus rank, a lower bound in odd characteristic",
    "soluble-omega": "soluble group: length equals Omega of the order",
    "additivity": "length is additive over normal series",
    "depth3-list": "membership in the list of simple groups of depth 3",
    "L2p-dichotomy": "L2(p) has depth 3 or 4 by a congruence and Omega(p+-1) test",
    "L2p3-dichotomy": "L2(p^3) has depth 3 or 4 by a primality test",
    "depth4-extension": "almost simple groups of depth 4 with a depth-4 socle",
    "soluble-maximal-depth3": "simple group with a soluble maximal subgroup of depth 3",
    "simple-maximal": "simple group with a simple maximal subgroup of depth 3",
    "subfield-upper": "upper bound from a subfield or parabolic chain",
    "soluble-chief": "soluble group: depth equals chief length",
    "prime-factor": "a central or direct factor of prime order adds one to the depth",
    "depth4-product": "T x T with T of depth 3 has depth 4",
    "insoluble-chief-bound": "insoluble group: depth is at least chief length plus two",
    "quotient-bound": "depth of an extension is at most the socle depth plus one",
    "almost-simple-depth3-socle": "almost simple group whose socle has depth 3",
}

CLASSIFY_MEANINGS = {
    "depth3": "simple groups of depth 3",
    "depth4-quasisimple": "quasisimple groups with nontrivial centre and depth 4",
    "table3": "almost simple groups T.p of depth 4 whose socle has depth 4",
    "table4": "simple groups with a soluble maximal subgroup of depth 3",
    "length<=9": "simple groups of length at most 9",
    "cd1": "simple groups of chain difference 1",
    "cd2": "simple groups of chain difference 2",
    "cr-equality": "simple groups of length 5 and depth 4",
    "subgroup-lattice": "values read off the complete subgroup lattice",
}

CLASSIFY_TAGS = ("depth3", "depth4-quasisimple", "table3", "table4", "length<=9", "cd1", "cd2",
                 "cr-equality")
TAG_ALIASES = {"length≤9": "length<=9", "length-le-9": "length<=9"}


def parse_count(text: str | int) -> int:
    """Integers written as 12345, 10^6 or 1e6."""
    if isinstance(text, int):
        return text
    s = str(text).strip().replace("_", "")
    if "^" in s:
        b, e = s.split("^", 1)
        return int(b) ** int(e)
    if "e" in s.lower() and s.lower().split("e")[0].isdigit():
        b, e = s.lower().split("e", 1)
        return int(b) * 10 ** int(e)
    return int(s)


def schema() -> dict:
    text = resources.files("chainforge").joinpath("schema/output.schema.json").read_text()
    return json.loads(text)


def record(command: str, query: dict, result, provenance: Iterable[str]) -> dict:
    return {"command": command, "query": query, "result": result, "provenance": list(provenance)}


def why(tags: Iterable[str]) -> list[dict]:
    out = []
    for t in dict.fromkeys(tags):
        kind, _, rule = t.rpartition(":")
        if kind == "primes":
            meaning = primes.FAMILY_DESCRIPTIONS.get(rule, "")
        elif kind in ("classify", "oracle"):
            meaning = CLASSIFY_MEANINGS.get(rule, "")
        else:
            meaning = RULES.get(rule, "")
        out.append({"rule": t, "meaning": meaning})
    return out


# ------------------------------------------------------------------ report


def report_result(g: GroupId) -> tuple[dict, list[str]]:
    r = chains.report(g)
    g = r.group
    res = {
        "group": g.render(),
        "order": str(order(g)),
        "l": r.length.render(),
        "lambda": r.depth.render(),
        "cd": r.cd.render(),
        "cr": r.cr.render(),
        "exact": r.exact,
        "soluble": r.soluble,
        "supersoluble": r.supersoluble,
    }
    return res, list(r.provenance)


# ---------------------------------------------------------------- classify


def _l2_witness(q: int) -> dict:
    return {
        "q": str(q), "q-1": factorize(q - 1).render(), "q+1": factorize(q + 1).render(),
        "q mod 8": str(q % 8), "q mod 10": str(q % 10), "q mod 40": str(q % 40),
    }


def _witness(g: GroupId) -> dict:
    q = l2_parameter(g)
    if q is not None:
        return _l2_witness(q)
    return {"order": factorize(order(g)).render()}


def _simple_scan(q_max: int, n_max: int, max_order: int | None, families: set[str] | None):
    for g in simple_ids(q_max=q_max, n_max=n_max, rank_q_max=min(q_max, 64), families=families):
        if max_order is not None and order(g) > max_order:
            continue
        yield g


def _bounds(q_max: int | None, n_max: int | None, max_order: int | None) -> tuple[int, int]:
    if max_order is not None:
        if q_max is None:
            q_max = int(round((2 * max_order) ** (1 / 3))) + 2
        if n_max is None:
            n = 5
            while math.factorial(n + 1) // 2 <= max_order:
                n += 1
            n_max = n
    return (q_max or 100), (n_max or 30)


FAMILY_KEYS = {"A": "A", "L2": "L2", "L": "L", "U": "U", "Sz": "Sz", "R": "R", "Spor": "Spor",
               "sporadic": "Spor", "alternating": "A"}


def classify_members(tag: str, q_max: int | None = None, n_max: int | None = None,
                     max_order: int | None = None, family: str | None = None,
                     l_value: int | None = None) -> list[dict]:
    tag = TAG_ALIASES.get(tag, tag)
    if tag not in CLASSIFY_TAGS:
        raise KeyError(f"unknown classification tag {tag!r}; known: {', '.join(CLASSIFY_TAGS)}")
    qm, nm = _bounds(q_max, n_max, max_order)
    fams = {FAMILY_KEYS.get(family, family)} if family else None
    out: list[dict] = []

    if tag == "depth4-quasisimple":
        for g in _quasisimple_ids(qm, nm):
            if max_order is not None and order(g) > max_order:
                continue
            if depth.quasisimple_depth4(g):
                out.append({"group": normalize(g).render(), "witnesses": _witness(_inner(g))})
        return out

    if tag == "table3":
        for t in _simple_scan(qm, nm, max_order, fams):
            for p in _ext_primes(t):
                if depth.table3_membership(t, p):
                    out.append({"group": f"{t.render()}.{p}", "socle": t.render(), "prime": str(p),
                                "witnesses": _witness(t)})
        return out

    for g in _simple_scan(qm, nm, max_order, fams):
        if fams == {"L2"} and not isinstance(g, LinearL):
            # L2(4), L2(5), L2(9) are reported as alternating groups
            continue
        member = None
        if tag == "depth3" and depth.depth3_simple(g):
            member = {}
        elif tag == "table4":
            desc = depth.table4_membership(g)
            if desc:
                member = {"soluble_maximal": desc}
        elif tag == "length<=9":
            v = length.short_group_length(g)
            if v is not None and (l_value is None or v == l_value):
                member = {"l": str(v)}
        elif tag == "cd1" and chains.cd1_simple(g):
            member = {}
        elif tag == "cd2" and chains.cd2_simple(g):
            member = {}
        elif tag == "cr-equality" and chains.cr5over4_equality(g):
            member = {}
        if member is not None:
            member = {"group": g.render(), **member, "witnesses": _witness(g)}
            out.append(member)
    return out


def _inner(g: GroupId) -> GroupId:
    if isinstance(g, Central):
        return g.inner
    if isinstance(g, SpecialLinear):
        return LinearL(g.n, g.q, g.sign)
    return g


def _quasisimple_ids(q_max: int, n_max: int):
    for q in prime_powers(5, q_max):
        if q % 2:
            yield SpecialLinear(2, q)
    for n in (3, 5, 7):
        for q in prime_powers(2, min(q_max, 64)):
            for sign, e in (("+", 1), ("-", -1)):
                if math.gcd(n, q - e) == n:
                    yield SpecialLinear(n, q, sign)
    for p in range(5, n_max + 1):
        if is_prime(p):
            yield Central(2, Alternating(p))
    yield Central(2, Suzuki(8))
    yield Central(2, Sporadic("B"))


def _ext_primes(t: GroupId) -> list[int]:
    try:
        n = out_order(t)
    except Exception:
        return []
    return [p for p in (2, 3, 5, 7) if n % p == 0]


# ------------------------------------------------------------------ primes


def primes_result(family: str, limit: int, jobs: int = 1, shards: int | None = None) -> dict:
    ps = primes.search(family, limit, jobs=jobs, shards=shards)
    rows = [{"p": str(p), "witnesses": primes.witnesses(family, p)} for p in ps]
    res = {"family": family, "condition": primes.FAMILY_DESCRIPTIONS.get(family, ""),
           "limit": str(limit), "count": str(len(ps)), "primes": rows}
    if family == "appendix":
        for row, p in zip(rows, ps):
            a, b = math.gcd(p - 1, 72), math.gcd(p + 1, 72)
            m = max(factorize(p - 1).omega, factorize(p + 1).omega)
            row["checks"] = {"gcd(p-1,72)": str(a), "gcd(p+1,72)": str(b),
                             "max Omega(p+-1)": str(m), "24 | p^2-1": (p * p - 1) % 24 == 0}
    return res


# ------------------------------------------------------------------- oracle


def oracle_result(g: GroupId, verify: bool = True, export: str | None = None) -> dict:
    from . import oracle

    rep, L = oracle.oracle_report(g)
    res = {"report": rep.as_dict()}
    if verify:
        res["verdict"] = oracle.verify_against_engines(g, rep).as_dict()
    if export:
        text = oracle.lattice_dot(L) if export.endswith(".dot") else oracle.lattice_json(L)
        with open(export, "w") as fh:
            fh.write(text)
        res["exported"] = export
    return res


# ---------------------------------------------------------------- rendering


def _flat(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flat(v, key + "."))
        elif isinstance(v, list):
            out[key] = ";".join(json.dumps(x, sort_keys=True) if isinstance(x, dict) else str(x) for x in v)
        else:
            out[key] = "" if v is None else str(v).lower() if isinstance(v, bool) else str(v)
    return out


def rows_of(rec: dict) -> list[dict]:
    res = rec["result"]
    for key in ("members", "primes"):
        if isinstance(res, dict) and isinstance(res.get(key), list):
            return [_flat(r) for r in res[key]]
    return [_flat(res)]


def to_csv(rec: dict) -> str:
    rows = rows_of(rec)
    keys = list(dict.fromkeys(k for r in rows for k in r))
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def to_text(rec: dict) -> str:
    res = rec["result"]
    lines = [f"{rec['command']}: " + " ".join(f"{k}={v}" for k, v in rec["query"].items() if v is not None)]
    if isinstance(res, dict) and isinstance(res.get("primes"), list):
        lines.append(", ".join(r["p"] for r in res["primes"]))
    elif isinstance(res, dict) and isinstance(res.get("members"), list):
        lines += [r["group"] for r in res["members"]]
    else:
        lines += [f"  {k}: {v}" for k, v in _flat(res).items()]
    if rec.get("provenance"):
        lines.append("rules: " + ", ".join(rec["provenance"]))
    return "\n".join(lines) + "\n"


def parse(text: str) -> GroupId:
    return parse_group_id(text)


__all__ = ["CLASSIFY_TAGS", "RULES", "classify_members", "oracle_result", "parse_count",
           "primes_result", "record", "report_result", "schema", "to_csv", "to_text", "why"]
