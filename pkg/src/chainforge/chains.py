"""Chain difference, chain ratio, their classification predicates and inequality checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .arithmetic import factorize, is_prime, omega, pm3_13_mod40
from .catalog import (
    AlmostSimpleExt, Alternating, Central, Cyclic, Dihedral, GroupId, LinearL, Product, ProjGL,
    SpecialLinear, Sporadic, Symmetric, UnsupportedFamily, ValueOrRange, is_simple, is_soluble,
    l2_parameter, normalize, order, out_order,
)
from .depth import InternalInconsistency, depth_of
from .length import length_of


@dataclass(frozen=True)
class RationalRange:
    low: Fraction
    high: Fraction | None

    @property
    def exact(self) -> bool:
        return self.high == self.low

    def render(self) -> str:
        if self.exact:
            return str(self.low)
        return f"[{self.low}, {'inf' if self.high is None else self.high}]"


@dataclass(frozen=True)
class ChainReport:
    group: GroupId
    length: ValueOrRange
    depth: ValueOrRange
    cd: ValueOrRange
    cr: RationalRange
    soluble: bool | None
    supersoluble: bool | None
    provenance: tuple[str, ...] = field(default=())

    @property
    def exact(self) -> bool:
        return self.length.exact and self.depth.exact


def cd_range(l: ValueOrRange, d: ValueOrRange) -> ValueOrRange:
    low = 0 if d.high is None else max(0, l.low - d.high)
    high = None if l.high is None else max(0, l.high - d.low)
    return ValueOrRange(low, high)


def cr_range(l: ValueOrRange, d: ValueOrRange) -> RationalRange:
    low = Fraction(1) if d.high is None else max(Fraction(1), Fraction(l.low, d.high))
    if d.low == 0:
        # trivial group: both are zero
        return RationalRange(Fraction(1), Fraction(1))
    high = None if l.high is None else Fraction(l.high, d.low)
    return RationalRange(low, high)


# ---------------------------------------------------------- structure of ids


def composition_factors(g: GroupId) -> list[GroupId]:
    g = normalize(g)
    if isinstance(g, Product):
        return [c for f in g.factors for c in composition_factors(f)]
    if isinstance(g, Cyclic):
        return [Cyclic(p) for p, e in factorize(g.n).factors for _ in range(e)]
    if isinstance(g, Dihedral):
        return [Cyclic(2)] + composition_factors(Cyclic(g.order // 2))
    if isinstance(g, Alternating) and g.n <= 4:
        return {3: [Cyclic(3)], 4: [Cyclic(2), Cyclic(2), Cyclic(3)]}[g.n]
    if isinstance(g, Symmetric):
        if g.n <= 4:
            return {2: [Cyclic(2)], 3: [Cyclic(3), Cyclic(2)],
                    4: [Cyclic(2), Cyclic(2), Cyclic(3), Cyclic(2)]}[g.n]
        return [Alternating(g.n), Cyclic(2)]
    if isinstance(g, Central):
        return [Cyclic(g.p), normalize(g.inner)]
    if isinstance(g, AlmostSimpleExt):
        return [normalize(g.inner), Cyclic(g.p)]
    if isinstance(g, SpecialLinear):
        d = math.gcd(g.n, g.q - (1 if g.sign == "+" else -1))
        return composition_factors(Cyclic(d)) + [normalize(LinearL(g.n, g.q, g.sign))]
    if isinstance(g, ProjGL):
        return [normalize(LinearL(2, g.q)), Cyclic(2)]
    return [g]


def nonabelian_factors(g: GroupId) -> list[GroupId]:
    return [c for c in composition_factors(g) if not isinstance(c, Cyclic)]


def radical_quotient(g: GroupId) -> GroupId | None:
    """G/R(G) as an id, or None when G is soluble."""
    g = normalize(g)
    if is_soluble(g):
        return None
    if isinstance(g, Product):
        parts = [radical_quotient(f) for f in g.factors]
        parts = [p for p in parts if p is not None]
        return parts[0] if len(parts) == 1 else Product(tuple(parts))
    if isinstance(g, (Central, SpecialLinear)):
        return nonabelian_factors(g)[0]
    return g


def is_supersoluble(g: GroupId) -> bool:
    g = normalize(g)
    if isinstance(g, Product):
        return all(is_supersoluble(f) for f in g.factors)
    if isinstance(g, (Cyclic, Dihedral)):
        return True
    if isinstance(g, Alternating):
        return g.n == 3
    if isinstance(g, Symmetric):
        return g.n <= 3
    return False


# ------------------------------------------------------ classification predicates


def _pm1(q: int) -> tuple[int, int]:
    return omega(q - 1), omega(q + 1)


def cd1_simple(g: GroupId) -> bool:
    """Simple groups of chain difference one."""
    q = l2_parameter(normalize(g))
    if q is None:
        return False
    if q in (4, 5, 9):
        return True
    if not is_prime(q):
        return False
    a, b = _pm1(q)
    if 3 <= min(a, b) and max(a, b) <= 4 and (q % 10 in (1, 9) or q % 8 in (1, 7)):
        return True
    return max(a, b) <= 3 and pm3_13_mod40(q)


def cd2_simple(g: GroupId) -> bool:
    """Simple groups of chain difference two."""
    g = normalize(g)
    if g in (Alternating(7), Sporadic("J1"), LinearL(3, 5, "-")):
        return True
    q = l2_parameter(g)
    if q is None:
        return False
    if q in (7, 8, 11, 27, 125):
        return True
    if not is_prime(q):
        return False
    a, b = _pm1(q)
    if max(a, b) == 4 and (min(a, b) == 2 or pm3_13_mod40(q)):
        return True
    return max(a, b) == 5 and min(a, b) >= 3 and not pm3_13_mod40(q)


def cr5over4_equality(g: GroupId) -> bool:
    """Simple groups with length 5 and depth 4, where the chain ratio bound is attained."""
    q = l2_parameter(normalize(g))
    if q is None:
        return False
    if q in (9, 19, 29):
        return True
    if not is_prime(q):
        return False
    a, b = _pm1(q)
    return max(a, b) == 4 and min(a, b) >= 3 and not pm3_13_mod40(q)


# ------------------------------------------------------------------- report


def report(g: GroupId) -> ChainReport:
    g = normalize(g)
    lr = length_of(g)
    dr = depth_of(g)
    l, d = lr.value, dr.value
    if d.low > l.low:
        l = ValueOrRange(d.low, l.high)
    if l.high is not None and d.high is not None and d.high > l.high:
        d = ValueOrRange(d.low, l.high)
    cd = cd_range(l, d)
    sol = is_soluble(g)
    sup = is_supersoluble(g)
    if sup and cd.exact and cd.value != 0:
        raise InternalInconsistency(f"{g.render()}: supersoluble but cd = {cd.render()}")
    if is_simple(g):
        _cross_check_simple(g, l, d, cd)
    prov = (f"length:{lr.provenance}", f"depth:{dr.provenance}")
    return ChainReport(g, l, d, cd, cr_range(l, d), sol, sup, prov)


def _cross_check_simple(g: GroupId, l: ValueOrRange, d: ValueOrRange, cd: ValueOrRange) -> None:
    name = g.render()
    if cd.high is not None and cd.high < 1:
        raise InternalInconsistency(f"{name}: non-abelian simple group with cd = 0")
    if not cd.exact:
        return
    for want, pred in ((1, cd1_simple), (2, cd2_simple)):
        if (cd.value == want) != pred(g):
            raise InternalInconsistency(
                f"{name}: cd = {cd.value} but the cd={want} classification says {pred(g)}")
    if l.exact and d.exact:
        attained = Fraction(l.value, d.value) == Fraction(5, 4)
        if attained != cr5over4_equality(g):
            raise InternalInconsistency(f"{name}: cr = {l.value}/{d.value} disagrees with the equality predicate")


# --------------------------------------------------------- inequality suite


@dataclass(frozen=True)
class CheckResult:
    check: str
    group: str
    status: str  # pass, fail or skip
    detail: str
    operands: dict = field(default_factory=dict)


def _get(facts: Mapping | None, key: str):
    return None if facts is None else facts.get(key)


def _exact_or(rng: ValueOrRange, oracle_value):
    if oracle_value is not None:
        return int(oracle_value)
    return rng.value if rng.exact else None


def inequality_suite(reports: Iterable[ChainReport],
                     oracle_facts: Mapping[str, Mapping] | None = None) -> list[CheckResult]:
    """Instantiate the structural inequalities for each report.

    `oracle_facts` maps a rendered group id to brute-force values (keys l, depth,
    radical_quotient_length, ss_length, factor_cd_sum, aut_length) that fill in
    operands the engines only know as ranges.
    """
    out: list[CheckResult] = []
    for r in reports:
        name = r.group.render()
        facts = _get(oracle_facts, name)
        l = _exact_or(r.length, _get(facts, "l"))
        d = _exact_or(r.depth, _get(facts, "depth"))
        cd = None if l is None or d is None else l - d
        ops = {"l": l, "depth": d, "cd": cd}

        def emit(check, ok, detail, **extra):
            status = "skip" if ok is None else ("pass" if ok else "fail")
            out.append(CheckResult(check, name, status, detail, {**ops, **extra}))

        simple = is_simple(r.group)
        if simple:
            if cd is None:
                emit("cr>=5/4", None, "length or depth is only a range")
                emit("l<=5cd", None, "length or depth is only a range")
            else:
                emit("cr>=5/4", Fraction(l, d) >= Fraction(5, 4), f"cr = {Fraction(l, d)}")
                eq = l == 5 * cd
                emit("l<=5cd", l <= 5 * cd and eq == cr5over4_equality(r.group),
                     f"l = {l}, 5cd = {5 * cd}, equality = {eq}")

        rq = _get(facts, "radical_quotient_length")
        if rq is None:
            quotient = radical_quotient(r.group)
            if quotient is None:
                rq = 0
            else:
                lq = length_of(quotient).value
                rq = lq.value if lq.exact else None
        if cd is None or rq is None:
            emit("l(G/R)<=10cd", None, "operands are only ranges")
        else:
            emit("l(G/R)<=10cd", rq <= 10 * cd, f"l(G/R) = {rq}, 10cd = {10 * cd}", radical_quotient_length=rq)
            trivial_radical = _get(facts, "radical_order")
            if trivial_radical is None:
                trivial_radical = 1 if radical_quotient(r.group) == r.group else None
            if trivial_radical == 1 and d:
                emit("cr>=10/9", Fraction(l, d) >= Fraction(10, 9), f"cr = {Fraction(l, d)}")

        ss = _get(facts, "ss_length")
        if ss is None:
            parts = [length_of(t).value for t in nonabelian_factors(r.group)]
            ss = sum(p.value for p in parts) if all(p.exact for p in parts) else None
        if cd is None or ss is None:
            emit("l(ss)<=5cd", None, "operands are only ranges")
        else:
            emit("l(ss)<=5cd", ss <= 5 * cd, f"l(ss) = {ss}, 5cd = {5 * cd}", ss_length=ss)

        fsum = _get(facts, "factor_cd_sum")
        if fsum is None:
            fsum = 0
            for t in nonabelian_factors(r.group):
                try:
                    sub = report(t).cd
                except LookupError:
                    fsum = None
                    break
                if not sub.exact:
                    fsum = None
                    break
                fsum += sub.value
        if cd is None or fsum is None:
            emit("cd>=sum cd(T_i)", None, "operands are only ranges")
        else:
            emit("cd>=sum cd(T_i)", cd >= fsum, f"cd = {cd}, sum = {fsum}", factor_cd_sum=fsum)

        if cd is not None and rq is not None:
            big = _get(facts, "radical_quotient_order")
            if big is None:
                quotient = radical_quotient(r.group)
                big = 1 if quotient is None else order(quotient)
            emit("Omega(G/R)<=100cd^2", omega(big) <= 100 * cd * cd,
                 f"Omega = {omega(big)}, 100cd^2 = {100 * cd * cd}")

        aut = _get(facts, "aut_length")
        if aut is None and simple and l is not None:
            try:
                aut = l + omega(out_order(r.group))
            except UnsupportedFamily:
                aut = None
        if simple or aut is not None:
            if aut is None or l is None:
                emit("l(Aut)<=2l", None, "automorphism group length unknown")
            else:
                emit("l(Aut)<=2l", aut <= 2 * l, f"l(Aut) = {aut}, 2l = {2 * l}", aut_length=aut)
    return out
