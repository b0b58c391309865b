"""Lengths of finite groups: closed forms, known values, Borel bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .arithmetic import binary_ones, congruence_class, is_prime, omega, pm3_13_mod40, prime_power
from .catalog import (
    AlmostSimpleExt, Alternating, Central, E6, GroupId, LinearL, POmega, Product, ProjGL,
    SpecialLinear, Sporadic, Suzuki, Symmetric, TITS, UnsupportedFamily, ValueOrRange,
    borel_order, is_lie_type, is_soluble, normalize, order, twisted_rank,
)


class NotCovered(LookupError):
    """No formula, bound or known value pins this quantity."""


@dataclass(frozen=True)
class LengthResult:
    value: ValueOrRange
    provenance: str


def _exact(v: int, tag: str) -> LengthResult:
    return LengthResult(ValueOrRange.exact_value(v), tag)


# known lengths not covered by a closed form
KNOWN_LENGTHS: dict[GroupId, int] = {
    Sporadic("J1"): 6,
    Sporadic("M11"): 7,
    Sporadic("M12"): 8,
    LinearL(3, 3, "-"): 7,
    LinearL(3, 5, "-"): 7,
    LinearL(3, 3, "+"): 8,
    LinearL(4, 2, "-"): 9,
    LinearL(3, 11, "-"): 9,
    LinearL(3, 13, "-"): 9,
    LinearL(3, 29, "-"): 9,
    LinearL(3, 7, "-"): 10,
}

# the Tits group has index 2 in 2F4(2), whose Borel subgroup has order 2^12 and rank 2
TITS_LENGTH_LOW = 12 + 2 - 1


def length_alternating(n: int) -> LengthResult:
    if n < 5:
        raise ValueError("length_alternating needs n >= 5; A3, A4 are soluble")
    return _exact((3 * n - 1) // 2 - binary_ones(n) - 1, "formula-an")


def _l2_prime_s(p: int) -> int:
    # 4 when S4 or A5 is maximal, 3 otherwise
    if congruence_class(p, 8, ("±1",)) or congruence_class(p, 10, ("±1",)):
        return 4
    return 3


L2_PRIME_EXCEPTIONS = {5: 4, 7: 5, 11: 5, 19: 5, 29: 5}


def length_L2(q: int) -> LengthResult:
    pf = prime_power(q) if isinstance(q, int) and q >= 2 else None
    if pf is None or q < 4:
        raise ValueError(f"length_L2 needs a prime power q >= 4, got {q}")
    p, f = pf
    if p == 2:
        return _exact(omega(q - 1) + f + 1, "formula-L2-even")
    if f >= 2:
        return _exact(max(omega(q - 1) + f, omega(q + 1) + 1), "formula-L2-odd")
    if q in L2_PRIME_EXCEPTIONS:
        return _exact(L2_PRIME_EXCEPTIONS[q], "formula-L2-prime")
    return _exact(1 + max(omega(q - 1), omega(q + 1), _l2_prime_s(q)), "formula-L2-prime")


def _two_exponent(q: int) -> int | None:
    if q >= 2 and q & (q - 1) == 0:
        return q.bit_length() - 1
    return None


def length_U3_even(q: int) -> LengthResult:
    f = _two_exponent(q)
    if f is None or f < 2:
        raise ValueError(f"length_U3_even needs q = 2^f with f >= 2, got {q}")
    return _exact(omega(q * q - 1) + 3 * f + 1 - omega(math.gcd(3, q + 1)), "formula-U3-even")


def length_L3_even(q: int) -> LengthResult:
    f = _two_exponent(q)
    if f is None:
        raise ValueError(f"length_L3_even needs q = 2^f, got {q}")
    return _exact(2 * omega(q - 1) + 3 * f + 2 - omega(math.gcd(3, q - 1)), "formula-L3-even")


def length_Sz(q: int) -> LengthResult:
    f = _two_exponent(q)
    if f is None or f < 3 or f % 2 == 0:
        raise ValueError(f"length_Sz needs q = 2^f with f >= 3 odd, got {q}")
    return _exact(omega(q - 1) + 2 * f + 1, "formula-Sz")


def _epsilon(g: GroupId) -> int:
    # the only family where the p = 2 formula picks up an extra step
    return 1 if isinstance(g, LinearL) and g.sign == "-" and g.n % 2 == 1 and g.q == 2 else 0


def length_bounds(g: GroupId) -> ValueOrRange:
    """Borel bound for a Lie-type id; exact when the field has characteristic 2."""
    if isinstance(g, LinearL) and g.n == 2:
        return length_L2(g.q).value
    if not is_lie_type(g):
        raise UnsupportedFamily(f"{g.render()} is not of Lie type")
    low = omega(borel_order(g)) + twisted_rank(g)
    p, _ = prime_power(g.q)
    if p == 2:
        return ValueOrRange.exact_value(low + _epsilon(g))
    return ValueOrRange(low, None)


# ---------------------------------------------------------------- table of short groups


def _l2_table_length(q: int) -> int | None:
    v = length_L2(q).value.value
    return v if v <= 9 else None


def u3_length9_condition(q: int) -> bool:
    """Odd-prime U3(q) rows of the length-9 line of the short-group table."""
    if not is_prime(q):
        return False
    return (omega(q - 1) == 3 and omega(q + 1) == 3 and omega(q * q - q + 1) <= 8
            and q % 3 == 2 and pm3_13_mod40(q))


def short_group_length(g: GroupId) -> int | None:
    """Length of a canonical simple id if it is listed among the simple groups of length <= 9."""
    if isinstance(g, Alternating):
        return {5: 4, 6: 5, 7: 6, 8: 9}.get(g.n)
    if isinstance(g, LinearL) and g.n == 2:
        return _l2_table_length(g.q)
    if g in KNOWN_LENGTHS and KNOWN_LENGTHS[g] <= 9:
        return KNOWN_LENGTHS[g]
    if g == Suzuki(8):
        return 8
    if g == LinearL(3, 4):
        return 9
    if isinstance(g, LinearL) and g.sign == "-" and g.n == 3:
        if g.q == 4:
            return 9
        if u3_length9_condition(g.q):
            return 9
    return None


# ------------------------------------------------------------------- dispatch


def _soluble_length(g: GroupId) -> LengthResult:
    return _exact(omega(order(g)), "soluble-omega")


def _simple_length(g: GroupId) -> LengthResult:
    if isinstance(g, Alternating):
        return length_alternating(g.n)
    if g in KNOWN_LENGTHS:
        return _exact(KNOWN_LENGTHS[g], "tabulated")
    if g == TITS:
        return LengthResult(ValueOrRange(TITS_LENGTH_LOW, None), "borel-lower-bound")
    if isinstance(g, Sporadic):
        raise NotCovered(f"no length for {g.render()} is pinned")
    if isinstance(g, LinearL) and g.n == 2:
        return length_L2(g.q)
    if isinstance(g, LinearL) and g.n == 3 and g.q % 2 == 0:
        return length_U3_even(g.q) if g.sign == "-" else length_L3_even(g.q)
    if isinstance(g, Suzuki):
        return length_Sz(g.q)
    if isinstance(g, POmega) or (isinstance(g, E6) and g.sign == "-"):
        raise NotCovered(f"no length formula or bound for {g.render()}")
    try:
        rng = length_bounds(g)
    except UnsupportedFamily as exc:
        raise NotCovered(str(exc)) from exc
    if rng.exact:
        return LengthResult(rng, "borel-p2-exact")
    listed = short_group_length(g)
    if listed is not None:
        return _exact(listed, "tabulated")
    # anything outside the short-group table has length at least 10
    return LengthResult(ValueOrRange(max(rng.low, 10), None), "borel-lower-bound")


def length_of(g: GroupId) -> LengthResult:
    g = normalize(g)
    if isinstance(g, Product):
        parts = [length_of(f) for f in g.factors]
        total = parts[0].value
        for r in parts[1:]:
            total = total + r.value
        return LengthResult(total, "additivity")
    if is_soluble(g):
        return _soluble_length(g)
    if isinstance(g, Symmetric):
        return LengthResult(length_alternating(g.n).value.shift(1), "additivity")
    if isinstance(g, Central):
        return LengthResult(length_of(g.inner).value.shift(1), "additivity")
    if isinstance(g, AlmostSimpleExt):
        return LengthResult(length_of(g.inner).value.shift(1), "additivity")
    if isinstance(g, SpecialLinear):
        d = math.gcd(g.n, g.q - (1 if g.sign == "+" else -1))
        return LengthResult(length_of(LinearL(g.n, g.q, g.sign)).value.shift(omega(d)), "additivity")
    if isinstance(g, ProjGL):
        return LengthResult(length_L2(g.q).value.shift(1), "additivity")
    return _simple_length(g)


__all__ = [
    "LengthResult", "NotCovered", "length_alternating", "length_L2", "length_U3_even",
    "length_L3_even", "length_Sz", "length_bounds", "length_of", "short_group_length",
    "u3_length9_condition", "KNOWN_LENGTHS",
]
