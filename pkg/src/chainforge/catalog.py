"""Symbolic group identifiers: grammar, validity, orders, Borel orders, ranks."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterator

from .arithmetic import exact_root, is_prime, prime_power

INF = None  # open upper end of a range


class GroupIdError(ValueError):
    """Raised for unparseable or invalid identifiers; kind is 'syntax' or 'validity'."""

    def __init__(self, message: str, kind: str = "validity"):
        super().__init__(message)
        self.kind = kind


class UnsupportedFamily(ValueError):
    pass


@dataclass(frozen=True)
class ValueOrRange:
    low: int
    high: int | None  # None means unbounded above

    def __post_init__(self):
        if self.high is not None and self.low > self.high:
            raise ValueError(f"empty range [{self.low}, {self.high}]")

    @classmethod
    def exact_value(cls, v: int) -> "ValueOrRange":
        return cls(v, v)

    @property
    def exact(self) -> bool:
        return self.high == self.low

    @property
    def kind(self) -> str:
        return "exact" if self.exact else "range"

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError("range has no single value")
        return self.low

    def contains(self, v: int) -> bool:
        return v >= self.low and (self.high is None or v <= self.high)

    def __add__(self, other: "ValueOrRange") -> "ValueOrRange":
        high = None if self.high is None or other.high is None else self.high + other.high
        return ValueOrRange(self.low + other.low, high)

    def shift(self, k: int) -> "ValueOrRange":
        return ValueOrRange(self.low + k, None if self.high is None else self.high + k)

    def render(self) -> str:
        if self.exact:
            return str(self.low)
        return f"[{self.low}, {'inf' if self.high is None else self.high}]"


# ---------------------------------------------------------------- identifiers


class GroupId:
    def render(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Alternating(GroupId):
    n: int

    def render(self):
        return f"A({self.n})"


@dataclass(frozen=True)
class Symmetric(GroupId):
    n: int

    def render(self):
        return f"S({self.n})"


@dataclass(frozen=True)
class Cyclic(GroupId):
    n: int

    def render(self):
        return f"C({self.n})"


@dataclass(frozen=True)
class Dihedral(GroupId):
    order: int  # order, not half-order

    def render(self):
        return f"D({self.order})"


@dataclass(frozen=True)
class LinearL(GroupId):
    """L_n(q) for sign '+', U_n(q) for sign '-'."""

    n: int
    q: int
    sign: str = "+"

    def render(self):
        return f"{'L' if self.sign == '+' else 'U'}({self.n},{self.q})"


@dataclass(frozen=True)
class SpecialLinear(GroupId):
    """SL_n(q) / SU_n(q); a central extension of LinearL by gcd(n, q - sign)."""

    n: int
    q: int
    sign: str = "+"

    def render(self):
        return f"{'SL' if self.sign == '+' else 'SU'}({self.n},{self.q})"


@dataclass(frozen=True)
class ProjGL(GroupId):
    q: int

    def render(self):
        return f"PGL(2,{self.q})"


@dataclass(frozen=True)
class PSp(GroupId):
    dim: int
    q: int

    def render(self):
        return f"PSp({self.dim},{self.q})"


@dataclass(frozen=True)
class Suzuki(GroupId):
    q: int

    def render(self):
        return f"Sz({self.q})"


@dataclass(frozen=True)
class Ree3(GroupId):
    q: int

    def render(self):
        return f"R({self.q})"


@dataclass(frozen=True)
class TD4(GroupId):
    q: int

    def render(self):
        return f"TD4({self.q})"


@dataclass(frozen=True)
class TF4(GroupId):
    q: int

    def render(self):
        return f"TF4({self.q})"


@dataclass(frozen=True)
class G2(GroupId):
    q: int

    def render(self):
        return f"G2({self.q})"


@dataclass(frozen=True)
class E6(GroupId):
    q: int
    sign: str = "+"

    def render(self):
        return f"{'E6' if self.sign == '+' else '2E6'}({self.q})"


@dataclass(frozen=True)
class E7(GroupId):
    q: int

    def render(self):
        return f"E7({self.q})"


@dataclass(frozen=True)
class E8(GroupId):
    q: int

    def render(self):
        return f"E8({self.q})"


@dataclass(frozen=True)
class POmega(GroupId):
    sign: str  # '+', '-', or '0' for odd dimension
    dim: int
    q: int

    def render(self):
        return f"O({self.sign},{self.dim},{self.q})"


@dataclass(frozen=True)
class Sporadic(GroupId):
    name: str

    def render(self):
        return TITS_TOKEN if self.name == "Tits" else self.name


@dataclass(frozen=True)
class Product(GroupId):
    factors: tuple

    def render(self):
        return "x".join(f.render() for f in self.factors)


@dataclass(frozen=True)
class Central(GroupId):
    """p.T, a quasisimple central extension with centre of prime order p."""

    p: int
    inner: GroupId

    def render(self):
        return f"{self.p}.{self.inner.render()}"


def Quasisimple2(inner: GroupId) -> Central:
    return Central(2, inner)


@dataclass(frozen=True)
class AlmostSimpleExt(GroupId):
    """T.p, an almost simple group with socle T and quotient of prime order p."""

    inner: GroupId
    p: int

    def render(self):
        return f"{self.inner.render()}.{self.p}"


TITS_TOKEN = "TF4(2)'"
TITS = Sporadic("Tits")

SPORADIC_FACTORS: dict[str, dict[int, int]] = {
    "M11": {2: 4, 3: 2, 5: 1, 11: 1},
    "M12": {2: 6, 3: 3, 5: 1, 11: 1},
    "M22": {2: 7, 3: 2, 5: 1, 7: 1, 11: 1},
    "M23": {2: 7, 3: 2, 5: 1, 7: 1, 11: 1, 23: 1},
    "M24": {2: 10, 3: 3, 5: 1, 7: 1, 11: 1, 23: 1},
    "J1": {2: 3, 3: 1, 5: 1, 7: 1, 11: 1, 19: 1},
    "J2": {2: 7, 3: 3, 5: 2, 7: 1},
    "J3": {2: 7, 3: 5, 5: 1, 17: 1, 19: 1},
    "J4": {2: 21, 3: 3, 5: 1, 7: 1, 11: 3, 23: 1, 29: 1, 31: 1, 37: 1, 43: 1},
    "HS": {2: 9, 3: 2, 5: 3, 7: 1, 11: 1},
    "McL": {2: 7, 3: 6, 5: 3, 7: 1, 11: 1},
    "Suz": {2: 13, 3: 7, 5: 2, 7: 1, 11: 1, 13: 1},
    "He": {2: 10, 3: 3, 5: 2, 7: 3, 17: 1},
    "Ly": {2: 8, 3: 7, 5: 6, 7: 1, 11: 1, 31: 1, 37: 1, 67: 1},
    "Ru": {2: 14, 3: 3, 5: 3, 7: 1, 13: 1, 29: 1},
    "O'N": {2: 9, 3: 4, 5: 1, 7: 3, 11: 1, 19: 1, 31: 1},
    "Co1": {2: 21, 3: 9, 5: 4, 7: 2, 11: 1, 13: 1, 23: 1},
    "Co2": {2: 18, 3: 6, 5: 3, 7: 1, 11: 1, 23: 1},
    "Co3": {2: 10, 3: 7, 5: 3, 7: 1, 11: 1, 23: 1},
    "Fi22": {2: 17, 3: 9, 5: 2, 7: 1, 11: 1, 13: 1},
    "Fi23": {2: 18, 3: 13, 5: 2, 7: 1, 11: 1, 13: 1, 17: 1, 23: 1},
    "Fi24'": {2: 21, 3: 16, 5: 2, 7: 3, 11: 1, 13: 1, 17: 1, 23: 1, 29: 1},
    "HN": {2: 14, 3: 6, 5: 6, 7: 1, 11: 1, 19: 1},
    "Th": {2: 15, 3: 10, 5: 3, 7: 2, 13: 1, 19: 1, 31: 1},
    "B": {2: 41, 3: 13, 5: 6, 7: 2, 11: 1, 13: 1, 17: 1, 19: 1, 23: 1, 31: 1, 47: 1},
    "M": {2: 46, 3: 20, 5: 9, 7: 6, 11: 2, 13: 3, 17: 1, 19: 1, 23: 1, 29: 1, 31: 1,
          41: 1, 47: 1, 59: 1, 71: 1},
    "Tits": {2: 11, 3: 3, 5: 2, 13: 1},
}
SPORADIC_NAMES = tuple(n for n in SPORADIC_FACTORS if n != "Tits")
SPORADIC_OUT = {
    "M11": 1, "M12": 2, "M22": 2, "M23": 1, "M24": 1, "J1": 1, "J2": 2, "J3": 2, "J4": 1,
    "HS": 2, "McL": 2, "Suz": 2, "He": 2, "Ly": 1, "Ru": 1, "O'N": 2, "Co1": 1, "Co2": 1,
    "Co3": 1, "Fi22": 2, "Fi23": 1, "Fi24'": 2, "HN": 2, "Th": 1, "B": 1, "M": 1, "Tits": 2,
}

# --------------------------------------------------------------------- parsing

_CALL = re.compile(r"^([A-Za-z][A-Za-z0-9]*)\(([^()]*)\)(')?$")


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise GroupIdError(f"unbalanced parentheses in {text!r}", "syntax")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise GroupIdError(f"unbalanced parentheses in {text!r}", "syntax")
    parts.append("".join(cur))
    return parts


def _ints(args: str, count: int, text: str) -> list[int]:
    items = [a.strip() for a in args.split(",")]
    if len(items) != count or not all(re.fullmatch(r"\d+", a) for a in items):
        raise GroupIdError(f"expected {count} integer argument(s) in {text!r}", "syntax")
    return [int(a) for a in items]


def _pp(q: int, text: str) -> tuple[int, int]:
    pf = prime_power(q)
    if pf is None:
        raise GroupIdError(f"{q} is not a prime power in {text!r}")
    return pf


def _parse_term(text: str) -> GroupId:
    m = re.fullmatch(r"(\d+)\.(.+)", text)
    if m:
        return Central(int(m.group(1)), _parse_term(m.group(2)))
    m = re.fullmatch(r"(.+)\.(\d+)", text)
    if m:
        return AlmostSimpleExt(_parse_term(m.group(1)), int(m.group(2)))
    if text == TITS_TOKEN:
        return TITS
    if text in SPORADIC_NAMES:
        return Sporadic(text)
    m = _CALL.match(text)
    if not m:
        raise GroupIdError(f"cannot parse group id {text!r}", "syntax")
    fam, args, prime = m.group(1), m.group(2), m.group(3)
    if fam == "O":
        items = [a.strip() for a in args.split(",")]
        if len(items) != 3 or items[0] not in ("+", "-", "0") or not all(i.isdigit() for i in items[1:]):
            raise GroupIdError(f"expected O(eps,dim,q) in {text!r}", "syntax")
        g: GroupId = POmega(items[0], int(items[1]), int(items[2]))
    elif fam in ("A", "S", "C", "D", "Sz", "R", "G2", "TD4", "TF4", "E6", "2E6", "E7", "E8"):
        (v,) = _ints(args, 1, text)
        g = {
            "A": Alternating, "S": Symmetric, "C": Cyclic, "D": Dihedral, "Sz": Suzuki,
            "R": Ree3, "G2": G2, "TD4": TD4, "TF4": TF4, "E7": E7, "E8": E8,
        }.get(fam, None)(v) if fam not in ("E6", "2E6") else E6(v, "+" if fam == "E6" else "-")
    elif fam in ("L", "U", "SL", "SU", "PSp", "PGL"):
        n, q = _ints(args, 2, text)
        if fam == "L":
            g = LinearL(n, q, "+")
        elif fam == "U":
            g = LinearL(n, q, "-")
        elif fam == "SL":
            g = SpecialLinear(n, q, "+")
        elif fam == "SU":
            g = SpecialLinear(n, q, "-")
        elif fam == "PSp":
            g = PSp(n, q)
        else:
            if n != 2:
                raise GroupIdError("only PGL(2,q) is supported", "validity")
            g = ProjGL(q)
    else:
        raise GroupIdError(f"unknown family {fam!r} in {text!r}", "syntax")
    if prime:
        return _derived(g, text)
    return g


def _derived(g: GroupId, text: str) -> GroupId:
    if g == G2(2):
        return LinearL(3, 3, "-")
    if g == Ree3(3):
        return LinearL(2, 8, "+")
    if g == TF4(2):
        return TITS
    if g == PSp(4, 2):
        return Alternating(6)
    raise GroupIdError(f"no derived-subgroup token {text!r}", "validity")


def parse_group_id(text: str) -> GroupId:
    if not isinstance(text, str):
        raise GroupIdError("group id must be a string", "syntax")
    s = "".join(text.split())
    if not s:
        raise GroupIdError("empty group id", "syntax")
    parts = _split_top(s, "x")
    if any(not p for p in parts):
        raise GroupIdError(f"empty product factor in {text!r}", "syntax")
    terms = [_parse_term(p) for p in parts]
    g = terms[0] if len(terms) == 1 else Product(tuple(terms))
    validate(g)
    return g


def render(g: GroupId) -> str:
    return g.render()


# ------------------------------------------------------------------- validity


def validate(g: GroupId) -> None:
    def bad(msg):
        raise GroupIdError(f"{g.render()}: {msg}")

    if isinstance(g, Alternating):
        if g.n < 3:
            bad("A(n) needs n >= 3")
    elif isinstance(g, Symmetric):
        if g.n < 2:
            bad("S(n) needs n >= 2")
    elif isinstance(g, Cyclic):
        if g.n < 1:
            bad("C(n) needs n >= 1")
    elif isinstance(g, Dihedral):
        if g.order < 4 or g.order % 2:
            bad("D(m) needs an even order m >= 4")
    elif isinstance(g, (LinearL, SpecialLinear)):
        _pp(g.q, g.render())
        if g.sign == "+":
            if g.n < 2 or (g.n, g.q) in ((2, 2), (2, 3)):
                bad("not quasisimple (n >= 2 and (n,q) not in {(2,2),(2,3)})")
        else:
            if g.n < 2 or (g.n, g.q) in ((2, 2), (2, 3), (3, 2)):
                bad("not quasisimple")
    elif isinstance(g, ProjGL):
        _pp(g.q, g.render())
        if g.q < 4:
            bad("PGL(2,q) needs q >= 4")
    elif isinstance(g, PSp):
        _pp(g.q, g.render())
        if g.dim < 4 or g.dim % 2:
            bad("PSp(n,q) needs even n >= 4")
        if (g.dim, g.q) == (4, 2):
            bad("PSp(4,2) is not simple; use S(6) or PSp(4,2)'")
    elif isinstance(g, Suzuki):
        f = _two_power(g.q)
        if f is None or f < 3 or f % 2 == 0:
            bad("Sz(q) needs q = 2^f with f >= 3 odd")
    elif isinstance(g, Ree3):
        pf = prime_power(g.q)
        if pf is None or pf[0] != 3 or pf[1] % 2 == 0:
            bad("R(q) needs q = 3^f with f odd")
    elif isinstance(g, TF4):
        f = _two_power(g.q)
        if f is None or f % 2 == 0:
            bad("TF4(q) needs q = 2^f with f odd")
    elif isinstance(g, (G2, TD4, E6, E7, E8)):
        _pp(g.q, g.render())
    elif isinstance(g, POmega):
        pf = _pp(g.q, g.render())
        if g.sign == "0":
            if g.dim < 7 or g.dim % 2 == 0 or pf[0] == 2:
                bad("O(0,n,q) needs odd n >= 7 and odd q")
        elif g.dim < 8 or g.dim % 2:
            bad("O(+/-,n,q) needs even n >= 8")
    elif isinstance(g, Sporadic):
        if g.name not in SPORADIC_FACTORS:
            bad("unknown sporadic group")
    elif isinstance(g, Product):
        if len(g.factors) < 2:
            bad("a product needs at least two factors")
        for f in g.factors:
            validate(f)
    elif isinstance(g, Central):
        if not is_prime(g.p):
            bad("central factor must have prime order")
        validate(g.inner)
        if not is_simple(normalize(g.inner)):
            bad("p.T needs a non-abelian simple T")
    elif isinstance(g, AlmostSimpleExt):
        if not is_prime(g.p):
            bad("extension degree must be prime")
        validate(g.inner)
        if not is_simple(normalize(g.inner)):
            bad("T.p needs a non-abelian simple T")
        try:
            out = out_order(g.inner)
        except UnsupportedFamily:
            out = None
        if out is not None and out % g.p:
            bad(f"|Out(T)| = {out} is not divisible by {g.p}")
    else:
        raise GroupIdError(f"unknown identifier type {type(g).__name__}")


def _two_power(q: int) -> int | None:
    if q >= 2 and q & (q - 1) == 0:
        return q.bit_length() - 1
    return None


# --------------------------------------------------------------- normalization

_ALIASES: dict[GroupId, GroupId] = {
    LinearL(2, 4): Alternating(5),
    LinearL(2, 5): Alternating(5),
    LinearL(3, 2): LinearL(2, 7),
    LinearL(2, 9): Alternating(6),
    LinearL(4, 2): Alternating(8),
    PSp(4, 3): LinearL(4, 2, "-"),
}


def normalize(g: GroupId) -> GroupId:
    """Map an identifier to the canonical member of its isomorphism class."""
    if isinstance(g, LinearL) and g.sign == "-" and g.n == 2:
        g = LinearL(2, g.q, "+")
    if isinstance(g, SpecialLinear):
        if g.sign == "-" and g.n == 2:
            g = SpecialLinear(2, g.q, "+")
        d = math.gcd(g.n, g.q - (1 if g.sign == "+" else -1))
        if d == 1:
            return normalize(LinearL(g.n, g.q, g.sign))
        if g == SpecialLinear(2, 4):
            return Alternating(5)
        return g
    if isinstance(g, ProjGL):
        if g.q % 2 == 0:
            return normalize(LinearL(2, g.q))
        if g.q == 5:
            return Symmetric(5)
        return g
    if isinstance(g, G2) and g.q == 2:
        return AlmostSimpleExt(LinearL(3, 3, "-"), 2)
    if isinstance(g, Ree3) and g.q == 3:
        return AlmostSimpleExt(LinearL(2, 8), 3)
    if isinstance(g, TF4) and g.q == 2:
        return AlmostSimpleExt(TITS, 2)
    if isinstance(g, Product):
        flat: list[GroupId] = []
        for f in g.factors:
            f = normalize(f)
            flat.extend(f.factors if isinstance(f, Product) else (f,))
        return Product(tuple(flat))
    if isinstance(g, Central):
        inner = normalize(g.inner)
        q = l2_parameter(inner)
        if g.p == 2 and q is not None and q % 2 == 1:
            return SpecialLinear(2, q)
        return Central(g.p, inner)
    if isinstance(g, AlmostSimpleExt):
        inner = normalize(g.inner)
        if g.p == 2 and isinstance(inner, Alternating) and inner.n != 6:
            return Symmetric(inner.n)
        if g.p == 2 and isinstance(inner, LinearL) and inner.n == 2 and is_prime(inner.q):
            return normalize(ProjGL(inner.q))
        return AlmostSimpleExt(inner, g.p)
    return _ALIASES.get(g, g)


def l2_parameter(g: GroupId) -> int | None:
    """q such that the canonical id g is isomorphic to L_2(q), else None."""
    if g == Alternating(5):
        return 5
    if g == Alternating(6):
        return 9
    if isinstance(g, LinearL) and g.n == 2:
        return g.q
    return None


# ---------------------------------------------------------------- predicates


def is_simple(g: GroupId) -> bool:
    """Non-abelian simple (after normalization)."""
    g = normalize(g)
    if isinstance(g, Alternating):
        return g.n >= 5
    if isinstance(g, (LinearL, PSp, Suzuki, TD4, E6, E7, E8, POmega, Sporadic)):
        return True
    if isinstance(g, Ree3):
        return g.q > 3
    if isinstance(g, G2):
        return g.q > 2
    if isinstance(g, TF4):
        return g.q > 2
    return False


def is_soluble(g: GroupId) -> bool:
    g = normalize(g)
    if isinstance(g, (Cyclic, Dihedral)):
        return True
    if isinstance(g, (Alternating, Symmetric)):
        return g.n <= 4
    if isinstance(g, Product):
        return all(is_soluble(f) for f in g.factors)
    return False


def is_lie_type(g: GroupId) -> bool:
    return isinstance(g, (LinearL, PSp, Suzuki, Ree3, TD4, TF4, G2, E6, E7, E8, POmega))


def field_parameters(g: GroupId) -> tuple[int, int]:
    """(p, f) with q = p^f for a Lie-type id."""
    q = getattr(g, "q", None)
    if q is None or not is_lie_type(g):
        raise UnsupportedFamily(f"{g.render()} is not of Lie type")
    return prime_power(q)


# --------------------------------------------------------------------- orders


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def order(g: GroupId) -> int:
    if isinstance(g, Alternating):
        return math.factorial(g.n) // 2
    if isinstance(g, Symmetric):
        return math.factorial(g.n)
    if isinstance(g, Cyclic):
        return g.n
    if isinstance(g, Dihedral):
        return g.order
    if isinstance(g, LinearL):
        n, q = g.n, g.q
        if g.sign == "+":
            return q ** (n * (n - 1) // 2) * _prod(q**i - 1 for i in range(2, n + 1)) // math.gcd(n, q - 1)
        return q ** (n * (n - 1) // 2) * _prod(q**i - (-1) ** i for i in range(2, n + 1)) // math.gcd(n, q + 1)
    if isinstance(g, SpecialLinear):
        d = math.gcd(g.n, g.q - (1 if g.sign == "+" else -1))
        return order(LinearL(g.n, g.q, g.sign)) * d
    if isinstance(g, ProjGL):
        return order(LinearL(2, g.q)) * math.gcd(2, g.q - 1)
    if isinstance(g, PSp):
        m, q = g.dim // 2, g.q
        return q ** (m * m) * _prod(q ** (2 * i) - 1 for i in range(1, m + 1)) // math.gcd(2, q - 1)
    if isinstance(g, Suzuki):
        q = g.q
        return q**2 * (q**2 + 1) * (q - 1)
    if isinstance(g, Ree3):
        q = g.q
        return q**3 * (q**3 + 1) * (q - 1)
    if isinstance(g, TD4):
        q = g.q
        return q**12 * (q**8 + q**4 + 1) * (q**6 - 1) * (q**2 - 1)
    if isinstance(g, TF4):
        q = g.q
        return q**12 * (q**6 + 1) * (q**4 - 1) * (q**3 + 1) * (q - 1)
    if isinstance(g, G2):
        q = g.q
        return q**6 * (q**6 - 1) * (q**2 - 1)
    if isinstance(g, E6):
        q, e = g.q, (1 if g.sign == "+" else -1)
        return (q**36 * (q**12 - 1) * (q**9 - e) * (q**8 - 1) * (q**6 - 1) * (q**5 - e) * (q**2 - 1)
                // math.gcd(3, q - e))
    if isinstance(g, E7):
        q = g.q
        return q**63 * _prod(q**i - 1 for i in (2, 6, 8, 10, 12, 14, 18)) // math.gcd(2, q - 1)
    if isinstance(g, E8):
        q = g.q
        return q**120 * _prod(q**i - 1 for i in (2, 8, 12, 14, 18, 20, 24, 30))
    if isinstance(g, POmega):
        q = g.q
        if g.sign == "0":
            m = (g.dim - 1) // 2
            return q ** (m * m) * _prod(q ** (2 * i) - 1 for i in range(1, m + 1)) // 2
        m, e = g.dim // 2, (1 if g.sign == "+" else -1)
        return (q ** (m * (m - 1)) * (q**m - e) * _prod(q ** (2 * i) - 1 for i in range(1, m))
                // math.gcd(4, q**m - e))
    if isinstance(g, Sporadic):
        return _prod(p**e for p, e in SPORADIC_FACTORS[g.name].items())
    if isinstance(g, Product):
        return _prod(order(f) for f in g.factors)
    if isinstance(g, Central):
        return g.p * order(g.inner)
    if isinstance(g, AlmostSimpleExt):
        return g.p * order(g.inner)
    raise GroupIdError(f"unknown identifier {g!r}")


def borel_order(g: GroupId) -> int:
    """Order of a Borel subgroup for the supported Lie-type families."""
    if isinstance(g, LinearL):
        n, q = g.n, g.q
        if g.sign == "+":
            r = n - 1
            return q ** (r * (r + 1) // 2) * (q - 1) ** r // math.gcd(n, q - 1)
        r = n // 2
        if n % 2:
            return q ** (r * (2 * r + 1)) * (q * q - 1) ** r // math.gcd(n, q + 1)
        # even dimension: the split torus of SU_{2r}(q) has order (q^2-1)^r / (q+1)
        return q ** (r * (2 * r - 1)) * (q * q - 1) ** r // ((q + 1) * math.gcd(n, q + 1))
    if isinstance(g, PSp):
        r, q = g.dim // 2, g.q
        return q ** (r * r) * (q - 1) ** r // math.gcd(2, q - 1)
    if isinstance(g, Suzuki):
        return g.q**2 * (g.q - 1)
    if isinstance(g, Ree3):
        return g.q**3 * (g.q - 1)
    if isinstance(g, G2):
        return g.q**6 * (g.q - 1) ** 2
    if isinstance(g, TD4):
        return g.q**12 * (g.q**3 - 1) * (g.q - 1)
    if isinstance(g, TF4) and g.q > 2:
        return g.q**12 * (g.q - 1) ** 2
    if isinstance(g, E6) and g.sign == "+":
        return g.q**36 * (g.q - 1) ** 6 // math.gcd(3, g.q - 1)
    if isinstance(g, E7):
        return g.q**63 * (g.q - 1) ** 7 // math.gcd(2, g.q - 1)
    if isinstance(g, E8):
        return g.q**120 * (g.q - 1) ** 8
    raise UnsupportedFamily(f"no Borel order for {g.render()}")


def twisted_rank(g: GroupId) -> int:
    if isinstance(g, LinearL):
        return g.n - 1 if g.sign == "+" else g.n // 2
    if isinstance(g, PSp):
        return g.dim // 2
    if isinstance(g, (Suzuki, Ree3)):
        return 1
    if isinstance(g, (TD4, G2, TF4)):
        return 2
    if isinstance(g, E6):
        return 6 if g.sign == "+" else 4
    if isinstance(g, E7):
        return 7
    if isinstance(g, E8):
        return 8
    if isinstance(g, POmega):
        if g.sign == "0":
            return (g.dim - 1) // 2
        return g.dim // 2 if g.sign == "+" else g.dim // 2 - 1
    raise UnsupportedFamily(f"{g.render()} is not of Lie type")


def out_order(g: GroupId) -> int:
    """|Out(T)| for the simple families used by the automorphism check."""
    g = normalize(g)
    if isinstance(g, Alternating):
        return 4 if g.n == 6 else 2
    if isinstance(g, Sporadic):
        return SPORADIC_OUT[g.name]
    if isinstance(g, LinearL):
        p, f = prime_power(g.q)
        if g.n == 2:
            return math.gcd(2, g.q - 1) * f
        if g.sign == "+":
            return 2 * math.gcd(g.n, g.q - 1) * f
        return math.gcd(g.n, g.q + 1) * 2 * f
    if isinstance(g, (Suzuki, Ree3)):
        return prime_power(g.q)[1]
    raise UnsupportedFamily(f"no outer automorphism data for {g.render()}")


# --------------------------------------------------------------- enumeration


def prime_powers(lo: int, hi: int) -> Iterator[int]:
    for q in range(max(lo, 2), hi + 1):
        if prime_power(q) is not None:
            yield q


def l2_ids(q_max: int, q_min: int = 4) -> Iterator[tuple[int, GroupId]]:
    """(q, canonical id) for L_2(q) with q_min <= q <= q_max."""
    for q in prime_powers(q_min, q_max):
        yield q, normalize(LinearL(2, q))


def simple_ids(q_max: int = 100, n_max: int = 30, rank_q_max: int | None = None,
               families: set[str] | None = None) -> Iterator[GroupId]:
    """Canonical simple ids in a desk-scale scan range, without duplicates."""
    seen: set[GroupId] = set()
    rq = q_max if rank_q_max is None else rank_q_max

    def emit(fam, g):
        if families is not None and fam not in families:
            return
        g = normalize(g)
        if g not in seen:
            seen.add(g)
            yield g

    for n in range(5, n_max + 1):
        yield from emit("A", Alternating(n))
    for q in prime_powers(4, q_max):
        yield from emit("L2", LinearL(2, q))
    for n in range(3, 8):
        for q in prime_powers(2, rq):
            if order(LinearL(n, q)) > 10**40:
                break
            if (n, q) != (3, 2):
                yield from emit("L", LinearL(n, q))
            if (n, q) != (3, 2):
                yield from emit("U", LinearL(n, q, "-"))
    f = 3
    while 2**f <= q_max:
        yield from emit("Sz", Suzuki(2**f))
        f += 2
    f = 3
    while 3**f <= q_max:
        yield from emit("R", Ree3(3**f))
        f += 2
    for name in SPORADIC_NAMES + ("Tits",):
        yield from emit("Spor", Sporadic(name))


def sqrt_exact(n: int) -> int | None:
    return exact_root(n, 2)
