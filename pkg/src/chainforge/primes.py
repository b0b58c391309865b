"""Prime families defined by big-omega and congruence conditions.

Searches run over contiguous shards of [2, limit]; each shard sieves its own
primes and the big-omega values of p - 1 and p + 1, so the output does not
depend on the shard layout.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .arithmetic import factorize, is_prime, omega, pm3_13_mod40

DEFAULT_BLOCK = 1 << 18


# ------------------------------------------------------------------ sieving


def base_primes(bound: int) -> np.ndarray:
    bound = max(bound, 2)
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.flatnonzero(sieve)


def primes_in(lo: int, hi: int, small: np.ndarray | None = None) -> np.ndarray:
    """Primes in [lo, hi) by a segmented sieve."""
    lo = max(lo, 2)
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)
    if small is None:
        small = base_primes(math.isqrt(hi) + 1)
    seg = np.ones(hi - lo, dtype=bool)
    for p in small:
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, (lo + p - 1) // p * p)
        seg[start - lo :: p] = False
    return np.flatnonzero(seg).astype(np.int64) + lo


def omega_segment(lo: int, hi: int, small: np.ndarray | None = None) -> np.ndarray:
    """Big-omega of every n in [lo, hi), lo >= 1."""
    if small is None:
        small = base_primes(math.isqrt(hi) + 1)
    rem = np.arange(lo, hi, dtype=np.int64)
    cnt = np.zeros(hi - lo, dtype=np.int16)
    for p in small:
        p = int(p)
        if p * p >= hi:
            break
        pk = p
        while pk < hi:
            start = (lo + pk - 1) // pk * pk
            if start >= hi:
                break
            idx = slice(start - lo, None, pk)
            cnt[idx] += 1
            rem[idx] //= p
            pk *= p
    cnt += (rem > 1).astype(np.int16)
    return cnt


# ------------------------------------------------------------ condition trees


@dataclass(frozen=True)
class Poly:
    """An integer-valued expression in p, optionally split into coprime-free factors whose omegas add."""

    name: str
    fn: Callable[[int], int]
    parts: tuple["Poly", ...] = ()

    def __call__(self, p: int) -> int:
        return self.fn(p)


def _phi3(p): return p * p + p + 1
def _phi6(p): return p * p - p + 1
def _phi5(p): return p**4 + p**3 + p * p + p + 1
def _phi10(p): return p**4 - p**3 + p * p - p + 1


P_MINUS = Poly("p-1", lambda p: p - 1)
P_PLUS = Poly("p+1", lambda p: p + 1)
PHI3 = Poly("p^2+p+1", _phi3)
PHI6 = Poly("p^2-p+1", _phi6)
P3_MINUS = Poly("p^3-1", lambda p: p**3 - 1, (P_MINUS, PHI3))
P3_PLUS = Poly("p^3+1", lambda p: p**3 + 1, (P_PLUS, PHI6))
P5_MINUS = Poly("p^5-1", lambda p: p**5 - 1, (P_MINUS, Poly("Phi5(p)", _phi5)))
P5_PLUS = Poly("p^5+1", lambda p: p**5 + 1, (P_PLUS, Poly("Phi10(p)", _phi10)))
QUARTER = Poly("(p-1)/4", lambda p: (p - 1) // 4)
SIXTH = Poly("(p+1)/6", lambda p: (p + 1) // 6)
QUOTIENT_24 = Poly("(p^2-1)/24", lambda p: (p * p - 1) // 24, (QUARTER, SIXTH))


class Cond:
    def evaluate(self, ctx: "Context") -> bool:
        raise NotImplementedError

    def polys(self) -> list[Poly]:
        return []

    def __and__(self, other): return And((self, other))
    def __or__(self, other): return Or((self, other))
    def __invert__(self): return Not(self)


@dataclass(frozen=True)
class And(Cond):
    items: tuple

    def evaluate(self, ctx):
        return all(c.evaluate(ctx) for c in self.items)

    def polys(self):
        return [p for c in self.items for p in c.polys()]


@dataclass(frozen=True)
class Or(Cond):
    items: tuple

    def evaluate(self, ctx):
        return any(c.evaluate(ctx) for c in self.items)

    def polys(self):
        return [p for c in self.items for p in c.polys()]


@dataclass(frozen=True)
class Not(Cond):
    item: Cond

    def evaluate(self, ctx):
        return not self.item.evaluate(ctx)

    def polys(self):
        return self.item.polys()


_OPS = {
    "==": lambda a, b: a == b, "<=": lambda a, b: a <= b, ">=": lambda a, b: a >= b,
    "<": lambda a, b: a < b, ">": lambda a, b: a > b,
}


@dataclass(frozen=True)
class OmegaCmp(Cond):
    poly: Poly
    op: str
    value: int

    def evaluate(self, ctx):
        return _OPS[self.op](ctx.omega(self.poly), self.value)

    def polys(self):
        return [self.poly]


@dataclass(frozen=True)
class MaxOmegaPm1(Cond):
    """max{Omega(p-1), Omega(p+1)} or min{...} compared with a value."""

    which: str  # "max" or "min"
    op: str
    value: int

    def evaluate(self, ctx):
        a, b = ctx.omega(P_MINUS), ctx.omega(P_PLUS)
        v = max(a, b) if self.which == "max" else min(a, b)
        return _OPS[self.op](v, self.value)

    def polys(self):
        return [P_MINUS, P_PLUS]


@dataclass(frozen=True)
class IsPrime(Cond):
    poly: Poly

    def evaluate(self, ctx):
        return is_prime(self.poly(ctx.p))

    def polys(self):
        return [self.poly]


@dataclass(frozen=True)
class Congruence(Cond):
    modulus: int
    residues: frozenset

    def evaluate(self, ctx):
        return ctx.p % self.modulus in self.residues


@dataclass(frozen=True)
class Pm3_13(Cond):
    def evaluate(self, ctx):
        return pm3_13_mod40(ctx.p)


@dataclass(frozen=True)
class Predicate(Cond):
    """Escape hatch for a named predicate on p (e.g. a length formula)."""

    name: str
    fn: Callable[[int], bool]

    def evaluate(self, ctx):
        return self.fn(ctx.p)


@dataclass(frozen=True)
class MinPrime(Cond):
    bound: int

    def evaluate(self, ctx):
        return ctx.p >= self.bound


class Context:
    def __init__(self, p: int, known: dict[str, int] | None = None):
        self.p = p
        self._omega = dict(known or {})

    def omega(self, poly: Poly) -> int:
        v = self._omega.get(poly.name)
        if v is None:
            v = sum(self.omega(part) for part in poly.parts) if poly.parts else omega(poly(self.p))
            self._omega[poly.name] = v
        return v


def _l2_length_at_most_5(q: int) -> bool:
    from .length import length_L2

    return length_L2(q).value.value <= 5


CONDITIONS: dict[str, Cond] = {
    # line 1 of the short-group table: L2(q) of length 4
    "table5-row1": MinPrime(7) & MaxOmegaPm1("max", "==", 3) & Pm3_13(),
    "omega-2-4": OmegaCmp(P_MINUS, "==", 2) & OmegaCmp(P_PLUS, "==", 4),
    "p5-l8": OmegaCmp(P5_MINUS, "==", 3) & OmegaCmp(P5_PLUS, "<=", 7),
    "p3-l7": OmegaCmp(P3_MINUS, "==", 4) & OmegaCmp(P3_PLUS, "<=", 6),
    # q = 29 also passes these tests but U3(29) has its own known value, so the
    # family keeps only the congruence branch
    "u3-l9": (OmegaCmp(P_MINUS, "==", 3) & OmegaCmp(P_PLUS, "==", 3)
              & Predicate("l(L2(q))<=5", _l2_length_at_most_5) & Pm3_13()
              & Congruence(3, frozenset({2})) & OmegaCmp(PHI6, "<=", 8)),
    "p3-depth5": (MaxOmegaPm1("min", ">=", 3) & OmegaCmp(P3_MINUS, "==", 4)
                  & OmegaCmp(P3_PLUS, "<=", 6)),
    "appendix": Congruence(72, frozenset({5})) & OmegaCmp(QUOTIENT_24, "<=", 7),
}

FAMILY_DESCRIPTIONS = {
    "table5-row1": "prime q > 5, max Omega(q+-1) = 3, q = +-3, +-13 mod 40",
    "omega-2-4": "Omega(p-1) = 2 and Omega(p+1) = 4",
    "p5-l8": "Omega(p^5-1) = 3 and Omega(p^5+1) <= 7",
    "p3-l7": "Omega(p^3-1) = 4 and Omega(p^3+1) <= 6",
    "u3-l9": "Omega(q+-1) = 3, l(L2(q)) <= 5, q = +-3, +-13 mod 40 (q = 29 listed separately), q = 2 mod 3, Omega(q^2-q+1) <= 8",
    "p3-depth5": "Omega(p+-1) >= 3, Omega(p^3-1) = 4, Omega(p^3+1) <= 6",
    "appendix": "p = 5 mod 72 and Omega((p^2-1)/24) <= 7",
}


def condition(name: str) -> Cond:
    try:
        return CONDITIONS[name]
    except KeyError:
        raise KeyError(f"unknown prime family {name!r}; known: {', '.join(CONDITIONS)}") from None


# ------------------------------------------------------------------ search


def _search_shard(args) -> list[int]:
    name, lo, hi, block = args
    cond = CONDITIONS[name]
    uses_pm = any(p.name in ("p-1", "p+1") for p in cond.polys()) or _uses_pm(cond)
    small = base_primes(math.isqrt(hi + 1) + 1)
    found: list[int] = []
    for a in range(lo, hi, block):
        b = min(a + block, hi)
        ps = primes_in(a, b, small)
        if ps.size == 0:
            continue
        table = omega_segment(max(a - 1, 1), b + 1, small) if uses_pm else None
        base = max(a - 1, 1)
        for p in ps.tolist():
            known = None
            if table is not None:
                known = {"p+1": int(table[p + 1 - base])}
                if p - 1 >= 1:
                    known["p-1"] = int(table[p - 1 - base])
            if cond.evaluate(Context(p, known)):
                found.append(p)
    return found


def _uses_pm(cond: Cond) -> bool:
    names = {p.name for p in cond.polys()}
    for p in cond.polys():
        names.update(part.name for part in p.parts)
    return bool(names & {"p-1", "p+1"})


def shard_bounds(limit: int, shards: int) -> list[tuple[int, int]]:
    """Partition [2, limit] into contiguous half-open ranges."""
    hi = limit + 1
    shards = max(1, min(shards, hi - 2))
    step = -(-(hi - 2) // shards)
    return [(a, min(a + step, hi)) for a in range(2, hi, step)]


def search(cond: str | Cond, limit: int, jobs: int = 1, shards: int | None = None,
           block: int = DEFAULT_BLOCK) -> list[int]:
    """All primes p <= limit satisfying the named condition, ascending."""
    if limit < 2:
        raise ValueError("limit must be at least 2")
    if isinstance(cond, Cond):
        # unnamed trees cannot be shipped to workers by name; evaluate inline
        return [p for p in primes_in(2, limit + 1).tolist() if cond.evaluate(Context(p))]
    condition(cond)
    shards = shards or max(jobs, 1)
    tasks = [(cond, a, b, block) for a, b in shard_bounds(limit, shards)]
    if jobs <= 1:
        parts = [_search_shard(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_search_shard, tasks))
    return [p for part in parts for p in part]


# ----------------------------------------------------------- named families


@dataclass(frozen=True)
class AppendixMember:
    p: int
    omega_quarter: int
    omega_sixth: int
    omega_total: int
    max_omega_pm1: int

    @property
    def divisible_by_24(self) -> bool:
        return (self.p * self.p - 1) % 24 == 0

    @property
    def gcds(self) -> tuple[int, int]:
        return math.gcd(self.p - 1, 72), math.gcd(self.p + 1, 72)


def appendix_family(limit: int, jobs: int = 1, shards: int | None = None) -> list[AppendixMember]:
    if limit < 5:
        raise ValueError("limit must be at least 5")
    out = []
    for p in search("appendix", limit, jobs=jobs, shards=shards):
        a, b = omega((p - 1) // 4), omega((p + 1) // 6)
        out.append(AppendixMember(p, a, b, omega((p * p - 1) // 24), max(omega(p - 1), omega(p + 1))))
    return out


def u3_length9_family(limit: int, jobs: int = 1) -> list[int]:
    return search("u3-l9", limit, jobs=jobs)


# ------------------------------------------------------------------- export


def witnesses(name: str, p: int) -> dict[str, str]:
    """Factorizations of every polynomial the named condition mentions, evaluated at p."""
    out: dict[str, str] = {}
    for poly in condition(name).polys():
        if poly.name not in out:
            v = poly(p)
            out[poly.name] = factorize(v).render() if v >= 1 else str(v)
    return out


def to_jsonl(name: str, ps: Iterable[int]) -> str:
    lines = [json.dumps({"p": str(p), "witnesses": witnesses(name, p)}, sort_keys=True) for p in ps]
    return "".join(line + "\n" for line in lines)


def to_csv(name: str, ps: Iterable[int]) -> str:
    ps = list(ps)
    keys = list(dict.fromkeys(poly.name for poly in condition(name).polys()))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p"] + keys)
    for p in ps:
        wit = witnesses(name, p)
        w.writerow([str(p)] + [wit[k] for k in keys])
    return buf.getvalue()
