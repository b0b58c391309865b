"""Exact integer machinery: primality, factorization, big-omega, congruences."""
from __future__ import annotations

import math
import os
import random
import sqlite3
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import gmpy2

# trial division stops here; beyond it Pollard-Brent takes over
TRIAL_BOUND = 1 << 12
# deterministic Miller-Rabin: the first 13 primes are a witness set below this bound
MR_DETERMINISTIC_BOUND = 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _small_primes(bound: int) -> list[int]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i in range(bound + 1) if sieve[i]]


SMALL_PRIMES = _small_primes(TRIAL_BOUND)
_SMALL_PRIME_SET = frozenset(SMALL_PRIMES)


def _require_nat(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, type(gmpy2.mpz(0)))):
        raise TypeError(f"expected an integer, got {type(n).__name__}")
    n = int(n)
    if n < 0:
        raise ValueError(f"expected a non-negative integer, got {n}")
    return n


def is_prime(n: int) -> bool:
    n = _require_nat(n)
    if n < 2:
        return False
    if n <= TRIAL_BOUND:
        return n in _SMALL_PRIME_SET
    for p in SMALL_PRIMES[:40]:
        if n % p == 0:
            return False
    m = gmpy2.mpz(n)
    if n < MR_DETERMINISTIC_BOUND:
        return all(gmpy2.is_strong_prp(m, a) for a in _MR_BASES)
    # above the proven witness bound: the full base set plus a strong Lucas test (BPSW)
    return all(gmpy2.is_strong_prp(m, a) for a in _MR_BASES) and gmpy2.is_strong_selfridge_prp(m)


@dataclass(frozen=True)
class Factorization:
    subject: int
    factors: tuple[tuple[int, int], ...]

    @property
    def omega(self) -> int:
        return sum(e for _, e in self.factors)

    @property
    def primes(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.factors)

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def render(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors)

    def as_pairs(self) -> list[tuple[int, int]]:
        return list(self.factors)


def _brent(n: int, seed: int) -> int:
    """One Pollard-Brent run; returns a factor of n (possibly n itself)."""
    rng = random.Random(seed)
    N = gmpy2.mpz(n)
    y = gmpy2.mpz(rng.randrange(1, n))
    c = gmpy2.mpz(rng.randrange(1, n))
    m = 128
    g = r = q = gmpy2.mpz(1)
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % N
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % N
                q = q * abs(x - y) % N
            g = gmpy2.gcd(q, N)
            k += m
        r *= 2
    if g == N:
        while True:
            ys = (ys * ys + c) % N
            g = gmpy2.gcd(abs(x - ys), N)
            if g > 1:
                break
    return int(g)


def _split(n: int, out: dict[int, int]) -> None:
    # n > 1 and has no prime factor below TRIAL_BOUND
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        root, exact = gmpy2.iroot(gmpy2.mpz(m), 2)
        if exact:
            stack.extend((int(root), int(root)))
            continue
        seed = m & 0xFFFFFFFF
        d = m
        while d == m or d == 1:
            d = _brent(m, seed)
            seed += 1
        stack.extend((d, m // d))


class _FactorCache:
    """Optional on-disk memo keyed by decimal subject; must never change results."""

    MIN_SUBJECT = 10**12

    def __init__(self) -> None:
        self._path: str | None = None
        self._conn: sqlite3.Connection | None = None
        self._lock = threading.Lock()

    def _connect(self) -> sqlite3.Connection | None:
        root = os.environ.get("CHAINFORGE_CACHE")
        if not root:
            return None
        path = os.path.join(root, "factor-cache.sqlite")
        if self._conn is None or self._path != path:
            os.makedirs(root, exist_ok=True)
            self._conn = sqlite3.connect(path, check_same_thread=False, timeout=30)
            self._conn.execute("CREATE TABLE IF NOT EXISTS f (n TEXT PRIMARY KEY, v TEXT)")
            self._path = path
        return self._conn

    def get(self, n: int):
        if n < self.MIN_SUBJECT:
            return None
        with self._lock:
            conn = self._connect()
            if conn is None:
                return None
            row = conn.execute("SELECT v FROM f WHERE n = ?", (str(n),)).fetchone()
        if row is None:
            return None
        pairs = tuple(tuple(int(x) for x in item.split("^")) for item in row[0].split(",") if item)
        return pairs

    def put(self, n: int, pairs) -> None:
        if n < self.MIN_SUBJECT:
            return
        with self._lock:
            conn = self._connect()
            if conn is None:
                return
            v = ",".join(f"{p}^{e}" for p, e in pairs)
            conn.execute("INSERT OR IGNORE INTO f VALUES (?, ?)", (str(n), v))
            conn.commit()


_cache = _FactorCache()


@lru_cache(maxsize=1 << 16)
def _factor_pairs(n: int) -> tuple[tuple[int, int], ...]:
    cached = _cache.get(n)
    if cached is not None:
        return cached
    out: dict[int, int] = {}
    m = n
    for p in SMALL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
    if m > 1:
        if m <= TRIAL_BOUND * TRIAL_BOUND:
            out[m] = out.get(m, 0) + 1
        else:
            _split(m, out)
    pairs = tuple(sorted(out.items()))
    _cache.put(n, pairs)
    return pairs


def factorize(n: int) -> Factorization:
    n = _require_nat(n)
    if n == 0:
        raise ValueError("factorize(0) is undefined")
    return Factorization(n, _factor_pairs(n))


def omega(n: int) -> int:
    """Number of prime factors of n counted with multiplicity."""
    n = _require_nat(n)
    if n == 0:
        raise ValueError("omega(0) is undefined")
    return sum(e for _, e in _factor_pairs(n))


def binary_ones(n: int) -> int:
    return bin(_require_nat(n)).count("1")


def distinct_prime_factors(n: int) -> frozenset[int]:
    n = _require_nat(n)
    if n == 0:
        raise ValueError("distinct_prime_factors(0) is undefined")
    return frozenset(p for p, _ in _factor_pairs(n))


def _residue_set(modulus: int, residues: Iterable) -> set[int]:
    out: set[int] = set()
    for r in residues:
        if isinstance(r, str):
            r = r.strip()
            if r.startswith("±") or r.startswith("+-"):
                v = int(r.lstrip("±+-"))
                out.update({v % modulus, (-v) % modulus})
                continue
            out.add(int(r) % modulus)
        else:
            out.add(int(r) % modulus)
    return out


def congruence_class(n: int, modulus: int, residues: Iterable) -> bool:
    """True iff n mod modulus lies in residues; a string "±r" stands for {r, modulus - r}."""
    n = _require_nat(n)
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    return n % modulus in _residue_set(modulus, residues)


# the congruence shared by most classification conditions
PM_3_13_MOD_40 = ("±3", "±13")


def pm3_13_mod40(n: int) -> bool:
    return congruence_class(n, 40, PM_3_13_MOD_40)


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, f) with n = p**f, or None."""
    n = _require_nat(n)
    if n < 2:
        return None
    pairs = _factor_pairs(n)
    if len(pairs) != 1:
        return None
    return pairs[0]


def exact_root(n: int, k: int) -> int | None:
    r, exact = gmpy2.iroot(gmpy2.mpz(n), k)
    return int(r) if exact else None
