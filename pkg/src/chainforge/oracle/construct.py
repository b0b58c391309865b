"""Concrete permutation representations for the constructible group ids."""
from __future__ import annotations

import itertools

from ..arithmetic import prime_power
from ..catalog import (
    Alternating, Cyclic, Dihedral, GroupId, LinearL, Product, ProjGL, SpecialLinear, Symmetric,
    UnsupportedFamily, normalize, order,
)
from .perm import MAX_DEGREE, ORDER_CAP, CapExceeded, Perm, PermGroup, shift


class Field:
    """GF(q) for q = p^k with k <= 3; elements are 0..q-1 read as base-p coefficient vectors."""

    def __init__(self, q: int):
        pf = prime_power(q)
        if pf is None:
            raise ValueError(f"{q} is not a prime power")
        self.q, (self.p, self.k) = q, pf
        if self.k > 3:
            raise ValueError("field degree above 3 is not supported")
        self.modulus = self._irreducible()
        self.add = [[self._add(a, b) for b in range(q)] for a in range(q)]
        self.mul = [[self._mul(a, b) for b in range(q)] for a in range(q)]
        self.neg = [next(b for b in range(q) if self.add[a][b] == 0) for a in range(q)]
        self.inv = [None] + [next(b for b in range(1, q) if self.mul[a][b] == 1) for a in range(1, q)]
        self.primitive = next(a for a in range(1, q) if self._mult_order(a) == q - 1)

    def _digits(self, a):
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def _num(self, ds):
        return sum(d * self.p**i for i, d in enumerate(ds))

    def _irreducible(self):
        # monic of degree k with no root; enough for k <= 3
        if self.k == 1:
            return None
        for low in itertools.product(range(self.p), repeat=self.k):
            coeffs = list(low) + [1]
            if all(sum(c * x**i for i, c in enumerate(coeffs)) % self.p for x in range(self.p)):
                return coeffs
        raise AssertionError("no irreducible polynomial found")

    def _add(self, a, b):
        return self._num([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        for d in range(len(prod) - 1, self.k - 1, -1):
            c = prod[d]
            if c:
                for i, m in enumerate(self.modulus):
                    prod[d - self.k + i] = (prod[d - self.k + i] - c * m) % self.p
        return self._num(prod[: self.k])

    def _mult_order(self, a):
        x, n = a, 1
        while x != 1:
            x, n = self.mul[x][a], n + 1
        return n

    def power(self, a, e):
        r = 1
        for _ in range(e):
            r = self.mul[r][a]
        return r


def mobius(F: Field, a, b, c, d) -> Perm:
    """z -> (az + b)/(cz + d) on the projective line; the point at infinity is q."""
    q, inf = F.q, F.q
    img = []
    for z in range(q + 1):
        if z == inf:
            num, den = a, c
        else:
            num = F.add[F.mul[a][z]][b]
            den = F.add[F.mul[c][z]][d]
        img.append(inf if den == 0 else F.mul[num][F.inv[den]])
    return Perm(tuple(img))


def psl2(q: int, cap: int = ORDER_CAP) -> PermGroup:
    F = Field(q)
    w = F.primitive
    gens = [mobius(F, 1, 1, 0, 1), mobius(F, F.mul[w][w], 0, 0, 1), mobius(F, 0, F.neg[1], 1, 0)]
    return PermGroup(gens, cap=cap, name=f"L(2,{q})")


def pgl2(q: int, cap: int = ORDER_CAP) -> PermGroup:
    F = Field(q)
    gens = [mobius(F, 1, 1, 0, 1), mobius(F, F.primitive, 0, 0, 1), mobius(F, 0, F.neg[1], 1, 0)]
    return PermGroup(gens, cap=cap, name=f"PGL(2,{q})")


def sl2(p: int, cap: int = ORDER_CAP) -> PermGroup:
    """SL2(p) on nonzero vectors modulo the odd-order scalars; faithful since -1 is not among them."""
    if prime_power(p) is None or prime_power(p)[1] != 1 or p == 2:
        raise UnsupportedFamily("SL2 construction needs an odd prime")
    m = p - 1
    while m % 2 == 0:
        m //= 2
    # m is the odd part of p - 1; the scalars of order dividing m
    g = next(a for a in range(1, p) if _order_mod(a, p) == p - 1)
    scal = sorted({pow(g, (p - 1) // m * i, p) for i in range(m)})
    vecs = [(x, y) for x in range(p) for y in range(p) if (x, y) != (0, 0)]
    cls = {}
    reps = []
    for v in vecs:
        if v in cls:
            continue
        cls.update({((s * v[0]) % p, (s * v[1]) % p): len(reps) for s in scal})
        reps.append(v)

    def act(mat):
        a, b, c, d = mat
        return Perm(tuple(cls[((a * x + b * y) % p, (c * x + d * y) % p)] for x, y in reps))

    return PermGroup([act((1, 1, 0, 1)), act((0, p - 1, 1, 0))], cap=cap, name=f"SL(2,{p})")


def _order_mod(a, p):
    x, n = a % p, 1
    while x != 1:
        x, n = x * a % p, n + 1
    return n


def symmetric(n: int, cap: int = ORDER_CAP) -> PermGroup:
    if n <= 1:
        return PermGroup([], degree=1, name="S(1)")
    gens = [Perm.from_cycles(n, [[0, 1]]), Perm.from_cycles(n, [list(range(n))])]
    return PermGroup(gens, cap=cap, name=f"S({n})")


def alternating(n: int, cap: int = ORDER_CAP) -> PermGroup:
    if n <= 2:
        return PermGroup([], degree=max(n, 1), name=f"A({n})")
    long = list(range(n)) if n % 2 else list(range(1, n))
    gens = [Perm.from_cycles(n, [[0, 1, 2]]), Perm.from_cycles(n, [long])]
    return PermGroup(gens, cap=cap, name=f"A({n})")


def cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], degree=1, name="C(1)")
    return PermGroup([Perm.from_cycles(n, [list(range(n))])], name=f"C({n})")


def dihedral(m: int) -> PermGroup:
    """Dihedral group of order m."""
    if m % 2 or m < 2:
        raise ValueError("dihedral order must be even")
    if m == 2:
        return cyclic(2)
    if m == 4:
        return PermGroup([Perm((1, 0, 3, 2)), Perm((2, 3, 0, 1))], name="D(4)")
    k = m // 2
    rot = Perm.from_cycles(k, [list(range(k))])
    ref = Perm(tuple((-i) % k for i in range(k)))
    return PermGroup([rot, ref], name=f"D({m})")


def direct_product(parts: list[PermGroup], cap: int = ORDER_CAP) -> PermGroup:
    degree = sum(p.degree for p in parts)
    gens, off = [], 0
    for part in parts:
        gens += [shift(g, off, degree) for g in part.generators]
        off += part.degree
    return PermGroup(gens, degree=degree, cap=cap, name="x".join(p.name for p in parts))


def wreath_cyclic(m: int, p: int, cap: int = ORDER_CAP) -> PermGroup:
    """C_m wr C_p in its imprimitive action on m*p points."""
    degree = m * p
    base = Perm.from_cycles(degree, [list(range(m))])
    top = Perm(tuple((i + m) % degree for i in range(degree)))
    return PermGroup([base, top], cap=cap, name=f"C({m})wrC({p})")


def construct(g: GroupId, cap: int = ORDER_CAP) -> PermGroup:
    """A permutation group realising g; its order is checked against the catalog."""
    g = normalize(g)
    expected = order(g)
    if expected > cap:
        raise CapExceeded(f"{g.render()} has order {expected} > cap {cap}")
    G = _build(g, cap)
    if G.order != expected:
        raise AssertionError(f"constructed {G.order} elements for {g.render()}, expected {expected}")
    G.name = g.render()
    return G


def _build(g: GroupId, cap: int) -> PermGroup:
    if isinstance(g, Alternating):
        return alternating(g.n, cap)
    if isinstance(g, Symmetric):
        return symmetric(g.n, cap)
    if isinstance(g, Cyclic):
        return cyclic(g.n)
    if isinstance(g, Dihedral):
        return dihedral(g.order)
    if isinstance(g, LinearL) and g.n == 2 and g.sign == "+":
        if g.q + 1 > MAX_DEGREE:
            raise CapExceeded(f"projective line of size {g.q + 1} exceeds degree cap")
        if prime_power(g.q)[1] > 3:
            raise UnsupportedFamily(f"no field construction for q = {g.q}")
        return psl2(g.q, cap)
    if isinstance(g, ProjGL):
        return pgl2(g.q, cap)
    if isinstance(g, SpecialLinear) and g.n == 2 and g.sign == "+" and prime_power(g.q)[1] == 1:
        return sl2(g.q, cap)
    if isinstance(g, Product):
        return direct_product([_build(f, cap) for f in g.factors], cap)
    raise UnsupportedFamily(f"no permutation construction for {g.render()}")
