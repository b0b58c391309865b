"""Permutations and fully materialised permutation groups."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

ORDER_CAP = 5000
MAX_DEGREE = 32


class CapExceeded(RuntimeError):
    """The group or its lattice is too large to materialise."""


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    def __mul__(self, other: "Perm") -> "Perm":
        # apply self first, then other
        return Perm(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        p, k = self, 1
        while not p.is_identity():
            p, k = p * self, k + 1
        return k


def shift(p: Perm, offset: int, degree: int) -> Perm:
    """Embed p acting on points offset..offset+p.degree-1 of a larger set."""
    img = list(range(degree))
    for i, j in enumerate(p.images):
        img[offset + i] = offset + j
    return Perm(tuple(img))


class PermGroup:
    """A permutation group with every element listed.

    Elements are sorted lexicographically by image tuple, so index 0 is the
    identity and the listing does not depend on the generating set.
    """

    def __init__(self, generators: Sequence[Perm], degree: int | None = None,
                 cap: int = ORDER_CAP, max_degree: int | None = MAX_DEGREE, name: str = ""):
        gens = list(generators)
        if degree is None:
            degree = gens[0].degree if gens else 1
        if any(g.degree != degree for g in gens):
            raise ValueError("generators have different degrees")
        if max_degree is not None and degree > max_degree:
            raise CapExceeded(f"degree {degree} exceeds {max_degree}")
        self.degree = degree
        self.name = name
        self.generators = [g for g in gens if not g.is_identity()]
        self.elements = self._enumerate(cap)
        self.order = len(self.elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self._table: np.ndarray | None = None
        self._conj: np.ndarray | None = None
        self._inv: np.ndarray | None = None

    def _enumerate(self, cap: int) -> list[tuple[int, ...]]:
        ident = tuple(range(self.degree))
        seen = {ident}
        frontier = [ident]
        gens = [g.images for g in self.generators]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = tuple(g[i] for i in x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > cap:
                            raise CapExceeded(f"group order exceeds cap {cap}")
            frontier = nxt
        return sorted(seen)

    def __len__(self) -> int:
        return self.order

    def index(self, p: Perm | tuple[int, ...]) -> int:
        return self._index[p.images if isinstance(p, Perm) else tuple(p)]

    def perm(self, i: int) -> Perm:
        return Perm(self.elements[i])

    @property
    def generator_indices(self) -> list[int]:
        return [self.index(g) for g in self.generators]

    @property
    def table(self) -> np.ndarray:
        """table[i, j] is the index of element i followed by element j."""
        if self._table is None:
            E = np.array(self.elements, dtype=np.int64).reshape(self.order, self.degree)
            rng = np.random.default_rng(20240601)
            w = rng.integers(1, 2**62, size=self.degree, dtype=np.int64).astype(np.uint64)
            keys = (E.astype(np.uint64) * w).sum(axis=1)
            order = np.argsort(keys)
            sk = keys[order]
            if np.any(sk[1:] == sk[:-1]):
                raise RuntimeError("element hash collision")
            T = np.empty((self.order, self.order), dtype=np.int32)
            for i in range(self.order):
                prod = E[:, E[i]]  # row j: element i then element j
                pk = (prod.astype(np.uint64) * w).sum(axis=1)
                T[i] = order[np.searchsorted(sk, pk)]
            self._table = T
        return self._table

    @property
    def inverses(self) -> np.ndarray:
        if self._inv is None:
            self._inv = np.argmax(self.table == 0, axis=1).astype(np.int32)
        return self._inv

    @property
    def conj(self) -> np.ndarray:
        """conj[x, h] is the index of x^-1 h x."""
        if self._conj is None:
            T = self.table
            A = T[self.inverses]
            self._conj = T[A, np.arange(self.order)[:, None]]
        return self._conj

    def element_orders(self) -> np.ndarray:
        T = self.table
        out = np.ones(self.order, dtype=np.int32)
        cur = np.arange(self.order)
        k = 1
        todo = cur != 0
        while todo.any():
            cur = T[cur, np.arange(self.order)]
            k += 1
            hit = todo & (cur == 0)
            out[hit] = k
            todo &= ~hit
        out[0] = 1
        return out

    def is_abelian(self) -> bool:
        T = self.table
        return bool((T == T.T).all())

    def __repr__(self):
        return f"PermGroup({self.name or '?'}, order={self.order}, degree={self.degree})"
