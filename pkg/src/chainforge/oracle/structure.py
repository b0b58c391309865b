"""Structural facts read off a complete subgroup lattice."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..arithmetic import factorize, is_prime, prime_power
from ..catalog import Alternating, Cyclic, GroupId, LinearL, render
from .lattice import SubgroupLattice, chain_extremes, indices_of, is_subset, mask_of, subgroup_lattice
from .perm import Perm, PermGroup

# non-abelian simple groups of order at most 5000; no two share an order in this range
SIMPLE_BY_ORDER: dict[int, GroupId] = {
    60: Alternating(5),
    168: LinearL(2, 7),
    360: Alternating(6),
    504: LinearL(2, 8),
    660: LinearL(2, 11),
    1092: LinearL(2, 13),
    2448: LinearL(2, 17),
    2520: Alternating(7),
    3420: LinearL(2, 19),
    4080: LinearL(2, 16),
}


@dataclass
class OracleReport:
    group: str
    order: int
    l: int
    lam: int
    cd: int
    chief_length: int
    soluble: bool
    supersoluble: bool
    radical_order: int
    socle_order: int
    composition_factors: tuple[str, ...]
    n_subgroups: int
    extras: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "group": self.group, "order": str(self.order), "l": str(self.l), "lambda": str(self.lam),
            "cd": str(self.cd), "chief_length": str(self.chief_length),
            "soluble": self.soluble, "supersoluble": self.supersoluble,
            "radical_order": str(self.radical_order), "socle_order": str(self.socle_order),
            "composition_factors": list(self.composition_factors),
            "subgroups": str(self.n_subgroups),
        }


def _commutator_mask(L: SubgroupLattice, i: int) -> int:
    G = L.group
    T, inv = G.table, G.inverses
    idx = L.elements(i)
    a, b = np.meshgrid(idx, idx, indexing="ij")
    comm = T[T[T[inv[a], inv[b]], a], b]
    return mask_of(np.unique(comm), G.order)


def derived_subgroup(L: SubgroupLattice, i: int) -> int:
    return L.smallest_containing(_commutator_mask(L, i))


def is_soluble_subgroup(L: SubgroupLattice, i: int) -> bool:
    while i != L.bottom:
        d = derived_subgroup(L, i)
        if d == i:
            return False
        i = d
    return True


def normal_chain_lengths(L: SubgroupLattice) -> dict[int, int]:
    """Longest chain of normal subgroups of G below each normal subgroup."""
    normals = L.normal_subgroups()
    out: dict[int, int] = {}
    for n in normals:
        below = [m for m in out if m != n and is_subset(L.subgroups[m], L.subgroups[n])]
        out[n] = 1 + max((out[m] for m in below), default=-1)
    return out


def chief_series(L: SubgroupLattice) -> list[int]:
    """A chief series from G down to 1 as subgroup indices."""
    lengths = normal_chain_lengths(L)
    series = [L.top]
    while series[-1] != L.bottom:
        cur = series[-1]
        nxt = max((m for m in lengths if m != cur and is_subset(L.subgroups[m], L.subgroups[cur])
                   and lengths[m] == lengths[cur] - 1), key=lambda m: L.orders[m])
        series.append(nxt)
    return series


def chief_factor_groups(order: int) -> list[GroupId]:
    """Composition factors of a chief factor, identified by its order."""
    pp = prime_power(order)
    if pp is not None:
        return [Cyclic(pp[0])] * pp[1]
    for t_order, t in SIMPLE_BY_ORDER.items():
        k, m = 0, order
        while m % t_order == 0:
            m //= t_order
            k += 1
        if m == 1:
            return [t] * k
    raise AssertionError(f"chief factor of order {order} is not a power of a known simple group")


def composition_factors(L: SubgroupLattice) -> list[GroupId]:
    series = chief_series(L)
    out: list[GroupId] = []
    for a, b in zip(series, series[1:]):
        out += chief_factor_groups(L.orders[a] // L.orders[b])
    return out


def radical(L: SubgroupLattice) -> int:
    soluble = [n for n in L.normal_subgroups() if is_soluble_subgroup(L, n)]
    return max(soluble, key=lambda n: L.orders[n])


def minimal_normal_subgroups(L: SubgroupLattice) -> list[int]:
    normals = [n for n in L.normal_subgroups() if n != L.bottom]
    return [n for n in normals
            if not any(m != n and is_subset(L.subgroups[m], L.subgroups[n]) for m in normals)]


def socle(L: SubgroupLattice) -> int:
    mask = 1
    for n in minimal_normal_subgroups(L):
        mask |= L.subgroups[n]
    return L.smallest_containing(mask)


def is_supersoluble(L: SubgroupLattice) -> bool:
    # Huppert: a soluble group is supersoluble iff every maximal subgroup has prime index
    if not is_soluble_subgroup(L, L.top):
        return False
    return all(is_prime(L.orders[L.top] // L.orders[h]) for h in L.maximal_subgroups(L.top))


def quotient_group(G: PermGroup, N: int) -> PermGroup:
    """G/N through the action of G on the right cosets of N (N given as a bitset)."""
    n_idx = indices_of(N, G.order)
    conj = G.conj
    inN = np.zeros(G.order, dtype=bool)
    inN[n_idx] = True
    if not inN[conj[:, n_idx]].all():
        raise ValueError("subgroup is not normal")
    T = G.table
    label = T[n_idx, :].min(axis=0)  # smallest element of each coset N h
    reps = np.unique(label)
    pos = {int(r): i for i, r in enumerate(reps)}
    gens = []
    for x in G.generator_indices:
        gens.append(Perm(tuple(pos[int(label[T[r, x]])] for r in reps)))
    # coset actions can exceed the generator degree cap; only the order cap applies
    Q = PermGroup(gens, degree=len(reps), max_degree=None, name=f"{G.name}/N")
    if Q.order != len(reps):
        raise AssertionError("coset action is not regular on the quotient")
    return Q


def subgroup_as_group(L: SubgroupLattice, i: int) -> PermGroup:
    G = L.group
    perms = [G.perm(int(e)) for e in L.elements(i)]
    return PermGroup(perms, degree=G.degree, name=f"{G.name}[{L.orders[i]}]")


def structure(G: PermGroup, L: SubgroupLattice | None = None) -> OracleReport:
    L = L or subgroup_lattice(G)
    l, lam = chain_extremes(L)
    lengths = normal_chain_lengths(L)
    return OracleReport(
        group=G.name,
        order=G.order,
        l=l,
        lam=lam,
        cd=l - lam,
        chief_length=lengths[L.top],
        soluble=is_soluble_subgroup(L, L.top),
        supersoluble=is_supersoluble(L),
        radical_order=L.orders[radical(L)],
        socle_order=L.orders[socle(L)],
        composition_factors=tuple(render(t) for t in composition_factors(L)),
        n_subgroups=len(L),
    )


def omega_of_order(G: PermGroup) -> int:
    return factorize(G.order).omega
