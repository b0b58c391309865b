"""Complete subgroup lattices by joining subgroups with cyclic subgroups.

Subgroups are element-index bitsets held as Python ints. Every subgroup is a
join of cyclic subgroups, and every non-trivial subgroup is a minimal
overgroup of one of its maximal subgroups, so walking minimal overgroups from
the trivial group reaches everything. The walk runs over conjugacy-class
representatives only; the full list comes from conjugating them.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .perm import CapExceeded, PermGroup

JOIN_BUDGET = 10**6


def mask_of(idx: np.ndarray, n: int) -> int:
    b = np.zeros(n, dtype=bool)
    b[idx] = True
    return int.from_bytes(np.packbits(b, bitorder="little").tobytes(), "little")


def _masks_of_rows(rows: np.ndarray, n: int) -> list[int]:
    b = np.zeros((rows.shape[0], n), dtype=bool)
    b[np.arange(rows.shape[0])[:, None], rows] = True
    packed = np.packbits(b, axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def indices_of(mask: int, n: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")[:n])


def is_subset(a: int, b: int) -> bool:
    return a & b == a


@dataclass
class SubgroupLattice:
    group: PermGroup
    subgroups: list[int]  # bitsets sorted by (order, value)
    orders: list[int]
    maximal_in: list[tuple[int, int]]  # (h, k): subgroup h is maximal in subgroup k
    classes: list[list[int]]  # conjugacy classes as lists of subgroup indices
    class_of: list[int]
    joins: int = 0
    _below: dict = field(default_factory=dict, repr=False)

    @property
    def top(self) -> int:
        return len(self.subgroups) - 1

    @property
    def bottom(self) -> int:
        return 0

    def __len__(self):
        return len(self.subgroups)

    def index_of(self, mask: int) -> int:
        if not self._below:
            self._below.update({m: i for i, m in enumerate(self.subgroups)})
        return self._below[mask]

    def elements(self, i: int) -> np.ndarray:
        return indices_of(self.subgroups[i], self.group.order)

    def maximal_subgroups(self, k: int) -> list[int]:
        return [h for h, kk in self.maximal_in if kk == k]

    def is_normal(self, i: int) -> bool:
        return len(self.classes[self.class_of[i]]) == 1

    def normal_subgroups(self) -> list[int]:
        return [c[0] for c in self.classes if len(c) == 1]

    def smallest_containing(self, mask: int) -> int:
        """Index of the subgroup generated by the elements in mask."""
        for i, m in enumerate(self.subgroups):
            if is_subset(mask, m):
                return i
        raise AssertionError("the whole group contains everything")


def _cyclic_subgroups(G: PermGroup) -> list[tuple[int, int]]:
    T, n = G.table, G.order
    seen: dict[int, int] = {}
    for g in range(n):
        powers = [0]
        x = g
        while x != 0:
            powers.append(x)
            x = int(T[x, g])
        m = mask_of(np.array(powers), n)
        seen.setdefault(m, g)
    return sorted(((m, g) for m, g in seen.items()), key=lambda t: (bin(t[0]).count("1"), t[0]))


class _Joiner:
    def __init__(self, G: PermGroup, budget: int):
        self.T = G.table
        self.n = G.order
        self.budget = budget
        self.count = 0

    def join(self, h_idx: np.ndarray, gens: list[int], g: int) -> np.ndarray | None:
        """Elements of <H, g> by coset enumeration over H, or None if g is in H."""
        self.count += 1
        if self.count > self.budget:
            raise CapExceeded(f"subgroup enumeration exceeded {self.budget} joins")
        T = self.T
        inK = np.zeros(self.n, dtype=bool)
        inK[h_idx] = True
        if inK[g]:
            return None
        allg = gens + [g]
        parts = [h_idx]
        reps = [0]

        def add(y):
            c = T[h_idx, y]
            inK[c] = True
            parts.append(c)
            reps.append(y)

        add(g)
        i = 1
        while i < len(reps):
            r = reps[i]
            for s in allg:
                y = int(T[r, s])
                if not inK[y]:
                    add(y)
            i += 1
        return np.sort(np.concatenate(parts))


def subgroup_lattice(G: PermGroup, budget: int = JOIN_BUDGET) -> SubgroupLattice:
    n = G.order
    conj = G.conj
    orders_of_elements = G.element_orders()
    joiner = _Joiner(G, budget)
    cyclic = _cyclic_subgroups(G)

    rep_masks: list[int] = []
    rep_idx: list[np.ndarray] = []
    rep_gens: list[list[int]] = []
    by_key: dict[tuple, list[int]] = defaultdict(list)
    max_edges: set[tuple[int, int]] = set()

    def key(idx):
        return (len(idx), np.bincount(orders_of_elements[idx]).tobytes())

    def classify(idx: np.ndarray, m: int, gens: list[int]) -> int:
        k = key(idx)
        conj_rows = conj[:, idx]
        for c in by_key[k]:
            inrep = np.zeros(n, dtype=bool)
            inrep[rep_idx[c]] = True
            if rep_masks[c] == m or inrep[conj_rows].all(axis=1).any():
                return c
        rep_masks.append(m)
        rep_idx.append(idx)
        rep_gens.append(gens)
        by_key[k].append(len(rep_masks) - 1)
        return len(rep_masks) - 1

    classify(np.array([0]), 1, [])
    c = 0
    while c < len(rep_masks):
        h_idx, h_mask, gens = rep_idx[c], rep_masks[c], rep_gens[c]
        over: dict[int, tuple[np.ndarray, int]] = {}
        for cm, g in cyclic:
            if is_subset(cm, h_mask):
                continue
            k_idx = joiner.join(h_idx, gens, g)
            km = mask_of(k_idx, n)
            over.setdefault(km, (k_idx, g))
        masks = sorted(over, key=lambda m: bin(m).count("1"))
        minimal = [m for i, m in enumerate(masks)
                   if not any(is_subset(o, m) and o != m for o in masks[:i])]
        for m in minimal:
            k_idx, g = over[m]
            kc = classify(k_idx, m, gens + [g])
            max_edges.add((c, kc))
        c += 1

    # expand representatives to all conjugates
    all_masks: dict[int, int] = {}
    conj_of_rep: list[list[int]] = []
    for c, idx in enumerate(rep_idx):
        rows = _masks_of_rows(conj[:, idx], n)
        conj_of_rep.append(rows)
        for m in rows:
            all_masks.setdefault(m, c)
    subgroups = sorted(all_masks, key=lambda m: (bin(m).count("1"), m))
    pos = {m: i for i, m in enumerate(subgroups)}
    class_of = [all_masks[m] for m in subgroups]
    classes: list[list[int]] = [[] for _ in rep_masks]
    for i, c in enumerate(class_of):
        classes[c].append(i)
    # renumber classes in subgroup order
    order_cls = sorted(range(len(classes)), key=lambda c: classes[c][0])
    renum = {old: new for new, old in enumerate(order_cls)}
    classes = [classes[old] for old in order_cls]
    class_of = [renum[c] for c in class_of]

    # covering edges: find the maximal subgroups of each representative, then conjugate
    by_order: dict[int, list[int]] = defaultdict(list)
    for m in subgroups:
        by_order[bin(m).count("1")].append(m)
    maxcls: dict[int, set[int]] = defaultdict(set)
    for h, k in max_edges:
        maxcls[k].add(h)
    edges: set[tuple[int, int]] = set()
    for b in range(len(rep_masks)):
        bm = rep_masks[b]
        ob = bin(bm).count("1")
        cands = [m for a in maxcls[b] for m in conj_of_rep[a] if is_subset(m, bm)]
        cands = list(dict.fromkeys(cands))
        maxes = []
        for s in cands:
            os_ = bin(s).count("1")
            between = (t for d, ts in by_order.items() if os_ < d < ob and d % os_ == 0 and ob % d == 0
                       for t in ts)
            if not any(is_subset(s, t) and is_subset(t, bm) for t in between):
                maxes.append(s)
        conj_b = conj_of_rep[b]
        for s in maxes:
            s_rows = _masks_of_rows(conj[:, indices_of(s, n)], n)
            for km, sm in zip(conj_b, s_rows):
                edges.add((pos[sm], pos[km]))

    return SubgroupLattice(
        group=G,
        subgroups=subgroups,
        orders=[bin(m).count("1") for m in subgroups],
        maximal_in=sorted(edges),
        classes=classes,
        class_of=class_of,
        joins=joiner.count,
    )


def subgroup_lattice_naive(G: PermGroup, budget: int = JOIN_BUDGET) -> list[int]:
    """All subgroups by closing cyclic subgroups under pairwise joins; no conjugacy shortcut."""
    n = G.order
    joiner = _Joiner(G, budget)
    cyclic = _cyclic_subgroups(G)
    found = {m for m, _ in cyclic}
    gens_of = {m: [g] for m, g in cyclic}
    queue = [m for m, _ in cyclic]
    while queue:
        h = queue.pop()
        h_idx = indices_of(h, n)
        for cm, g in cyclic:
            if is_subset(cm, h):
                continue
            k_idx = joiner.join(h_idx, gens_of[h], g)
            km = mask_of(k_idx, n)
            if km not in found:
                found.add(km)
                gens_of[km] = gens_of[h] + [g]
                queue.append(km)
    return sorted(found, key=lambda m: (bin(m).count("1"), m))


def covering_edges_naive(subgroups: list[int]) -> set[tuple[int, int]]:
    """Covering pairs of the inclusion order, by direct inclusion testing."""
    out = set()
    for k, km in enumerate(subgroups):
        below = [h for h in range(k) if is_subset(subgroups[h], km) and subgroups[h] != km]
        for h in below:
            hm = subgroups[h]
            if not any(is_subset(hm, subgroups[t]) and hm != subgroups[t] for t in below if t != h):
                out.add((h, k))
    return out


def chain_extremes(L: SubgroupLattice) -> tuple[int, int]:
    """Longest and shortest unrefinable chain from the whole group down to 1."""
    longest, shortest = chain_tables(L)
    return longest[L.top], shortest[L.top]


def chain_tables(L: SubgroupLattice) -> tuple[list[int], list[int]]:
    maxes: dict[int, list[int]] = defaultdict(list)
    for h, k in L.maximal_in:
        maxes[k].append(h)
    longest = [0] * len(L)
    shortest = [0] * len(L)
    # subgroups are sorted by order, so maximal subgroups come first
    for k in range(1, len(L)):
        longest[k] = 1 + max(longest[h] for h in maxes[k])
        shortest[k] = 1 + min(shortest[h] for h in maxes[k])
    return longest, shortest


def lattice_json(L: SubgroupLattice) -> str:
    longest, shortest = chain_tables(L)
    payload = {
        "group": L.group.name,
        "order": str(L.group.order),
        "subgroups": [
            {"id": str(i), "order": str(o), "class": str(L.class_of[i]),
             "l": str(longest[i]), "lambda": str(shortest[i])}
            for i, o in enumerate(L.orders)
        ],
        "maximal_in": [[str(h), str(k)] for h, k in L.maximal_in],
    }
    return json.dumps(payload, indent=1)


def lattice_dot(L: SubgroupLattice) -> str:
    lines = [f'digraph "{L.group.name}" {{', "  rankdir=BT;"]
    for i, o in enumerate(L.orders):
        lines.append(f'  s{i} [label="{o}"];')
    for h, k in L.maximal_in:
        lines.append(f"  s{h} -> s{k};")
    lines.append("}")
    return "\n".join(lines) + "\n"
