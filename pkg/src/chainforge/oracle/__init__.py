"""Brute-force ground truth on small permutation groups."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..catalog import GroupId, ValueOrRange, is_soluble, normalize, render
from .construct import construct, direct_product, psl2, pgl2, sl2, wreath_cyclic
from .lattice import (
    JOIN_BUDGET, SubgroupLattice, chain_extremes, lattice_dot, lattice_json, subgroup_lattice,
    subgroup_lattice_naive,
)
from .perm import MAX_DEGREE, ORDER_CAP, CapExceeded, Perm, PermGroup
from .structure import OracleReport, quotient_group, structure


def oracle_report(g: GroupId) -> tuple[OracleReport, SubgroupLattice]:
    G = construct(g)
    L = subgroup_lattice(G)
    return structure(G, L), L


@dataclass
class Verdict:
    group: str
    oracle: OracleReport
    agreements: list[str] = field(default_factory=list)
    containments: list[str] = field(default_factory=list)
    mismatches: list[str] = field(default_factory=list)
    uncovered: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {"group": self.group, "ok": self.ok, "agreements": self.agreements,
                "containments": self.containments, "mismatches": self.mismatches,
                "uncovered": self.uncovered}


def _compare(v: Verdict, name: str, oracle_value: int, engine: ValueOrRange) -> None:
    if engine.exact:
        if engine.low == oracle_value:
            v.agreements.append(f"{name}={oracle_value}")
        else:
            v.mismatches.append(f"{name}: oracle {oracle_value}, engine {engine.render()}")
    elif engine.contains(oracle_value):
        v.containments.append(f"{name}={oracle_value} in {engine.render()}")
    else:
        v.mismatches.append(f"{name}: oracle {oracle_value} outside engine {engine.render()}")


def verify_against_engines(g: GroupId, report: OracleReport | None = None) -> Verdict:
    """Compare oracle values with the length, depth and chain engines."""
    from .. import chains, depth
    from ..length import NotCovered

    g = normalize(g)
    rep = report or oracle_report(g)[0]
    v = Verdict(render(g), rep)
    try:
        r = chains.report(g)
    except NotCovered as exc:
        v.uncovered.append(str(exc))
        return v
    _compare(v, "l", rep.l, r.length)
    _compare(v, "lambda", rep.lam, r.depth)
    _compare(v, "cd", rep.cd, r.cd)
    try:
        _compare(v, "chief_length", rep.chief_length, ValueOrRange.exact_value(depth.chief_length_of(g)))
    except (NotImplementedError, ValueError) as exc:
        v.uncovered.append(f"chief_length: {exc}")
    if is_soluble(g) != rep.soluble:
        v.mismatches.append(f"soluble: oracle {rep.soluble}, catalog {is_soluble(g)}")
    else:
        v.agreements.append(f"soluble={rep.soluble}")
    if r.supersoluble is not None:
        if r.supersoluble != rep.supersoluble:
            v.mismatches.append(f"supersoluble: oracle {rep.supersoluble}, engine {r.supersoluble}")
        else:
            v.agreements.append(f"supersoluble={rep.supersoluble}")
    return v


__all__ = [
    "CapExceeded", "JOIN_BUDGET", "MAX_DEGREE", "ORDER_CAP", "OracleReport", "Perm", "PermGroup",
    "SubgroupLattice", "Verdict", "chain_extremes", "construct", "direct_product", "lattice_dot",
    "lattice_json", "oracle_report", "pgl2", "psl2", "quotient_group", "sl2", "structure",
    "subgroup_lattice", "subgroup_lattice_naive", "verify_against_engines", "wreath_cyclic",
]
