"""Zero-sum partition properties checked exhaustively at small order.

A group has the x-ZSPP when every integer partition of |G|-1 with all
parts >= x is realized by disjoint zero-sum subsets covering the nonzero
elements.  The checkers below enumerate the relevant size vectors, call
the exact solver for each, and compare the outcome with the known
characterizations.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Iterable, Sequence

from .groups import Group, enumerate_abelian_groups, sylow2_decomposition
from .partitions import integer_partitions
from .solver import (
    DEFAULT_BUDGET,
    FeasibilityVerdict,
    RealizationInstance,
    Status,
    realize_partition,
)

# (group moduli, domain tag, sorted sizes) -> verdict; zero-target feasibility
# only depends on the size multiset
_CACHE: dict[tuple, FeasibilityVerdict] = {}


def clear_cache() -> None:
    _CACHE.clear()


def solve_zero_sum(group: Group, sizes: Sequence[int], domain: str = "star",
                   budget: int = DEFAULT_BUDGET) -> FeasibilityVerdict:
    sizes = tuple(sorted(sizes, reverse=True))
    key = (group.moduli, domain, sizes)
    hit = _CACHE.get(key)
    # a cached Unknown may resolve under a bigger budget
    if hit is not None and not (hit.status is Status.UNKNOWN and hit.nodes < budget):
        return hit
    if domain == "star":
        dom = group.nonzero
    elif domain == "all":
        dom = group.elements
    elif domain == "R1":
        # one-involution setting: drop 0 and the involution
        inv = group.involutions
        dom = tuple(g for g in group.nonzero if g not in inv)
    else:
        raise ValueError(domain)
    v = realize_partition(RealizationInstance.zero_sum(group, sizes, dom), budget)
    _CACHE[key] = v
    return v


@dataclass
class PropertyVerdict:
    property: str
    group: Group
    holds: bool | None  # None = unknown
    counterexample: tuple[int, ...] | None = None
    counterexample_verdict: FeasibilityVerdict | None = None
    witness_count: int = 0
    expected: bool | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.holds is None:
            return "unknown"
        return "holds" if self.holds else "fails"

    @property
    def matches_expected(self) -> bool | None:
        if self.expected is None or self.holds is None:
            return None
        return self.holds == self.expected

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "group": self.group.to_json(),
            "involutions": self.group.involution_count,
            "verdict": self.status,
            "expected": None if self.expected is None else ("holds" if self.expected else "fails"),
            "counterexample": list(self.counterexample) if self.counterexample else None,
            "witness_count": self.witness_count,
            "notes": self.notes,
        }

    def to_line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _check_size_vectors(name: str, group: Group, vectors: Iterable[tuple[int, ...]], domain: str,
                        budget: int) -> PropertyVerdict:
    # many-small-parts vectors first: they are where failures live
    vectors = sorted(vectors, key=lambda p: (-len(p), p))
    count = 0
    unknown = False
    for sizes in vectors:
        v = solve_zero_sum(group, sizes, domain, budget)
        if v.feasible:
            count += 1
        elif v.status.is_infeasible:
            return PropertyVerdict(name, group, False, sizes, v, count)
        else:
            unknown = True
    if unknown:
        return PropertyVerdict(name, group, None, witness_count=count, notes=["budget exhausted on a sub-instance"])
    return PropertyVerdict(name, group, True, witness_count=count)


def has_x_zspp(group: Group, x: int, budget: int = DEFAULT_BUDGET) -> PropertyVerdict:
    if x < 1:
        raise ValueError("x must be >= 1")
    return _check_size_vectors(f"{x}-ZSPP", group, integer_partitions(group.order - 1, x), "star", budget)


def _require_many_involutions(group: Group) -> None:
    if group.involution_count <= 1:
        raise ValueError(f"{group} has {group.involution_count} involutions; this check needs more than one")


def _groups_in_range(lo: int, hi: int, pred: Callable[[Group], bool] = lambda G: True) -> list[Group]:
    return [G for n in range(lo, hi + 1) for G in enumerate_abelian_groups(n) if G.moduli and pred(G)]


def _map(fn, items, workers: int):
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def _zeng_one(G: Group, budget: int = DEFAULT_BUDGET) -> PropertyVerdict:
    v = has_x_zspp(G, 2, budget)
    v.property = "zeng-2-ZSPP"
    v.expected = G.involution_count in (0, 3)
    return v


def check_zeng(max_order: int, workers: int = 1, min_order: int = 3,
               budget: int = DEFAULT_BUDGET) -> list[PropertyVerdict]:
    """2-ZSPP holds iff the group has 0 or 3 involutions; one verdict per group."""
    rows = _map(partial(_zeng_one, budget=budget), _groups_in_range(min_order, max_order), workers)
    return sorted(rows, key=lambda r: (r.group.order, r.group.moduli))


def mixed_23_vectors(group: Group) -> list[tuple[int, ...]]:
    """Size vectors with parts >= 2 and at most |R|/2 parts equal to 2 (the rest >= 3)."""
    r_half = len(group.r_set()) // 2
    return [p for p in integer_partitions(group.order - 1, 2) if p.count(2) <= r_half]


def check_mixed_23(group: Group, budget: int = DEFAULT_BUDGET) -> PropertyVerdict:
    _require_many_involutions(group)
    v = _check_size_vectors("mixed-2/3", group, mixed_23_vectors(group), "star", budget)
    v.expected = group.involution_count in (3, group.order - 1)
    return v


def sylow_h_residue(group: Group) -> int:
    return sylow2_decomposition(group).odd.order % 6


def check_3zspp_conjecture(group: Group, budget: int = DEFAULT_BUDGET) -> PropertyVerdict:
    _require_many_involutions(group)
    v = has_x_zspp(group, 3, budget)
    v.property = "3-ZSPP-conjecture"
    h = sylow_h_residue(group)
    if h in (1, 3):
        v.expected = True
        v.notes.append(f"|H| mod 6 = {h}: proved case")
    else:
        v.notes.append(f"|H| mod 6 = {h}: open case")
    return v


def check_4zspp(group: Group, budget: int = DEFAULT_BUDGET) -> PropertyVerdict:
    _require_many_involutions(group)
    v = has_x_zspp(group, 4, budget)
    v.property = "4-ZSPP"
    v.expected = True
    if v.holds is False:
        raise AssertionError(f"{group}: 4-ZSPP fails on {v.counterexample}, contradicting a proved theorem")
    return v


def check_divisor_partition(group: Group, m: int, budget: int = DEFAULT_BUDGET) -> PropertyVerdict:
    _require_many_involutions(group)
    if m <= 2 or group.order % m:
        raise ValueError("need m > 2 dividing the group order")
    sizes = (m,) * (group.order // m)
    v = solve_zero_sum(group, sizes, "all", budget)
    holds = True if v.feasible else (False if v.status.is_infeasible else None)
    pv = PropertyVerdict(f"divisor-partition-{m}", group, holds, witness_count=int(v.feasible), expected=True)
    if holds is False:
        pv.counterexample, pv.counterexample_verdict = sizes, v
    pv.notes.append(json.dumps(v.witness.to_json()) if v.witness else v.reason)
    return pv


def triple_pair_vectors(n: int) -> list[tuple[int, ...]]:
    """All (3^m, 2^l) with 3m + 2l = n - 2."""
    out = []
    for m in range((n - 2) // 3 + 1):
        rest = n - 2 - 3 * m
        if rest % 2 == 0:
            out.append((3,) * m + (2,) * (rest // 2))
    return out


@dataclass
class OneInvolutionReport:
    group: Group
    conjecture: PropertyVerdict  # all parts >= 2 on R
    parts_ge4: PropertyVerdict  # all parts >= 4 (proved)
    cyclic_23: PropertyVerdict | None  # 3-sets and 2-sets for cyclic groups (proved)

    def rows(self) -> list[PropertyVerdict]:
        return [r for r in (self.conjecture, self.parts_ge4, self.cyclic_23) if r is not None]


def check_one_involution(group: Group, budget: int = DEFAULT_BUDGET) -> OneInvolutionReport:
    if group.involution_count != 1:
        raise ValueError(f"{group} does not have exactly one involution")
    n = group.order
    conj = _check_size_vectors("one-involution-conjecture", group, integer_partitions(n - 2, 2), "R1", budget)
    ge4 = _check_size_vectors("one-involution-parts>=4", group, integer_partitions(n - 2, 4), "R1", budget)
    ge4.expected = True
    if ge4.holds is False:
        raise AssertionError(f"{group}: parts >= 4 realization fails on {ge4.counterexample}")
    cyc = None
    if len(group.moduli) == 1:
        cyc = _check_size_vectors("cyclic-3/2-sets", group, triple_pair_vectors(n), "R1", budget)
        cyc.expected = True
        if cyc.holds is False:
            raise AssertionError(f"{group}: 3-set/2-set split fails on {cyc.counterexample}")
    return OneInvolutionReport(group, conj, ge4, cyc)


def monotonicity_consistent(group: Group, max_x: int | None = None, budget: int = DEFAULT_BUDGET) -> bool:
    """x-ZSPP must imply x'-ZSPP for every x' >= x."""
    max_x = max_x or group.order - 1
    seen_hold = False
    for x in range(1, max_x + 1):
        holds = has_x_zspp(group, x, budget).holds
        if seen_hold and holds is False:
            return False
        seen_hold = seen_hold or bool(holds)
    return True
