"""Realization of prescribed part sizes and part sums inside a finite Abelian group.

Given a domain D (e.g. all nonzero elements), sizes m_1..m_t with
sum |D| and targets w_1..w_t, find disjoint S_i covering D with
|S_i| = m_i and sum(S_i) = w_i.

The exact search works on element indices.  At each node the smallest
unused element opens a new part; we branch over which *kind* of part
(distinct (size, target) pair) it opens, and then fill the part with
larger unused elements in increasing order.  The last slot of a part is
forced (target minus partial sum) and looked up directly.  The final
remaining part is never searched: it is the set of unused elements, and
its sum is fixed by the global sum check.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .groups import Element, Group, element_sum

DEFAULT_BUDGET = 5_000_000


class Status(str, Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"  # proven by completed search or sum argument
    INFEASIBLE_NECESSARY = "infeasible-necessary-condition"
    UNKNOWN = "unknown"

    @property
    def is_infeasible(self) -> bool:
        return self in (Status.INFEASIBLE, Status.INFEASIBLE_NECESSARY)


class InvalidInstanceError(ValueError):
    pass


class BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class RealizationInstance:
    group: Group
    domain: tuple[Element, ...]
    sizes: tuple[int, ...]
    targets: tuple[Element, ...]

    def __post_init__(self):
        G = self.group
        if len(self.sizes) != len(self.targets):
            raise InvalidInstanceError("sizes and targets differ in length")
        if any(m < 1 for m in self.sizes):
            raise InvalidInstanceError("part sizes must be >= 1")
        if any(e.group != G for e in self.domain) or any(w.group != G for w in self.targets):
            raise InvalidInstanceError("all elements must lie in the instance group")
        if len(set(self.domain)) != len(self.domain):
            raise InvalidInstanceError("domain has repeated elements")
        if sum(self.sizes) != len(self.domain):
            raise InvalidInstanceError(
                f"sizes sum to {sum(self.sizes)} but the domain has {len(self.domain)} elements"
            )

    @classmethod
    def build(cls, group: Group, domain: Iterable, sizes: Sequence[int], targets: Sequence | None = None):
        dom = tuple(sorted(group.element(d) for d in domain))
        if targets is None:
            targets = [group.zero] * len(sizes)
        return cls(group, dom, tuple(int(s) for s in sizes), tuple(group.element(t) for t in targets))

    @classmethod
    def zero_sum(cls, group: Group, sizes: Sequence[int], domain: Iterable | None = None):
        """Zero targets; domain defaults to the nonzero elements."""
        if domain is None:
            domain = group.nonzero
        return cls.build(group, domain, sizes)


@dataclass
class SubsetPartition:
    parts: list[tuple[Element, ...]]

    def to_json(self):
        return [[e.to_json() for e in p] for p in self.parts]


@dataclass
class FeasibilityVerdict:
    status: Status
    witness: SubsetPartition | None = None
    reason: str = ""
    nodes: int = 0

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE


def domain_from_name(group: Group, name: str) -> tuple[Element, ...]:
    """'star' = nonzero elements, 'all' = whole group, 'R' = nonzero non-involutions."""
    if name in ("star", "gamma*", "nonzero"):
        return group.nonzero
    if name in ("all", "gamma", "group"):
        return group.elements
    if name in ("R", "r"):
        return group.r_set()
    raise ValueError(f"unknown domain {name!r}")


def necessary_conditions(inst: RealizationInstance) -> FeasibilityVerdict:
    G = inst.group
    dom_sum = element_sum(inst.domain, G)
    tgt_sum = element_sum(inst.targets, G)
    if dom_sum != tgt_sum:
        return FeasibilityVerdict(
            Status.INFEASIBLE_NECESSARY, reason=f"sum-mismatch: domain sums to {dom_sum!r}, targets to {tgt_sum!r}"
        )
    domain = set(inst.domain)
    for m, w in zip(inst.sizes, inst.targets):
        if m == 1 and w not in domain:
            return FeasibilityVerdict(
                Status.INFEASIBLE_NECESSARY, reason=f"singleton-target-missing: {w!r} not in domain"
            )
    singles = Counter(w for m, w in zip(inst.sizes, inst.targets) if m == 1)
    if any(c > 1 for c in singles.values()):
        return FeasibilityVerdict(Status.INFEASIBLE_NECESSARY, reason="repeated-singleton-target")
    return FeasibilityVerdict(Status.UNKNOWN, reason="necessary-conditions-pass")


def verify_partition(inst: RealizationInstance, p: SubsetPartition) -> bool:
    """Independent check of a claimed witness; parts are matched to sizes in order."""
    if len(p.parts) != len(inst.sizes):
        return False
    G = inst.group
    seen: list[Element] = []
    for part, m, w in zip(p.parts, inst.sizes, inst.targets):
        if len(part) != m or len(set(part)) != m:
            return False
        if any(e.group != G for e in part):
            return False
        if element_sum(part, G) != w:
            return False
        seen.extend(part)
    return len(seen) == len(set(seen)) and set(seen) == set(inst.domain)


class _Search:
    """Index-level exact search; raises BudgetExhausted past the node budget."""

    def __init__(self, group: Group, domain_idx: list[int], kinds: list[tuple[int, int]],
                 counts: list[int], budget: int):
        self.n = group.order
        self.add = group.add_table
        self.neg = group.neg_table
        self.free = [False] * self.n
        for i in domain_idx:
            self.free[i] = True
        self.kinds = kinds
        self.counts = counts
        self.parts_left = sum(counts)
        self.budget = budget
        self.nodes = 0
        self.chosen: list[tuple[int, list[int]]] = []

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted

    def run(self) -> bool:
        return self._rec()

    def _rec(self) -> bool:
        if self.parts_left == 0:
            return True
        if self.parts_left == 1:
            k = next(i for i, c in enumerate(self.counts) if c)
            rest = [i for i in range(self.n) if self.free[i]]
            # sizes and global sum were checked up front, so this always holds
            self.chosen.append((k, rest))
            return True
        x = self.free.index(True)
        free = self.free
        free[x] = False
        for k, (size, target) in enumerate(self.kinds):
            if not self.counts[k]:
                continue
            self.tick()
            self.counts[k] -= 1
            self.parts_left -= 1
            part = [x]
            if size == 1:
                if target == x:
                    self.chosen.append((k, part))
                    if self._rec():
                        return True
                    self.chosen.pop()
            elif self._fill(k, part, size - 1, x, x, target):
                return True
            self.counts[k] += 1
            self.parts_left += 1
        free[x] = True
        return False

    def _fill(self, k: int, part: list[int], slots: int, last: int, partial: int, target: int) -> bool:
        free = self.free
        add = self.add
        if slots == 1:
            y = add[target][self.neg[partial]]
            if y > last and free[y]:
                free[y] = False
                part.append(y)
                self.chosen.append((k, part))
                if self._rec():
                    return True
                self.chosen.pop()
                part.pop()
                free[y] = True
            return False
        # leave room for slots-1 larger elements after y
        for y in range(last + 1, self.n - slots + 1):
            if not free[y]:
                continue
            self.tick()
            free[y] = False
            part.append(y)
            if self._fill(k, part, slots - 1, y, add[partial][y], target):
                return True
            part.pop()
            free[y] = True
        return False


def _kinds(inst: RealizationInstance) -> tuple[list[tuple[int, int]], list[int], list[list[int]]]:
    """Group parts by (size, target); larger sizes first.  Also return the
    original part positions for each kind so witnesses can be reported in
    the caller's order."""
    positions: dict[tuple[int, int], list[int]] = {}
    for pos, (m, w) in enumerate(zip(inst.sizes, inst.targets)):
        positions.setdefault((m, w.index), []).append(pos)
    keys = sorted(positions, key=lambda kw: (-kw[0], kw[1]))
    return keys, [len(positions[k]) for k in keys], [positions[k] for k in keys]


def realize_partition(inst: RealizationInstance, budget: int = DEFAULT_BUDGET) -> FeasibilityVerdict:
    pre = necessary_conditions(inst)
    if pre.status is Status.INFEASIBLE_NECESSARY:
        # the necessary conditions are themselves proofs of infeasibility
        return FeasibilityVerdict(Status.INFEASIBLE, reason=pre.reason)
    G = inst.group
    kinds, counts, positions = _kinds(inst)
    search = _Search(G, [e.index for e in inst.domain], kinds, counts, budget)
    try:
        found = search.run()
    except BudgetExhausted:
        return FeasibilityVerdict(Status.UNKNOWN, reason="budget-exhausted", nodes=search.nodes)
    if not found:
        return FeasibilityVerdict(Status.INFEASIBLE, reason="search-exhausted", nodes=search.nodes)
    parts: list[tuple[Element, ...]] = [()] * len(inst.sizes)
    queues = [list(p) for p in positions]
    for k, idx in search.chosen:
        pos = queues[k].pop(0)
        parts[pos] = tuple(G.elements[i] for i in sorted(idx))
    witness = SubsetPartition(parts)
    assert verify_partition(inst, witness), "solver produced an invalid witness"
    return FeasibilityVerdict(Status.FEASIBLE, witness, reason="search", nodes=search.nodes)


def disjoint_subsets(group: Group, domain: Iterable, sizes: Sequence[int], targets: Sequence | None = None,
                     budget: int = DEFAULT_BUDGET) -> FeasibilityVerdict:
    """Pairwise disjoint subsets of the domain with given sizes and sums, not required to cover it.

    Reduced to a covering instance with one extra part holding the leftover
    elements; the leftover part is dropped from the returned witness.
    """
    dom = tuple(sorted(group.element(d) for d in domain))
    if targets is None:
        targets = [group.zero] * len(sizes)
    targets = [group.element(t) for t in targets]
    spare = len(dom) - sum(sizes)
    if spare < 0:
        return FeasibilityVerdict(Status.INFEASIBLE, reason="sizes-exceed-domain")
    if spare == 0:
        return realize_partition(RealizationInstance(group, dom, tuple(sizes), tuple(targets)), budget)
    leftover = element_sum(dom, group) - element_sum(targets, group)
    inst = RealizationInstance(group, dom, tuple(sizes) + (spare,), tuple(targets) + (leftover,))
    v = realize_partition(inst, budget)
    if v.witness is not None:
        v.witness = SubsetPartition(v.witness.parts[:-1])
    return v


def heuristic_realize(inst: RealizationInstance, seed: int = 0, max_steps: int = 200_000,
                      restarts: int = 20) -> FeasibilityVerdict:
    """Randomized greedy fill plus swap repair.  Never proves infeasibility."""
    pre = necessary_conditions(inst)
    if pre.status is Status.INFEASIBLE_NECESSARY:
        return pre
    G = inst.group
    add, neg = G.add_table, G.neg_table
    rng = random.Random(seed)
    targets = [w.index for w in inst.targets]
    sizes = list(inst.sizes)
    t = len(sizes)
    dom = [e.index for e in inst.domain]

    def part_sum(p):
        s = 0
        for i in p:
            s = add[s][i]
        return s

    steps_per_restart = max(1, max_steps // restarts)
    for _ in range(restarts):
        pool = dom[:]
        rng.shuffle(pool)
        parts: list[list[int]] = []
        # greedy: fill each part randomly but close it with the forced element when available
        remaining = set(pool)
        for m, w in zip(sizes, targets):
            part = []
            cand = [x for x in pool if x in remaining]
            for x in cand[: m - 1]:
                part.append(x)
                remaining.discard(x)
            need = add[w][neg[part_sum(part)]]
            if need in remaining:
                part.append(need)
                remaining.discard(need)
            else:
                x = next(x for x in pool if x in remaining)
                part.append(x)
                remaining.discard(x)
            parts.append(part)
        sums = [part_sum(p) for p in parts]
        bad = {i for i in range(t) if sums[i] != targets[i]}
        for _ in range(steps_per_restart):
            if not bad:
                break
            i = rng.choice(sorted(bad))
            j = rng.randrange(t)
            if i == j:
                continue
            a = rng.randrange(sizes[i])
            b = rng.randrange(sizes[j])
            x, y = parts[i][a], parts[j][b]
            si = add[add[sums[i]][neg[x]]][y]
            sj = add[add[sums[j]][neg[y]]][x]
            before = (sums[i] != targets[i]) + (sums[j] != targets[j])
            after = (si != targets[i]) + (sj != targets[j])
            if after <= before or rng.random() < 0.05:
                parts[i][a], parts[j][b] = y, x
                sums[i], sums[j] = si, sj
                for k in (i, j):
                    if sums[k] == targets[k]:
                        bad.discard(k)
                    else:
                        bad.add(k)
        if not bad:
            witness = SubsetPartition([tuple(G.elements[x] for x in sorted(p)) for p in parts])
            assert verify_partition(inst, witness)
            return FeasibilityVerdict(Status.FEASIBLE, witness, reason=f"heuristic seed={seed}")
    return FeasibilityVerdict(Status.UNKNOWN, reason=f"heuristic gave up seed={seed}")


@dataclass
class ConstantSumResult:
    verdict: FeasibilityVerdict
    common_sum: Element | None = None
    tried: list[Element] = field(default_factory=list)


def constant_sum_partition(group: Group, sizes: Sequence[int], include_zero: bool = True,
                           budget: int = DEFAULT_BUDGET) -> ConstantSumResult:
    """Partition the group (or its nonzero part) into parts of the given sizes, all with one common sum."""
    domain = group.elements if include_zero else group.nonzero
    if sum(sizes) != len(domain):
        raise InvalidInstanceError("sizes do not sum to the domain size")
    t = len(sizes)
    dom_sum = element_sum(domain, group)
    tried = []
    any_unknown = False
    for nu in group.elements:
        if t * nu != dom_sum:
            continue
        tried.append(nu)
        inst = RealizationInstance(group, tuple(domain), tuple(sizes), (nu,) * t)
        v = realize_partition(inst, budget)
        if v.feasible:
            return ConstantSumResult(v, nu, tried)
        if v.status is Status.UNKNOWN:
            any_unknown = True
    status = Status.UNKNOWN if any_unknown else Status.INFEASIBLE
    reason = "no common sum candidate" if not tried else "all candidate sums exhausted"
    return ConstantSumResult(FeasibilityVerdict(status, reason=reason), None, tried)


def certificate(inst: RealizationInstance, verdict: FeasibilityVerdict, **extra) -> dict:
    cert = {
        "group": inst.group.to_json(),
        "domain": [e.to_json() for e in inst.domain],
        "sizes": list(inst.sizes),
        "targets": [w.to_json() for w in inst.targets],
        "parts": verdict.witness.to_json() if verdict.witness else None,
        "status": verdict.status.value,
        "reason": verdict.reason,
    }
    cert.update(extra)
    return cert


def instance_from_certificate(cert: dict) -> tuple[RealizationInstance, SubsetPartition | None]:
    G = Group(cert["group"])
    inst = RealizationInstance.build(G, cert["domain"], cert["sizes"], cert["targets"])
    parts = cert.get("parts")
    p = SubsetPartition([tuple(G.element(e) for e in part) for part in parts]) if parts else None
    return inst, p


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
