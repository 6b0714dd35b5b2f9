"""Skolem sequences, good 6-subsets and Skolem partitions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import Element, Group, element_sum, enumerate_abelian_groups, sylow2_decomposition
from .solver import (
    DEFAULT_BUDGET,
    BudgetExhausted,
    FeasibilityVerdict,
    InvalidInstanceError,
    Status,
    SubsetPartition,
)


class MalformedSequenceError(ValueError):
    pass


def is_skolem_sequence(seq: Sequence[int]) -> bool:
    if len(seq) % 2:
        raise MalformedSequenceError(f"a Skolem sequence has even length, got {len(seq)}")
    n = len(seq) // 2
    positions: dict[int, list[int]] = {}
    for i, v in enumerate(seq):
        positions.setdefault(v, []).append(i)
    if set(positions) != set(range(1, n + 1)):
        return False
    return all(len(p) == 2 and p[1] - p[0] == k for k, p in positions.items())


def find_skolem_sequence(n: int) -> list[int] | None:
    """Backtracking, placing n first.  None means no sequence exists."""
    if n < 1:
        raise ValueError("order must be >= 1")
    seq = [0] * (2 * n)

    def place(k: int) -> bool:
        if k == 0:
            return True
        for i in range(2 * n - k):
            if seq[i] == 0 and seq[i + k] == 0:
                seq[i] = seq[i + k] = k
                if place(k - 1):
                    return True
                seq[i] = seq[i + k] = 0
        return False

    return seq if place(n) else None


@dataclass(frozen=True)
class GoodSixSubset:
    c: Element
    d: Element

    @property
    def members(self) -> tuple[Element, ...]:
        c, d = self.c, self.d
        return (c, d, -c - d, -c, -d, c + d)

    def pairs(self) -> list[tuple[Element, Element]]:
        c, d = self.c, self.d
        return [(c, -c), (d, -d), (c + d, -c - d)]

    def triples(self) -> list[tuple[Element, Element, Element]]:
        c, d = self.c, self.d
        return [(c, d, -c - d), (-c, -d, c + d)]

    def to_json(self):
        return {"c": self.c.to_json(), "d": self.d.to_json(), "members": [m.to_json() for m in self.members]}


def good_six(group: Group, c, d) -> GoodSixSubset | None:
    c, d = group.element(c), group.element(d)
    if c.is_zero() or d.is_zero():
        raise ValueError("generators must be nonzero")
    C = GoodSixSubset(c, d)
    if len(set(C.members)) != 6:
        return None
    assert element_sum(C.members, group).is_zero()
    return C


def refine_good_six(C: GoodSixSubset, mode: str) -> SubsetPartition:
    if mode == "pairs":
        parts = [tuple(p) for p in C.pairs()]
    elif mode == "triples":
        parts = [tuple(t) for t in C.triples()]
    else:
        raise ValueError("mode is 'pairs' or 'triples'")
    G = C.c.group
    assert all(element_sum(p, G).is_zero() for p in parts)
    return SubsetPartition(parts)


@dataclass
class SkolemPartition:
    six_parts: list[GoodSixSubset]
    two_parts: list[tuple[Element, Element]]

    def members(self) -> list[Element]:
        out = [m for C in self.six_parts for m in C.members]
        out += [e for p in self.two_parts for e in p]
        return out

    def to_json(self):
        return {
            "six_parts": [C.to_json() for C in self.six_parts],
            "two_parts": [[a.to_json(), b.to_json()] for a, b in self.two_parts],
        }


@dataclass
class SkolemVerdict:
    status: Status
    partition: SkolemPartition | None = None
    reason: str = ""
    nodes: int = 0

    @property
    def feasible(self) -> bool:
        return self.status is Status.FEASIBLE


def skolem_shape(group: Group, domain: Sequence[Element], is_gamma_star: bool) -> tuple[int, int]:
    """Return (number of good 6-subsets, number of zero-sum pairs) required."""
    size = len(domain)
    if size % 2 == 1:
        raise InvalidInstanceError(f"no Skolem partition shape for a domain of odd size {size}")
    if is_gamma_star and group.order % 2 == 0:
        raise InvalidInstanceError("Skolem partitions of the nonzero elements need odd group order")
    return size // 6, (size % 6) // 2


def verify_skolem_partition(group: Group, domain: Iterable[Element], sp: SkolemPartition,
                            is_gamma_star: bool = False) -> bool:
    domain = list(domain)
    k, pairs = skolem_shape(group, domain, is_gamma_star)
    if len(sp.six_parts) != k or len(sp.two_parts) != pairs:
        return False
    for C in sp.six_parts:
        if len(set(C.members)) != 6 or not element_sum(C.members, group).is_zero():
            return False
    for a, b in sp.two_parts:
        if a == b or not (a + b).is_zero():
            return False
    mem = sp.members()
    return len(mem) == len(set(mem)) and set(mem) == set(domain)


def skolem_partition(group: Group, domain="star", budget: int = DEFAULT_BUDGET) -> SkolemVerdict:
    """Exact search for a cover of the domain by good 6-subsets and zero-sum pairs.

    domain: "star" (nonzero elements, odd order), "R" (nonzero non-involutions)
    or an explicit iterable of elements.
    """
    is_star = False
    if isinstance(domain, str):
        if domain == "star":
            dom = list(group.nonzero)
            is_star = True
        elif domain == "R":
            dom = list(group.r_set())
        else:
            raise ValueError(f"unknown domain {domain!r}")
    else:
        dom = sorted(group.element(e) for e in domain)
        if group.order % 2 == 1 and set(dom) == set(group.nonzero):
            is_star = True
    six_needed, pairs_needed = skolem_shape(group, dom, is_star)

    add, neg = group.add_table, group.neg_table
    n = group.order
    free = [False] * n
    for e in dom:
        free[e.index] = True
    chosen_six: list[tuple[int, int]] = []
    chosen_two: list[tuple[int, int]] = []
    nodes = 0

    def rec(six: int, two: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted
        if six == 0 and two == 0:
            return True
        x = free.index(True)
        nx = neg[x]
        if nx == x or not free[nx]:
            return False  # x can sit in neither a pair nor a 6-subset
        free[x] = free[nx] = False
        if two:
            chosen_two.append((x, nx))
            if rec(six, two - 1):
                return True
            chosen_two.pop()
        if six:
            # the 6-subset through x is {±x, ±y, ±(x+y)} for some y
            for y in range(x + 1, n):
                if not free[y]:
                    continue
                ny = neg[y]
                z = add[x][y]
                nz = neg[z]
                if len({x, nx, y, ny, z, nz}) != 6:
                    continue
                if not (free[ny] and free[z] and free[nz]):
                    continue
                if nz < y:
                    continue  # y and -(x+y) generate the same 6-subset; keep the smaller
                free[y] = free[ny] = free[z] = free[nz] = False
                chosen_six.append((x, y))
                if rec(six - 1, two):
                    return True
                chosen_six.pop()
                free[y] = free[ny] = free[z] = free[nz] = True
        free[x] = free[nx] = True
        return False

    try:
        found = rec(six_needed, pairs_needed)
    except BudgetExhausted:
        return SkolemVerdict(Status.UNKNOWN, reason="budget-exhausted", nodes=nodes)
    if not found:
        return SkolemVerdict(Status.INFEASIBLE, reason="search-exhausted", nodes=nodes)
    E = group.elements
    sp = SkolemPartition(
        [GoodSixSubset(E[x], E[y]) for x, y in chosen_six],
        [(E[a], E[b]) for a, b in chosen_two],
    )
    assert verify_skolem_partition(group, dom, sp, is_star)
    return SkolemVerdict(Status.FEASIBLE, sp, reason="search", nodes=nodes)


def in_known_positive_family(group: Group) -> bool:
    """Gamma = (Z_2)^eta x H with eta > 1 and |H| = 1 mod 6: R is known to have a Skolem partition."""
    split = sylow2_decomposition(group)
    L, H = split.sylow2, split.odd
    elementary = all(m == 2 for m in L.moduli)
    return elementary and len(L.moduli) > 1 and H.order % 6 == 1


@dataclass
class RSkolemRow:
    group: Group
    involutions: int
    r_size: int
    status: Status
    known_positive: bool
    partition: SkolemPartition | None


def characterize_R_skolem(max_order: int, budget: int = DEFAULT_BUDGET,
                          min_order: int = 2) -> list[RSkolemRow]:
    rows = []
    for n in range(max(2, min_order), max_order + 1):
        for G in enumerate_abelian_groups(n):
            if G.involution_count < 1:
                continue
            v = skolem_partition(G, "R", budget)
            known = in_known_positive_family(G)
            if known and v.status is Status.INFEASIBLE:
                raise AssertionError(f"{G}: known positive family but search found no Skolem partition of R")
            rows.append(RSkolemRow(G, G.involution_count, len(G.r_set()), v.status, known, v.partition))
    return rows


def r_skolem_cyclic(m: int, budget: int = DEFAULT_BUDGET) -> SkolemVerdict:
    return skolem_partition(Group([m]), "R", budget)
