"""Orthomorphisms and complete mappings of finite Abelian groups.

Additive notation: for a permutation phi of G, its difference map is
theta(g) = phi(g) - g.  phi is an orthomorphism when theta is also a
bijection, and then theta is a complete mapping (g -> g + theta(g) = phi(g)
is bijective).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .groups import Element, Group, sylow2_decomposition
from .solver import DEFAULT_BUDGET, BudgetExhausted, RealizationInstance, Status, realize_partition


class InvalidPermutationError(ValueError):
    pass


class ConstructionUnavailable(RuntimeError):
    pass


@dataclass(frozen=True)
class GroupPermutation:
    group: Group
    images: tuple[int, ...]  # images[i] = index of the image of element i

    @classmethod
    def from_mapping(cls, group: Group, mapping: Mapping) -> "GroupPermutation":
        images = [None] * group.order
        for k, v in mapping.items():
            images[group.element(k).index] = group.element(v).index
        if any(i is None for i in images):
            raise InvalidPermutationError("mapping is not total on the group")
        return cls(group, tuple(images))

    @classmethod
    def from_function(cls, group: Group, fn) -> "GroupPermutation":
        return cls(group, tuple(group.element(fn(g)).index for g in group.elements))

    def __call__(self, g: Element) -> Element:
        return self.group.elements[self.images[g.index]]

    def is_bijective(self) -> bool:
        return sorted(self.images) == list(range(self.group.order))

    def to_json(self) -> list:
        E = self.group.elements
        return [[E[i].to_json(), E[j].to_json()] for i, j in enumerate(self.images)]


def cycle_structure(p: GroupPermutation) -> list[int]:
    """Cycle lengths, sorted increasingly; they sum to |G|."""
    if not p.is_bijective():
        raise InvalidPermutationError("not a bijection")
    seen = [False] * len(p.images)
    lengths = []
    for start in range(len(p.images)):
        if seen[start]:
            continue
        n = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = p.images[i]
            n += 1
        lengths.append(n)
    return sorted(lengths)


def cycles(p: GroupPermutation) -> list[tuple[Element, ...]]:
    E = p.group.elements
    seen = set()
    out = []
    for start in range(len(p.images)):
        if start in seen:
            continue
        cyc = []
        i = start
        while i not in seen:
            seen.add(i)
            cyc.append(E[i])
            i = p.images[i]
        out.append(tuple(cyc))
    return out


def cycle_type_str(lengths: Sequence[int]) -> str:
    """Partition notation, e.g. [1, 3, 3] -> '1 + 3^2'."""
    c = Counter(lengths)
    return " + ".join(f"{k}" if c[k] == 1 else f"{k}^{c[k]}" for k in sorted(c))


@dataclass(frozen=True)
class OrthomorphismCertificate:
    phi: GroupPermutation
    theta: GroupPermutation
    phi_cycles: tuple[int, ...]
    theta_cycles: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "group": self.phi.group.to_json(),
            "phi": self.phi.to_json(),
            "theta": self.theta.to_json(),
            "phi_cycle_type": list(self.phi_cycles),
            "theta_cycle_type": list(self.theta_cycles),
        }


def difference_map(phi: GroupPermutation) -> GroupPermutation:
    G = phi.group
    add, neg = G.add_table, G.neg_table
    return GroupPermutation(G, tuple(add[phi.images[g]][neg[g]] for g in range(G.order)))


def is_orthomorphism(p: GroupPermutation) -> OrthomorphismCertificate | None:
    if not p.is_bijective():
        raise InvalidPermutationError("table is not a bijection of the group")
    theta = difference_map(p)
    if not theta.is_bijective():
        return None
    G = p.group
    add = G.add_table
    assert all(add[theta.images[g]][g] == p.images[g] for g in range(G.order))
    return OrthomorphismCertificate(p, theta, tuple(cycle_structure(p)), tuple(cycle_structure(theta)))


def certificate_from_json(data: dict) -> OrthomorphismCertificate | None:
    G = Group(data["group"])
    phi = GroupPermutation.from_mapping(G, {tuple(a): tuple(b) for a, b in data["phi"]})
    return is_orthomorphism(phi)


@dataclass
class SearchVerdict:
    status: Status
    certificate: OrthomorphismCertificate | None = None
    nodes: int = 0
    reason: str = ""

    @property
    def exists(self) -> bool | None:
        if self.status is Status.FEASIBLE:
            return True
        if self.status is Status.INFEASIBLE:
            return False
        return None


def complete_mapping_search(group: Group, budget: int = DEFAULT_BUDGET) -> SearchVerdict:
    """Exhaustive backtracking for a complete mapping theta.

    theta(0) = 0 without loss of generality (theta - theta(0) is again a
    complete mapping).  Elements are assigned in index order; the used
    theta-images and used g + theta(g) values prune together.
    """
    n = group.order
    add = group.add_table
    theta = [-1] * n
    used_t = [False] * n
    used_p = [False] * n
    theta[0] = 0
    used_t[0] = used_p[0] = True
    nodes = 0

    def rec(g: int) -> bool:
        nonlocal nodes
        if g == n:
            return True
        row = add[g]
        for t in range(1, n):
            if used_t[t] or used_p[row[t]]:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted
            used_t[t] = used_p[row[t]] = True
            theta[g] = t
            if rec(g + 1):
                return True
            used_t[t] = used_p[row[t]] = False
        return False

    try:
        found = rec(1)
    except BudgetExhausted:
        return SearchVerdict(Status.UNKNOWN, nodes=nodes, reason="budget-exhausted")
    if not found:
        return SearchVerdict(Status.INFEASIBLE, nodes=nodes, reason="search-exhausted")
    phi = GroupPermutation(group, tuple(add[g][theta[g]] for g in range(n)))
    cert = is_orthomorphism(phi)
    assert cert is not None
    return SearchVerdict(Status.FEASIBLE, cert, nodes)


def complete_mapping_exists(group: Group, budget: int = DEFAULT_BUDGET) -> SearchVerdict:
    v = complete_mapping_search(group, budget)
    expected = group.involution_count != 1
    if v.exists is not None and v.exists != expected:
        raise AssertionError(f"{group}: complete mapping search says {v.exists}, involution criterion says {expected}")
    return v


def construct_from_triples(group: Group, triples: Sequence[Sequence] | None = None,
                           budget: int = DEFAULT_BUDGET) -> OrthomorphismCertificate:
    """phi(0) = 0 and phi(x_j) = -x_{j+2} on each zero-sum triple (x_0, x_1, x_2) of a
    partition of the nonzero elements; then theta(x_j) = x_{j+1}.

    Triples default to the exact solver's first zero-sum 3-partition.
    """
    n = group.order
    if n % 3 != 1:
        raise ConstructionUnavailable(f"|G| = {n} is not 1 mod 3")
    if triples is None:
        v = realize_partition(RealizationInstance.zero_sum(group, [3] * ((n - 1) // 3)), budget)
        if not v.feasible:
            raise ConstructionUnavailable(f"no zero-sum triple partition of the nonzero elements of {group} ({v.status.value})")
        triples = v.witness.parts
    else:
        triples = [tuple(group.element(x) for x in t) for t in triples]
        inst = RealizationInstance.zero_sum(group, [3] * len(triples))
        from .solver import SubsetPartition, verify_partition

        if not verify_partition(inst, SubsetPartition([tuple(t) for t in triples])):
            raise ConstructionUnavailable("given triples are not a zero-sum partition of the nonzero elements")
    images = [0] * n
    for t in triples:
        for j in range(3):
            images[t[j].index] = (-t[(j + 2) % 3]).index
    phi = GroupPermutation(group, tuple(images))
    cert = is_orthomorphism(phi)
    assert cert is not None, "construction did not give an orthomorphism"
    th = cert.theta
    for t in triples:
        for j in range(3):
            assert th.images[t[j].index] == t[(j + 1) % 3].index
    assert th.images[0] == 0
    assert cert.theta_cycles == (1,) + (3,) * ((n - 1) // 3)
    return cert


def construction_hypotheses(group: Group) -> dict:
    """Check |G| = 1 mod 3, |I| != 1, |L| = 2^eta = 1 mod 3, |H| = 1 mod 6 for G = L x H."""
    split = sylow2_decomposition(group)
    L, H = split.sylow2.order, split.odd.order
    eta = L.bit_length() - 1
    return {
        "order_mod_3": group.order % 3,
        "involutions": group.involution_count,
        "sylow2_order": L,
        "eta": eta,
        "odd_part_order": H,
        "satisfied": group.order % 3 == 1 and group.involution_count != 1 and eta >= 1
        and L % 3 == 1 and H % 6 == 1,
        "order_mod_24": group.order % 24,
    }


class Which(str, Enum):
    PHI = "phi"
    THETA = "theta"


def search_k_cycle_orthomorphism(group: Group, k: int, which: Which | str = Which.PHI,
                                 budget: int = DEFAULT_BUDGET) -> SearchVerdict:
    """Orthomorphism fixing 0 whose chosen map (phi or theta) is a product of k-cycles on the nonzero elements."""
    which = Which(which)
    n = group.order
    if k < 2 or (n - 1) % k:
        raise ValueError("need k >= 2 dividing |G| - 1")
    add, neg = group.add_table, group.neg_table
    # build the cycled map f; the other map is g = f(x) - x (phi cycled) or f(x) + x (theta cycled)
    f = [-1] * n
    f[0] = 0
    used_other = [False] * n
    used_other[0] = True
    unassigned = [True] * n
    unassigned[0] = False
    nodes = 0

    def other(x, fx):
        return add[fx][neg[x]] if which is Which.PHI else add[fx][x]

    def close_cycle(cyc: list[int]) -> bool:
        nonlocal nodes
        if len(cyc) == k:
            last, first = cyc[-1], cyc[0]
            o = other(last, first)
            if used_other[o]:
                return False
            used_other[o] = True
            f[last] = first
            if rec():
                return True
            used_other[o] = False
            f[last] = -1
            return False
        last = cyc[-1]
        for y in range(cyc[0] + 1, n):
            if not unassigned[y]:
                continue
            o = other(last, y)
            if used_other[o]:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted
            used_other[o] = True
            unassigned[y] = False
            f[last] = y
            cyc.append(y)
            if close_cycle(cyc):
                return True
            cyc.pop()
            f[last] = -1
            unassigned[y] = True
            used_other[o] = False
        return False

    def rec() -> bool:
        try:
            x = unassigned.index(True)
        except ValueError:
            return True
        unassigned[x] = False
        if close_cycle([x]):
            return True
        unassigned[x] = True
        return False

    try:
        found = rec()
    except BudgetExhausted:
        return SearchVerdict(Status.UNKNOWN, nodes=nodes, reason="budget-exhausted")
    if not found:
        return SearchVerdict(Status.INFEASIBLE, nodes=nodes, reason="search-exhausted")
    if which is Which.PHI:
        phi = GroupPermutation(group, tuple(f))
    else:
        phi = GroupPermutation(group, tuple(add[f[x]][x] for x in range(n)))
    cert = is_orthomorphism(phi)
    assert cert is not None
    chosen = cert.phi_cycles if which is Which.PHI else cert.theta_cycles
    assert chosen == (1,) + (k,) * ((n - 1) // k)
    return SearchVerdict(Status.FEASIBLE, cert, nodes)


def is_r_sequencing(group: Group, seq: Sequence) -> bool:
    seq = [group.element(s) for s in seq]
    if sorted(seq) != list(group.nonzero):
        raise ValueError("sequence must list every nonzero element once")
    diffs = [seq[(i + 1) % len(seq)] - seq[i] for i in range(len(seq))]
    return len(set(diffs)) == len(diffs)
