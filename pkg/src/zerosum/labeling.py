"""Graph labelings over finite Abelian groups.

* antimagic edge labelings of rooted k-trees built from zero-sum partitions
* group-irregular edge labelings and the group irregularity strength s_g
* irregular arc labelings of digraphs (weight = out-labels minus in-labels)
* distance magic vertex labelings of complete multipartite graphs
"""

from __future__ import annotations

import itertools
import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .groups import Element, Group, element_sum, enumerate_abelian_groups
from .solver import (
    DEFAULT_BUDGET,
    BudgetExhausted,
    RealizationInstance,
    Status,
    constant_sum_partition,
    disjoint_subsets,
    realize_partition,
)


class ConstructionUnavailable(RuntimeError):
    pass


class NotCovered(ValueError):
    """Graph outside the hypotheses of the irregularity-strength results."""


# ---------------------------------------------------------------- graphs


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) outside 0..{self.n - 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"repeated edge {key}")
            seen.add(key)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, tuple((min(u, v), max(u, v)) for u, v in edges))

    @classmethod
    def from_json(cls, data: dict | str) -> "Graph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_edges(data["n"], data["edges"])

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    def adjacency(self) -> list[list[int]]:
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency()]

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = []
            stack = [s]
            seen[s] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def edge_index(self, u: int, v: int) -> int:
        return self.edges.index((min(u, v), max(u, v)))


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_multipartite(sizes: Sequence[int]) -> tuple[Graph, list[list[int]]]:
    classes, start = [], 0
    for m in sizes:
        classes.append(list(range(start, start + m)))
        start += m
    edges = [(u, v) for a, b in itertools.combinations(classes, 2) for u in a for v in b]
    return Graph.from_edges(start, edges), classes


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for g in graphs:
        edges += [(u + off, v + off) for u, v in g.edges]
        off += g.n
    return Graph.from_edges(off, edges)


def canonical_form(g: Graph) -> tuple:
    """Lexicographically smallest upper-triangle adjacency string over vertex
    orders that sort vertices by degree (degree classes are invariant, so
    this is still a complete isomorphism invariant)."""
    deg = g.degrees()
    es = set(g.edges)
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(deg[v], []).append(v)
    keys = sorted(classes)
    best = None
    for perms in itertools.product(*(itertools.permutations(classes[k]) for k in keys)):
        order = [v for p in perms for v in p]
        code = tuple(
            (min(order[i], order[j]), max(order[i], order[j])) in es
            for i in range(g.n) for j in range(i + 1, g.n)
        )
        if best is None or code > best:
            best = code
    return (g.n, tuple(deg[v] for v in sorted(range(g.n), key=lambda v: deg[v])), best)


def connected_graphs(n: int) -> list[Graph]:
    """One connected graph per isomorphism class on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    seen = {}
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if len(edges) < n - 1:
            continue
        g = Graph.from_edges(n, edges)
        if not g.is_connected():
            continue
        key = canonical_form(g)
        if key not in seen:
            seen[key] = g
    return list(seen.values())


# ---------------------------------------------------------------- weights


def vertex_weights(group: Group, graph: Graph, labels: Sequence[Element]) -> list[Element]:
    if len(labels) != len(graph.edges):
        raise ValueError("labeling must give one label per edge")
    add = group.add_table
    w = [0] * graph.n
    for (u, v), lab in zip(graph.edges, labels):
        i = group.element(lab).index
        w[u] = add[w[u]][i]
        w[v] = add[w[v]][i]
    return [group.elements[x] for x in w]


def verify_antimagic(group: Group, graph: Graph, labels: Sequence[Element], label_pool: Iterable[Element]) -> bool:
    labels = [group.element(x) for x in labels]
    pool = {group.element(x) for x in label_pool}
    if len(set(labels)) != len(labels) or not set(labels) <= pool:
        return False
    w = vertex_weights(group, graph, labels)
    return len(set(w)) == len(w)


# ---------------------------------------------------------------- k-trees


@dataclass(frozen=True)
class RootedTree:
    graph: Graph
    root: int

    @property
    def parent(self) -> list[int]:
        par = [-1] * self.graph.n
        adj = self.graph.adjacency()
        seen = {self.root}
        q = deque([self.root])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    par[w] = u
                    q.append(w)
        if len(seen) != self.graph.n or len(self.graph.edges) != self.graph.n - 1:
            raise ValueError("not a tree")
        return par

    def children(self) -> list[list[int]]:
        ch = [[] for _ in range(self.graph.n)]
        for v, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(v)
        return ch

    def is_k_tree(self, k: int) -> bool:
        return all(len(c) == 0 or len(c) >= k for c in self.children())

    @classmethod
    def from_parents(cls, parents: Sequence[int]) -> "RootedTree":
        root = parents.index(-1)
        edges = [(v, p) for v, p in enumerate(parents) if p >= 0]
        return cls(Graph.from_edges(len(parents), edges), root)


def random_k_tree(n: int, k: int, rng: random.Random) -> RootedTree:
    """Random rooted tree on n vertices where every non-leaf has >= k children."""
    if n < 1:
        raise ValueError("n >= 1")
    # random composition of n-1 into parts >= k
    counts = []
    left = n - 1
    while left:
        if left < 2 * k:
            counts.append(left)
            break
        r = rng.randint(k, left - k) if rng.random() < 0.7 else left
        counts.append(r)
        left -= r
    if counts and counts[-1] < k:
        raise ValueError(f"cannot build a {k}-tree on {n} vertices")
    parents = [-1]
    leaves = [0]
    for r in counts:
        v = leaves.pop(rng.randrange(len(leaves)))
        for _ in range(r):
            parents.append(v)
            leaves.append(len(parents) - 1)
    return RootedTree.from_parents(parents)


def antimagic_label_ktree(group: Group, tree: RootedTree, k: int = 2,
                          budget: int = DEFAULT_BUDGET) -> list[Element]:
    """Label child-edge bundles of each internal vertex by one part of a zero-sum
    partition of the nonzero elements.  Every vertex then weighs its parent-edge
    label (the root weighs 0), so all weights differ."""
    g = tree.graph
    if g.n != group.order:
        raise ValueError(f"tree has {g.n} vertices, group has order {group.order}")
    if not tree.is_k_tree(k):
        raise ValueError(f"not a {k}-tree")
    children = tree.children()
    internal = [v for v in range(g.n) if children[v]]
    sizes = [len(children[v]) for v in internal]
    v = realize_partition(RealizationInstance.zero_sum(group, sizes), budget)
    if not v.feasible:
        raise ConstructionUnavailable(
            f"no zero-sum partition of the nonzero elements of {group} into sizes {sizes} ({v.status.value})"
        )
    labels: list[Element | None] = [None] * len(g.edges)
    for vert, part in zip(internal, v.witness.parts):
        for child, lab in zip(children[vert], part):
            labels[g.edge_index(vert, child)] = lab
    assert verify_antimagic(group, g, labels, group.nonzero)
    return labels


# ---------------------------------------------------------------- irregular labelings


def is_irregular(group: Group, graph: Graph, labels: Sequence[Element]) -> bool:
    w = vertex_weights(group, graph, labels)
    return len(set(w)) == len(w)


def _edge_order(graph: Graph) -> list[int]:
    """BFS vertex order per component; edges sorted so vertices complete early."""
    adj = graph.adjacency()
    pos = [-1] * graph.n
    k = 0
    for s in range(graph.n):
        if pos[s] >= 0:
            continue
        pos[s] = k
        k += 1
        q = deque([s])
        while q:
            u = q.popleft()
            for w in sorted(adj[u]):
                if pos[w] < 0:
                    pos[w] = k
                    k += 1
                    q.append(w)
    return sorted(range(len(graph.edges)), key=lambda i: (max(pos[x] for x in graph.edges[i]),
                                                           min(pos[x] for x in graph.edges[i])))


@dataclass
class IrregularVerdict:
    status: Status
    labels: list[Element] | None = None
    nodes: int = 0
    reason: str = ""


def irregular_search(group: Group, graph: Graph, budget: int = DEFAULT_BUDGET,
                     sum_cut: bool = True) -> IrregularVerdict:
    """Exhaustive search for an edge labeling by group elements (repeats
    allowed) with pairwise distinct vertex weights.

    sum_cut: when |G| equals the number of vertices the weights exhaust G,
    so the sum of all elements must equal twice the label sum; if no element
    of the form 2x equals it the search is skipped.  Disable to prove by
    plain enumeration.
    """
    n, k = graph.n, group.order
    if k < n:
        return IrregularVerdict(Status.INFEASIBLE, reason="fewer group elements than vertices")
    add = group.add_table
    if sum_cut and k == n:
        total = group.sum_indices(range(k))
        doubles = {add[x][x] for x in range(k)}
        if total not in doubles:
            return IrregularVerdict(Status.INFEASIBLE, reason="sum of all elements is not a double")
    order = _edge_order(graph)
    edges = [graph.edges[i] for i in order]
    m = len(edges)
    # vertex v is final after edge position last[v]; isolated vertices are final at the start
    last = [-1] * n
    for p, (u, v) in enumerate(edges):
        last[u] = p
        last[v] = p
    finishing = [[] for _ in range(m)]
    for v in range(n):
        if last[v] >= 0:
            finishing[last[v]].append(v)
    used = [False] * k
    for v in range(n):
        if last[v] < 0:
            if used[0]:
                return IrregularVerdict(Status.INFEASIBLE, reason="two isolated vertices")
            used[0] = True
    w = [0] * n
    lab = [0] * m
    nodes = 0

    def rec(p: int) -> bool:
        nonlocal nodes
        if p == m:
            return True
        u, v = edges[p]
        wu, wv = w[u], w[v]
        fin = finishing[p]
        for a in range(k):
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted
            w[u] = add[wu][a]
            w[v] = add[wv][a]
            ok = True
            marked = []
            for x in fin:
                if used[w[x]]:
                    ok = False
                    break
                used[w[x]] = True
                marked.append(w[x])
            if ok:
                lab[p] = a
                if rec(p + 1):
                    return True
            for y in marked:
                used[y] = False
        w[u], w[v] = wu, wv
        return False

    try:
        found = rec(0)
    except BudgetExhausted:
        return IrregularVerdict(Status.UNKNOWN, nodes=nodes, reason="budget-exhausted")
    if not found:
        return IrregularVerdict(Status.INFEASIBLE, nodes=nodes, reason="search-exhausted")
    labels = [None] * m
    for p, i in enumerate(order):
        labels[i] = group.elements[lab[p]]
    assert is_irregular(group, graph, labels)
    return IrregularVerdict(Status.FEASIBLE, labels, nodes)


def irregular_exists(group: Group, graph: Graph, budget: int = DEFAULT_BUDGET) -> list[Element] | None:
    v = irregular_search(group, graph, budget)
    if v.status is Status.UNKNOWN:
        raise BudgetExhausted(f"irregular labeling search over {group} ran out of budget")
    return v.labels


def is_special_star(graph: Graph) -> bool:
    """K_{1, 3^(2q+1) - 2} for some q >= 1."""
    if not graph.is_connected():
        return False
    deg = sorted(graph.degrees())
    leaves = graph.n - 1
    if deg != [1] * leaves + [leaves] or leaves < 2:
        return False
    q = 1
    while 3 ** (2 * q + 1) - 2 <= leaves:
        if 3 ** (2 * q + 1) - 2 == leaves:
            return True
        q += 1
    return False


def predicted_sg(graph: Graph) -> int:
    """s_g for connected graphs of order >= 3: n+2 on the special stars, n+1 when n = 2 mod 4, else n."""
    n = graph.n
    if n < 3 or not graph.is_connected():
        raise NotCovered("formula applies to connected graphs of order >= 3")
    if is_special_star(graph):
        return n + 2
    if n % 4 == 2:
        return n + 1
    return n


def group_irregularity_strength(graph: Graph, k_max: int | None = None,
                                budget: int = DEFAULT_BUDGET) -> int | None:
    """Smallest k such that every Abelian group of order k gives an irregular labeling; None past k_max."""
    if any(len(c) < 3 for c in graph.components()):
        raise NotCovered("graph has a component of order < 3")
    k_max = k_max or 2 * graph.n
    for k in range(graph.n, k_max + 1):
        if all(irregular_exists(G, graph, budget) is not None for G in enumerate_abelian_groups(k)):
            return k
    return None


def irregularity_strength(graph: Graph, k_max: int | None = None) -> int | None:
    """Classical s(G): labels 1..k as integers, weights compared as integers."""
    if any(len(c) < 3 for c in graph.components()):
        raise NotCovered("graph has a component of order < 3")
    m = len(graph.edges)
    k_max = k_max or 2 * graph.n
    for k in range(1, k_max + 1):
        for labs in itertools.product(range(1, k + 1), repeat=m):
            w = [0] * graph.n
            for (u, v), a in zip(graph.edges, labs):
                w[u] += a
                w[v] += a
            if len(set(w)) == graph.n:
                return k
    return None


def augmented_walk_adjust(group: Group, graph: Graph, labels: Sequence[Element], walk: Sequence[int],
                          a) -> list[Element]:
    """Add a to the edges at odd positions of the walk and -a at even positions."""
    a = group.element(a)
    if len(walk) < 2:
        raise ValueError("walk needs at least one edge")
    new = [group.element(x) for x in labels]
    for pos in range(len(walk) - 1):
        i = graph.edge_index(walk[pos], walk[pos + 1])
        new[i] = new[i] + a if pos % 2 == 0 else new[i] - a
    before = vertex_weights(group, graph, labels)
    after = vertex_weights(group, graph, new)
    start, end = walk[0], walk[-1]
    end_delta = a if (len(walk) - 1) % 2 == 1 else -a
    for v in range(graph.n):
        expect = group.zero
        if v == start:
            expect = expect + a
        if v == end:
            expect = expect + end_delta
        assert after[v] - before[v] == expect, f"vertex {v} changed unexpectedly"
    return new


# ---------------------------------------------------------------- digraphs


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(set(self.arcs)) != len(self.arcs):
            raise ValueError("repeated arc")
        for u, v in self.arcs:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u},{v}) outside 0..{self.n - 1}")

    @classmethod
    def from_json(cls, data: dict | str) -> "Digraph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["n"], tuple(tuple(a) for a in data["arcs"]))

    def to_json(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in self.arcs]}

    def underlying(self) -> Graph:
        return Graph.from_edges(self.n, {(min(u, v), max(u, v)) for u, v in self.arcs})

    def weak_components(self) -> list[list[int]]:
        return self.underlying().components()


def digraph_weights(group: Group, dg: Digraph, labels: Sequence[Element]) -> list[Element]:
    if len(labels) != len(dg.arcs):
        raise ValueError("one label per arc")
    w = [group.zero] * dg.n
    for (u, v), lab in zip(dg.arcs, labels):
        lab = group.element(lab)
        w[u] = w[u] + lab
        w[v] = w[v] - lab
    return w


def _labels_for_targets(group: Group, dg: Digraph, comp: list[int], targets: dict[int, Element],
                        labels: list[Element]) -> None:
    """Spanning-tree propagation: process vertices in reverse BFS order and set
    each vertex's tree arc so it reaches its target; the root is then right
    automatically because the targets sum to zero."""
    root = comp[0]
    incident: dict[int, list[int]] = {v: [] for v in comp}
    for i, (u, v) in enumerate(dg.arcs):
        if u in incident:
            incident[u].append(i)
            incident[v].append(i)
    order = [root]
    tree_arc = {root: None}
    q = deque([root])
    while q:
        u = q.popleft()
        for i in incident[u]:
            a, b = dg.arcs[i]
            w = b if a == u else a
            if w not in tree_arc:
                tree_arc[w] = i
                order.append(w)
                q.append(w)
    current = {v: group.zero for v in comp}
    for v in reversed(order[1:]):
        i = tree_arc[v]
        a, b = dg.arcs[i]
        gap = targets[v] - current[v]
        if a == v:  # arc leaves v: +label at v, -label at parent
            labels[i] = gap
            current[b] = current[b] - gap
        else:  # arc enters v: -label at v, +label at parent
            labels[i] = -gap
            current[a] = current[a] - gap
        current[v] = targets[v]
    assert current[root] == targets[root]


def digraph_realizable(group: Group, dg: Digraph, budget: int = DEFAULT_BUDGET,
                       subsets: Sequence[Sequence] | None = None) -> list[Element] | None:
    """Irregular arc labeling via disjoint zero-sum subsets sized by the weak components.

    ``subsets`` may fix the subsets (one per weak component, in component
    order); otherwise they are searched for.  Returns None when no such
    subsets exist (search completed); raises BudgetExhausted when the
    search ran out of budget.
    """
    comps = dg.weak_components()
    sizes = [len(c) for c in comps]
    if subsets is None:
        v = disjoint_subsets(group, group.elements, sizes, budget=budget)
        if v.status is Status.UNKNOWN:
            raise BudgetExhausted("disjoint zero-sum subset search ran out of budget")
        if not v.feasible:
            return None
        parts = v.witness.parts
    else:
        parts = [tuple(group.element(x) for x in s) for s in subsets]
        flat = [x for p in parts for x in p]
        if [len(p) for p in parts] != sizes or len(set(flat)) != len(flat):
            raise ValueError("subsets must be disjoint and sized like the weak components")
        if any(not element_sum(p, group).is_zero() for p in parts):
            raise ValueError("subsets must be zero-sum")
    labels = [group.zero] * len(dg.arcs)
    for comp, part in zip(comps, parts):
        targets = dict(zip(comp, part))
        _labels_for_targets(group, dg, comp, targets, labels)
    w = digraph_weights(group, dg, labels)
    assert len(set(w)) == len(w)
    return labels


# ---------------------------------------------------------------- distance magic


def verify_distance_magic(group: Group, sizes: Sequence[int], labels: Sequence[Element]) -> Element | None:
    """Return the magic constant if every vertex of K_{sizes} has the same
    neighbourhood label sum, else None.  Vertices are numbered class by class."""
    labels = [group.element(x) for x in labels]
    if len(labels) != group.order or len(set(labels)) != group.order:
        raise ValueError("labeling must be a bijection onto the group")
    g, _ = complete_multipartite(sizes)
    add = group.add_table
    w = [0] * g.n
    idx = [x.index for x in labels]
    for u, v in g.edges:
        w[u] = add[w[u]][idx[v]]
        w[v] = add[w[v]][idx[u]]
    if len(set(w)) == 1:
        return group.elements[w[0]]
    return None


@dataclass
class DistanceMagicResult:
    status: Status
    labels: list[Element] | None = None
    magic_constant: Element | None = None
    common_sum: Element | None = None
    parts: list[tuple[Element, ...]] = field(default_factory=list)


def distance_magic_multipartite(group: Group, sizes: Sequence[int], budget: int = DEFAULT_BUDGET) -> DistanceMagicResult:
    if sum(sizes) != group.order:
        raise ValueError("class sizes must add up to the group order")
    res = constant_sum_partition(group, sizes, include_zero=True, budget=budget)
    if not res.verdict.feasible:
        return DistanceMagicResult(res.verdict.status)
    parts = res.verdict.witness.parts
    labels = [x for p in parts for x in p]
    mu = verify_distance_magic(group, sizes, labels)
    expected = element_sum(group.elements, group) - res.common_sum
    assert mu == expected
    return DistanceMagicResult(Status.FEASIBLE, labels, mu, res.common_sum, list(parts))


def class_sums_constant(group: Group, sizes: Sequence[int], labels: Sequence[Element]) -> bool:
    sums, start = [], 0
    for m in sizes:
        sums.append(element_sum(labels[start:start + m], group))
        start += m
    return len(set(sums)) == 1
