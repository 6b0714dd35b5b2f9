"""Deliberately naive reference implementations used as test oracles.

None of these share code with the package's search kernels: they work on
plain coordinate tuples and enumerate set partitions with itertools.
"""

from __future__ import annotations

import itertools
from collections import Counter
from math import prod


def elements(moduli):
    return list(itertools.product(*(range(m) for m in moduli)))


def add(a, b, moduli):
    return tuple((x + y) % m for x, y, m in zip(a, b, moduli))


def total(xs, moduli):
    s = tuple(0 for _ in moduli)
    for x in xs:
        s = add(s, x, moduli)
    return s


def set_partitions_with_sizes(items, sizes):
    """Every set partition of items whose block sizes form the multiset ``sizes``.

    Blocks come out as frozensets; each set partition is produced once.
    """
    items = sorted(items)
    need = Counter(sizes)

    def rec(rest, need):
        if not rest:
            if not +need:
                yield []
            return
        first, others = rest[0], rest[1:]
        for size in sorted(k for k, c in need.items() if c > 0):
            for combo in itertools.combinations(others, size - 1):
                block = frozenset((first,) + combo)
                left = [x for x in others if x not in block]
                need[size] -= 1
                for tail in rec(left, need):
                    yield [block] + tail
                need[size] += 1

    yield from rec(items, need)


def zero_sum_partition_exists(moduli, sizes, domain=None):
    """Brute force: is there a set partition of the domain (default: nonzero
    elements) into blocks of the given sizes, each summing to zero?"""
    zero = tuple(0 for _ in moduli)
    if domain is None:
        domain = [e for e in elements(moduli) if e != zero]
    for p in set_partitions_with_sizes(domain, sizes):
        if all(total(b, moduli) == zero for b in p):
            return True
    return False


def constant_sum_partitions(moduli, sizes):
    """All (common sum, partition) pairs for partitions of the whole group with a common block sum."""
    out = []
    for p in set_partitions_with_sizes(elements(moduli), sizes):
        sums = {total(b, moduli) for b in p}
        if len(sums) == 1:
            out.append((sums.pop(), p))
    return out


def _prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def abelian_iso_classes(n):
    """Count isomorphism classes of Abelian groups of order n by deduplicating
    every factorization of n into moduli >= 2 under the multiset of
    elementary divisors (prime powers from each modulus)."""

    def factorizations(n, smallest=2):
        if n == 1:
            yield ()
            return
        for d in range(smallest, n + 1):
            if n % d == 0:
                for rest in factorizations(n // d, d):
                    yield (d,) + rest

    keys = set()
    for f in factorizations(n):
        divisors = []
        for m in f:
            c = Counter(_prime_factors(m))
            divisors += [p**e for p, e in c.items()]
        keys.add(tuple(sorted(divisors)))
    return keys


def element_order_profile(moduli):
    """Multiset of element orders; distinguishes Abelian groups up to isomorphism."""
    from math import gcd, lcm

    return tuple(sorted(
        lcm(*[m // gcd(c, m) for c, m in zip(e, moduli)]) for e in elements(moduli)
    ))


def brute_force_irregular(moduli, n, edges):
    """Exhaustive product over all labelings."""
    els = elements(moduli)
    for labs in itertools.product(els, repeat=len(edges)):
        w = [tuple(0 for _ in moduli)] * n
        for (u, v), a in zip(edges, labs):
            w[u] = add(w[u], a, moduli)
            w[v] = add(w[v], a, moduli)
        if len(set(w)) == n:
            return True
    return False


def order(moduli):
    return prod(moduli)


def _neg(a, moduli):
    return tuple((-x) % m for x, m in zip(a, moduli))


def is_good_six_block(block, moduli):
    """A 6-set is good if it equals {c, d, -c-d, -c, -d, c+d} for some c, d in it."""
    block = set(block)
    if len(block) != 6:
        return False
    for c in block:
        for d in block:
            s = add(c, d, moduli)
            cand = {c, d, _neg(s, moduli), _neg(c, moduli), _neg(d, moduli), s}
            if cand == block:
                return True
    return False


def skolem_partition_exists(moduli, domain):
    """Brute force over every set partition of the domain into 6- and 2-blocks
    in the counts fixed by |domain| mod 6."""
    n = len(domain)
    sizes = [6] * (n // 6) + [2] * ((n % 6) // 2)
    zero = tuple(0 for _ in moduli)
    for p in set_partitions_with_sizes(domain, sizes):
        ok = True
        for b in p:
            if len(b) == 2:
                a, c = tuple(b)
                if add(a, c, moduli) != zero:
                    ok = False
            elif not is_good_six_block(b, moduli):
                ok = False
            if not ok:
                break
        if ok:
            return True
    return False


def skolem_sequence_exists(n):
    """Try every arrangement of 1,1,...,n,n by placing values into free slots."""
    for starts in itertools.product(*(range(2 * n - k) for k in range(1, n + 1))):
        used = set()
        ok = True
        for k, i in zip(range(1, n + 1), starts):
            if i in used or i + k in used:
                ok = False
                break
            used.update((i, i + k))
        if ok:
            return True
    return False


def complete_mapping_exists(moduli):
    """Try every permutation theta with theta(0) = 0 and test that g + theta(g) is a bijection."""
    els = elements(moduli)
    zero, rest = els[0], els[1:]
    for perm in itertools.permutations(rest):
        theta = dict(zip(rest, perm))
        theta[zero] = zero
        if len({add(g, t, moduli) for g, t in theta.items()}) == len(els):
            return True
    return False


def brute_force_digraph(moduli, n, arcs):
    """Every arc labeling; weight = out-labels minus in-labels."""
    els = elements(moduli)
    for labs in itertools.product(els, repeat=len(arcs)):
        w = [tuple(0 for _ in moduli)] * n
        for (u, v), a in zip(arcs, labs):
            w[u] = add(w[u], a, moduli)
            w[v] = add(w[v], _neg(a, moduli), moduli)
        if len(set(w)) == n:
            return True
    return False


def distance_magic_duality(moduli, sizes):
    """Over every bijection V(K_sizes) -> group, return boolean arrays
    (weights all equal, class sums all equal).  Vectorized with numpy."""
    import numpy as np

    els = elements(moduli)
    n = len(els)
    mod = np.array(moduli)
    coords = np.array(els)
    perms = np.array(list(itertools.permutations(range(n))))
    lab = coords[perms]
    classes, start = [], 0
    for m in sizes:
        classes.append(list(range(start, start + m)))
        start += m
    cls = [c for c, members in enumerate(classes) for _ in members]
    A = np.array([[int(cls[u] != cls[v]) for v in range(n)] for u in range(n)])
    w = np.einsum("uv,pvr->pur", A, lab) % mod
    magic = (w == w[:, :1, :]).all(axis=(1, 2))
    sums = np.stack([lab[:, c, :].sum(axis=1) % mod for c in classes], axis=1)
    const = (sums == sums[:, :1, :]).all(axis=(1, 2))
    return perms, magic, const
