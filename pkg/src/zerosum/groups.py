"""Finite Abelian groups given as direct products of cyclic groups.

Elements are residue vectors.  Every group also carries an integer
indexing of its elements (mixed radix, first coordinate most significant),
so index order coincides with lexicographic order on coordinates.  The
search kernels elsewhere in the package work on those indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .partitions import integer_partitions


class InvalidGroupError(ValueError):
    pass


class GroupMismatchError(ValueError):
    pass


class Group:
    """Z_{m_1} x ... x Z_{m_r}, kept in the factor form it was built from."""

    __slots__ = ("moduli", "order", "__dict__")

    def __init__(self, moduli: Iterable[int]):
        moduli = tuple(int(m) for m in moduli)
        if any(m < 2 for m in moduli):
            raise InvalidGroupError(f"every modulus must be >= 2, got {list(moduli)}")
        self.moduli = moduli
        self.order = math.prod(moduli)

    def __eq__(self, other):
        return isinstance(other, Group) and self.moduli == other.moduli

    def __hash__(self):
        return hash(("Group", self.moduli))

    def __repr__(self):
        return f"Group({list(self.moduli)})"

    def __str__(self):
        if not self.moduli:
            return "1"
        return "x".join(f"Z{m}" for m in self.moduli)

    def __getstate__(self):
        return self.moduli

    def __setstate__(self, state):
        self.moduli = state
        self.order = math.prod(state)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)

    # ---- indexing ----------------------------------------------------

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides = []
        s = 1
        for m in reversed(self.moduli):
            strides.append(s)
            s *= m
        return tuple(reversed(strides))

    def index_of(self, coords: Sequence[int]) -> int:
        return sum(c * s for c, s in zip(coords, self._strides))

    @cached_property
    def coords_table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(product(*(range(m) for m in self.moduli)))

    @cached_property
    def elements(self) -> tuple["Element", ...]:
        return tuple(Element(self, c) for c in self.coords_table)

    @property
    def zero(self) -> "Element":
        return self.elements[0]

    def element(self, value) -> "Element":
        """Build an element from a coordinate list, or a bare int for a cyclic group."""
        if isinstance(value, Element):
            if value.group != self:
                raise GroupMismatchError(f"{value!r} is not in {self}")
            return value
        if isinstance(value, int):
            if len(self.moduli) != 1:
                raise ValueError("bare integers are only accepted for cyclic groups")
            value = (value,)
        value = tuple(value)
        if len(value) != len(self.moduli):
            raise ValueError(f"expected {len(self.moduli)} coordinates, got {value!r}")
        coords = tuple(int(c) % m for c, m in zip(value, self.moduli))
        return self.elements[self.index_of(coords)]

    # ---- index-level arithmetic tables used by the search kernels -----

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        ct = self.coords_table
        rows = []
        for a in ct:
            row = []
            for b in ct:
                row.append(self.index_of([(x + y) % m for x, y, m in zip(a, b, self.moduli)]))
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(
            self.index_of([(-x) % m for x, m in zip(c, self.moduli)]) for c in self.coords_table
        )

    def sum_indices(self, indices: Iterable[int]) -> int:
        add = self.add_table
        s = 0
        for i in indices:
            s = add[s][i]
        return s

    # ---- structure -----------------------------------------------------

    @cached_property
    def involutions(self) -> frozenset["Element"]:
        return involutions(self)

    @property
    def involution_count(self) -> int:
        return len(self.involutions)

    @cached_property
    def nonzero(self) -> tuple["Element", ...]:
        return self.elements[1:]

    def r_set(self) -> tuple["Element", ...]:
        """Nonzero elements that are not involutions."""
        inv = self.involutions
        return tuple(g for g in self.nonzero if g not in inv)

    def to_json(self) -> list[int]:
        return list(self.moduli)


@dataclass(frozen=True, eq=False)
class Element:
    group: Group
    coords: tuple[int, ...]

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.coords == other.coords
            and self.group == other.group
        )

    def __hash__(self):
        return hash((self.group.moduli, self.coords))

    def __lt__(self, other: "Element"):
        _check_same(self, other)
        return self.coords < other.coords

    def __le__(self, other: "Element"):
        _check_same(self, other)
        return self.coords <= other.coords

    def __repr__(self):
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(map(str, self.coords)) + ")"

    @property
    def index(self) -> int:
        return self.group.index_of(self.coords)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return neg(self)

    def __rmul__(self, k: int):
        return scalar_mul(k, self)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_json(self) -> list[int]:
        return list(self.coords)


def _check_same(g: Element, h: Element) -> None:
    if g.group != h.group:
        raise GroupMismatchError(f"{g!r} in {g.group} vs {h!r} in {h.group}")


def make_group(moduli: Sequence[int]) -> Group:
    moduli = list(moduli)
    if not moduli:
        raise InvalidGroupError("at least one cyclic factor is required")
    return Group(moduli)


def add(g: Element, h: Element) -> Element:
    _check_same(g, h)
    G = g.group
    return Element(G, tuple((a + b) % m for a, b, m in zip(g.coords, h.coords, G.moduli)))


def neg(g: Element) -> Element:
    G = g.group
    return Element(G, tuple((-a) % m for a, m in zip(g.coords, G.moduli)))


def sub(g: Element, h: Element) -> Element:
    return add(g, neg(h))


def scalar_mul(k: int, g: Element) -> Element:
    G = g.group
    return Element(G, tuple((k * a) % m for a, m in zip(g.coords, G.moduli)))


def element_sum(elements: Iterable[Element], group: Group) -> Element:
    total = group.zero
    for e in elements:
        total = add(total, e)
    return total


def involutions(group: Group) -> frozenset[Element]:
    result = frozenset(
        g for g in group.nonzero if all((2 * c) % m == 0 for c, m in zip(g.coords, group.moduli))
    )
    even = sum(1 for m in group.moduli if m % 2 == 0)
    assert len(result) == 2**even - 1, (group, len(result))
    return result


def sum_all_elements(group: Group) -> Element:
    total = group.elements[group.sum_indices(range(group.order))]
    inv = group.involutions
    if len(inv) == 1:
        assert total == next(iter(inv))
    else:
        assert total.is_zero()
    return total


@dataclass(frozen=True)
class SylowSplit:
    """Gamma ~ L x H with L the Sylow 2-subgroup and |H| odd.

    Factor i of the original group splits into ``two_parts[i]`` (a power
    of 2, possibly 1) and ``odd_parts[i]``; factors equal to 1 are dropped
    from L and H.
    """

    group: Group
    sylow2: Group
    odd: Group
    two_parts: tuple[int, ...]
    odd_parts: tuple[int, ...]

    def split(self, g: Element) -> tuple[Element, Element]:
        lc = tuple(c % p for c, p in zip(g.coords, self.two_parts) if p > 1)
        hc = tuple(c % q for c, q in zip(g.coords, self.odd_parts) if q > 1)
        return Element(self.sylow2, lc), Element(self.odd, hc)

    def join(self, l: Element, h: Element) -> Element:
        lit, hit = iter(l.coords), iter(h.coords)
        coords = []
        for p, q in zip(self.two_parts, self.odd_parts):
            a = next(lit) if p > 1 else 0
            b = next(hit) if q > 1 else 0
            # CRT: x = a mod p, x = b mod q
            x = (a * q * pow(q, -1, p) + b * p * pow(p, -1, q)) % (p * q) if p > 1 and q > 1 else (a if p > 1 else b)
            coords.append(x)
        return Element(self.group, tuple(coords))


def sylow2_decomposition(group: Group) -> SylowSplit:
    twos, odds = [], []
    for m in group.moduli:
        p = 1
        while m % 2 == 0:
            m //= 2
            p *= 2
        twos.append(p)
        odds.append(m)
    L = Group([p for p in twos if p > 1])
    H = Group([q for q in odds if q > 1])
    return SylowSplit(group, L, H, tuple(twos), tuple(odds))


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def invariant_factors(moduli: Sequence[int]) -> tuple[int, ...]:
    """Canonical form d_1 | d_2 | ... | d_k (increasing) of a product of cyclic groups."""
    prime_powers: dict[int, list[int]] = {}
    for m in moduli:
        for p, e in _factorize(m):
            prime_powers.setdefault(p, []).append(p**e)
    k = max((len(v) for v in prime_powers.values()), default=0)
    factors = [1] * k
    for p, pows in prime_powers.items():
        pows = sorted(pows, reverse=True)
        for i, q in enumerate(pows):
            factors[k - 1 - i] *= q
    return tuple(factors)


def enumerate_abelian_groups(n: int) -> list[Group]:
    """One group per isomorphism class of order n, in invariant-factor form.

    The cyclic group comes first.  Order 1 yields the trivial group.
    """
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return [Group([])]
    per_prime = []
    for p, e in _factorize(n):
        per_prime.append([[p**a for a in lam] for lam in integer_partitions(e)])
    groups = []
    for choice in product(*per_prime):
        moduli = [m for part in choice for m in part]
        groups.append(Group(invariant_factors(moduli)))
    return groups


def parse_moduli(text: str | Sequence[int]) -> Group:
    if isinstance(text, str):
        parts = text.replace("x", ",").replace("X", ",").replace(" ", ",").split(",")
        return make_group([int(p) for p in parts if p])
    return make_group(text)
