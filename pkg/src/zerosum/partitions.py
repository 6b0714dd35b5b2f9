"""Integer partitions."""

from __future__ import annotations

from typing import Iterator, NamedTuple


class IntegerPartition(NamedTuple):
    parts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __str__(self):
        return "[" + ",".join(map(str, self.parts)) + "]"


def integer_partitions(n: int, min_part: int = 1, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield every partition of n into parts >= min_part, parts non-increasing.

    Order is reverse lexicographic: (6,), (4, 2), (3, 3), (2, 2, 2) for n=6, min_part=2.
    n = 0 yields the empty partition once.
    """
    if n < 0 or min_part < 1:
        raise ValueError("need n >= 0 and min_part >= 1")
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(max_part, min_part - 1, -1):
        rest = n - first
        if rest == 0:
            yield (first,)
        elif rest >= min_part:
            for tail in integer_partitions(rest, min_part, first):
                yield (first,) + tail


def count_partitions(n: int, min_part: int = 1) -> int:
    return sum(1 for _ in integer_partitions(n, min_part))
