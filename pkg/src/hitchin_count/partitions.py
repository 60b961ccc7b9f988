"""Integer partitions, Young-diagram cell statistics and the (r, m) decompositions
summed over in the explicit formula for the Hitchin polynomials."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, NamedTuple


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if parts and parts[-1] <= 0:
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def multiplicities(self) -> Counter:
        return Counter(self)

    def __add__(self, other: "Partition") -> "Partition":
        return partition_sum(self, other)

    def __rmul__(self, r: int) -> "Partition":
        return partition_scale(r, self)

    def __repr__(self):
        return f"Partition({tuple(self)})"


class CellStat(NamedTuple):
    row: int
    col: int
    arm: int
    leg: int

    @property
    def hook(self) -> int:
        return 1 + self.arm + self.leg


@dataclass(frozen=True)
class Decomposition:
    """A pair ``(r, m)`` with ``r * sum(m[la] * la) == la0``."""

    r: int
    mult: tuple[tuple[Partition, int], ...]

    @property
    def sigma(self) -> int:
        return -1 + sum(k for _, k in self.mult)

    def as_dict(self) -> dict[Partition, int]:
        return dict(self.mult)

    def reconstruct(self) -> Partition:
        parts: list[int] = []
        for la, k in self.mult:
            parts.extend(la * (k * self.r))
        return Partition(parts)


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order."""
    if n < 0:
        raise ValueError(f"cannot partition a negative integer: {n}")
    return list(_partitions(n, n))


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[Partition, ...]:
    if n == 0:
        return (Partition(),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def cell_stats(la: Partition) -> list[CellStat]:
    la = Partition(la)
    out = []
    for i, row_len in enumerate(la, start=1):
        for j in range(1, row_len + 1):
            arm = row_len - j
            leg = sum(1 for k in range(i, len(la)) if la[k] >= j)
            out.append(CellStat(i, j, arm, leg))
    return out


def partition_sum(la: Partition, mu: Partition) -> Partition:
    return Partition(tuple(la) + tuple(mu))


def partition_scale(r: int, la: Partition) -> Partition:
    if r < 1:
        raise ValueError(f"scale factor must be positive, got {r}")
    return Partition(tuple(la) * r)


def enumerate_decompositions(la0: Partition) -> list[Decomposition]:
    """Every ``(r, m)`` with ``r * sum_la m_la * la = la0``, each exactly once."""
    la0 = Partition(la0)
    if la0.size < 1:
        raise ValueError("decompositions are only defined for |la0| >= 1")
    mult = la0.multiplicities()
    common = 0
    for k in mult.values():
        common = gcd(common, k)
    out = []
    for r in range(1, common + 1):
        if common % r:
            continue
        reduced = tuple(sorted(((part, k // r) for part, k in mult.items()), reverse=True))
        for blocks in _multiset_partitions(reduced):
            counts = Counter(blocks)
            out.append(Decomposition(r, tuple(sorted(counts.items(), reverse=True))))
    return out


def _sub_multisets(items: tuple[tuple[int, int], ...]):
    """Nonempty sub-multisets of ``items`` (pairs (value, count)), as the same shape."""
    if not items:
        yield ()
        return
    (value, count), rest = items[0], items[1:]
    for tail in _sub_multisets(rest):
        for take in range(count, -1, -1):
            head = ((value, take),) if take else ()
            yield head + tail


def _subtract(items, sub):
    sub = dict(sub)
    out = []
    for value, count in items:
        left = count - sub.get(value, 0)
        if left:
            out.append((value, left))
    return tuple(out)


@lru_cache(maxsize=None)
def _multiset_partitions(items: tuple[tuple[int, int], ...]) -> tuple[tuple[Partition, ...], ...]:
    # Blocks are emitted in non-increasing canonical order, so each multiset
    # partition is produced once: the first block is the largest remaining one.
    return tuple(_multiset_partitions_bounded(items, None))


def _multiset_partitions_bounded(items, bound):
    if not items:
        yield ()
        return
    for block in _sub_multisets(items):
        if not block:
            continue
        part = Partition(v for v, k in block for _ in range(k))
        if bound is not None and _key(part) > _key(bound):
            continue
        rest = _subtract(items, block)
        for tail in _multiset_partitions_bounded(rest, part):
            yield (part,) + tail


def _key(part: Partition):
    return (part.size, tuple(part))
