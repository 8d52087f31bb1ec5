"""Partitions, the r-differential posets Y^r and their up/down operators."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Optional, Tuple

from ..services.exceptions import InputError
from .exact_linalg import IntMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=False)
class Partition:
    parts: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(p <= 0 for p in self.parts):
            raise InputError(f"Partition parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise InputError(f"Partition parts must be weakly decreasing: {self.parts}")

    @classmethod
    def from_string(cls, text: str) -> "Partition":
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(piece) for piece in text.split(",")))
        except ValueError as exc:
            raise InputError(f"Cannot read partition {text!r}") from exc

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __lt__(self, other: "Partition") -> bool:
        return self.parts < other.parts

    def part(self, index: int) -> int:
        """Zero-based part lookup, padding with zeros."""

        return self.parts[index] if index < len(self.parts) else 0

    def count(self, value: int) -> int:
        return self.parts.count(value)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))

    def add_box(self) -> Iterator["Partition"]:
        """Partitions covering this one in Young's lattice."""

        parts = list(self.parts)
        for row in range(len(parts) + 1):
            if row == 0 or parts[row - 1] > (parts[row] if row < len(parts) else 0):
                grown = parts[:] + ([0] if row == len(parts) else [])
                grown[row] += 1
                yield Partition(tuple(grown))

    def remove_box(self) -> Iterator["Partition"]:
        """Partitions covered by this one in Young's lattice."""

        parts = list(self.parts)
        for row in range(len(parts)):
            below = parts[row + 1] if row + 1 < len(parts) else 0
            if parts[row] > below:
                shrunk = parts[:]
                shrunk[row] -= 1
                yield Partition(tuple(p for p in shrunk if p))

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class MultiPartition:
    components: Tuple[Partition, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise InputError("A multipartition needs at least one component")

    @classmethod
    def from_string(cls, text: str) -> "MultiPartition":
        return cls(tuple(Partition.from_string(piece) for piece in text.split("|")))

    @classmethod
    def empty(cls, r: int) -> "MultiPartition":
        return cls((Partition(),) * r)

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return sum(c.size for c in self.components)

    def r_lex_key(self) -> Tuple[Tuple[int, Tuple[int, ...]], ...]:
        """Ascending sort key: componentwise, larger size first decides, then parts lexicographically."""

        return tuple((c.size, c.parts) for c in self.components)

    def covers(self) -> Iterator["MultiPartition"]:
        for i, comp in enumerate(self.components):
            for grown in comp.add_box():
                yield MultiPartition(self.components[:i] + (grown,) + self.components[i + 1:])

    def covered(self) -> Iterator["MultiPartition"]:
        for i, comp in enumerate(self.components):
            for shrunk in comp.remove_box():
                yield MultiPartition(self.components[:i] + (shrunk,) + self.components[i + 1:])

    def __str__(self) -> str:
        return "|".join(str(c) for c in self.components)


@dataclass(frozen=True)
class RankBasis:
    r: int
    n: int
    elements: Tuple[MultiPartition, ...]
    _index: Dict[MultiPartition, int] = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        self._index.update({element: i for i, element in enumerate(self.elements)})

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[MultiPartition]:
        return iter(self.elements)

    def index_of(self, element: MultiPartition) -> int:
        try:
            return self._index[element]
        except KeyError:
            raise InputError(f"{element} is not in rank {self.n} of Y^{self.r}") from None


@lru_cache(maxsize=None)
def _partitions_tuple(n: int) -> Tuple[Partition, ...]:
    def build(remaining: int, largest: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in build(remaining - first, first):
                yield (first,) + rest

    return tuple(sorted(Partition(p) for p in build(n, n)))


def partitions_of(n: int) -> List[Partition]:
    """All partitions of n in ascending lexicographic order of their part lists."""

    if n < 0:
        raise InputError(f"Cannot partition a negative number: {n}")
    return list(_partitions_tuple(n))


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    if n < 0:
        return 0
    counts = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            counts[total] += counts[total - part]
    return counts[n]


@lru_cache(maxsize=None)
def rank_size(r: int, n: int) -> int:
    """p_n(Y^r); zero below rank 0."""

    if n < 0:
        return 0
    series = [1] + [0] * n
    for _ in range(r):
        series = [
            sum(series[k] * partition_count(total - k) for k in range(total + 1))
            for total in range(n + 1)
        ]
    return series[n]


@lru_cache(maxsize=None)
def rank_basis(r: int, n: int) -> RankBasis:
    if r < 1:
        raise InputError(f"r must be at least 1, got {r}")
    if n < 0:
        raise InputError(f"Rank must be nonnegative, got {n}")
    elements: List[MultiPartition] = []
    for sizes in product(range(n + 1), repeat=r):
        if sum(sizes) != n:
            continue
        for comps in product(*(_partitions_tuple(s) for s in sizes)):
            elements.append(MultiPartition(tuple(comps)))
    elements.sort(key=MultiPartition.r_lex_key)
    logger.debug("Built rank %d of Y^%d with %d elements", n, r, len(elements))
    return RankBasis(r=r, n=n, elements=tuple(elements))


@lru_cache(maxsize=None)
def up_matrix(r: int, n: int) -> IntMatrix:
    source, target = rank_basis(r, n), rank_basis(r, n + 1)
    data = [[0] * len(source) for _ in range(len(target))]
    for j, element in enumerate(source):
        for grown in element.covers():
            data[target.index_of(grown)][j] = 1
    return IntMatrix.from_rows(data, cols=len(source))


@lru_cache(maxsize=None)
def down_matrix(r: int, n: int) -> IntMatrix:
    source = rank_basis(r, n)
    if n == 0:
        return IntMatrix.zeros(0, 1)
    target = rank_basis(r, n - 1)
    data = [[0] * len(source) for _ in range(len(target))]
    for j, element in enumerate(source):
        for shrunk in element.covered():
            data[target.index_of(shrunk)][j] = 1
    return IntMatrix.from_rows(data, cols=len(source))


def delta_p(r: int, m: int) -> int:
    return rank_size(r, m) - rank_size(r, m - 1)


def m0(r: int, i: int, search_bound: int) -> Optional[int]:
    """Smallest rank m >= 0 with Δp_m >= i, or None when none exists up to ``search_bound``."""

    for m in range(search_bound + 1):
        if delta_p(r, m) >= i:
            return m
    return None


@lru_cache(maxsize=None)
def path_count(element: MultiPartition) -> int:
    if element.size == 0:
        return 1
    return sum(path_count(below) for below in element.covered())


def clear_caches() -> None:
    for cached in (_partitions_tuple, partition_count, rank_size, rank_basis, up_matrix, down_matrix, path_count):
        cached.cache_clear()
