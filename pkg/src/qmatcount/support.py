"""Forbidden-position sets and the named shape families.

Positions are 1-indexed (row, column) pairs throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import ApexMissing, NotNested, OutOfRange

FANO_LINES = (
    (1, 2, 7), (1, 3, 6), (1, 4, 5), (2, 3, 5), (2, 4, 6), (3, 4, 7), (5, 6, 7),
)


@dataclass(frozen=True)
class SupportSet:
    m: int
    n: int
    forbidden: frozenset[tuple[int, int]]
    row_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise OutOfRange(f"grid {self.m}x{self.n} is empty")
        object.__setattr__(self, "forbidden", frozenset(self.forbidden))
        masks = [0] * self.m
        for i, j in self.forbidden:
            if not (1 <= i <= self.m and 1 <= j <= self.n):
                raise OutOfRange(f"position {(i, j)} outside the {self.m}x{self.n} grid")
            masks[i - 1] |= 1 << (j - 1)
        object.__setattr__(self, "row_masks", tuple(masks))

    @classmethod
    def of(cls, m: int, n: int, cells: Iterable[tuple[int, int]] = ()) -> "SupportSet":
        return cls(m, n, frozenset(cells))

    @property
    def free_count(self) -> int:
        return self.m * self.n - len(self.forbidden)

    def is_forbidden(self, i: int, j: int) -> bool:
        return bool(self.row_masks[i - 1] >> (j - 1) & 1)

    def is_free(self, i: int, j: int) -> bool:
        return not self.is_forbidden(i, j)

    def free_cells(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.m + 1) for j in range(1, self.n + 1)
                if self.is_free(i, j)]

    def free_rows_in_column(self, j: int) -> list[int]:
        return [i for i in range(1, self.m + 1) if self.is_free(i, j)]

    def is_symmetric(self) -> bool:
        return self.m == self.n and all((j, i) in self.forbidden for i, j in self.forbidden)

    def contains_diagonal(self) -> bool:
        return all((i, i) in self.forbidden for i in range(1, min(self.m, self.n) + 1))

    def transpose(self) -> "SupportSet":
        return SupportSet(self.n, self.m, frozenset((j, i) for i, j in self.forbidden))

    def rotate180(self) -> "SupportSet":
        m, n = self.m, self.n
        return SupportSet(m, n, frozenset((m + 1 - i, n + 1 - j) for i, j in self.forbidden))

    def sorted_cells(self) -> list[tuple[int, int]]:
        return sorted(self.forbidden)

    def __str__(self):
        lines = []
        for i in range(1, self.m + 1):
            lines.append("".join("0" if self.is_forbidden(i, j) else "*"
                                 for j in range(1, self.n + 1)))
        return "\n".join(lines)


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x < 0 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"{parts} is not a weakly decreasing sequence of nonnegative integers")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def fits(self, n: int) -> bool:
        nonzero = [x for x in self.parts if x]
        return len(nonzero) <= n and all(x <= n for x in self.parts)

    def cells(self) -> set[tuple[int, int]]:
        return {(i, j) for i, part in enumerate(self.parts, start=1) for j in range(1, part + 1)}

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions_in_box(rows: int, cols: int):
    """Every partition with at most `rows` parts, each at most `cols`, padded to `rows`."""

    def rec(prefix, limit):
        if len(prefix) == rows:
            yield Partition(tuple(prefix))
            return
        for x in range(limit, -1, -1):
            yield from rec(prefix + [x], x)

    yield from rec([], cols)


def diagonal_prefix(n: int, k: int) -> SupportSet:
    if not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= n, got k={k}, n={n}")
    return SupportSet(n, n, frozenset((i, i) for i in range(1, k + 1)))


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(tuple(lam))


def straight_shape(lam, n: int) -> SupportSet:
    """Row i forbids columns 1..lam_i (top-left justified Young diagram)."""
    lam = _as_partition(lam)
    if not lam.fits(n):
        raise OutOfRange(f"partition {lam} does not fit in {n}x{n}")
    return SupportSet(n, n, frozenset(lam.cells()))


def skew_shape(lam, mu, n: int) -> SupportSet:
    lam, mu = _as_partition(lam), _as_partition(mu)
    outer = straight_shape(lam, n)
    inner = straight_shape(mu, n)
    if not inner.forbidden <= outer.forbidden:
        raise NotNested(f"S_{mu} is not contained in S_{lam}")
    return SupportSet(n, n, outer.forbidden - inner.forbidden)


def shape(kind: str, lam, mu=None, n: int = 0) -> SupportSet:
    if kind == "straight":
        return straight_shape(lam, n)
    if kind == "skew":
        return skew_shape(lam, mu if mu is not None else (), n)
    raise ValueError(f"unknown shape kind {kind!r}")


def complement(S: SupportSet) -> SupportSet:
    grid = {(i, j) for i in range(1, S.m + 1) for j in range(1, S.n + 1)}
    return SupportSet(S.m, S.n, frozenset(grid - S.forbidden))


def fano_support() -> SupportSet:
    """7x7 forbidden set whose free cells are the Fano-plane incidence pattern."""
    free = {(i, j) for i, line in enumerate(FANO_LINES, start=1) for j in line}
    grid = {(i, j) for i in range(1, 8) for j in range(1, 8)}
    return SupportSet(7, 7, frozenset(grid - free))


def graph_support(n: int, edges: Iterable[tuple[int, int]]) -> SupportSet:
    """Forbidden set on the (n-1)x(n-1) grid for a graph on v_1..v_n with apex v_n.

    (i, j), i != j, is forbidden whenever v_i v_j is not an edge.
    """
    E = set()
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n) or u == v:
            raise OutOfRange(f"bad edge {(u, v)} for {n} vertices")
        E.add((u, v))
        E.add((v, u))
    missing = [i for i in range(1, n) if (i, n) not in E]
    if missing:
        raise ApexMissing(f"v{n} is not adjacent to v{missing[0]}")
    if n < 2:
        raise OutOfRange("need at least two vertices")
    size = n - 1
    forbidden = {(i, j) for i in range(1, size + 1) for j in range(1, size + 1)
                 if i != j and (i, j) not in E}
    return SupportSet(size, size, frozenset(forbidden))


def complete_graph_edges(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
